#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "cframe/cli.hpp"

namespace cframe::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Arrays without objects and at most two levels deep print on one line.
std::size_t inline_depth(const ojson& v) {
    if (v.is_object()) return 100;
    if (!v.is_array()) return 0;
    std::size_t d = 0;
    for (const auto& e : v) d = std::max(d, inline_depth(e));
    return d + 1;
}

enum class Layout { Compact, Pretty, Inline };

void write(const ojson& v, Layout layout, int indent, std::string& out) {
    const bool pretty = layout == Layout::Pretty;
    const auto newline = [&](int level) {
        if (!pretty) return;
        out += '\n';
        out.append(static_cast<std::size_t>(2 * level), ' ');
    };
    switch (v.type()) {
        case ojson::value_t::null: out += "null"; return;
        case ojson::value_t::boolean: out += v.get<bool>() ? "true" : "false"; return;
        case ojson::value_t::number_integer: out += std::to_string(v.get<std::int64_t>()); return;
        case ojson::value_t::number_unsigned: out += std::to_string(v.get<std::uint64_t>()); return;
        case ojson::value_t::number_float: out += number(v.get<double>()); return;
        case ojson::value_t::string: out += v.dump(); return;
        case ojson::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            const bool flat = !pretty || inline_depth(v) <= 2;
            const Layout inner = pretty ? (flat ? Layout::Inline : Layout::Pretty) : layout;
            out += '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += inner == Layout::Inline ? ", " : ",";
                first = false;
                if (!flat) newline(indent + 1);
                write(e, inner, indent + 1, out);
            }
            if (!flat) newline(indent);
            out += ']';
            return;
        }
        case ojson::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(indent + 1);
                out += ojson(it.key()).dump();
                out += pretty ? ": " : ":";
                write(it.value(), layout, indent + 1, out);
            }
            newline(indent);
            out += '}';
            return;
        }
        default: out += "null"; return;
    }
}

std::string status_of(const JobReport& r) {
    if (r.error) return "error";
    return r.exit_code == kExitOk ? "ok" : "failed";
}

}  // namespace

std::string dump_json(const ojson& value, bool pretty) {
    std::string out;
    write(value, pretty ? Layout::Pretty : Layout::Compact, 0, out);
    return out;
}

std::string render_report(const JobReport& report, OutputFormat format) {
    if (format == OutputFormat::CsvSpectrum) {
        std::string out = "index,eigenvalue\n";
        for (std::size_t i = 0; i < report.spectrum.size(); ++i) {
            out += std::to_string(i) + "," + number(report.spectrum[i]) + "\n";
        }
        return out;
    }
    ojson doc = ojson::object();
    doc["engine_version"] = std::string(kEngineVersion);
    doc["job"] = std::string(to_string(report.job));
    doc["config_hash"] = report.config_hash;
    doc["config"] = report.config;
    doc["status"] = status_of(report);
    doc["exit_code"] = report.exit_code;
    if (report.error) doc["error"] = ojson{{"code", std::string(to_string(*report.error))}, {"message", report.error_message}};
    doc["results"] = report.results;
    if (report.elapsed_seconds) doc["timing"] = ojson{{"elapsed_seconds", *report.elapsed_seconds}};
    return dump_json(doc) + "\n";
}

void emit_report(const JobReport& report, OutputFormat format, const std::optional<std::filesystem::path>& destination) {
    const std::string text = render_report(report, format);
    if (!destination) {
        std::cout << text << std::flush;
        if (!std::cout) throw Error(ErrorCode::IoError, "cannot write to standard output");
        return;
    }
    std::ofstream out(*destination, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + destination->string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + destination->string());
}

}  // namespace cframe::cli
