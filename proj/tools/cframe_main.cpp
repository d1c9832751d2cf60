#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cframe/cli.hpp"

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    bool timing = false;
};

void add_job_options(CLI::App& sub, Options& o, bool config_required) {
    auto* config = sub.add_option("--config", o.config, "JSON job configuration")->check(CLI::ExistingFile);
    if (config_required) config->required();
    sub.add_option("--out", o.out, "write the report here instead of standard output");
    sub.add_option("--format", o.format, "json or csv (Gram spectrum)")->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--seed", o.seed, "override the config seed");
    sub.add_option("--tol", o.tol, "override the frame tolerance")->check(CLI::PositiveNumber);
    sub.add_flag("--timing", o.timing, "include wall-clock timing in the JSON report");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cframe;
    CLI::App app{"cframe: continuous frames over matrix-algebra modules"};
    app.require_subcommand(1);
    Options opts;
    const std::pair<const char*, const char*> subcommands[] = {
        {"verify", "Gram matrix, optimal bounds and optional bound certificate"},
        {"canonize", "canonical Parseval and dual frames"},
        {"image", "image frame under an adjointable map"},
        {"stability", "perturbation constants for a frame and a perturbed family"},
        {"fixtures", "built-in end-to-end reference checks"},
    };
    for (const auto& [name, help] : subcommands) {
        add_job_options(*app.add_subcommand(name, help), opts, std::string_view(name) != "fixtures");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitValidation;
    }
    const std::string job_name = app.get_subcommands().front()->get_name();
    const cli::JobKind job = *cli::parse_job_kind(job_name);

    cli::JobConfig cfg;
    try {
        cfg = opts.config.empty() ? cli::fixtures_config() : cli::load_config(opts.config);
    } catch (const Error& e) {
        std::cerr << "cframe: " << e.what() << "\n";
        return cli::exit_code_for(e.code());
    }
    if (cfg.job != job) {
        std::cerr << "cframe: config job is \"" << cli::to_string(cfg.job) << "\" but the subcommand is \"" << job_name
                  << "\"\n";
        return cli::kExitValidation;
    }
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.tol) cfg.tol = *opts.tol;

    const cli::JobReport report = cli::execute_job(cfg, {opts.timing});
    try {
        const auto format = opts.format == "csv" ? cli::OutputFormat::CsvSpectrum : cli::OutputFormat::Json;
        cli::emit_report(report, format, opts.out.empty() ? std::nullopt : std::optional<std::filesystem::path>(opts.out));
    } catch (const Error& e) {
        std::cerr << "cframe: " << e.what() << "\n";
        return cli::kExitIo;
    }
    if (report.error) std::cerr << "cframe: " << report.error_message << "\n";
    return report.exit_code;
}
