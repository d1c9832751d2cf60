#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "cframe/cli.hpp"

namespace cframe::cli {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::ValidationError, path + ": " + msg);
}

std::string field(const std::string& base, std::string_view key) {
    return base.empty() ? std::string(key) : base + "." + std::string(key);
}

std::string element(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) fail(path.empty() ? "config" : path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) fail(field(path, it.key()), "unknown field");
    }
}

const json* find(const json& obj, std::string_view key) {
    const auto it = obj.find(std::string(key));
    return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& path, std::string_view key) {
    const json* v = find(obj, key);
    if (!v) fail(field(path, key), "missing");
    return *v;
}

double read_double(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

double read_positive_double(const json& v, const std::string& path) {
    const double d = read_double(v, path);
    if (!(d > 0.0)) fail(path, "must be positive");
    return d;
}

std::uint64_t read_u64(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    fail(path, "expected a nonnegative integer");
}

std::size_t read_count(const json& v, const std::string& path) {
    const std::uint64_t c = read_u64(v, path);
    if (c == 0) fail(path, "must be at least 1");
    return static_cast<std::size_t>(c);
}

bool read_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
}

std::string read_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

Complex read_complex(const json& v, const std::string& path) {
    if (v.is_number()) return {read_double(v, path), 0.0};
    if (v.is_array() && v.size() == 2) return {read_double(v[0], element(path, 0)), read_double(v[1], element(path, 1))};
    fail(path, "expected [re, im]");
}

Matrix read_matrix(const json& v, const std::string& path, std::size_t rows, std::size_t cols) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of rows");
    if (v.size() != rows) {
        fail(path, "expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                       std::to_string(v.size()) + " rows");
    }
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = v[i];
        const std::string rpath = element(path, i);
        if (!row.is_array()) fail(rpath, "expected a row array");
        if (row.size() != cols) {
            fail(path, "expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", row " + std::to_string(i) +
                           " has " + std::to_string(row.size()) + " entries");
        }
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = read_complex(row[j], element(rpath, j));
    }
    return out;
}

MeasureSpace read_measure(const json& v) {
    const std::string path = "measure";
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = read_string(require(v, path, "kind"), field(path, "kind"));
    MeasureSpace ms;
    if (kind == "interval") {
        check_keys(v, path, {"kind", "a", "b", "panels", "nodes", "density"});
        IntervalMeasure im;
        im.a = read_double(require(v, path, "a"), field(path, "a"));
        im.b = read_double(require(v, path, "b"), field(path, "b"));
        if (!(im.a < im.b)) fail(field(path, "b"), "must exceed a");
        if (const json* p = find(v, "panels")) im.panels = read_count(*p, field(path, "panels"));
        if (const json* k = find(v, "nodes")) im.nodes_per_panel = read_count(*k, field(path, "nodes"));
        if (const json* d = find(v, "density")) im.density = read_positive_double(*d, field(path, "density"));
        ms = im;
    } else if (kind == "discrete") {
        check_keys(v, path, {"kind", "atoms"});
        const json& atoms = require(v, path, "atoms");
        const std::string apath = field(path, "atoms");
        if (!atoms.is_array() || atoms.empty()) fail(apath, "expected a nonempty array");
        DiscreteMeasure dm;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const std::string ipath = element(apath, i);
            check_keys(atoms[i], ipath, {"point", "weight"});
            dm.atoms.push_back({read_double(require(atoms[i], ipath, "point"), field(ipath, "point")),
                                read_positive_double(require(atoms[i], ipath, "weight"), field(ipath, "weight"))});
        }
        ms = std::move(dm);
    } else {
        fail(field(path, "kind"), "expected \"interval\" or \"discrete\"");
    }
    try {
        validate(ms);
    } catch (const Error& e) {
        fail(path, e.what());
    }
    return ms;
}

FrameFamily read_family(const json& v, const std::string& path, std::size_t n, std::size_t m, const MeasureSpace& ms) {
    check_keys(v, path, {"form", "coefficients", "values"});
    const std::string form = read_string(require(v, path, "form"), field(path, "form"));
    const bool polynomial = form == "polynomial";
    if (!polynomial && form != "tabulated") fail(field(path, "form"), "expected \"polynomial\" or \"tabulated\"");
    if (polynomial != std::holds_alternative<IntervalMeasure>(ms)) {
        fail(field(path, "form"), polynomial ? "polynomial families need an interval measure"
                                             : "tabulated families need a discrete measure");
    }
    const std::string key = polynomial ? "coefficients" : "values";
    if (find(v, polynomial ? "values" : "coefficients")) {
        fail(field(path, polynomial ? "values" : "coefficients"), "not used by " + form + " families");
    }
    const json& list = require(v, path, key);
    const std::string lpath = field(path, key);
    if (!list.is_array() || list.empty()) fail(lpath, "expected a nonempty array of matrices");
    std::vector<Matrix> mats;
    for (std::size_t i = 0; i < list.size(); ++i) mats.push_back(read_matrix(list[i], element(lpath, i), n, m));
    if (!polynomial) {
        const std::size_t atoms = std::get<DiscreteMeasure>(ms).atoms.size();
        if (mats.size() != atoms) {
            fail(lpath, "has " + std::to_string(mats.size()) + " entries for " + std::to_string(atoms) + " atoms");
        }
        return FrameFamily::tabulated(std::move(mats));
    }
    return FrameFamily::polynomial(std::move(mats));
}

std::optional<StarMode> parse_star_mode(std::string_view s) {
    if (s == "scalar") return StarMode::Scalar;
    if (s == "diagonal") return StarMode::Diagonal;
    if (s == "randomized") return StarMode::Randomized;
    return std::nullopt;
}

std::string_view star_mode_name(StarMode m) {
    switch (m) {
        case StarMode::Scalar: return "scalar";
        case StarMode::Diagonal: return "diagonal";
        case StarMode::Randomized: return "randomized";
    }
    return "randomized";
}

CandidateBounds read_bounds(const json& v, std::size_t n, bool diagonal) {
    const std::string path = "bounds";
    if (!v.is_object()) fail(path, "expected an object");
    const std::string kind = read_string(require(v, path, "kind"), field(path, "kind"));
    if (kind == "scalar") {
        check_keys(v, path, {"kind", "lower", "upper"});
        ScalarCandidate c;
        c.lower = read_positive_double(require(v, path, "lower"), field(path, "lower"));
        c.upper = read_positive_double(require(v, path, "upper"), field(path, "upper"));
        if (c.lower > c.upper) fail(field(path, "upper"), "must be at least lower");
        return c;
    }
    if (kind != "star") fail(field(path, "kind"), "expected \"scalar\" or \"star\"");
    check_keys(v, path, {"kind", "lower", "upper", "mode"});
    StarCandidate c;
    c.lower = read_matrix(require(v, path, "lower"), field(path, "lower"), n, n);
    c.upper = read_matrix(require(v, path, "upper"), field(path, "upper"), n, n);
    if (diagonal) {
        if (!c.lower.is_diagonal(0.0)) fail(field(path, "lower"), "must be diagonal in the diagonal algebra");
        if (!c.upper.is_diagonal(0.0)) fail(field(path, "upper"), "must be diagonal in the diagonal algebra");
    }
    if (const json* mode = find(v, "mode")) {
        const auto parsed = parse_star_mode(read_string(*mode, field(path, "mode")));
        if (!parsed) fail(field(path, "mode"), "expected scalar, diagonal or randomized");
        if (*parsed == StarMode::Diagonal && !diagonal) fail(field(path, "mode"), "diagonal mode needs algebra.diagonal");
        c.mode = *parsed;
    }
    return c;
}

struct FieldRule {
    std::string_view name;
    bool verify, canonize, image, stability, fixtures;
};

constexpr FieldRule kJobFields[] = {
    {"algebra", true, true, true, true, false},
    {"module", true, true, true, true, false},
    {"measure", true, true, true, true, false},
    {"family", true, true, true, true, false},
    {"perturbed_family", false, false, false, true, false},
    {"map", false, false, true, false, false},
    {"bounds", true, false, true, false, false},
};

bool allowed_for(const FieldRule& r, JobKind job) {
    switch (job) {
        case JobKind::Verify: return r.verify;
        case JobKind::Canonize: return r.canonize;
        case JobKind::Image: return r.image;
        case JobKind::Stability: return r.stability;
        case JobKind::Fixtures: return r.fixtures;
    }
    return false;
}

ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

ojson matrix_json(const Matrix& a) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(complex_json(a(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson family_json(const FrameFamily& f) {
    ojson mats = ojson::array();
    for (const Matrix& c : f.data()) mats.push_back(matrix_json(c));
    ojson out = ojson::object();
    const bool polynomial = f.form() == FamilyForm::Polynomial;
    out["form"] = polynomial ? "polynomial" : "tabulated";
    out[polynomial ? "coefficients" : "values"] = std::move(mats);
    return out;
}

ojson measure_json(const MeasureSpace& ms) {
    ojson out = ojson::object();
    if (const auto* im = std::get_if<IntervalMeasure>(&ms)) {
        out["kind"] = "interval";
        out["a"] = im->a;
        out["b"] = im->b;
        out["panels"] = im->panels;
        out["nodes"] = im->nodes_per_panel;
        out["density"] = im->density;
    } else {
        out["kind"] = "discrete";
        ojson atoms = ojson::array();
        for (const Atom& a : std::get<DiscreteMeasure>(ms).atoms) {
            ojson atom = ojson::object();
            atom["point"] = a.point;
            atom["weight"] = a.weight;
            atoms.push_back(std::move(atom));
        }
        out["atoms"] = std::move(atoms);
    }
    return out;
}

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::ValidationError:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::InvalidMeasure:
        case ErrorCode::NodeMismatch:
        case ErrorCode::FormMismatch:
        case ErrorCode::ModeUnavailable:
            return kExitValidation;
        case ErrorCode::IoError:
            return kExitIo;
        default:
            return kExitNumerical;
    }
}

std::string_view to_string(JobKind kind) {
    switch (kind) {
        case JobKind::Verify: return "verify";
        case JobKind::Canonize: return "canonize";
        case JobKind::Image: return "image";
        case JobKind::Stability: return "stability";
        case JobKind::Fixtures: return "fixtures";
    }
    return "verify";
}

std::optional<JobKind> parse_job_kind(std::string_view name) {
    for (JobKind k : {JobKind::Verify, JobKind::Canonize, JobKind::Image, JobKind::Stability, JobKind::Fixtures}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

JobConfig parse_config(const json& doc) {
    check_keys(doc, "", {"job", "algebra", "module", "measure", "family", "perturbed_family", "map", "bounds",
                         "tolerances", "seed", "samples"});
    JobConfig cfg;
    const auto job = parse_job_kind(read_string(require(doc, "", "job"), "job"));
    if (!job) fail("job", "expected verify, canonize, image, stability or fixtures");
    cfg.job = *job;

    for (const FieldRule& rule : kJobFields) {
        const bool present = find(doc, rule.name) != nullptr;
        const bool allowed = allowed_for(rule, cfg.job);
        if (present && !allowed) fail(std::string(rule.name), "not used by the " + std::string(to_string(cfg.job)) + " job");
        const bool optional = rule.name == "bounds";
        if (!present && allowed && !optional) fail(std::string(rule.name), "missing");
    }

    if (const json* tol = find(doc, "tolerances")) {
        check_keys(*tol, "tolerances", {"frame"});
        if (const json* f = find(*tol, "frame")) cfg.tol = read_positive_double(*f, "tolerances.frame");
    }
    if (const json* seed = find(doc, "seed")) cfg.seed = read_u64(*seed, "seed");
    if (const json* samples = find(doc, "samples")) cfg.samples = read_count(*samples, "samples");

    if (cfg.job == JobKind::Fixtures) return cfg;

    const json& algebra = require(doc, "", "algebra");
    check_keys(algebra, "algebra", {"n", "diagonal"});
    cfg.n = read_count(require(algebra, "algebra", "n"), "algebra.n");
    if (const json* d = find(algebra, "diagonal")) cfg.diagonal = read_bool(*d, "algebra.diagonal");

    const json& module = require(doc, "", "module");
    check_keys(module, "module", {"m", "k"});
    cfg.m = read_count(require(module, "module", "m"), "module.m");
    const json* k = find(module, "k");
    if (cfg.job == JobKind::Image) {
        if (!k) fail("module.k", "missing");
        cfg.k = read_count(*k, "module.k");
    } else if (k) {
        fail("module.k", "only used by the image job");
    }

    cfg.measure = read_measure(require(doc, "", "measure"));
    cfg.family = read_family(require(doc, "", "family"), "family", cfg.n, cfg.m, cfg.measure);
    if (const json* g = find(doc, "perturbed_family")) {
        cfg.perturbed_family = read_family(*g, "perturbed_family", cfg.n, cfg.m, cfg.measure);
    }
    if (const json* map = find(doc, "map")) cfg.map = read_matrix(*map, "map", cfg.m, *cfg.k);
    if (const json* b = find(doc, "bounds")) cfg.bounds = read_bounds(*b, cfg.n, cfg.diagonal);
    return cfg;
}

JobConfig parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return parse_config(doc);
}

JobConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    return parse_config_text(buf.str());
}

ojson config_to_json(const JobConfig& cfg) {
    ojson out = ojson::object();
    out["job"] = std::string(to_string(cfg.job));
    if (cfg.job != JobKind::Fixtures) {
        out["algebra"] = ojson{{"n", cfg.n}, {"diagonal", cfg.diagonal}};
        ojson module = ojson::object();
        module["m"] = cfg.m;
        if (cfg.k) module["k"] = *cfg.k;
        out["module"] = std::move(module);
        out["measure"] = measure_json(cfg.measure);
        if (cfg.family) out["family"] = family_json(*cfg.family);
        if (cfg.perturbed_family) out["perturbed_family"] = family_json(*cfg.perturbed_family);
        if (cfg.map) out["map"] = matrix_json(*cfg.map);
        if (cfg.bounds) {
            ojson b = ojson::object();
            if (const auto* s = std::get_if<ScalarCandidate>(&*cfg.bounds)) {
                b["kind"] = "scalar";
                b["lower"] = s->lower;
                b["upper"] = s->upper;
            } else {
                const auto& star = std::get<StarCandidate>(*cfg.bounds);
                b["kind"] = "star";
                b["lower"] = matrix_json(star.lower);
                b["upper"] = matrix_json(star.upper);
                b["mode"] = std::string(star_mode_name(star.mode));
            }
            out["bounds"] = std::move(b);
        }
    }
    out["tolerances"] = ojson{{"frame", cfg.tol}};
    out["seed"] = cfg.seed;
    out["samples"] = cfg.samples;
    return out;
}

std::string config_hash(const JobConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump_json(config_to_json(cfg), false)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

JobConfig fixtures_config() {
    JobConfig cfg;
    cfg.job = JobKind::Fixtures;
    return cfg;
}

JobConfig tight_linear_config() {
    JobConfig cfg;
    cfg.job = JobKind::Verify;
    cfg.n = 2;
    cfg.m = 2;
    cfg.family = FrameFamily::polynomial({Matrix::zeros(2, 2), Matrix::identity(2)});
    return cfg;
}

JobConfig diagonal_affine_config() {
    JobConfig cfg;
    cfg.job = JobKind::Verify;
    cfg.n = 2;
    cfg.m = 2;
    cfg.diagonal = true;
    cfg.family = FrameFamily::polynomial({Matrix::diagonal({0.0, 1.0}), Matrix::identity(2)});
    const double a = 1.0 / std::sqrt(3.0);
    const double b = std::sqrt(7.0 / 3.0);
    cfg.bounds = StarCandidate{Matrix::diagonal({a, a}), Matrix::diagonal({b, b}), StarMode::Diagonal};
    return cfg;
}

}  // namespace cframe::cli
