#include <chrono>
#include <cmath>

#include "cframe/cli.hpp"
#include "cframe/random.hpp"
#include "cframe/stability.hpp"

namespace cframe::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Fixture tolerances.
constexpr double kExampleTol = 1e-12;
constexpr double kParsevalTol = 1e-8;
constexpr double kReconstructionTol = 1e-8;
constexpr double kPredictionSlack = 1e-9;

ojson matrix_json(const Matrix& a) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(ojson::array({a(i, j).real(), a(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson family_json(const FrameFamily& f) {
    ojson mats = ojson::array();
    for (const Matrix& c : f.data()) mats.push_back(matrix_json(c));
    const bool polynomial = f.form() == FamilyForm::Polynomial;
    ojson out = ojson::object();
    out["form"] = polynomial ? "polynomial" : "tabulated";
    out[polynomial ? "coefficients" : "values"] = std::move(mats);
    return out;
}

ojson bounds_json(const FrameBounds& b) { return ojson{{"lower", b.lower}, {"upper", b.upper}}; }

ojson frame_report_json(const FrameReport& r) {
    ojson out = ojson::object();
    out["gram"] = matrix_json(r.gram.matrix());
    out["spectrum"] = r.spectrum;
    out["is_frame"] = r.is_frame;
    out["is_tight"] = r.is_tight;
    out["is_parseval"] = r.is_parseval;
    out["optimal_bounds"] = r.optimal_bounds ? bounds_json(*r.optimal_bounds) : ojson(nullptr);
    out["tightness_gap"] = r.tightness_gap;
    out["parseval_deviation"] = r.parseval_deviation;
    out["condition"] = r.condition ? ojson(*r.condition) : ojson(nullptr);
    if (!r.is_frame) out["failure"] = r.failure;
    return out;
}

std::string_view status_name(StarStatus s) {
    switch (s) {
        case StarStatus::Certified: return "certified";
        case StarStatus::Falsified: return "falsified";
        case StarStatus::NotFalsified: return "not_falsified";
    }
    return "not_falsified";
}

std::string_view mode_name(StarMode m) {
    switch (m) {
        case StarMode::Scalar: return "scalar";
        case StarMode::Diagonal: return "diagonal";
        case StarMode::Randomized: return "randomized";
    }
    return "randomized";
}

ojson star_result_json(const StarBoundsResult& r, StarMode mode) {
    ojson out = ojson::object();
    out["kind"] = "star";
    out["mode"] = std::string(mode_name(mode));
    out["status"] = std::string(status_name(r.status));
    out["lower_holds"] = r.lower_holds;
    out["upper_holds"] = r.upper_holds;
    out["lower_margin"] = r.lower_margin;
    out["upper_margin"] = r.upper_margin;
    out["samples_drawn"] = r.samples_drawn;
    out["witness"] = r.witness ? matrix_json(r.witness->matrix()) : ojson(nullptr);
    return out;
}

ojson scalar_verdict_json(const ScalarBoundsVerdict& v) {
    ojson out = ojson::object();
    out["kind"] = "scalar";
    out["status"] = v.accepted ? "certified" : "falsified";
    out["lower_holds"] = v.lower_holds;
    out["upper_holds"] = v.upper_holds;
    out["lower_margin"] = v.lower_margin;
    out["upper_margin"] = v.upper_margin;
    return out;
}

StarCheckOptions star_options(const JobConfig& cfg, StarMode mode) {
    StarCheckOptions o;
    o.mode = mode;
    o.samples = cfg.samples;
    o.seed = cfg.seed;
    o.tol = cfg.tol;
    o.diagonal_algebra = cfg.diagonal;
    return o;
}

// Checks the configured candidate bounds against G; returns whether they survived.
bool certify_candidate(const JobConfig& cfg, const FrameFamily& f, const GramMatrix& g, ojson& out) {
    if (const auto* s = std::get_if<ScalarCandidate>(&*cfg.bounds)) {
        const auto v = verify_scalar_bounds(g, s->lower, s->upper, cfg.tol);
        out = scalar_verdict_json(v);
        return v.accepted;
    }
    const auto& star = std::get<StarCandidate>(*cfg.bounds);
    const auto r = verify_star_bounds(f, g, AlgebraElement(star.lower), AlgebraElement(star.upper),
                                      star_options(cfg, star.mode));
    out = star_result_json(r, star.mode);
    return r.status != StarStatus::Falsified;
}

struct Outcome {
    bool passed = true;
};

FrameReport require_frame(const JobConfig& cfg, JobReport& report) {
    FrameReport fr = frame_report(*cfg.family, cfg.measure, cfg.tol);
    report.results["frame"] = frame_report_json(fr);
    if (!fr.is_frame) throw Error(ErrorCode::NotAFrame, fr.failure);
    return fr;
}

Outcome run_verify(const JobConfig& cfg, JobReport& report) {
    FrameReport fr = frame_report(*cfg.family, cfg.measure, cfg.tol);
    report.spectrum = fr.spectrum;
    report.results["frame"] = frame_report_json(fr);
    Outcome o;
    o.passed = fr.is_frame;
    if (cfg.bounds) {
        ojson cert;
        o.passed = certify_candidate(cfg, *cfg.family, fr.gram, cert) && o.passed;
        report.results["certificate"] = std::move(cert);
    }
    return o;
}

Outcome run_canonize(const JobConfig& cfg, JobReport& report) {
    const FrameReport fr = require_frame(cfg, report);
    const FrameFamily parseval = canonical_parseval(*cfg.family, fr.gram, cfg.tol);
    const FrameFamily dual = canonical_dual(*cfg.family, fr.gram, cfg.tol);
    const FrameReport pr = frame_report(parseval, cfg.measure, cfg.tol);
    report.spectrum = pr.spectrum;
    ojson p = ojson::object();
    p["family"] = family_json(parseval);
    p["gram"] = matrix_json(pr.gram.matrix());
    p["spectrum"] = pr.spectrum;
    p["parseval_deviation"] = pr.parseval_deviation;
    p["is_parseval"] = pr.is_parseval;
    report.results["parseval"] = std::move(p);
    report.results["dual"] = ojson{{"family", family_json(dual)}};
    return {pr.parseval_deviation <= kParsevalTol};
}

Outcome run_image(const JobConfig& cfg, JobReport& report) {
    const FrameReport fr = require_frame(cfg, report);
    Outcome o;
    AnyBounds bounds = *fr.optimal_bounds;
    if (cfg.bounds) {
        ojson cert;
        o.passed = certify_candidate(cfg, *cfg.family, fr.gram, cert);
        report.results["certificate"] = std::move(cert);
        if (const auto* s = std::get_if<ScalarCandidate>(&*cfg.bounds)) {
            bounds = FrameBounds::make(s->lower, s->upper);
        } else {
            const auto& star = std::get<StarCandidate>(*cfg.bounds);
            bounds = StarFrameBounds(AlgebraElement(star.lower), AlgebraElement(star.upper), cfg.tol);
        }
    }
    const AdjointableMap v(*cfg.map);
    ojson map = ojson::object();
    map["surjectivity_gap"] = map_surjectivity_gap(v);
    map["norm"] = map_norm(v);
    report.results["map"] = std::move(map);

    const ImageFrame img = image_frame(*cfg.family, fr.gram, bounds, v);
    const FrameReport ir = frame_report(img.family, cfg.measure, cfg.tol);
    report.spectrum = ir.spectrum;
    ojson image = ojson::object();
    image["family"] = family_json(img.family);
    image["predicted_gram"] = matrix_json(img.gram.matrix());
    image["gram_deviation"] = frobenius_distance(ir.gram.matrix(), img.gram.matrix());
    image["frame"] = frame_report_json(ir);
    if (const auto* pb = std::get_if<FrameBounds>(&img.predicted)) {
        image["predicted_bounds"] = bounds_json(*pb);
        const bool within = ir.optimal_bounds && ir.optimal_bounds->lower >= pb->lower - kPredictionSlack &&
                            ir.optimal_bounds->upper <= pb->upper + kPredictionSlack;
        image["within_prediction"] = within;
        o.passed = o.passed && within;
    } else {
        const auto& sb = std::get<StarFrameBounds>(img.predicted);
        image["predicted_bounds"] =
            ojson{{"lower", matrix_json(sb.lower().matrix())}, {"upper", matrix_json(sb.upper().matrix())}};
        const StarMode mode = std::get<StarCandidate>(*cfg.bounds).mode;
        const bool exact_possible = mode != StarMode::Diagonal || img.family.is_diagonal();
        const StarMode used = exact_possible ? mode : StarMode::Randomized;
        const auto r = verify_star_bounds(img.family, ir.gram, sb.lower(), sb.upper(), star_options(cfg, used));
        image["prediction_certificate"] = star_result_json(r, used);
        o.passed = o.passed && r.status != StarStatus::Falsified;
    }
    report.results["image"] = std::move(image);
    return o;
}

Outcome run_stability(const JobConfig& cfg, JobReport& report) {
    const StabilityReport sr = stability_report(*cfg.family, *cfg.perturbed_family, cfg.measure, cfg.samples,
                                                cfg.seed, cfg.tol);
    ojson out = ojson::object();
    out["m_certified"] = sr.m_certified;
    out["m_theorem_forward"] = sr.m_theorem_forward;
    out["f_bounds"] = bounds_json(sr.f_bounds);
    out["g_bounds"] = bounds_json(sr.g_bounds);
    out["derived_bounds_for_g"] = bounds_json(sr.derived_bounds_for_g);
    out["derived_bounds_hold"] = sr.derived_bounds_hold;
    out["sampled_max_ratio"] = sr.sampled_max_ratio;
    out["samples"] = sr.samples;
    const bool certified = sr.sampled_max_ratio <= sr.m_certified + kPredictionSlack;
    out["certified_inequality_holds"] = certified;
    report.results["stability"] = std::move(out);
    return {sr.derived_bounds_hold && certified};
}

void add_check(ojson& checks, std::string name, double value, double expected, double tol, bool& all) {
    const bool passed = std::abs(value - expected) <= tol;
    all = all && passed;
    ojson c = ojson::object();
    c["name"] = std::move(name);
    c["value"] = value;
    c["expected"] = expected;
    c["tolerance"] = tol;
    c["passed"] = passed;
    checks.push_back(std::move(c));
}

Outcome run_fixtures(const JobConfig& cfg, JobReport& report) {
    ojson checks = ojson::array();
    bool all = true;

    const JobConfig tight = tight_linear_config();
    const FrameReport tr = frame_report(*tight.family, tight.measure, cfg.tol);
    add_check(checks, "tight_linear.gram_error",
              frobenius_distance(tr.gram.matrix(), (1.0 / 3.0) * Matrix::identity(2)), 0.0, kExampleTol, all);
    add_check(checks, "tight_linear.is_tight", tr.is_tight ? 1.0 : 0.0, 1.0, 0.0, all);
    if (tr.optimal_bounds) {
        add_check(checks, "tight_linear.lower_bound", tr.optimal_bounds->lower, 1.0 / 3.0, kExampleTol, all);
        add_check(checks, "tight_linear.upper_bound", tr.optimal_bounds->upper, 1.0 / 3.0, kExampleTol, all);
    }

    const JobConfig diag = diagonal_affine_config();
    const FrameReport dr = frame_report(*diag.family, diag.measure, cfg.tol);
    add_check(checks, "diagonal_affine.gram_error",
              frobenius_distance(dr.gram.matrix(), Matrix::diagonal({1.0 / 3.0, 7.0 / 3.0})), 0.0, kExampleTol, all);
    if (dr.optimal_bounds) {
        add_check(checks, "diagonal_affine.lower_bound", dr.optimal_bounds->lower, 1.0 / 3.0, kExampleTol, all);
        add_check(checks, "diagonal_affine.upper_bound", dr.optimal_bounds->upper, 7.0 / 3.0, kExampleTol, all);
    }
    const auto& star = std::get<StarCandidate>(*diag.bounds);
    const AlgebraElement a(star.lower);
    const AlgebraElement b(star.upper);
    StarCheckOptions opts = star_options(cfg, StarMode::Diagonal);
    opts.diagonal_algebra = true;
    const auto cert = verify_star_bounds(*diag.family, dr.gram, a, b, opts);
    add_check(checks, "diagonal_affine.star_certificate", cert.status == StarStatus::Certified ? 1.0 : 0.0, 1.0, 0.0,
              all);
    const double m_star = theorem_forward_constant_star(a, b, a, b, cfg.tol);
    add_check(checks, "diagonal_affine.star_stability_constant", m_star,
              (1.0 + std::sqrt(7.0)) * (1.0 + std::sqrt(7.0)), kExampleTol, all);
    const auto self = randomized_inequality_check(perturbation_grams(*diag.family, *diag.family, diag.measure), m_star,
                                                  cfg.samples, cfg.seed);
    add_check(checks, "diagonal_affine.self_perturbation_ratio", self.max_ratio, 0.0, 0.0, all);

    for (const JobConfig* fixture : {&tight, &diag}) {
        const std::string name = fixture == &tight ? "tight_linear" : "diagonal_affine";
        const GramMatrix g = gram(*fixture->family, fixture->measure);
        const FrameFamily parseval = canonical_parseval(*fixture->family, g, cfg.tol);
        add_check(checks, "canonical_parseval." + name,
                  frobenius_distance(gram(parseval, fixture->measure).matrix(), Matrix::identity(2)), 0.0,
                  kParsevalTol, all);
        Rng rng(derive_seed(cfg.seed, fixture == &tight ? 0 : 1));
        const ModuleVector x(unit_random_matrix(rng, 2, 2));
        const ModuleVector back = reconstruct(x, *fixture->family, fixture->measure, g);
        add_check(checks, "reconstruction." + name, frobenius_distance(x.matrix(), back.matrix()), 0.0,
                  kReconstructionTol, all);
    }

    report.results["checks"] = std::move(checks);
    report.results["all_passed"] = all;
    return {all};
}

Outcome dispatch(const JobConfig& cfg, JobReport& report) {
    switch (cfg.job) {
        case JobKind::Verify: return run_verify(cfg, report);
        case JobKind::Canonize: return run_canonize(cfg, report);
        case JobKind::Image: return run_image(cfg, report);
        case JobKind::Stability: return run_stability(cfg, report);
        case JobKind::Fixtures: return run_fixtures(cfg, report);
    }
    return {};
}

}  // namespace

JobReport execute_job(const JobConfig& cfg, const ExecuteOptions& options) {
    JobReport report;
    report.job = cfg.job;
    report.config = config_to_json(cfg);
    report.config_hash = config_hash(cfg);
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome o = dispatch(cfg, report);
        report.exit_code = o.passed ? kExitOk : kExitNumerical;
    } catch (const Error& e) {
        report.error = e.code();
        report.error_message = e.what();
        report.exit_code = exit_code_for(e.code());
    }
    if (options.timing) {
        report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return report;
}

}  // namespace cframe::cli
