#pragma once

// Job configuration, execution and report emission behind the cframe tool.
//
// Config schema (JSON, complex entries as [re, im], matrices as row-major nested arrays):
//   job               verify | canonize | image | stability | fixtures
//   algebra           {n, diagonal}
//   module            {m, k}                       k only for image
//   measure           {kind: "interval", a, b, panels, nodes, density}
//                     {kind: "discrete", atoms: [{point, weight}, ...]}
//   family            {form: "polynomial", coefficients: [C0, C1, ...]}
//                     {form: "tabulated", values: [F0, F1, ...]}
//   perturbed_family  same shape as family; stability only
//   map               m×k matrix; image only
//   bounds            {kind: "scalar", lower, upper}
//                     {kind: "star", lower, upper, mode: scalar | diagonal | randomized}
//   tolerances        {frame}
//   seed, samples
// The fixtures job takes only job, seed, samples and tolerances.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cframe/error.hpp"
#include "cframe/frames.hpp"

namespace cframe::cli {

inline constexpr std::string_view kEngineVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

int exit_code_for(ErrorCode code);

enum class JobKind { Verify, Canonize, Image, Stability, Fixtures };

std::string_view to_string(JobKind kind);
std::optional<JobKind> parse_job_kind(std::string_view name);

struct ScalarCandidate {
    double lower = 0.0;
    double upper = 0.0;

    friend bool operator==(const ScalarCandidate&, const ScalarCandidate&) = default;
};

struct StarCandidate {
    Matrix lower;
    Matrix upper;
    StarMode mode = StarMode::Randomized;

    friend bool operator==(const StarCandidate&, const StarCandidate&) = default;
};

using CandidateBounds = std::variant<ScalarCandidate, StarCandidate>;

struct JobConfig {
    JobKind job = JobKind::Verify;
    std::size_t n = 0;
    bool diagonal = false;
    std::size_t m = 0;
    std::optional<std::size_t> k;
    MeasureSpace measure = IntervalMeasure{};
    std::optional<FrameFamily> family;
    std::optional<FrameFamily> perturbed_family;
    std::optional<Matrix> map;
    std::optional<CandidateBounds> bounds;
    double tol = kFrameTol;
    std::uint64_t seed = 0;
    std::size_t samples = 1000;

    friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Throws ValidationError whose message starts with the offending field path.
JobConfig parse_config(const nlohmann::json& doc);
/// Throws ParseError, ValidationError.
JobConfig parse_config_text(std::string_view text);
/// Throws IoError, ParseError, ValidationError.
JobConfig load_config(const std::filesystem::path& path);

nlohmann::ordered_json config_to_json(const JobConfig& cfg);

/// FNV-1a over the compact canonical dump, 16 hex digits.
std::string config_hash(const JobConfig& cfg);

/// The built-in end-to-end checks.
JobConfig fixtures_config();
/// F_w = w·I₂ on [0, 1].
JobConfig tight_linear_config();
/// F_w = diag(w, w + 1) on [0, 1] in the diagonal algebra, with star candidates
/// diag(1/√3, 1/√3) and diag(√(7/3), √(7/3)).
JobConfig diagonal_affine_config();

struct ExecuteOptions {
    bool timing = false;
};

struct JobReport {
    JobKind job = JobKind::Verify;
    std::string config_hash;
    nlohmann::ordered_json config;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<double> spectrum;
    std::optional<ErrorCode> error;
    std::string error_message;
    int exit_code = kExitOk;
    std::optional<double> elapsed_seconds;
};

/// Engine errors are captured in the report, never thrown.
JobReport execute_job(const JobConfig& cfg, const ExecuteOptions& options = {});

enum class OutputFormat { Json, CsvSpectrum };

/// Numbers with 17 significant digits; non-finite values become null.
std::string dump_json(const nlohmann::ordered_json& value, bool pretty = true);

std::string render_report(const JobReport& report, OutputFormat format);

/// Writes to `destination`, or standard output when absent. Throws IoError.
void emit_report(const JobReport& report, OutputFormat format,
                 const std::optional<std::filesystem::path>& destination);

}  // namespace cframe::cli
