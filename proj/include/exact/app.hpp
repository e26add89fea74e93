#pragma once

// Command implementations behind the `exact` CLI. Every command writes to
// caller-supplied streams so tests can drive them without a process.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "exact/factory.hpp"
#include "exact/rng.hpp"

namespace exact::app {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolkitVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInvalidConfig = 2,
    kAbandoned = 3,
};

/// Default configuration document for "mh", "gibbs" or "ranef".
Json default_config(const std::string& model);

/// Applies "key=value" overrides; values are parsed as JSON when possible,
/// otherwise kept as strings. Unknown keys are rejected.
void apply_overrides(Json& config, const std::vector<std::string>& overrides);

/// Reads a config file (JSON object with a "model" key) merged over defaults.
Json load_config(const std::string& path);

/// Derived constants for a config; throws std::invalid_argument naming the
/// violated constraint.
Json derived_constants(const Json& config);

// constants ---------------------------------------------------------------

struct ConstantsOptions {
    std::uint64_t table_max_n = 20;
};
int cmd_constants(const Json& config, const ConstantsOptions& opt, std::ostream& out, std::ostream& err,
                  Json* manifest = nullptr);

// factory-bench -----------------------------------------------------------

struct FactoryRunStats {
    double a = 0.0;
    double p = 0.0;
    std::uint64_t reps = 0;
    std::uint64_t ones = 0;
    std::uint64_t exhausted = 0;
    std::vector<std::uint64_t> consumed;
    bool monotone = true;  // envelope monotone on every run
};

/// Runs the factory `reps` times against synthetic Bernoulli(p) streams.
/// Run r uses the substream key.child(r).
FactoryRunStats run_factory_synthetic(const FactoryParams& params, double p, std::uint64_t reps, StreamKey key,
                                      bool check_monotone = false);

struct FactoryBenchOptions {
    std::vector<double> a_list{2.0, 5.0, 10.0, 20.0};
    std::vector<double> p_list{0.01};
    std::uint64_t reps = 10000;
    std::uint64_t seed = 1;
    double omega = 0.2;
    double delta_smooth = 1.0 / 6.0;
    std::uint64_t max_budget = kDefaultFactoryBudget;
};
int cmd_factory_bench(const FactoryBenchOptions& opt, std::ostream& csv, std::ostream& err);

// tau-sample --------------------------------------------------------------

struct TauSampleOptions {
    std::uint64_t count = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
};
int cmd_tau_sample(const Json& config, const TauSampleOptions& opt, std::ostream& csv, std::ostream& err);

// draw --------------------------------------------------------------------

struct DrawOptions {
    std::uint64_t count = 1;
    std::uint64_t first_index = 0;
    std::uint64_t seed = 1;
    int workers = 1;
    std::uint64_t tau_budget = 0;
    std::uint64_t factory_budget = kDefaultFactoryBudget;
    std::string telemetry_path;  // per-draw wall-clock times, optional
};

/// Writes the draws CSV (deterministic) and fills `manifest`. Draws whose
/// index appears in `done` are skipped; their rows must already be present
/// in the caller's output.
/// `checkpoint`, when set, is called with the manifest after every
/// `checkpoint_every` completed draws.
int cmd_draw(const Json& config, const DrawOptions& opt, std::ostream& csv, std::ostream& err, Json& manifest,
             const std::vector<std::uint64_t>& done = {}, bool write_header = true,
             const std::function<void(const Json&)>& checkpoint = {}, std::uint64_t checkpoint_every = 0);

/// File-level driver with checkpointing: the CSV is flushed after every
/// draw and the manifest rewritten every `checkpoint_every` draws. With
/// `resume`, completed rows are kept and only missing indices are drawn.
int run_draw_to_files(const Json& config, const DrawOptions& opt, const std::string& csv_path,
                      const std::string& manifest_path, bool resume, std::uint64_t checkpoint_every,
                      std::ostream& err);

// oracle-compare ----------------------------------------------------------

struct OracleCompareOptions {
    std::string draws_path;
    std::uint64_t oracle_reps = 1000;
    std::uint64_t seed = 1;
    std::string mode = "ks";  // "ks" or "summary"
    std::string qq_prefix;    // write Q-Q CSVs when non-empty
    std::string against_path; // compare with a second draws file instead of the oracle
};
int cmd_oracle_compare(const Json& config, const OracleCompareOptions& opt, std::ostream& out, std::ostream& err);

// contour -----------------------------------------------------------------

struct ContourOptions {
    // defaults put (0.028, 4) on the grid
    double c_lo = 0.004;
    double c_hi = 0.3;
    double gamma_lo = 0.5;
    double gamma_hi = 10.0;
    std::size_t c_resolution = 75;
    std::size_t gamma_resolution = 20;
};
int cmd_contour(const ContourOptions& opt, std::ostream& csv, std::ostream& err);

} // namespace exact::app
