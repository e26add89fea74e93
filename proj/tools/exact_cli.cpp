// exact: command-line front end for the exact samplers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "exact/app.hpp"

namespace {

using exact::app::Json;

struct ModelArgs {
    std::string model;
    std::string config_path;
    std::vector<std::string> overrides;

    void attach(CLI::App* cmd, bool required = true) {
        auto* m = cmd->add_option("--model", model, "mh, gibbs or ranef")->check(CLI::IsMember({"mh", "gibbs", "ranef"}));
        auto* c = cmd->add_option("--config", config_path, "JSON config file; keys override the model defaults")
                      ->check(CLI::ExistingFile);
        if (required) m->excludes(c), c->excludes(m);
        cmd->add_option("--set", overrides, "override a config key, key=value (repeatable)");
    }

    Json resolve() const {
        Json cfg;
        if (!config_path.empty()) cfg = exact::app::load_config(config_path);
        else if (!model.empty()) cfg = exact::app::default_config(model);
        else throw std::invalid_argument("one of --model or --config is required");
        exact::app::apply_overrides(cfg, overrides);
        return cfg;
    }
};

int default_workers() {
    if (const char* w = std::getenv("EXACT_WORKERS")) return std::max(1, std::atoi(w));
    return 1;
}

// Runs `body` with an output stream that is either stdout or a file.
template <class F>
int with_output(const std::string& path, F&& body) {
    if (path.empty() || path == "-") return body(std::cout);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << '\n';
        return exact::app::kFailure;
    }
    return body(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sampling from Markov chain stationary distributions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", exact::app::kToolkitVersion);

    // constants
    ModelArgs const_model;
    exact::app::ConstantsOptions const_opt;
    std::string const_manifest;
    auto* constants = app.add_subcommand("constants", "print drift, minorization and tail-bound constants");
    const_model.attach(constants);
    constants->add_option("--table-max-n", const_opt.table_max_n, "rows in the p(n), a(n) table");
    constants->add_option("--manifest", const_manifest, "write a JSON manifest");

    // factory-bench
    exact::app::FactoryBenchOptions fb;
    std::string fb_out;
    auto* factory = app.add_subcommand("factory-bench", "run the Bernoulli factory on synthetic Bernoulli(p) streams");
    factory->add_option("--a", fb.a_list, "scale values")->delimiter(',');
    factory->add_option("--p", fb.p_list, "success probabilities")->delimiter(',');
    factory->add_option("--reps", fb.reps, "runs per (a, p)");
    factory->add_option("--seed", fb.seed);
    factory->add_option("--omega", fb.omega);
    factory->add_option("--delta", fb.delta_smooth, "smoothing parameter");
    factory->add_option("--max-budget", fb.max_budget, "input bits per run before giving up");
    factory->add_option("--out", fb_out, "CSV output path (default stdout)");

    // tau-sample
    ModelArgs tau_model;
    exact::app::TauSampleOptions ts;
    ts.workers = default_workers();
    std::string ts_out;
    auto* tau = app.add_subcommand("tau-sample", "draw i.i.d. regeneration times");
    tau_model.attach(tau);
    tau->add_option("--count", ts.count);
    tau->add_option("--seed", ts.seed);
    tau->add_option("--workers", ts.workers)->check(CLI::PositiveNumber);
    tau->add_option("--out", ts_out, "CSV output path (default stdout)");

    // draw
    ModelArgs draw_model;
    exact::app::DrawOptions dr;
    dr.workers = default_workers();
    std::string dr_out;
    std::string dr_manifest;
    bool dr_resume = false;
    std::uint64_t dr_every = 1;
    auto* draw = app.add_subcommand("draw", "produce exact draws from the stationary distribution");
    draw_model.attach(draw);
    draw->add_option("--count", dr.count);
    draw->add_option("--first-index", dr.first_index, "index of the first draw");
    draw->add_option("--seed", dr.seed);
    draw->add_option("--workers", dr.workers, "threads for tau production")->check(CLI::PositiveNumber);
    draw->add_option("--tau-budget", dr.tau_budget, "abandon a draw after this many tau values (0 = no limit)");
    draw->add_option("--factory-budget", dr.factory_budget, "input bits per factory invocation");
    draw->add_option("--telemetry", dr.telemetry_path, "CSV of per-draw wall-clock times");
    draw->add_option("--out", dr_out, "draws CSV path (default stdout)");
    draw->add_option("--manifest", dr_manifest, "JSON manifest path");
    draw->add_flag("--resume", dr_resume, "keep completed rows of --out and draw only the missing indices");
    draw->add_option("--checkpoint-every", dr_every, "rewrite the manifest after this many draws");

    // oracle-compare
    ModelArgs oc_model;
    exact::app::OracleCompareOptions oc;
    std::string oc_out;
    auto* oracle = app.add_subcommand("oracle-compare", "compare draws with the model's i.i.d. oracle");
    oc_model.attach(oracle);
    oracle->add_option("--draws", oc.draws_path, "draws CSV")->required()->check(CLI::ExistingFile);
    oracle->add_option("--oracle-reps", oc.oracle_reps);
    oracle->add_option("--seed", oc.seed);
    oracle->add_option("--mode", oc.mode, "ks or summary")->check(CLI::IsMember({"ks", "summary"}));
    oracle->add_option("--qq-prefix", oc.qq_prefix, "write Q-Q CSVs to <prefix>_<coordinate>.csv");
    oracle->add_option("--against", oc.against_path, "second draws CSV to compare with")->check(CLI::ExistingFile);
    oracle->add_option("--out", oc_out, "report path (default stdout)");

    // contour
    exact::app::ContourOptions co;
    std::string co_out;
    auto* contour = app.add_subcommand("contour", "beta* over a (c, gamma) grid for the Metropolis example");
    contour->add_option("--c-min", co.c_lo);
    contour->add_option("--c-max", co.c_hi);
    contour->add_option("--gamma-min", co.gamma_lo);
    contour->add_option("--gamma-max", co.gamma_hi);
    contour->add_option("--c-resolution", co.c_resolution);
    contour->add_option("--gamma-resolution", co.gamma_resolution);
    contour->add_option("--out", co_out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*constants) {
            Json manifest;
            const int rc = exact::app::cmd_constants(const_model.resolve(), const_opt, std::cout, std::cerr, &manifest);
            if (rc == 0 && !const_manifest.empty()) std::ofstream(const_manifest) << manifest.dump(2) << '\n';
            return rc;
        }
        if (*factory)
            return with_output(fb_out, [&](std::ostream& o) { return exact::app::cmd_factory_bench(fb, o, std::cerr); });
        if (*tau) {
            const Json cfg = tau_model.resolve();
            return with_output(ts_out, [&](std::ostream& o) { return exact::app::cmd_tau_sample(cfg, ts, o, std::cerr); });
        }
        if (*draw) {
            const Json cfg = draw_model.resolve();
            if (!dr_out.empty() && dr_out != "-")
                return exact::app::run_draw_to_files(cfg, dr, dr_out, dr_manifest, dr_resume, dr_every, std::cerr);
            if (dr_resume) {
                std::cerr << "--resume needs --out\n";
                return exact::app::kInvalidConfig;
            }
            Json manifest;
            const int rc = exact::app::cmd_draw(cfg, dr, std::cout, std::cerr, manifest);
            if (!dr_manifest.empty()) std::ofstream(dr_manifest) << manifest.dump(2) << '\n';
            return rc;
        }
        if (*oracle) {
            const Json cfg = oc_model.resolve();
            return with_output(oc_out, [&](std::ostream& o) { return exact::app::cmd_oracle_compare(cfg, oc, o, std::cerr); });
        }
        if (*contour)
            return with_output(co_out, [&](std::ostream& o) { return exact::app::cmd_contour(co, o, std::cerr); });
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return exact::app::kInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exact::app::kFailure;
    }
    return exact::app::kFailure;
}
