#include "exact/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "exact/bounds.hpp"
#include "exact/io.hpp"
#include "exact/model_gibbs.hpp"
#include "exact/model_mh.hpp"
#include "exact/model_ranef.hpp"
#include "exact/sampler.hpp"
#include "exact/stats.hpp"
#include "exact/tau_kernels.hpp"

namespace exact::app {

namespace {

using io::fmt;

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string model_name(const Json& cfg) {
    if (!cfg.contains("model") || !cfg["model"].is_string()) throw std::invalid_argument("config: missing \"model\"");
    return cfg["model"].get<std::string>();
}

double num(const Json& cfg, const char* key) {
    if (!cfg.contains(key) || !cfg[key].is_number()) throw std::invalid_argument(std::string("config: \"") + key + "\" must be a number");
    return cfg[key].get<double>();
}

RanefConfig ranef_config(const Json& cfg) {
    RanefConfig r;
    r.alpha1 = num(cfg, "alpha1");
    r.alpha2 = num(cfg, "alpha2");
    r.beta1 = num(cfg, "beta1");
    r.beta2 = num(cfg, "beta2");
    r.K = num(cfg, "K");
    r.delta1 = num(cfg, "delta1");
    r.delta2 = num(cfg, "delta2");
    r.lambda = num(cfg, "lambda");
    const std::string mode = cfg.value("between_ss", std::string("sst_over_m"));
    if (mode == "sst_over_m") r.between_ss = BetweenSS::sst_over_m;
    else if (mode == "group_means") r.between_ss = BetweenSS::group_means;
    else throw std::invalid_argument("config: between_ss must be sst_over_m or group_means");
    if (cfg.contains("data")) {
        const Json& d = cfg["data"];
        r.data.ybar_i = d.at("ybar_i").get<std::vector<double>>();
        r.data.SST = d.at("SST").get<double>();
        r.data.SSE = d.at("SSE").get<double>();
        r.data.q = d.at("q").get<int>();
        r.data.m = d.at("m").get<int>();
        r.data.ybar_reported = d.value("ybar_reported", r.data.mean_of_group_means());
    }
    return r;
}

int gibbs_m(const Json& cfg) {
    const double m = num(cfg, "m");
    if (m != std::floor(m)) throw std::invalid_argument("config: m must be an integer");
    return static_cast<int>(m);
}

/// Calls f(model) with the concrete model for the config.
template <class F>
auto with_model(const Json& cfg, F&& f) {
    const std::string name = model_name(cfg);
    if (name == "mh") return f(MhExpModel(num(cfg, "c"), num(cfg, "gamma")));
    if (name == "gibbs")
        return f(GibbsModel(num(cfg, "ybar"), num(cfg, "s2"), gibbs_m(cfg), num(cfg, "lambda"), num(cfg, "d")));
    if (name == "ranef") return f(RanefModel(ranef_config(cfg)));
    throw std::invalid_argument("config: unknown model \"" + name + "\"");
}

TailBound tail_bound(const Json& cfg, const DriftSpec& drift) {
    return make_tail_bound(drift, num(cfg, "beta"), num(cfg, "kappa"), num(cfg, "omega"));
}

FactoryParams factory_params(const Json& cfg, std::uint64_t budget) {
    FactoryParams p;
    p.omega = num(cfg, "omega");
    p.delta_smooth = num(cfg, "delta_smooth");
    p.max_budget = budget;
    return p;
}

std::vector<std::string> state_columns(const std::string& model) {
    if (model == "mh") return {"x"};
    if (model == "gibbs") return {"mu", "theta"};
    return {"sigma2_phi", "sigma2_e", "mu"};
}

std::vector<std::string> state_values(double x) { return {fmt(x)}; }
std::vector<std::string> state_values(const GibbsState& x) { return {fmt(x.mu), fmt(x.theta)}; }
std::vector<std::string> state_values(const RanefState& x) {
    return {fmt(x.theta.sigma2_phi), fmt(x.theta.sigma2_e), fmt(x.xi.mu)};
}

Json tail_json(const TailBound& t) {
    return Json{{"J", t.J}, {"beta_star", t.beta_star}, {"beta", t.beta}, {"phi_beta", t.phi_beta},
                {"M", t.M}, {"D", t.D}, {"kappa", t.kappa}};
}

Json drift_json(const DriftSpec& d) {
    return Json{{"lambda", d.lambda}, {"b", d.b}, {"epsilon", d.epsilon}, {"A_sup", d.A_sup},
                {"small_set", d.small_set_descriptor}};
}

} // namespace

Json default_config(const std::string& model) {
    if (model == "mh") {
        const MhDefaults d;
        return Json{{"model", "mh"}, {"c", d.c}, {"gamma", d.gamma}, {"beta", d.beta},
                    {"kappa", d.kappa}, {"delta_smooth", d.delta_smooth}, {"omega", d.omega}};
    }
    if (model == "gibbs") {
        const GibbsDefaults d;
        return Json{{"model", "gibbs"}, {"ybar", d.ybar}, {"s2", d.s2}, {"m", d.m}, {"lambda", d.lambda},
                    {"d", d.d}, {"beta", d.beta}, {"kappa", d.kappa}, {"delta_smooth", d.delta_smooth},
                    {"omega", d.omega}};
    }
    if (model == "ranef") {
        const RanefConfig r;
        const RanefDefaults d;
        return Json{{"model", "ranef"},
                    {"alpha1", r.alpha1},
                    {"alpha2", r.alpha2},
                    {"beta1", r.beta1},
                    {"beta2", r.beta2},
                    {"K", r.K},
                    {"delta1", r.delta1},
                    {"delta2", r.delta2},
                    {"lambda", r.lambda},
                    {"between_ss", "sst_over_m"},
                    {"beta", d.beta},
                    {"kappa", d.kappa},
                    {"delta_smooth", d.delta_smooth},
                    {"omega", d.omega},
                    {"data",
                     Json{{"ybar_i", r.data.ybar_i},
                          {"ybar_reported", r.data.ybar_reported},
                          {"SST", r.data.SST},
                          {"SSE", r.data.SSE},
                          {"q", r.data.q},
                          {"m", r.data.m}}}};
    }
    throw std::invalid_argument("unknown model \"" + model + "\" (expected mh, gibbs or ranef)");
}

void apply_overrides(Json& config, const std::vector<std::string>& overrides) {
    for (const std::string& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("override must look like key=value: " + o);
        const std::string key = o.substr(0, eq);
        const std::string text = o.substr(eq + 1);
        if (key == "model") throw std::invalid_argument("the model cannot be overridden; choose it with --model");
        if (!config.contains(key)) throw std::invalid_argument("unknown config key \"" + key + "\"");
        Json value = Json::parse(text, nullptr, false);
        if (value.is_discarded()) value = text;
        config[key] = value;
    }
}

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path);
    const Json doc = Json::parse(in);
    Json cfg = default_config(model_name(doc));
    for (const auto& [k, v] : doc.items()) {
        if (!cfg.contains(k)) throw std::invalid_argument("unknown config key \"" + k + "\" in " + path);
        cfg[k] = v;
    }
    return cfg;
}

Json derived_constants(const Json& cfg) {
    return with_model(cfg, [&](const auto& model) {
        using M = std::decay_t<decltype(model)>;
        const DriftSpec drift = model.drift();
        Json out{{"drift", drift_json(drift)}};
        if constexpr (std::is_same_v<M, GibbsModel>) {
            out["model"] = Json{{"d", model.d()}, {"theta_star", model.theta_star()}};
        } else if constexpr (std::is_same_v<M, RanefModel>) {
            const auto& k = model.drift_constants();
            const auto& mn = model.minorization();
            out["model"] = Json{{"Delta2", k.Delta2},
                                {"lambda_star", k.lambda_star},
                                {"between_ss", k.between_ss},
                                {"d", k.d},
                                {"sigma_phi_star", mn.sigma_phi_star},
                                {"sigma_e_star", mn.sigma_e_star},
                                {"eps_phi", mn.eps_phi},
                                {"eps_e", mn.eps_e}};
        } else {
            out["model"] = Json{{"c", model.c()}, {"gamma", model.gamma()}};
        }
        out["tail"] = tail_json(tail_bound(cfg, drift));
        return out;
    });
}

int cmd_constants(const Json& cfg, const ConstantsOptions& opt, std::ostream& out, std::ostream& err,
                  Json* manifest) {
    Json k;
    TailBound tb;
    try {
        k = derived_constants(cfg);
        tb = with_model(cfg, [&](const auto& model) { return tail_bound(cfg, model.drift()); });
    } catch (const std::exception& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    }
    out << "model " << model_name(cfg) << '\n';
    for (const char* sec : {"drift", "model", "tail"})
        for (const auto& [name, v] : k[sec].items())
            out << name << ' ' << (v.is_number() ? fmt(v.get<double>()) : v.get<std::string>()) << '\n';

    out << "\nn,p(n),a(n),factory_min\n";
    const FactoryParams fp = factory_params(cfg, kDefaultFactoryBudget);
    for (std::uint64_t n = 1; n <= opt.table_max_n; ++n) {
        const double pn = std::pow(1.0 / tb.beta, static_cast<double>(n - 1)) * (1.0 - 1.0 / tb.beta);
        const double a = scale_a(tb, n);
        std::string fmin = "-";
        if (a > 1.0) {
            FactoryParams p = fp;
            p.scale_a = a;
            try {
                fmin = std::to_string(initial_power(p));
            } catch (const std::exception&) {
                fmin = "overflow";
            }
        }
        out << n << ',' << fmt(pn) << ',' << fmt(a) << ',' << fmin << '\n';
    }
    if (manifest) {
        *manifest = Json{{"command", "constants"}, {"model", model_name(cfg)}, {"config", cfg}, {"constants", k},
                         {"toolkit_version", kToolkitVersion}, {"timestamp", utc_now()}};
    }
    return kOk;
}

FactoryRunStats run_factory_synthetic(const FactoryParams& params, double p, std::uint64_t reps, StreamKey key,
                                      bool check_monotone) {
    const BernoulliFactory factory(params);
    FactoryRunStats st;
    st.a = params.scale_a;
    st.p = p;
    st.reps = reps;
    st.consumed.reserve(reps);
    std::vector<DoublingState> trace;
    for (std::uint64_t r = 0; r < reps; ++r) {
        Rng rng = key.child(r).rng();
        const double g0 = uniform01(rng);
        auto source = [&](std::uint64_t, std::uint64_t count) {
            std::binomial_distribution<std::uint64_t> bin(count, p);
            return bin(rng);
        };
        trace.clear();
        const FactoryResult res = factory.run(source, g0, check_monotone ? &trace : nullptr);
        if (res.exhausted) {
            ++st.exhausted;
            continue;
        }
        st.ones += static_cast<std::uint64_t>(res.bit);
        st.consumed.push_back(res.consumed);
        if (check_monotone) {
            for (std::size_t i = 0; i < trace.size(); ++i) {
                const auto& s = trace[i];
                if (s.l_tilde > s.u_tilde + 1e-12) st.monotone = false;
                if (i > 0 && (s.l_tilde < trace[i - 1].l_tilde - 1e-12 || s.u_tilde > trace[i - 1].u_tilde + 1e-12))
                    st.monotone = false;
            }
        }
    }
    return st;
}

int cmd_factory_bench(const FactoryBenchOptions& opt, std::ostream& csv, std::ostream& err) {
    io::CsvWriter w(csv);
    w.row({"a", "p", "reps", "min_consumed", "mean_consumed", "sd_consumed", "max_consumed", "p_hat", "se", "target",
           "exhausted"});
    const StreamKey root = StreamKey(opt.seed).child(Stream::bench);
    for (std::size_t i = 0; i < opt.a_list.size(); ++i) {
        for (std::size_t j = 0; j < opt.p_list.size(); ++j) {
            const double a = opt.a_list[i];
            const double p = opt.p_list[j];
            if (a * p > 1.0 - opt.omega) {
                err << "warning: skipping a=" << a << " p=" << p << " since a*p > 1 - omega\n";
                continue;
            }
            FactoryParams fp{a, opt.omega, opt.delta_smooth, opt.max_budget};
            try {
                fp.validate();
            } catch (const std::exception& e) {
                err << "invalid factory parameters: " << e.what() << '\n';
                return kInvalidConfig;
            }
            const FactoryRunStats st = run_factory_synthetic(fp, p, opt.reps, root.child({i, j}));
            std::vector<double> c(st.consumed.begin(), st.consumed.end());
            const std::size_t n = c.size();
            const double p_hat = n ? static_cast<double>(st.ones) / static_cast<double>(n) : 0.0;
            w.row({fmt(a), fmt(p), std::to_string(opt.reps),
                   n ? std::to_string(*std::min_element(st.consumed.begin(), st.consumed.end())) : "",
                   n ? fmt(stats::mean(c)) : "", n > 1 ? fmt(std::sqrt(stats::variance(c))) : "",
                   n ? std::to_string(*std::max_element(st.consumed.begin(), st.consumed.end())) : "", fmt(p_hat),
                   n ? fmt(stats::binomial_se(p_hat, n)) : "", fmt(a * p), std::to_string(st.exhausted)});
        }
    }
    return kOk;
}

int cmd_tau_sample(const Json& cfg, const TauSampleOptions& opt, std::ostream& csv, std::ostream& err) {
    std::vector<std::uint64_t> taus;
    try {
        taus = with_model(cfg, [&](const auto& model) {
            return sample_taus_parallel(model, StreamKey(opt.seed).child(Stream::tau), 0, opt.count, opt.workers);
        });
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    }
    io::CsvWriter w(csv);
    w.row({"index", "tau"});
    for (std::size_t i = 0; i < taus.size(); ++i) w.row({std::to_string(i), std::to_string(taus[i])});
    if (!taus.empty()) {
        std::vector<double> t(taus.begin(), taus.end());
        err << "tau: n=" << t.size() << " mean=" << stats::mean(t)
            << " max=" << *std::max_element(taus.begin(), taus.end()) << '\n';
    }
    return kOk;
}

int cmd_draw(const Json& cfg, const DrawOptions& opt, std::ostream& csv, std::ostream& err, Json& manifest,
             const std::vector<std::uint64_t>& done, bool write_header,
             const std::function<void(const Json&)>& checkpoint, std::uint64_t checkpoint_every) {
    const std::string model = model_name(cfg);
    Json constants;
    try {
        constants = derived_constants(cfg);
    } catch (const std::exception& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    }
    manifest = Json{{"command", "draw"},
                    {"model", model},
                    {"config", cfg},
                    {"constants", constants},
                    {"seed", opt.seed},
                    {"first_index", opt.first_index},
                    {"count", opt.count},
                    {"worker_count", opt.workers},
                    {"tau_budget", opt.tau_budget},
                    {"factory_budget", opt.factory_budget},
                    {"toolkit_version", kToolkitVersion},
                    {"started", utc_now()}};

    std::ofstream telemetry;
    if (!opt.telemetry_path.empty()) {
        const bool fresh = !std::filesystem::exists(opt.telemetry_path);
        telemetry.open(opt.telemetry_path, std::ios::app);
        if (fresh) telemetry << "draw_index,wall_seconds,abandon_reason\r\n";
    }

    io::CsvWriter w(csv);
    if (write_header) {
        std::vector<std::string> h{"draw_index", "T_star"};
        for (auto& c : state_columns(model)) h.push_back(c);
        for (const char* c : {"proposals", "tau_consumed", "factory_invocations", "qn_attempts", "status"}) h.push_back(c);
        w.row(h);
    }

    const std::set<std::uint64_t> skip(done.begin(), done.end());
    std::vector<std::uint64_t> completed(done.begin(), done.end());
    std::uint64_t abandoned = 0;
    std::uint64_t tau_total = 0;
    std::uint64_t since_checkpoint = 0;

    auto update_manifest = [&] {
        std::sort(completed.begin(), completed.end());
        manifest["completed"] = completed;
        manifest["abandoned"] = abandoned;
        manifest["tau_consumed_this_session"] = tau_total;
        std::uint64_t next = opt.first_index;
        while (std::binary_search(completed.begin(), completed.end(), next)) ++next;
        manifest["next_index"] = next;
        manifest["updated"] = utc_now();
    };

    with_model(cfg, [&](const auto& mdl) {
        SamplerConfig sc;
        sc.bound = tail_bound(cfg, mdl.drift());
        sc.factory = factory_params(cfg, opt.factory_budget);
        sc.seed = opt.seed;
        sc.worker_count = opt.workers;
        sc.tau_budget = opt.tau_budget;
        for (std::uint64_t idx = opt.first_index; idx < opt.first_index + opt.count; ++idx) {
            if (skip.count(idx)) continue;
            const auto rec = exact_draw(sc, mdl, idx, false);
            std::vector<std::string> row{std::to_string(idx), rec.abandoned ? "" : std::to_string(rec.accepted_T)};
            if (rec.abandoned) {
                for (std::size_t c = 0; c < state_columns(model).size(); ++c) row.emplace_back();
                ++abandoned;
            } else {
                for (auto& v : state_values(rec.value)) row.push_back(v);
            }
            row.push_back(std::to_string(rec.proposals_tried));
            row.push_back(std::to_string(rec.tau_consumed));
            row.push_back(std::to_string(rec.factory_invocations));
            row.push_back(std::to_string(rec.qn_attempts));
            row.push_back(rec.abandoned ? "abandoned" : "ok");
            w.row(row);
            csv.flush();
            tau_total += rec.tau_consumed;
            completed.push_back(idx);
            if (telemetry.is_open())
                telemetry << idx << ',' << fmt(rec.wall_seconds) << ',' << io::csv_field(rec.abandon_reason) << "\r\n"
                          << std::flush;
            if (rec.abandoned) err << "draw " << idx << " abandoned: " << rec.abandon_reason << '\n';
            if (checkpoint && checkpoint_every && ++since_checkpoint >= checkpoint_every) {
                since_checkpoint = 0;
                update_manifest();
                checkpoint(manifest);
            }
        }
        return 0;
    });
    update_manifest();
    manifest["finished"] = utc_now();
    return abandoned ? kAbandoned : kOk;
}

namespace {

void write_json_file(const std::string& path, const Json& j) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

int run_draw_to_files(const Json& cfg, const DrawOptions& opt, const std::string& csv_path,
                      const std::string& manifest_path, bool resume, std::uint64_t checkpoint_every,
                      std::ostream& err) {
    std::vector<std::uint64_t> done;
    io::CsvTable kept;
    bool have_rows = false;
    if (resume && std::filesystem::exists(csv_path)) {
        if (!manifest_path.empty() && std::filesystem::exists(manifest_path)) {
            std::ifstream in(manifest_path);
            const Json old = Json::parse(in);
            if (old.value("config", Json()) != cfg || old.value("seed", std::uint64_t{0}) != opt.seed) {
                err << "resume refused: manifest config or seed differs from this run\n";
                return kInvalidConfig;
            }
        }
        kept = io::read_csv_file(csv_path);
        // drop a trailing partial row left by an interrupted write
        std::erase_if(kept.rows, [&](const auto& r) { return r.size() != kept.header.size(); });
        const std::size_t col = kept.column("draw_index");
        for (const auto& r : kept.rows) done.push_back(std::stoull(r[col]));
        have_rows = !kept.header.empty();
    }

    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) {
        err << "cannot write " << csv_path << '\n';
        return kFailure;
    }
    if (have_rows) {
        io::CsvWriter w(csv);
        w.row(kept.header);
        for (const auto& r : kept.rows) w.row(r);
        csv.flush();
    }

    Json manifest;
    auto save = [&](const Json& m) {
        if (!manifest_path.empty()) write_json_file(manifest_path, m);
    };
    const int rc = cmd_draw(cfg, opt, csv, err, manifest, done, !have_rows, save, checkpoint_every);
    csv.close();
    save(manifest);

    if (have_rows) {
        // keep rows in draw order so a resumed file matches an uninterrupted one
        io::CsvTable t = io::read_csv_file(csv_path);
        const std::size_t col = t.column("draw_index");
        std::stable_sort(t.rows.begin(), t.rows.end(),
                         [&](const auto& x, const auto& y) { return std::stoull(x[col]) < std::stoull(y[col]); });
        std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
        io::CsvWriter w(out);
        w.row(t.header);
        for (const auto& r : t.rows) w.row(r);
    }
    return rc;
}

namespace {

std::vector<double> ok_column(const io::CsvTable& t, const std::string& name) {
    const std::size_t col = t.column(name);
    std::size_t status = t.header.size();
    for (std::size_t i = 0; i < t.header.size(); ++i)
        if (t.header[i] == "status") status = i;
    std::vector<double> out;
    for (const auto& r : t.rows) {
        if (status < r.size() && r[status] != "ok") continue;
        out.push_back(std::stod(r.at(col)));
    }
    return out;
}

void write_qq(const std::string& path, std::vector<double> sample, const std::function<double(double)>& ref_quantile) {
    std::sort(sample.begin(), sample.end());
    std::ofstream out(path, std::ios::binary);
    io::CsvWriter w(out);
    w.row({"probability", "reference", "observed"});
    const double n = static_cast<double>(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double p = (static_cast<double>(i) + 0.5) / n;
        w.row({fmt(p), fmt(ref_quantile(p)), fmt(sample[i])});
    }
}

} // namespace

int cmd_oracle_compare(const Json& cfg, const OracleCompareOptions& opt, std::ostream& out, std::ostream& err) {
    const std::string model = model_name(cfg);
    io::CsvTable draws;
    try {
        draws = io::read_csv_file(opt.draws_path);
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kFailure;
    }
    const std::vector<std::string> cols = state_columns(model);
    io::CsvWriter w(out);

    if (!opt.against_path.empty()) {
        const io::CsvTable other = io::read_csv_file(opt.against_path);
        w.row({"coordinate", "test", "statistic", "p_value", "n_draws", "n_reference"});
        for (const auto& c : cols) {
            const auto x = ok_column(draws, c);
            const auto y = ok_column(other, c);
            const auto ks = stats::ks_two_sample(x, y);
            w.row({c, "ks_two_sample", fmt(ks.statistic), fmt(ks.p_value), std::to_string(x.size()),
                   std::to_string(y.size())});
        }
        return kOk;
    }

    if (opt.mode == "summary") {
        w.row({"coordinate", "n", "mean", "sd", "min", "q05", "median", "q95", "max"});
        for (const auto& c : cols) {
            const auto x = ok_column(draws, c);
            if (x.empty()) continue;
            w.row({c, std::to_string(x.size()), fmt(stats::mean(x)), x.size() > 1 ? fmt(std::sqrt(stats::variance(x))) : "",
                   fmt(*std::min_element(x.begin(), x.end())), fmt(stats::quantile(x, 0.05)),
                   fmt(stats::quantile(x, 0.5)), fmt(stats::quantile(x, 0.95)),
                   fmt(*std::max_element(x.begin(), x.end()))});
        }
        return kOk;
    }
    if (opt.mode != "ks") {
        err << "unknown mode " << opt.mode << " (expected ks or summary)\n";
        return kInvalidConfig;
    }

    w.row({"coordinate", "test", "statistic", "p_value", "n_draws", "n_reference"});
    if (model == "mh") {
        const auto x = ok_column(draws, "x");
        auto cdf = [](double v) { return v <= 0.0 ? 0.0 : -std::expm1(-v); };
        const auto ks = stats::ks_one_sample(x, cdf);
        w.row({"x", "ks_exp1", fmt(ks.statistic), fmt(ks.p_value), std::to_string(x.size()), ""});
        const double ad = stats::anderson_darling(x, cdf);
        w.row({"x", "anderson_darling_exp1", fmt(ad), ad < stats::anderson_darling_critical(0.01) ? ">0.01" : "<=0.01",
               std::to_string(x.size()), ""});
        if (!opt.qq_prefix.empty()) write_qq(opt.qq_prefix + "_x.csv", x, [](double p) { return -std::log1p(-p); });
        return kOk;
    }
    if (model == "gibbs") {
        const GibbsModel g(num(cfg, "ybar"), num(cfg, "s2"), gibbs_m(cfg), num(cfg, "lambda"), num(cfg, "d"));
        Rng rng = StreamKey(opt.seed).child(Stream::oracle).rng();
        std::vector<double> mu;
        std::vector<double> theta;
        for (std::uint64_t i = 0; i < opt.oracle_reps; ++i) {
            const GibbsState s = g.sequential_oracle_draw(rng);
            mu.push_back(s.mu);
            theta.push_back(s.theta);
        }
        for (const auto& [name, ref] : {std::pair{"mu", &mu}, std::pair{"theta", &theta}}) {
            const auto x = ok_column(draws, name);
            const auto ks = stats::ks_two_sample(x, *ref);
            w.row({name, "ks_two_sample_oracle", fmt(ks.statistic), fmt(ks.p_value), std::to_string(x.size()),
                   std::to_string(ref->size())});
            if (!opt.qq_prefix.empty()) {
                const std::vector<double> r = *ref;
                write_qq(opt.qq_prefix + "_" + name + ".csv", x, [&r](double p) { return stats::quantile(r, p); });
            }
        }
        return kOk;
    }
    err << "no oracle is registered for model " << model << "; use --mode summary\n";
    return kInvalidConfig;
}

int cmd_contour(const ContourOptions& opt, std::ostream& csv, std::ostream& err) {
    std::vector<BetaStarCell> grid;
    try {
        grid = beta_star_grid(opt.c_lo, opt.c_hi, opt.gamma_lo, opt.gamma_hi, opt.c_resolution, opt.gamma_resolution);
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kInvalidConfig;
    }
    io::CsvWriter w(csv);
    w.row({"c", "gamma", "beta_star"});
    for (const auto& cell : grid)
        w.row({fmt(cell.c), fmt(cell.gamma), cell.beta_star == kInvalidBetaStar ? "NA" : fmt(cell.beta_star)});
    return kOk;
}

} // namespace exact::app
