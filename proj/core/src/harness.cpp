#include "gpbnb/harness.hpp"

#include "gpbnb/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gpbnb {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& message) {
    throw InvalidInput("config: " + message);
}

void reject_unknown(const ordered_json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                return key == a;
            }) == allowed.end())
            config_error("unknown field '" + path + key + "'");
    }
}

Eigen::VectorXd parse_vector(const ordered_json& arr, const std::string& path) {
    if (!arr.is_array() || arr.empty())
        config_error("'" + path + "' must be a nonempty array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ExperimentConfig::validate() const {
    domain.validate();
    kernel.validate();
    if (kernel.dim() != domain.dim())
        config_error("kernel and domain dimensions differ");
    if (!(alpha > 0.0 && alpha < 1.0)) config_error("alpha must lie in (0, 1)");
    if (budget < 1) config_error("budget must be >= 1");
    if (max_depth < 0) config_error("max_depth must be >= 0");
    if (ucb_depth > max_depth) config_error("depth exceeds max_depth");
    if (replications < 1) config_error("replications must be >= 1");
    if (objective.kind == ObjectiveSpec::Kind::GpDraw &&
        !objective.seeds.empty() &&
        objective.seeds.size() < static_cast<std::size_t>(replications))
        config_error("explicit seed list shorter than replications");
    if (objective.kind == ObjectiveSpec::Kind::SyntheticPeak) {
        if (!(objective.peak.c2 > 0.0) ||
            !(objective.peak.c1 > objective.peak.c2))
            config_error("synthetic peak requires 0 < c2 < c1");
        if (!(objective.peak.rho0 > 0.0))
            config_error("synthetic peak requires rho0 > 0");
    }
    if (optimizer == OptimizerKind::Lipschitz && !lipschitz_constant &&
        objective.kind != ObjectiveSpec::Kind::SyntheticPeak)
        config_error("lipschitz optimizer needs an explicit lipschitz_constant "
                     "unless the objective is a synthetic peak");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        config_error(std::string("invalid JSON: ") + e.what());
    }
    reject_unknown(j, "",
                   {"domain", "kernel", "objective", "optimizer", "max_depth",
                    "replications", "output_dir", "master_seed"});

    ExperimentConfig cfg;
    if (!j.contains("domain")) config_error("missing 'domain'");
    reject_unknown(j["domain"], "domain.", {"lower", "upper"});
    cfg.domain.lower = parse_vector(j["domain"].at("lower"), "domain.lower");
    cfg.domain.upper = parse_vector(j["domain"].at("upper"), "domain.upper");

    if (!j.contains("kernel")) config_error("missing 'kernel'");
    const auto& jk = j["kernel"];
    reject_unknown(jk, "kernel.",
                   {"family", "lengthscales", "signal_variance", "nu"});
    const std::string family = jk.at("family").get<std::string>();
    Eigen::VectorXd ls = parse_vector(jk.at("lengthscales"), "kernel.lengthscales");
    const double sv = jk.value("signal_variance", 1.0);
    if (family == "squared_exponential") {
        if (jk.contains("nu")) config_error("'kernel.nu' only applies to matern");
        cfg.kernel = KernelSpec::squared_exponential(std::move(ls), sv);
    } else if (family == "matern") {
        if (!jk.contains("nu")) config_error("matern kernel requires 'kernel.nu'");
        cfg.kernel = KernelSpec::matern(jk["nu"].get<double>(), std::move(ls), sv);
    } else {
        config_error("unknown kernel family '" + family + "'");
    }

    if (!j.contains("objective")) config_error("missing 'objective'");
    const auto& jo = j["objective"];
    const std::string otype = jo.at("type").get<std::string>();
    if (otype == "gp_draw") {
        reject_unknown(jo, "objective.", {"type", "seeds"});
        cfg.objective.kind = ObjectiveSpec::Kind::GpDraw;
        if (jo.contains("seeds"))
            for (const auto& s : jo["seeds"])
                cfg.objective.seeds.push_back(s.get<std::uint64_t>());
    } else if (otype == "synthetic_peak") {
        reject_unknown(jo, "objective.",
                       {"type", "x_max", "f_max", "c1", "c2", "rho0"});
        cfg.objective.kind = ObjectiveSpec::Kind::SyntheticPeak;
        if (jo.contains("x_max"))
            cfg.objective.peak.x_max = parse_vector(jo["x_max"], "objective.x_max");
        cfg.objective.peak.f_max = jo.value("f_max", 1.0);
        cfg.objective.peak.c1 = jo.at("c1").get<double>();
        cfg.objective.peak.c2 = jo.at("c2").get<double>();
        cfg.objective.peak.rho0 = jo.at("rho0").get<double>();
    } else {
        config_error("unknown objective type '" + otype + "'");
    }

    if (!j.contains("optimizer")) config_error("missing 'optimizer'");
    const auto& jopt = j["optimizer"];
    reject_unknown(jopt, "optimizer.",
                   {"type", "alpha", "budget", "depth", "allow_resample",
                    "lipschitz_constant"});
    const std::string kind = jopt.at("type").get<std::string>();
    if (kind == "bnb") cfg.optimizer = OptimizerKind::Bnb;
    else if (kind == "plain_ucb") cfg.optimizer = OptimizerKind::PlainUcb;
    else if (kind == "lipschitz") cfg.optimizer = OptimizerKind::Lipschitz;
    else config_error("unknown optimizer type '" + kind + "'");
    cfg.alpha = jopt.value("alpha", 0.1);
    cfg.budget = jopt.value("budget", 100);
    cfg.ucb_depth = jopt.value("depth", -1);
    cfg.allow_resample = jopt.value("allow_resample", false);
    if (jopt.contains("lipschitz_constant"))
        cfg.lipschitz_constant = jopt["lipschitz_constant"].get<double>();

    cfg.max_depth = j.value("max_depth", 7);
    cfg.replications = j.value("replications", 1);
    cfg.output_dir = j.value("output_dir", std::string("out"));
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
    ordered_json j;
    j["domain"]["lower"] = std::vector<double>(domain.lower.begin(), domain.lower.end());
    j["domain"]["upper"] = std::vector<double>(domain.upper.begin(), domain.upper.end());
    switch (kernel.family) {
    case KernelFamily::SquaredExponential:
        j["kernel"]["family"] = "squared_exponential";
        break;
    case KernelFamily::Matern52:
        j["kernel"]["family"] = "matern";
        j["kernel"]["nu"] = 2.5;
        break;
    case KernelFamily::Matern72:
        j["kernel"]["family"] = "matern";
        j["kernel"]["nu"] = 3.5;
        break;
    }
    j["kernel"]["lengthscales"] =
        std::vector<double>(kernel.lengthscales.begin(), kernel.lengthscales.end());
    j["kernel"]["signal_variance"] = kernel.signal_variance;
    if (objective.kind == ObjectiveSpec::Kind::GpDraw) {
        j["objective"]["type"] = "gp_draw";
        if (!objective.seeds.empty()) j["objective"]["seeds"] = objective.seeds;
    } else {
        j["objective"]["type"] = "synthetic_peak";
        if (objective.peak.x_max.size() > 0)
            j["objective"]["x_max"] = std::vector<double>(
                objective.peak.x_max.begin(), objective.peak.x_max.end());
        j["objective"]["f_max"] = objective.peak.f_max;
        j["objective"]["c1"] = objective.peak.c1;
        j["objective"]["c2"] = objective.peak.c2;
        j["objective"]["rho0"] = objective.peak.rho0;
    }
    switch (optimizer) {
    case OptimizerKind::Bnb: j["optimizer"]["type"] = "bnb"; break;
    case OptimizerKind::PlainUcb: j["optimizer"]["type"] = "plain_ucb"; break;
    case OptimizerKind::Lipschitz: j["optimizer"]["type"] = "lipschitz"; break;
    }
    j["optimizer"]["alpha"] = alpha;
    j["optimizer"]["budget"] = budget;
    if (ucb_depth >= 0) j["optimizer"]["depth"] = ucb_depth;
    if (allow_resample) j["optimizer"]["allow_resample"] = true;
    if (lipschitz_constant) j["optimizer"]["lipschitz_constant"] = *lipschitz_constant;
    j["max_depth"] = max_depth;
    j["replications"] = replications;
    j["output_dir"] = output_dir.string();
    j["master_seed"] = master_seed;
    return j.dump(2);
}

std::uint64_t replication_seed(const ExperimentConfig& config, int replication) {
    if (!config.objective.seeds.empty())
        return config.objective.seeds[static_cast<std::size_t>(replication)];
    return derive_seed(config.master_seed,
                       static_cast<std::uint64_t>(replication));
}

TabulatedObjective make_objective(const ExperimentConfig& config,
                                  int replication) {
    const DyadicLattice lat = config.lattice();
    const PointList support = lattice_points(lat, lat.max_depth);
    const std::uint64_t seed = replication_seed(config, replication);
    if (config.objective.kind == ObjectiveSpec::Kind::GpDraw)
        return sample_gp_prior(config.kernel, support, seed);

    PeakParams peak = config.objective.peak;
    if (peak.x_max.size() == 0) {
        // No peak location given: place it on a random admissible lattice
        // point so replications explore different maximizers.
        PointList admissible;
        for (const Point& p : support) {
            bool inside = true;
            for (Eigen::Index i = 0; i < p.size(); ++i)
                if (p[i] - peak.rho0 < lat.domain.lower[i] ||
                    p[i] + peak.rho0 > lat.domain.upper[i]) {
                    inside = false;
                    break;
                }
            if (inside) admissible.push_back(p);
        }
        if (admissible.empty())
            throw InvalidInput("make_objective: no lattice point admits "
                               "B(x_max, rho0) inside the domain");
        CounterRng rng(seed);
        peak.x_max = admissible[rng.next_below(admissible.size())];
    }
    return synthetic_peak(lat.domain, peak, support);
}

namespace {

double certified_lipschitz(const ExperimentConfig& config,
                           const TabulatedObjective& objective) {
    if (config.lipschitz_constant) return *config.lipschitz_constant;
    // |grad| of f_max - cbar r^2 is 2 cbar r <= 2 c1 rho_max.
    const PeakParams& peak = objective.provenance().peak;
    double rho_max = 0.0;
    const BoxDomain& dom = config.domain;
    for (Eigen::Index i = 0; i < dom.lower.size(); ++i) {
        const double r = std::max(peak.x_max[i] - dom.lower[i],
                                  dom.upper[i] - peak.x_max[i]);
        rho_max += r * r;
    }
    rho_max = std::sqrt(rho_max);
    return 2.0 * peak.c1 * rho_max;
}

RegretTrace run_one(const ExperimentConfig& config,
                    const TabulatedObjective& objective) {
    switch (config.optimizer) {
    case OptimizerKind::Bnb: {
        BnbConfig bc{config.alpha, config.lattice(), config.kernel,
                     config.budget};
        return run_bnb(bc, objective);
    }
    case OptimizerKind::PlainUcb: {
        UcbBaselineConfig uc;
        uc.alpha = config.alpha;
        uc.depth = config.ucb_depth >= 0 ? config.ucb_depth : config.max_depth;
        uc.lattice = config.lattice();
        uc.kernel = config.kernel;
        uc.budget = config.budget;
        uc.allow_resample = config.allow_resample;
        return plain_ucb_run(uc, objective);
    }
    case OptimizerKind::Lipschitz: {
        const int depth =
            config.ucb_depth >= 0 ? config.ucb_depth : config.max_depth;
        return lipschitz_run(config.lattice(), depth,
                             certified_lipschitz(config, objective),
                             config.budget, objective);
    }
    }
    throw InvalidInput("run_one: unknown optimizer");
}

std::string optimizer_name(OptimizerKind kind) {
    switch (kind) {
    case OptimizerKind::Bnb: return "bnb";
    case OptimizerKind::PlainUcb: return "plain_ucb";
    case OptimizerKind::Lipschitz: return "lipschitz";
    }
    return "unknown";
}

} // namespace

bool envelope_violated(const RegretTrace& trace,
                       const TabulatedObjective& objective,
                       const KernelSpec& kernel, const DyadicLattice& lattice,
                       double alpha, double jitter) {
    const PointList grid = lattice_points(lattice, lattice.max_depth);
    Eigen::VectorXd f(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i)
        f[static_cast<Eigen::Index>(i)] = objective.value_at(grid[i]);

    LatticePredictor predictor(kernel, grid, jitter);
    const double tol = 1e-9;
    for (const TraceRow& row : trace.rows) {
        const double beta = beta_schedule(row.t, lattice.size(), alpha);
        const Eigen::VectorXd slack =
            (f - predictor.mean()).cwiseAbs() -
            std::sqrt(beta) * predictor.std_dev();
        if (slack.maxCoeff() > tol) return true;
        predictor.add_observation(row.x, row.f);
    }
    return false;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.output_dir);

    ExperimentResult result;
    for (int rep = 0; rep < config.replications; ++rep) {
        RunSummary summary;
        summary.replication = rep;
        summary.seed = replication_seed(config, rep);
        summary.optimizer = optimizer_name(config.optimizer);
        RegretTrace trace;
        try {
            const TabulatedObjective objective = make_objective(config, rep);
            trace = run_one(config, objective);
            if (config.objective.kind == ObjectiveSpec::Kind::GpDraw)
                summary.envelope_violated =
                    envelope_violated(trace, objective, config.kernel,
                                      config.lattice(), config.alpha);
        } catch (const std::exception& e) {
            trace.reason = StopReason::Error;
            trace.error_message = e.what();
            result.partial_failure = true;
        }
        summary.reason = trace.reason;
        summary.final_simple_regret = trace.final_simple_regret();
        summary.total_cumulative_regret = trace.total_cumulative_regret();
        summary.argmax_exited_region = trace.argmax_exited_region;
        summary.samples = static_cast<int>(trace.rows.size());
        summary.iterations = trace.iterations;

        char name[32];
        std::snprintf(name, sizeof(name), "trace_%03d.csv", rep);
        write_trace_csv(config.output_dir / name, trace);
        result.traces.push_back(std::move(trace));
        result.summaries.push_back(std::move(summary));
    }

    write_summary_csv(config.output_dir / "summary.csv", result.summaries);

    ordered_json meta;
    meta["config"] = ordered_json::parse(config.to_json_text());
    meta["rng"] = kRngId;
    meta["library"] = "gpbnb 0.1.0";
    std::vector<std::uint64_t> seeds;
    for (int rep = 0; rep < config.replications; ++rep)
        seeds.push_back(replication_seed(config, rep));
    meta["replication_seeds"] = seeds;
    std::ofstream meta_out(config.output_dir / "metadata.json");
    meta_out << meta.dump(2) << "\n";
    return result;
}

FitRateResult fit_rate_series(const std::vector<int>& ts,
                              const std::vector<double>& regrets, int d) {
    if (ts.size() != regrets.size())
        throw InvalidInput("fit_rate: mismatched series lengths");
    if (d < 1) throw InvalidInput("fit_rate: dimension must be >= 1");
    FitRateResult result;

    const double burn_in = std::exp(static_cast<double>(d) / 4.0);
    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i] > burn_in && regrets[i] > 0.0)
            floor = std::min(floor, regrets[i]);
    if (!std::isfinite(floor)) return result; // fit-undefined: no positive regret

    std::vector<double> us, ys;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        if (!(t > burn_in)) continue;
        double r = regrets[i];
        if (r <= 0.0) {
            r = floor;
            result.floored += 1;
        }
        us.push_back(t / std::pow(std::log(t), d / 4.0));
        ys.push_back(std::log(r));
    }
    result.used = static_cast<int>(us.size());
    if (result.used < 2) return result;

    const double n = static_cast<double>(us.size());
    double su = 0, sy = 0;
    for (std::size_t i = 0; i < us.size(); ++i) { su += us[i]; sy += ys[i]; }
    const double mu = su / n, my = sy / n;
    double suu = 0, suy = 0, syy = 0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        suu += (us[i] - mu) * (us[i] - mu);
        suy += (us[i] - mu) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = suu > 0.0 ? suy / suu : 0.0;
    const double intercept = my - slope * mu;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        const double e = ys[i] - (intercept + slope * us[i]);
        ss_res += e * e;
    }
    result.defined = true;
    result.a_hat = std::exp(intercept);
    result.tau_hat = -slope;
    result.r_squared = syy > 1e-300 ? 1.0 - ss_res / syy
                                    : (ss_res < 1e-12 ? 1.0 : 0.0);
    return result;
}

FitRateResult fit_rate(const RegretTrace& trace, int d) {
    std::vector<int> ts;
    std::vector<double> rs;
    for (const TraceRow& row : trace.rows) {
        ts.push_back(row.t);
        rs.push_back(row.regret);
    }
    return fit_rate_series(ts, rs, d);
}

std::vector<double> cumulative_regret(const RegretTrace& trace) {
    std::vector<double> out;
    double acc = 0.0;
    for (const TraceRow& row : trace.rows) {
        acc += row.regret;
        out.push_back(acc);
    }
    return out;
}

CoverageResult envelope_coverage(const ExperimentConfig& config) {
    ExperimentConfig cfg = config;
    cfg.optimizer = OptimizerKind::Bnb;
    cfg.objective.kind = ObjectiveSpec::Kind::GpDraw;
    cfg.validate();

    CoverageResult result;
    result.replications = cfg.replications;
    for (int rep = 0; rep < cfg.replications; ++rep) {
        const TabulatedObjective objective = make_objective(cfg, rep);
        BnbConfig bc{cfg.alpha, cfg.lattice(), cfg.kernel, cfg.budget};
        const RegretTrace trace = run_bnb(bc, objective);
        if (envelope_violated(trace, objective, cfg.kernel, cfg.lattice(),
                              cfg.alpha))
            result.envelope_violations += 1;
        if (trace.argmax_exited_region) result.retention_violations += 1;
    }
    const double m = static_cast<double>(cfg.replications);
    result.envelope_rate = result.envelope_violations / m;
    result.retention_rate = result.retention_violations / m;
    result.threshold =
        cfg.alpha + 3.0 * std::sqrt(cfg.alpha * (1.0 - cfg.alpha) / m);
    return result;
}

VarianceBoundReport verify_variance_bound(const KernelSpec& kernel,
                                          const BoxDomain& domain,
                                          const std::vector<double>& deltas) {
    domain.validate();
    kernel.validate();
    const int d = domain.dim();
    const double q_const = derivative_bound_Q(kernel);

    // Per-axis spacing <= delta (the 1D "delta = h" convention); the
    // nearest-sample distance is then <= delta * sqrt(d) / 2 <= delta for
    // d <= 4, comfortably a delta-cover.
    auto uniform_grid = [&](double spacing) {
        std::vector<int> intervals(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            intervals[static_cast<std::size_t>(i)] = static_cast<int>(std::max(
                1.0, std::ceil((domain.upper[i] - domain.lower[i]) / spacing)));
        PointList pts;
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        Point p(d);
        while (true) {
            for (int i = 0; i < d; ++i)
                p[i] = domain.lower[i] +
                       (domain.upper[i] - domain.lower[i]) *
                           (static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                            intervals[static_cast<std::size_t>(i)]);
            pts.push_back(p);
            int i = d - 1;
            while (i >= 0 && ++idx[static_cast<std::size_t>(i)] ==
                                 intervals[static_cast<std::size_t>(i)] + 1) {
                idx[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
        }
        return pts;
    };

    VarianceBoundReport report;
    report.all_within_bound = true;
    for (const double delta : deltas) {
        if (!(delta > 0.0))
            throw InvalidInput("verify_variance_bound: deltas must be positive");
        PointList samples = uniform_grid(delta);
        GpPosterior gp = GpPosterior::fit(
            kernel, samples,
            Eigen::VectorXd::Zero(static_cast<Eigen::Index>(samples.size())));

        const PointList probes = uniform_grid(delta / 10.0);
        double measured = 0.0;
        const std::size_t chunk = 4096;
        Eigen::VectorXd mu, sigma;
        for (std::size_t start = 0; start < probes.size(); start += chunk) {
            const std::size_t stop = std::min(start + chunk, probes.size());
            PointList block(probes.begin() + static_cast<std::ptrdiff_t>(start),
                            probes.begin() + static_cast<std::ptrdiff_t>(stop));
            gp.predict_at(block, mu, sigma);
            measured = std::max(measured, sigma.maxCoeff());
        }

        VarianceBoundRow row;
        row.delta = delta;
        row.bound = interpolation_error_bound(delta, q_const);
        row.measured = measured;
        row.ratio = measured / row.bound;
        if (row.ratio > 1.0 + 1e-4) report.all_within_bound = false;
        report.rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i)
        report.decay_ratios.push_back(report.rows[i].measured /
                                      report.rows[i + 1].measured);
    return report;
}

namespace {

std::string join_coords(const Point& x) {
    std::string out;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (i > 0) out += ';';
        out += format_double(x[i]);
    }
    return out;
}

} // namespace

void write_trace_csv(const std::filesystem::path& path,
                     const RegretTrace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "t,iter,x,f_x,regret,cum_regret,delta,beta,region_radius,n_new\n";
    for (const TraceRow& row : trace.rows) {
        out << row.t << ',' << row.iter << ',' << join_coords(row.x) << ','
            << format_double(row.f) << ',' << format_double(row.regret) << ','
            << format_double(row.cum_regret) << ',' << format_double(row.delta)
            << ',' << format_double(row.beta) << ','
            << format_double(row.region_radius) << ',' << row.n_new << '\n';
    }
}

RegretTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty trace file '" + path.string() + "'");
    RegretTrace trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 10)
            throw std::runtime_error("malformed trace row: " + line);
        TraceRow row;
        row.t = std::stoi(cells[0]);
        row.iter = std::stoi(cells[1]);
        std::vector<double> coords;
        std::stringstream xs(cells[2]);
        std::string c;
        while (std::getline(xs, c, ';')) coords.push_back(std::stod(c));
        row.x = Eigen::Map<Eigen::VectorXd>(coords.data(),
                                            static_cast<Eigen::Index>(coords.size()));
        row.f = std::stod(cells[3]);
        row.regret = std::stod(cells[4]);
        row.cum_regret = std::stod(cells[5]);
        row.delta = std::stod(cells[6]);
        row.beta = std::stod(cells[7]);
        row.region_radius = std::stod(cells[8]);
        row.n_new = std::stoi(cells[9]);
        trace.rows.push_back(std::move(row));
    }
    trace.reason = StopReason::BudgetExhausted;
    return trace;
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<RunSummary>& summaries) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "replication,seed,optimizer,reason,final_regret,cum_regret,"
           "envelope_violated,argmax_exited,samples\n";
    for (const RunSummary& s : summaries) {
        out << s.replication << ',' << s.seed << ',' << s.optimizer << ','
            << to_string(s.reason) << ',' << format_double(s.final_simple_regret)
            << ',' << format_double(s.total_cumulative_regret) << ','
            << (s.envelope_violated ? 1 : 0) << ','
            << (s.argmax_exited_region ? 1 : 0) << ',' << s.samples << '\n';
    }
}

void emit_plot_data(const std::filesystem::path& dir,
                    const ExperimentResult& result, int dim) {
    std::filesystem::create_directories(dir);
    std::ofstream regret(dir / "regret_vs_t.csv");
    std::ofstream cum(dir / "cum_regret_vs_t.csv");
    std::ofstream rate(dir / "rate_shape.csv");
    std::ofstream radius(dir / "region_radius_vs_iter.csv");
    regret << "replication,t,regret\n";
    cum << "replication,t,cum_regret\n";
    rate << "replication,t,t_over_logt_pow,ln_regret\n";
    radius << "replication,iter,region_radius,n_total,n_new,delta,eps\n";

    const double burn_in = std::exp(dim / 4.0);
    for (std::size_t rep = 0; rep < result.traces.size(); ++rep) {
        for (const TraceRow& row : result.traces[rep].rows) {
            regret << rep << ',' << row.t << ',' << format_double(row.regret)
                   << '\n';
            cum << rep << ',' << row.t << ',' << format_double(row.cum_regret)
                << '\n';
            if (row.t > burn_in && row.regret > 0.0) {
                const double u =
                    row.t / std::pow(std::log(static_cast<double>(row.t)),
                                     dim / 4.0);
                rate << rep << ',' << row.t << ',' << format_double(u) << ','
                     << format_double(std::log(row.regret)) << '\n';
            }
        }
        for (const IterationStat& it : result.traces[rep].iterations)
            radius << rep << ',' << it.iter << ',' << format_double(it.rho)
                   << ',' << it.n_total << ',' << it.n_new << ','
                   << format_double(it.delta) << ',' << format_double(it.eps)
                   << '\n';
    }
}

void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& optimizers,
                          const std::vector<std::uint64_t>& seeds,
                          const std::vector<const RegretTrace*>& traces) {
    if (optimizers.size() != traces.size() || seeds.size() != traces.size())
        throw InvalidInput("write_comparison_csv: mismatched inputs");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << "optimizer,seed,t,regret,cum_regret\n";
    for (std::size_t i = 0; i < traces.size(); ++i)
        for (const TraceRow& row : traces[i]->rows)
            out << optimizers[i] << ',' << seeds[i] << ',' << row.t << ','
                << format_double(row.regret) << ','
                << format_double(row.cum_regret) << '\n';
}

} // namespace gpbnb
