// jdopt: solve, verify, simulate and sweep the IPO-threshold and
// dividend-barrier problems for a jump diffusion with exponential jumps.
//
// Subcommands: solve, sweep, verify, simulate, compare. A single JSON config
// carries the model and problem settings; every flag overrides its config
// key. See README.md for the schema.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jdopt/harvest.hpp"
#include "jdopt/ipo.hpp"
#include "jdopt/sim.hpp"
#include "jdopt/verify.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerifyFail = 4;

struct SweepSpec {
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
};

struct GridSpecCfg {
    double lo = 0.0;
    double hi = -1.0; // <= lo: derive from the solution
    int n = 200;
};

struct RunConfig {
    double mu = -0.05, sigma = 0.25, lambda = 0.75, eta = 1.5, alpha = 0.1;
    std::string problem = "ipo";
    double r = 1.25, a = 0.0, budget = 0.0;
    std::vector<double> r_list;
    std::optional<SweepSpec> sweep;
    GridSpecCfg grid;
    jdopt::SimConfig sim;
    double sim_x0 = 1.0;
    std::string out;
    std::string format = "csv";
};

void apply_json(RunConfig& cfg, const ordered_json& j) {
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("mu", cfg.mu);
    get("sigma", cfg.sigma);
    get("lambda", cfg.lambda);
    get("eta", cfg.eta);
    get("alpha", cfg.alpha);
    get("problem", cfg.problem);
    get("r", cfg.r);
    get("a", cfg.a);
    get("budget", cfg.budget);
    get("r_list", cfg.r_list);
    get("out", cfg.out);
    get("format", cfg.format);
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("lo")) cfg.grid.lo = g.at("lo").get<double>();
        if (g.contains("hi")) cfg.grid.hi = g.at("hi").get<double>();
        if (g.contains("n")) cfg.grid.n = g.at("n").get<int>();
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        SweepSpec spec;
        spec.param = s.at("param").get<std::string>();
        spec.lo = s.at("lo").get<double>();
        spec.hi = s.at("hi").get<double>();
        spec.n = s.at("n").get<int>();
        cfg.sweep = spec;
    }
    if (j.contains("sim")) {
        const auto& s = j.at("sim");
        if (s.contains("dt")) cfg.sim.dt = s.at("dt").get<double>();
        if (s.contains("horizon")) cfg.sim.horizon = s.at("horizon").get<double>();
        if (s.contains("n_paths")) cfg.sim.n_paths = s.at("n_paths").get<std::int64_t>();
        if (s.contains("seed")) cfg.sim.seed = s.at("seed").get<std::uint64_t>();
        if (s.contains("antithetic")) cfg.sim.antithetic = s.at("antithetic").get<bool>();
        if (s.contains("x0")) cfg.sim_x0 = s.at("x0").get<double>();
    }
}

jdopt::ModelParams model_of(const RunConfig& cfg) {
    return jdopt::ModelParams(cfg.mu, cfg.sigma, cfg.lambda, cfg.eta, cfg.alpha);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw jdopt::ValidationError("cannot open output file: " + path);
    os << content;
}

// --out is a basename; an empty one means stdout.
std::string out_path(const std::string& base, const char* ext) {
    return base.empty() ? base : base + ext;
}

std::vector<double> make_grid(double lo, double hi, int n) {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

ordered_json model_json(const RunConfig& cfg) {
    ordered_json m;
    m["mu"] = cfg.mu;
    m["sigma"] = cfg.sigma;
    m["lambda"] = cfg.lambda;
    m["eta"] = cfg.eta;
    m["alpha"] = cfg.alpha;
    return m;
}

ordered_json roots_json(const jdopt::CharRoots& roots) {
    ordered_json j;
    j["gamma1"] = roots.gamma1;
    j["gamma2"] = roots.gamma2;
    j["gamma3"] = roots.gamma3;
    return j;
}

ordered_json ipo_artifact(const RunConfig& cfg, const jdopt::IpoSolution& sol) {
    ordered_json j;
    j["problem"] = "ipo";
    j["model"] = model_json(cfg);
    j["r"] = sol.r;
    j["a"] = sol.a;
    j["roots"] = roots_json(sol.roots);
    j["b"] = sol.b;
    j["b_star"] = sol.b_star;
    ordered_json c;
    c["A1"] = sol.A1;
    c["A2"] = sol.A2;
    c["A3"] = sol.A3;
    c["D1"] = sol.D1;
    c["D2"] = sol.D2;
    c["D3"] = sol.D3;
    j["coefficients"] = c;
    return j;
}

ordered_json harvest_artifact(const RunConfig& cfg, const jdopt::HarvestSolution& sol) {
    ordered_json j;
    j["problem"] = "harvest";
    j["model"] = model_json(cfg);
    j["roots"] = roots_json(sol.roots);
    j["b"] = sol.b;
    j["b_star"] = sol.model.b_star();
    ordered_json c;
    c["B1"] = sol.B1;
    c["B2"] = sol.B2;
    c["B3"] = sol.B3;
    c["K1"] = sol.K1;
    c["K2"] = sol.K2;
    c["K3"] = sol.K3;
    j["coefficients"] = c;
    return j;
}

std::string table_csv(const std::vector<jdopt::ValueRecord>& table) {
    std::ostringstream os;
    os << "x,v,v1,v2\n";
    for (const auto& rec : table)
        os << fmt(rec.x) << ',' << fmt(rec.v) << ',' << fmt(rec.v1) << ','
           << fmt(rec.v2) << '\n';
    return os.str();
}

int cmd_solve(const RunConfig& cfg) {
    const jdopt::ModelParams m = model_of(cfg);
    ordered_json artifact;
    std::vector<jdopt::ValueRecord> table;

    if (cfg.problem == "ipo") {
        const auto sol = jdopt::solve_ipo_threshold(jdopt::IpoParams(m, cfg.r, cfg.a));
        artifact = ipo_artifact(cfg, sol);
        const double hi = cfg.grid.hi > cfg.grid.lo ? cfg.grid.hi : 2.0 * sol.b;
        table = jdopt::tabulate_ipo(sol, make_grid(cfg.grid.lo, hi, cfg.grid.n));
    } else if (cfg.problem == "harvest") {
        const auto sol = jdopt::solve_harvest_threshold(m);
        artifact = harvest_artifact(cfg, sol);
        const double hi = cfg.grid.hi > cfg.grid.lo ? cfg.grid.hi : 3.0 * sol.b;
        table = jdopt::tabulate_harvest(sol, make_grid(cfg.grid.lo, hi, cfg.grid.n));
    } else {
        throw jdopt::ValidationError("solve: problem must be 'ipo' or 'harvest'");
    }

    const std::string base = cfg.out.empty() ? std::string("solution") : cfg.out;
    write_output(base + ".json", artifact.dump(2) + "\n");
    write_output(base + ".csv", table_csv(table));
    std::cout << "wrote " << base << ".json and " << base << ".csv (b = "
              << fmt(artifact.at("b").get<double>()) << ")\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    if (!cfg.sweep) throw jdopt::ValidationError("sweep: missing sweep spec");
    const SweepSpec& s = *cfg.sweep;
    static const std::vector<std::string> kParams = {"mu",  "sigma", "lambda", "eta",
                                                     "alpha", "r",   "a"};
    if (std::find(kParams.begin(), kParams.end(), s.param) == kParams.end())
        throw jdopt::ValidationError("sweep: unknown parameter " + s.param);
    if (!(s.n >= 2) || !std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi))
        throw jdopt::ValidationError("sweep: need finite lo < hi and n >= 2");

    struct Row {
        double value;
        double b = std::nan("");
        std::string error;
    };
    std::vector<Row> rows;
    int failures = 0;
    for (int i = 0; i < s.n; ++i) {
        RunConfig point = cfg;
        const double value = s.lo + (s.hi - s.lo) * i / (s.n - 1);
        if (s.param == "mu") point.mu = value;
        else if (s.param == "sigma") point.sigma = value;
        else if (s.param == "lambda") point.lambda = value;
        else if (s.param == "eta") point.eta = value;
        else if (s.param == "alpha") point.alpha = value;
        else if (s.param == "r") point.r = value;
        else point.a = value;

        Row row{value};
        try {
            if (cfg.problem == "harvest") {
                row.b = jdopt::solve_harvest_threshold(model_of(point)).b;
            } else {
                row.b = jdopt::solve_ipo_threshold(
                            jdopt::IpoParams(model_of(point), point.r, point.a))
                            .b;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
            ++failures;
        }
        rows.push_back(std::move(row));
    }
    if (failures == s.n) {
        std::cerr << "sweep: every point failed\n";
        return kExitSolver;
    }

    if (cfg.format == "json") {
        ordered_json j = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json item;
            item["param"] = s.param;
            item["value"] = row.value;
            if (row.error.empty()) item["b"] = row.b;
            else item["error"] = row.error;
            j.push_back(std::move(item));
        }
        write_output(out_path(cfg.out, ".json"), j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "param,value,b,error\n";
        for (const auto& row : rows) {
            os << s.param << ',' << fmt(row.value) << ',';
            if (row.error.empty()) os << fmt(row.b) << ',';
            else os << "ERROR," << row.error;
            os << '\n';
        }
        write_output(out_path(cfg.out, ".csv"), os.str());
    }
    return 0;
}

// An artifact whose stored pieces cannot even be assembled into a valid value
// function (for example after tampering with b) fails verification outright.
jdopt::ConditionReport inconsistent_artifact_report(const std::string& why) {
    jdopt::ConditionReport rep;
    rep.checks.push_back({"artifact_consistency: " + why, 0.0, 1.0, 0.0, false});
    rep.verdict = false;
    return rep;
}

// Rebuilds a solved object from a solve artifact for round-trip verification.
jdopt::ConditionReport verify_artifact(const ordered_json& art) {
    const auto& mj = art.at("model");
    jdopt::ModelParams m(mj.at("mu").get<double>(), mj.at("sigma").get<double>(),
                         mj.at("lambda").get<double>(), mj.at("eta").get<double>(),
                         mj.at("alpha").get<double>());
    const auto& rj = art.at("roots");
    jdopt::CharRoots roots{rj.at("gamma1").get<double>(), rj.at("gamma2").get<double>(),
                           rj.at("gamma3").get<double>()};
    const auto& c = art.at("coefficients");
    if (art.at("problem").get<std::string>() == "harvest") {
        jdopt::HarvestSolution sol{m,
                                   art.at("b").get<double>(),
                                   c.at("B1").get<double>(),
                                   c.at("B2").get<double>(),
                                   c.at("B3").get<double>(),
                                   c.at("K1").get<double>(),
                                   c.at("K2").get<double>(),
                                   c.at("K3").get<double>(),
                                   roots};
        try {
            return jdopt::check_harvest_conditions(sol);
        } catch (const jdopt::ValidationError& e) {
            return inconsistent_artifact_report(e.what());
        }
    }
    jdopt::IpoSolution sol{m,
                           art.at("a").get<double>(),
                           art.at("b").get<double>(),
                           c.at("A1").get<double>(),
                           c.at("A2").get<double>(),
                           c.at("A3").get<double>(),
                           c.at("D1").get<double>(),
                           c.at("D2").get<double>(),
                           c.at("D3").get<double>(),
                           roots,
                           art.at("r").get<double>(),
                           m.b_star()};
    try {
        return jdopt::check_ipo_conditions(sol);
    } catch (const jdopt::ValidationError& e) {
        return inconsistent_artifact_report(e.what());
    }
}

int cmd_verify(const RunConfig& cfg, const std::string& solution_path) {
    jdopt::ConditionReport report;
    if (!solution_path.empty()) {
        std::ifstream is(solution_path);
        if (!is) throw jdopt::ValidationError("cannot read solution: " + solution_path);
        ordered_json art = ordered_json::parse(is);
        report = verify_artifact(art);
    } else if (cfg.problem == "harvest") {
        report = jdopt::check_harvest_conditions(
            jdopt::solve_harvest_threshold(model_of(cfg)));
    } else {
        report = jdopt::check_ipo_conditions(jdopt::solve_ipo_threshold(
            jdopt::IpoParams(model_of(cfg), cfg.r, cfg.a)));
    }
    write_output(out_path(cfg.out, ".json"), jdopt::report_to_json(report) + "\n");
    return report.verdict ? 0 : kExitVerifyFail;
}

int cmd_simulate(const RunConfig& cfg) {
    const jdopt::ModelParams m = model_of(cfg);
    double analytic = 0.0;
    jdopt::SimEstimate est;
    if (cfg.problem == "harvest") {
        const auto sol = jdopt::solve_harvest_threshold(m);
        analytic = sol.value(cfg.sim_x0);
        est = jdopt::simulate_harvest(m, sol.b, cfg.sim_x0, cfg.sim);
    } else {
        const auto sol = jdopt::solve_ipo_threshold(jdopt::IpoParams(m, cfg.r, cfg.a));
        analytic = sol.value(cfg.sim_x0);
        est = jdopt::simulate_ipo(m, sol.a, sol.b, sol.r, cfg.sim_x0, cfg.sim);
    }
    const double z = est.std_error > 0.0 ? (est.mean - analytic) / est.std_error : 0.0;

    ordered_json j;
    j["mean"] = est.mean;
    j["std_error"] = est.std_error;
    j["n_paths"] = est.n_paths;
    j["dt"] = cfg.sim.dt;
    j["seed"] = cfg.sim.seed;
    j["truncated_fraction"] = est.truncated_fraction;
    j["analytic"] = analytic;
    j["z_score"] = z;
    write_output(out_path(cfg.out, ".json"), j.dump(2) + "\n");
    if (!cfg.out.empty())
        std::cout << "mean=" << fmt(est.mean) << " se=" << fmt(est.std_error)
                  << " analytic=" << fmt(analytic) << " z=" << fmt(z) << "\n";
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    std::vector<double> r_list = cfg.r_list;
    if (r_list.empty()) r_list = {cfg.r};
    for (double r : r_list)
        if (!(r > 1.0)) throw jdopt::ValidationError("compare: every r must be > 1");

    const jdopt::ModelParams m = model_of(cfg);
    const auto harvest = jdopt::solve_harvest_threshold(m);

    std::vector<jdopt::IpoSolution> ipos;
    for (double r : r_list)
        ipos.push_back(jdopt::solve_ipo_threshold(jdopt::IpoParams(m, r, 0.0)));

    double hi = cfg.grid.hi;
    if (!(hi > cfg.grid.lo)) {
        hi = harvest.b;
        for (const auto& s : ipos) hi = std::max(hi, 1.5 * s.b);
    }
    const std::vector<double> grid = make_grid(cfg.grid.lo, hi, cfg.grid.n);

    if (cfg.format == "json") {
        ordered_json j = ordered_json::array();
        for (double x : grid) {
            ordered_json row;
            row["x"] = x;
            row["v_harvest"] = harvest.value(x);
            for (std::size_t k = 0; k < r_list.size(); ++k)
                row["v_ipo_r" + std::to_string(r_list[k])] = ipos[k].value(x);
            j.push_back(std::move(row));
        }
        write_output(out_path(cfg.out, ".json"), j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "x,v_harvest";
        for (double r : r_list) os << ",v_ipo_r" << r;
        os << '\n';
        for (double x : grid) {
            os << fmt(x) << ',' << fmt(harvest.value(x));
            for (const auto& s : ipos) os << ',' << fmt(s.value(x));
            os << '\n';
        }
        write_output(out_path(cfg.out, ".csv"), os.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold solvers for the IPO and dividend problems of a jump "
                 "diffusion with exponential jumps"};
    app.require_subcommand(1);

    std::string config_path, out, format, solution_path;
    std::optional<double> mu, sigma, lambda, eta, alpha, r, a, budget, x0;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> problem;

    for (auto* sub : {app.add_subcommand("solve", "Solve and emit artifact + value table"),
                      app.add_subcommand("sweep", "Boundary sensitivity sweep"),
                      app.add_subcommand("verify", "Check the verification-lemma conditions"),
                      app.add_subcommand("simulate", "Monte Carlo cross-validation"),
                      app.add_subcommand("compare", "IPO vs harvest value tables")}) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out, "Output path (basename for solve)");
        sub->add_option("--format", format, "csv or json");
        sub->add_option("--seed", seed, "Simulation seed");
        sub->add_option("--mu", mu);
        sub->add_option("--sigma", sigma);
        sub->add_option("--lambda", lambda);
        sub->add_option("--eta", eta);
        sub->add_option("--alpha", alpha);
        sub->add_option("--r", r);
        sub->add_option("--a", a);
        sub->add_option("--budget", budget);
        sub->add_option("--x0", x0, "Simulation start value");
        sub->add_option("--problem", problem, "ipo, harvest or compare");
        if (std::string(sub->get_name()) == "verify")
            sub->add_option("--solution", solution_path, "Solve artifact to re-check");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw jdopt::ValidationError("cannot read config: " + config_path);
            apply_json(cfg, ordered_json::parse(is));
        }
        if (mu) cfg.mu = *mu;
        if (sigma) cfg.sigma = *sigma;
        if (lambda) cfg.lambda = *lambda;
        if (eta) cfg.eta = *eta;
        if (alpha) cfg.alpha = *alpha;
        if (r) cfg.r = *r;
        if (a) cfg.a = *a;
        if (budget) cfg.budget = *budget;
        if (x0) cfg.sim_x0 = *x0;
        if (seed) cfg.sim.seed = *seed;
        if (problem) cfg.problem = *problem;
        if (!out.empty()) cfg.out = out;
        if (!format.empty()) cfg.format = format;

        if (app.got_subcommand("solve")) return cmd_solve(cfg);
        if (app.got_subcommand("sweep")) return cmd_sweep(cfg);
        if (app.got_subcommand("verify")) return cmd_verify(cfg, solution_path);
        if (app.got_subcommand("simulate")) return cmd_simulate(cfg);
        return cmd_compare(cfg);
    } catch (const jdopt::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const jdopt::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const jdopt::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const jdopt::Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}
