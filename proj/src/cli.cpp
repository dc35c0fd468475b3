#include "depolarb/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "depolarb/analytic.hpp"
#include "depolarb/bayes.hpp"
#include "depolarb/channel.hpp"
#include "depolarb/errors.hpp"
#include "depolarb/mc.hpp"
#include "depolarb/prior.hpp"
#include "json.hpp"

namespace depolarb {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json matrix_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

int emit(const std::string& text, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
    if (out_path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream f(out_path);
    if (!f) {
        err << "error: cannot open output file " << out_path << "\n";
        return 2;
    }
    f << text;
    return 0;
}

Prior make_prior(const std::string& kind, int d) {
    return kind == "narrow" ? Prior::uniform_narrow() : Prior::uniform_full(d);
}

StrategyKind parse_strategy(const std::string& name) {
    if (name == "ent-one") return StrategyKind::ent_one;
    if (name == "ent-both") return StrategyKind::ent_both;
    return StrategyKind::sep;
}

int run_cost_x(double x_step, const std::string& format, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    std::vector<double> xs;
    for (int i = 0;; ++i) {
        double x = i * x_step;
        if (x > 1.0 + 1e-12) break;
        xs.push_back(std::min(x, 1.0));
    }
    if (xs.back() < 1.0 - 1e-12) xs.push_back(1.0);
    std::ostringstream text;
    if (format == "csv") {
        text << "x,cost_case_a,cost_case_b\n";
        for (double x : xs)
            text << fmt17(x) << ',' << fmt17(case_a(x).cost) << ',' << fmt17(case_b(x).cost)
                 << '\n';
    } else {
        json rows = json::array();
        for (double x : xs)
            rows.push_back(
                {{"x", x}, {"cost_case_a", case_a(x).cost}, {"cost_case_b", case_b(x).cost}});
        text << rows.dump(2) << '\n';
    }
    return emit(text.str(), out_path, out, err);
}

int run_cost_m(int d, int m_max, const std::string& prior_kind, const std::string& format,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
    const Prior prior = make_prior(prior_kind, d);
    std::ostringstream text;
    json rows = json::array();
    if (format == "csv") text << "M,C1,C2,C_SEP,C_ML_formula,C_ML_exact\n";
    for (int pairs = 1; pairs <= m_max; ++pairs) {
        const double c1 = cost_series(make_strategy(StrategyKind::ent_one, d, pairs), prior).cost;
        const double c2 = cost_series(make_strategy(StrategyKind::ent_both, d, pairs), prior).cost;
        const double csep = cost_series(make_strategy(StrategyKind::sep, d, pairs), prior).cost;
        const MlResult ml = cost_ml(pairs, d, prior);
        if (format == "csv")
            text << pairs << ',' << fmt17(c1) << ',' << fmt17(c2) << ',' << fmt17(csep) << ','
                 << fmt17(ml.formula) << ',' << fmt17(ml.exact) << '\n';
        else
            rows.push_back({{"M", pairs},
                            {"C1", c1},
                            {"C2", c2},
                            {"C_SEP", csep},
                            {"C_ML_formula", ml.formula},
                            {"C_ML_exact", ml.exact}});
    }
    if (format != "csv") text << rows.dump(2) << '\n';
    return emit(text.str(), out_path, out, err);
}

int run_theta_op(const std::string& case_name, double x, int grid, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
    const char case_id = case_name[0];
    const Prior prior = Prior::uniform_full(2);
    const MatrixPolynomial family = case_id == 'a' ? output_case_a(x) : output_case_b(x);
    const RiskMoments mom = risk_moments(family, prior);
    const ComplexMatrix theta_num = minimizing_operator(mom);
    const EstimatorPOM pom = optimal_pom(theta_num);
    const ComplexMatrix theta_closed =
        case_id == 'a' ? case_a(x).theta_matrix : case_b(x).theta_matrix;
    const double cost_closed = case_id == 'a' ? case_a(x).cost : case_b(x).cost;
    const OptimalityReport rep = verify_optimality(family, prior, pom, grid);

    json doc;
    doc["case"] = case_name;
    doc["x"] = x;
    doc["theta_numerical"] = matrix_json(theta_num);
    doc["theta_closed"] = matrix_json(theta_closed);
    doc["max_discrepancy"] = max_abs(theta_num - theta_closed);
    json guesses = json::array(), ranks = json::array();
    for (const PomElement& e : pom.elements) {
        guesses.push_back(e.guess);
        ranks.push_back(e.rank);
    }
    doc["guesses"] = guesses;
    doc["projector_ranks"] = ranks;
    doc["cost"] = bayes_cost(mom, theta_num);
    doc["cost_closed"] = cost_closed;
    doc["optimality"] = {{"gamma_herm_residual", rep.gamma_herm_residual},
                         {"cond1_residual", rep.cond1_residual},
                         {"cond2_min_eig", rep.cond2_min_eig},
                         {"pass", rep.pass()}};
    return emit(doc.dump(2) + "\n", out_path, out, err);
}

int run_simulate(const std::string& case_name, double x, bool have_x,
                 const std::string& strategy, int d, int pairs, const std::string& prior_kind,
                 long long trials, std::uint64_t seed, const std::string& format,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
    const Prior prior = make_prior(prior_kind, d);
    json doc;
    SimReport rep;
    double target = 0.0;
    if (!case_name.empty()) {
        if (!have_x) {
            err << "error: --case requires --x\n";
            return 2;
        }
        const char case_id = case_name[0];
        const MatrixPolynomial family = case_id == 'a' ? output_case_a(x) : output_case_b(x);
        const RiskMoments mom = risk_moments(family, prior);
        const ComplexMatrix theta_op = minimizing_operator(mom);
        const EstimatorPOM pom = optimal_pom(theta_op);
        target = bayes_cost(mom, theta_op);
        rep = simulate_two_qubit(case_id, x, pom, prior, trials, seed);
        doc["case"] = case_name;
        doc["x"] = x;
    } else if (!strategy.empty()) {
        if (strategy == "ml") {
            const MlResult ml = cost_ml(pairs, d, prior);
            const MixtureStrategy s = make_strategy(StrategyKind::sep, d, pairs);
            std::vector<double> guesses;
            for (const Rational& g : ml.guesses) guesses.push_back(to_double(g));
            target = ml.exact;
            rep = simulate_mixture(s, guesses, prior, trials, seed);
        } else {
            const MixtureStrategy s = make_strategy(parse_strategy(strategy), d, pairs);
            const SeriesResult series = cost_series(s, prior);
            target = series.cost;
            rep = simulate_mixture(s, series.guesses, prior, trials, seed);
        }
        doc["strategy"] = strategy;
        doc["pairs"] = pairs;
    } else {
        err << "error: simulate needs --case or --strategy\n";
        return 2;
    }
    const double z = (rep.empirical_cost - target) / rep.std_error;
    doc["d"] = d;
    doc["prior"] = prior_kind;
    doc["trials"] = rep.trials;
    doc["seed"] = rep.seed;
    doc["empirical_cost"] = rep.empirical_cost;
    doc["std_error"] = rep.std_error;
    doc["analytic_cost"] = target;
    doc["z_score"] = z;
    std::ostringstream text;
    if (format == "csv") {
        text << "trials,seed,empirical_cost,std_error,analytic_cost,z_score\n"
             << rep.trials << ',' << rep.seed << ',' << fmt17(rep.empirical_cost) << ','
             << fmt17(rep.std_error) << ',' << fmt17(target) << ',' << fmt17(z) << '\n';
    } else {
        text << doc.dump(2) << '\n';
    }
    return emit(text.str(), out_path, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayes-optimal estimation toolkit for the depolarizing channel"};
    app.require_subcommand(1);

    std::string out_path;
    app.add_option("--out", out_path, "Write output to this file instead of stdout")
        ->capture_default_str();

    auto* sc_cost_x = app.add_subcommand("cost-x", "Average cost of both two-qubit probes vs x");
    double x_step = 0.01;
    std::string costx_format = "csv";
    sc_cost_x->add_option("--x-step", x_step, "Sweep step")->check(CLI::Range(1e-6, 1.0));
    sc_cost_x->add_option("--format", costx_format)->check(CLI::IsMember({"csv", "json"}));

    auto* sc_cost_m = app.add_subcommand("cost-m", "Strategy costs vs number of pairs M");
    int costm_d = 2, m_max = 20;
    std::string costm_prior = "full", costm_format = "csv";
    sc_cost_m->add_option("--d", costm_d, "Channel dimension")->check(CLI::Range(2, 1000));
    sc_cost_m->add_option("--m-max", m_max, "Largest pair count")->check(CLI::Range(1, 200));
    sc_cost_m->add_option("--prior", costm_prior)->check(CLI::IsMember({"full", "narrow"}));
    sc_cost_m->add_option("--format", costm_format)->check(CLI::IsMember({"csv", "json"}));

    auto* sc_theta = app.add_subcommand("theta-op", "Minimizing operator: solver vs closed form");
    std::string theta_case;
    double theta_x = 0.0;
    int theta_grid = 1001;
    sc_theta->add_option("--case", theta_case)->check(CLI::IsMember({"a", "b"}))->required();
    sc_theta->add_option("--x", theta_x, "Schmidt weight")->check(CLI::Range(0.0, 1.0))->required();
    sc_theta->add_option("--grid", theta_grid, "Positivity-check grid")->check(CLI::Range(3, 1000000));

    auto* sc_sim = app.add_subcommand("simulate", "Monte-Carlo run against the analytic cost");
    std::string sim_case, sim_strategy, sim_prior = "full", sim_format = "json";
    double sim_x = 0.0;
    int sim_d = 2, sim_pairs = 1;
    long long trials = 1000000;
    std::uint64_t seed = 42;
    auto* opt_case = sc_sim->add_option("--case", sim_case)->check(CLI::IsMember({"a", "b"}));
    auto* opt_x = sc_sim->add_option("--x", sim_x, "Schmidt weight")->check(CLI::Range(0.0, 1.0));
    auto* opt_strategy =
        sc_sim->add_option("--strategy", sim_strategy)
            ->check(CLI::IsMember({"ent-one", "ent-both", "sep", "ml"}));
    opt_case->excludes(opt_strategy);
    sc_sim->add_option("--d", sim_d, "Channel dimension")->check(CLI::Range(2, 1000));
    sc_sim->add_option("--m-max", sim_pairs, "Number of pairs M")->check(CLI::Range(1, 200));
    sc_sim->add_option("--prior", sim_prior)->check(CLI::IsMember({"full", "narrow"}));
    sc_sim->add_option("--trials", trials, "Monte-Carlo trials");
    sc_sim->add_option("--seed", seed, "RNG seed");
    sc_sim->add_option("--format", sim_format)->check(CLI::IsMember({"csv", "json"}));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sc_cost_x->parsed()) return run_cost_x(x_step, costx_format, out_path, out, err);
        if (sc_cost_m->parsed())
            return run_cost_m(costm_d, m_max, costm_prior, costm_format, out_path, out, err);
        if (sc_theta->parsed()) return run_theta_op(theta_case, theta_x, theta_grid, out_path, out, err);
        if (sc_sim->parsed()) {
            if (trials < 10000) {
                err << "error: --trials must be at least 10000\n";
                return 2;
            }
            return run_simulate(sim_case, sim_x, opt_x->count() > 0, sim_strategy, sim_d,
                                sim_pairs, sim_prior, trials, seed, sim_format, out_path, out,
                                err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace depolarb
