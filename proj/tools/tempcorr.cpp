#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "tempcorr/compare.hpp"
#include "tempcorr/diversity.hpp"
#include "tempcorr/figures.hpp"
#include "tempcorr/io.hpp"
#include "tempcorr/joint_stats.hpp"
#include "tempcorr/local_delay.hpp"
#include "tempcorr/montecarlo.hpp"
#include "tempcorr/network.hpp"
#include "tempcorr/two_threshold.hpp"

namespace tc = tempcorr;

namespace {

struct GlobalArgs {
    tc::NetworkParams params;
    double alpha = 0.0;  // set only when --alpha is given
    double mu = 1.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

// Extra knobs shared by eval, curve and delay.
struct EvalArgs {
    std::string quantity;
    int n = 1;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double nu = 0.0;
    bool has_pair = false;
    bool has_nu = false;
    bool exact = false;
    bool independent = false;
    std::string gain_mode = "contention";
    std::string mode = "rayleigh";
    double beta = 0.5;
    int terms = 120;
};

using Values = std::vector<std::pair<std::string, double>>;

tc::TwoThresholdSpec two_spec(const GlobalArgs& g, const EvalArgs& a) {
    double dh = tc::contention(g.params).delta_hat;
    if (a.has_pair) {
        tc::TwoThresholdSpec s;
        s.delta_hat = dh;
        s.p = g.params.p;
        s.delta = g.params.delta;
        s.theta1 = a.theta1;
        s.theta2 = a.theta2;
        return s;
    }
    // --theta doubles as theta_bar, split by --nu (0 when absent)
    return tc::TwoThresholdSpec::from_nu(dh, g.params.p, g.params.delta,
                                         g.params.theta, a.nu);
}

tc::DelayModel delay_model(const GlobalArgs& g, const EvalArgs& a) {
    tc::DelayModel m;
    m.base = g.params;
    m.mode = a.mode == "fixed" ? tc::DistanceMode::fixed
                               : tc::DistanceMode::rayleigh;
    m.mu = g.mu;
    return m;
}

Values evaluate_any(const std::string& q, const GlobalArgs& g,
                    const EvalArgs& a) {
    const tc::NetworkParams& P = g.params;
    if (q == "div_poly") return {{"value", tc::div_poly(a.n, P.p, P.delta)}};
    if (q == "div_poly_one_minus_delta")
        return {{"value", tc::div_poly_one_minus_delta(a.n, P.p, P.delta)}};
    if (q == "div_poly_delta_form")
        return {{"value", tc::div_poly_delta_form(a.n, P.p, P.delta)}};
    if (q == "div_poly_approx")
        return {{"value", tc::div_poly_delta_up1_approx(a.n, P.p, P.delta)}};
    if (q == "simo") return {{"value", tc::simo_diversity(a.n, P.delta)}};
    if (q == "contention") {
        tc::Contention c = tc::contention(P);
        return {{"big_delta", c.big_delta},
                {"delta_hat", c.delta_hat},
                {"delta_prime", c.delta_prime},
                {"gamma_sc", c.gamma_sc}};
    }
    if (q == "joint_success") return {{"value", tc::joint_success(P, a.n)}};
    if (q == "cond_success")
        return {{"value", tc::cond_success_after_successes(P, a.n)}};
    if (q == "at_least_once")
        return {{"value", tc::at_least_one_success(P, a.n)}};
    if (q == "joint_outage") return {{"value", tc::joint_outage(P, a.n)}};
    if (q == "joint_success_independent")
        return {{"value", tc::joint_success_independent(P, a.n)}};
    if (q == "correlation")
        return {{"value", tc::correlation_coefficient(P)}};
    if (q == "cond_after_failure") {
        tc::CondAfterFailure c = tc::cond_success_after_failure(P);
        return {{"value", c.value}, {"bound", c.bound}};
    }
    if (q == "asymptotic_cond_outage")
        return {{"value", tc::asymptotic_cond_outage(P.p, P.delta, a.n)}};
    if (q == "taylor_at_least_once")
        return {{"value", tc::taylor_at_least_once(P, a.n)}};
    if (q == "joint_success_bounded")
        return {{"value", tc::joint_success_bounded(P, a.n)}};
    if (q == "diversity_gain") {
        tc::GainMode mode = a.gain_mode == "p" ? tc::GainMode::vary_p
                                               : tc::GainMode::vary_contention;
        return {{"value",
                 tc::diversity_gain_estimate(P, a.n, mode, a.independent)}};
    }
    if (q == "joint_success_two")
        return {{"value", tc::joint_success_two(two_spec(g, a))}};
    if (q == "joint_sir_cdf")
        return {{"value", tc::joint_sir_cdf(two_spec(g, a))}};
    if (q == "at_least_once_two")
        return {{"value", tc::at_least_once_two(two_spec(g, a))}};
    if (q == "quad_coeffs") {
        tc::QuadCoeffs c = tc::quadratic_coeffs(two_spec(g, a));
        return {{"a", c.a}, {"b", c.b}};
    }
    if (q == "affordable_asymmetry") {
        tc::AsymmetryBudget b = tc::affordable_asymmetry(two_spec(g, a));
        return {{"nu_hat_sq", b.nu_hat_sq},
                {"nu_hat", b.nu_hat},
                {"joint_at_nu_hat", b.joint_at_nu_hat},
                {"independent_pair", b.independent_pair}};
    }
    if (q == "equalize") {
        double dh = tc::contention(P).delta_hat;
        tc::EqualizeResult r =
            tc::equalize_at_least_once(dh, P.p, P.delta, P.theta, a.exact);
        return {{"nu", r.nu},
                {"theta1", r.theta1},
                {"theta2", r.theta2},
                {"success", r.success}};
    }
    if (q == "post_failure") {
        double dh = tc::contention(P).delta_hat;
        double th1 = a.has_pair ? a.theta1 : P.theta;
        return {{"theta2", tc::post_failure_threshold(dh, P.p, P.delta, th1)}};
    }
    if (q == "throughput_gain") {
        tc::ThroughputGain r = tc::throughput_gain(P.theta, a.nu);
        return {{"gain", r.gain}, {"quadratic_bound", r.quadratic_bound}};
    }
    if (q == "joint_success_random") {
        tc::RandomLinkSuccess r =
            tc::joint_success_random_distance(delay_model(g, a), a.n);
        return {{"value", r.value},
                {"small_p_quadratic", r.small_p_quadratic}};
    }
    if (q == "all_nodes")
        return {{"value", tc::all_nodes_joint_success(P, a.n)}};
    if (q == "pmf") {
        tc::DelayPmf r = tc::delay_pmf_fixed(P, a.n);
        return {{"pmf", r.pmf}, {"tail", r.tail}};
    }
    if (q == "mean_fixed") return {{"value", tc::mean_delay_fixed(P)}};
    if (q == "mean_random") {
        tc::MeanDelay r = tc::mean_delay_random(
            delay_model(g, a),
            a.independent ? tc::InterferenceMode::independent
                          : tc::InterferenceMode::dependent,
            a.terms);
        return {{"value", r.value},
                {"finite", r.finite ? 1.0 : 0.0},
                {"converged", r.converged ? 1.0 : 0.0},
                {"n_terms", double(r.n_terms)},
                {"tail_estimate", r.tail_estimate}};
    }
    if (q == "critical") {
        tc::CriticalProbs c = tc::critical_probabilities(delay_model(g, a));
        return {{"p_c", c.p_c}, {"p_c_ind", c.p_c_ind}};
    }
    if (q == "pmf_independent") {
        tc::IndependentPmf r =
            tc::delay_pmf_independent(delay_model(g, a), a.n);
        return {{"exact", r.exact}, {"asymptote", r.asymptote}};
    }
    if (q == "binomial_identity")
        return {{"residual", tc::binomial_identity_residual(a.beta, a.terms)}};
    if (q == "taylor") {
        tc::TaylorMeanDelay r = tc::taylor_mean_delay(P, a.n);
        return {{"partial", r.partial}, {"limit", r.limit}};
    }
    throw std::domain_error("unknown quantity '" + q + "'");
}

void apply_axis(GlobalArgs& g, EvalArgs& a, const std::string& axis,
                double v) {
    if (axis == "lambda")
        g.params.lambda = v;
    else if (axis == "r")
        g.params.r = v;
    else if (axis == "theta")
        g.params.theta = v;
    else if (axis == "delta")
        g.params.delta = v;
    else if (axis == "p")
        g.params.p = v;
    else if (axis == "mu")
        g.mu = v;
    else if (axis == "nu") {
        a.nu = v;
        a.has_nu = true;
    } else if (axis == "theta1") {
        a.theta1 = v;
        a.has_pair = true;
    } else if (axis == "theta2") {
        a.theta2 = v;
        a.has_pair = true;
    } else {
        throw std::domain_error("unknown sweep axis '" + axis + "'");
    }
}

void stamp_meta(tc::Table& t, const GlobalArgs& g, const std::string& command) {
    t.meta["command"] = command;
    t.meta["lambda"] = tc::format_double(g.params.lambda);
    t.meta["r"] = tc::format_double(g.params.r);
    t.meta["theta"] = tc::format_double(g.params.theta);
    t.meta["delta"] = tc::format_double(g.params.delta);
    t.meta["p"] = tc::format_double(g.params.p);
}

void emit(const tc::Table& t, const GlobalArgs& g) {
    if (g.out.empty()) {
        std::string text = g.format == "json" ? tc::to_json(t) : tc::to_csv(t);
        std::fputs(text.c_str(), stdout);
    } else if (g.format == "json") {
        tc::write_json(g.out, t);
    } else {
        tc::write_csv(g.out, t);
    }
}

void add_eval_flags(CLI::App* sub, EvalArgs& a) {
    sub->add_option("-q,--quantity", a.quantity, "quantity name")->required();
    sub->add_option("-n,--order", a.n, "slot count / order");
    sub->add_option("--theta1", a.theta1, "first SIR threshold")
        ->each([&a](const std::string&) { a.has_pair = true; });
    sub->add_option("--theta2", a.theta2, "second SIR threshold")
        ->each([&a](const std::string&) { a.has_pair = true; });
    sub->add_option("--nu", a.nu, "log-threshold asymmetry")
        ->each([&a](const std::string&) { a.has_nu = true; });
    sub->add_flag("--exact", a.exact, "bisect instead of the closed form");
    sub->add_flag("--independent", a.independent,
                  "resample interferers every slot");
    sub->add_option("--gain-mode", a.gain_mode,
                    "diversity gain ladder variable")
        ->check(CLI::IsMember({"contention", "p"}));
    sub->add_option("--mode", a.mode, "link distance mode")
        ->check(CLI::IsMember({"fixed", "rayleigh"}));
    sub->add_option("--beta", a.beta, "identity parameter in [0,1)");
    sub->add_option("--terms", a.terms, "series terms / partial-sum length");
}

struct SimFlags {
    int n_slots = 2;
    std::int64_t realizations = 10000;
    double window = 0.0;
    double trunc = 0.0;
    bool bounded = false;
    bool independent = false;
    bool rayleigh = false;
    int max_slots = 200;
    int workers = 0;
};

void add_sim_flags(CLI::App* sub, SimFlags& f) {
    sub->add_option("-n,--slots", f.n_slots, "slots per realization");
    sub->add_option("--realizations", f.realizations, "realization count");
    sub->add_option("--window", f.window, "simulation disk radius (0 = auto)");
    sub->add_option("--trunc", f.trunc,
                    "drop interferers beyond this radius (0 = off)");
    sub->add_flag("--bounded", f.bounded, "bounded path gain min{1, v^-alpha}");
    sub->add_flag("--independent", f.independent,
                  "resample interferers every slot");
    sub->add_flag("--rayleigh", f.rayleigh, "random link distance");
    sub->add_option("--max-slots", f.max_slots, "delay censoring horizon");
    sub->add_option("--workers", f.workers, "worker threads (0 = hardware)");
}

tc::mc::SimConfig sim_config(const GlobalArgs& g, const SimFlags& f) {
    tc::mc::SimConfig cfg;
    cfg.params = g.params;
    cfg.n_slots = f.n_slots;
    cfg.n_realizations = f.realizations;
    cfg.window_radius = f.window;
    cfg.seed = g.seed;
    cfg.bounded_path_loss = f.bounded;
    cfg.independent_interference = f.independent;
    cfg.distance_mode = f.rayleigh ? tc::DistanceMode::rayleigh
                                   : tc::DistanceMode::fixed;
    cfg.mu = g.mu;
    cfg.max_slots = f.max_slots;
    cfg.truncation_radius = f.trunc;
    cfg.n_workers = f.workers;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalArgs g;
    CLI::App app{"closed-form and simulated temporal SIR statistics for a "
                 "slotted-ALOHA link in a Poisson interferer field"};
    app.set_config("--config", "", "flat key=value file; flags win");
    app.require_subcommand(1);

    CLI::Option* od =
        app.add_option("--delta", g.params.delta, "delta = 2/alpha, in (0,1)");
    CLI::Option* oa =
        app.add_option("--alpha", g.alpha, "path-loss exponent, > 2");
    od->excludes(oa);
    oa->excludes(od);
    app.add_option("--lambda", g.params.lambda, "interferer intensity");
    app.add_option("--r", g.params.r, "link distance");
    app.add_option("--theta", g.params.theta,
                   "SIR threshold (theta_bar for two-threshold quantities)");
    app.add_option("--p", g.params.p, "per-slot transmit probability");
    app.add_option("--mu", g.mu, "random-link-distance intensity");
    app.add_option("--seed", g.seed, "simulation seed");
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    EvalArgs ea;
    CLI::App* eval = app.add_subcommand("eval", "evaluate one quantity");
    eval->fallthrough();
    add_eval_flags(eval, ea);

    CLI::App* curve =
        app.add_subcommand("curve", "sweep one parameter over a grid");
    curve->fallthrough();
    add_eval_flags(curve, ea);
    std::string axis = "p";
    double sweep_from = 0.0, sweep_to = 1.0;
    int sweep_points = 100;
    curve->add_option("--axis", axis, "swept parameter");
    curve->add_option("--from", sweep_from, "grid start");
    curve->add_option("--to", sweep_to, "grid end");
    curve->add_option("--points", sweep_points, "grid intervals");

    CLI::App* delay =
        app.add_subcommand("delay", "local-delay quantities (same as eval)");
    delay->fallthrough();
    add_eval_flags(delay, ea);

    CLI::App* figure =
        app.add_subcommand("figure", "emit the data behind one figure");
    figure->fallthrough();
    std::string fig_name;
    int fig_points = 200;
    std::vector<std::string> fig_sets;
    figure->add_option("name", fig_name, "fig2..fig7")->required();
    figure->add_option("--points", fig_points, "grid intervals");
    figure->add_option("--set", fig_sets, "override, key=value");

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo estimators");
    simulate->fallthrough();
    SimFlags sf;
    add_sim_flags(simulate, sf);
    std::string estimator = "joint_success";
    double sim_theta1 = 0.0, sim_theta2 = 0.0;
    std::string raw_out, raw_format = "csv";
    std::int64_t raw_count = 1000;
    simulate->add_option("--estimator", estimator, "what to estimate")
        ->check(CLI::IsMember({"joint_success", "at_least_once", "joint_cdf",
                               "local_delay", "correlation"}));
    simulate->add_option("--theta1", sim_theta1, "joint_cdf first threshold");
    simulate->add_option("--theta2", sim_theta2, "joint_cdf second threshold");
    simulate->add_option("--raw-out", raw_out, "also dump raw records here");
    simulate->add_option("--raw-format", raw_format, "raw record format")
        ->check(CLI::IsMember({"csv", "bin"}));
    simulate->add_option("--raw-count", raw_count, "raw records to dump");

    CLI::App* compare =
        app.add_subcommand("compare", "analytic vs Monte Carlo z-scores");
    compare->fallthrough();
    SimFlags cf;
    add_sim_flags(compare, cf);
    tc::CompareSpec cspec;
    compare->add_option("-q,--quantity", cspec.quantity, "compared quantity")
        ->check(CLI::IsMember({"joint_success", "at_least_once"}));
    compare->add_option("--n-max", cspec.n_max, "compare n = 1..n");
    compare->add_option("--z-limit", cspec.z_limit, "failure threshold");
    compare->add_option("--reference", cspec.reference_override,
                        "replace the analytic reference (testing)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (oa->count() > 0) {
            if (!(g.alpha > 2.0))
                throw std::domain_error("alpha must exceed 2");
            g.params.delta = 2.0 / g.alpha;
        }

        if (eval->parsed() || delay->parsed()) {
            Values v = evaluate_any(ea.quantity, g, ea);
            tc::Table t;
            stamp_meta(t, g, eval->parsed() ? "eval" : "delay");
            t.meta["quantity"] = ea.quantity;
            t.meta["n"] = std::to_string(ea.n);
            std::vector<double> row;
            for (const auto& [name, value] : v) {
                t.columns.push_back(name);
                row.push_back(value);
            }
            t.rows.push_back(std::move(row));
            emit(t, g);
        } else if (curve->parsed()) {
            if (sweep_points < 1 || sweep_points > 1000000)
                throw std::domain_error("curve: points out of range");
            tc::Table t;
            stamp_meta(t, g, "curve");
            t.meta["quantity"] = ea.quantity;
            t.meta["axis"] = axis;
            t.columns.push_back(axis);
            for (int i = 0; i <= sweep_points; ++i) {
                double x = sweep_from +
                           (sweep_to - sweep_from) * i / sweep_points;
                GlobalArgs gi = g;
                EvalArgs ai = ea;
                apply_axis(gi, ai, axis, x);
                Values v = evaluate_any(ea.quantity, gi, ai);
                if (t.columns.size() == 1)
                    for (const auto& [name, value] : v)
                        t.columns.push_back(name);
                std::vector<double> row{x};
                for (const auto& [name, value] : v) row.push_back(value);
                t.rows.push_back(std::move(row));
            }
            emit(t, g);
        } else if (figure->parsed()) {
            std::map<std::string, double> overrides;
            for (const auto& kv : fig_sets) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw std::domain_error("--set expects key=value, got '" +
                                            kv + "'");
                char* end = nullptr;
                std::string vs = kv.substr(eq + 1);
                double val = std::strtod(vs.c_str(), &end);
                if (end == vs.c_str() || *end != '\0')
                    throw std::domain_error("--set: bad number '" + vs + "'");
                overrides[kv.substr(0, eq)] = val;
            }
            emit(tc::figure_table(fig_name, overrides, fig_points), g);
        } else if (simulate->parsed()) {
            tc::mc::SimConfig cfg = sim_config(g, sf);
            tc::Table t;
            stamp_meta(t, g, "simulate");
            t.meta["estimator"] = estimator;
            t.meta["seed"] = std::to_string(g.seed);
            t.meta["realizations"] = std::to_string(sf.realizations);
            t.meta["window"] = tc::format_double(cfg.effective_window());
            if (estimator == "joint_success" || estimator == "at_least_once") {
                tc::mc::JointRunResult r = tc::mc::run_joint(cfg);
                t.columns = {"n",     "joint_success", "joint_se",
                             "joint_lo", "joint_hi",   "at_least_once",
                             "alo_se", "alo_lo",       "alo_hi"};
                for (int n = 1; n <= cfg.n_slots; ++n) {
                    const auto& js = r.joint_success[size_t(n - 1)];
                    const auto& al = r.at_least_once[size_t(n - 1)];
                    t.rows.push_back({double(n), js.mean, js.std_error,
                                      js.ci_lo, js.ci_hi, al.mean,
                                      al.std_error, al.ci_lo, al.ci_hi});
                }
            } else if (estimator == "correlation") {
                tc::mc::SimEstimate e = tc::mc::run_correlation(cfg);
                t.columns = {"rho", "std_error", "ci_lo", "ci_hi",
                             "n_effective"};
                t.rows.push_back({e.mean, e.std_error, e.ci_lo, e.ci_hi,
                                  double(e.n_effective)});
            } else if (estimator == "joint_cdf") {
                if (!(sim_theta1 > 0.0) || !(sim_theta2 > 0.0))
                    throw std::domain_error(
                        "joint_cdf needs --theta1 and --theta2");
                auto est = tc::mc::run_joint_cdf(cfg,
                                                 {{sim_theta1, sim_theta2}});
                t.columns = {"theta1", "theta2",  "estimate",
                             "std_error", "ci_lo", "ci_hi"};
                t.rows.push_back({sim_theta1, sim_theta2, est[0].mean,
                                  est[0].std_error, est[0].ci_lo,
                                  est[0].ci_hi});
            } else {  // local_delay
                tc::mc::DelayTailResult r = tc::mc::local_delay_samples(cfg);
                t.meta["censored_mean"] = tc::format_double(r.censored_mean);
                t.meta["censored_mean_se"] =
                    tc::format_double(r.mean_estimate.std_error);
                t.columns = {"n", "tail", "std_error", "ci_lo", "ci_hi"};
                for (size_t n = 0; n < r.tail.size(); ++n)
                    t.rows.push_back({double(n), r.tail[n].mean,
                                      r.tail[n].std_error, r.tail[n].ci_lo,
                                      r.tail[n].ci_hi});
            }
            if (!raw_out.empty()) {
                auto records = tc::mc::collect_raw_records(cfg, raw_count);
                if (raw_format == "bin")
                    tc::mc::write_raw_binary(raw_out, records);
                else
                    tc::mc::write_raw_csv(raw_out, records);
            }
            emit(t, g);
        } else if (compare->parsed()) {
            cspec.config = sim_config(g, cf);
            tc::CompareReport report = tc::run_compare(cspec);
            tc::Table t = report.table();
            stamp_meta(t, g, "compare");
            t.meta["quantity"] = cspec.quantity;
            t.meta["seed"] = std::to_string(g.seed);
            t.meta["realizations"] = std::to_string(cf.realizations);
            emit(t, g);
            if (!report.pass) return 3;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
