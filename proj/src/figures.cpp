#include "tempcorr/figures.hpp"

#include <cmath>
#include <stdexcept>

#include "tempcorr/joint_stats.hpp"
#include "tempcorr/local_delay.hpp"
#include "tempcorr/network.hpp"
#include "tempcorr/two_threshold.hpp"

namespace tempcorr {
namespace {

double lambda_for_big_delta(double big_delta, double r, double theta,
                            double delta) {
    return big_delta /
           (M_PI * r * r * std::pow(theta, delta) * gamma_product(delta));
}

struct Overrides {
    std::map<std::string, double> pending;

    explicit Overrides(const std::map<std::string, double>& o) : pending(o) {}

    double take(const std::string& key, double fallback) {
        auto it = pending.find(key);
        if (it == pending.end()) return fallback;
        double v = it->second;
        pending.erase(it);
        return v;
    }

    void done(const std::string& figure) const {
        if (!pending.empty())
            throw std::domain_error("figure " + figure +
                                    ": unknown or fixed parameter '" +
                                    pending.begin()->first + "'");
    }
};

void check_points(int points) {
    if (points < 2 || points > 100000)
        throw std::domain_error("figure: points must lie in [2, 100000]");
}

Table fig_cond_success(const std::map<std::string, double>& o, int points,
                       bool bounded) {
    Overrides ov(o);
    const std::string name = bounded ? "fig4" : "fig2";
    double big_delta = ov.take("big_delta", 0.5);
    double r = ov.take("r", 1.0);
    double theta = ov.take("theta", 1.0);
    double delta = ov.take("delta", 0.5);
    ov.done(name);

    NetworkParams base;
    base.lambda = lambda_for_big_delta(big_delta, r, theta, delta);
    base.r = r;
    base.theta = theta;
    base.delta = delta;

    Table t;
    t.meta["figure"] = name;
    t.meta["big_delta"] = format_double(big_delta);
    t.meta["lambda"] = format_double(base.lambda);
    t.meta["r"] = format_double(r);
    t.meta["theta"] = format_double(theta);
    t.meta["delta"] = format_double(delta);
    t.meta["path_gain"] = bounded ? "bounded" : "unbounded";
    t.columns = {"p",
                 "cond_success_n1",
                 "cond_success_n2",
                 "cond_success_n3",
                 "cond_success_n4",
                 "baseline"};
    for (int i = 0; i <= points; ++i) {
        NetworkParams q = base;
        q.p = double(i) / points;
        std::vector<double> row;
        row.push_back(q.p);
        if (bounded) {
            std::vector<double> joint(6, 1.0);
            for (int k = 1; k <= 5; ++k) joint[k] = joint_success_bounded(q, k);
            for (int k = 1; k <= 4; ++k) row.push_back(joint[k + 1] / joint[k]);
            row.push_back(joint[1]);
        } else {
            for (int k = 1; k <= 4; ++k)
                row.push_back(cond_success_after_successes(q, k));
            row.push_back(joint_success(q, 1));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig_correlation(const std::map<std::string, double>& o, int points) {
    Overrides ov(o);
    double lambda_pi_r2 = ov.take("lambda_pi_r2", 0.5);
    double theta = ov.take("theta", 5.0);
    ov.done("fig3");

    const std::vector<double> deltas = {0.1, 0.3, 0.5, 0.7, 0.9};
    Table t;
    t.meta["figure"] = "fig3";
    t.meta["lambda_pi_r2"] = format_double(lambda_pi_r2);
    t.meta["theta"] = format_double(theta);
    t.meta["delta_grid"] = "0.1,0.3,0.5,0.7,0.9";
    t.columns = {"p",          "zeta_d0p1", "zeta_d0p3",
                 "zeta_d0p5",  "zeta_d0p7", "zeta_d0p9"};
    for (int i = 0; i <= points; ++i) {
        double p = double(i) / points;
        std::vector<double> row{p};
        for (double d : deltas) {
            NetworkParams q;
            q.lambda = lambda_pi_r2 / M_PI;
            q.r = 1.0;
            q.theta = theta;
            q.delta = d;
            q.p = p;
            row.push_back(correlation_coefficient(q));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig_asym_quadratic(const std::map<std::string, double>& o, int points) {
    Overrides ov(o);
    double delta = ov.take("delta", 2.0 / 3.0);
    double delta_hat = ov.take("delta_hat", 2.0);
    double theta_bar = ov.take("theta_bar", 1.0);
    ov.done("fig5");

    Table t;
    t.meta["figure"] = "fig5";
    t.meta["delta"] = format_double(delta);
    t.meta["delta_hat"] = format_double(delta_hat);
    t.meta["theta_bar"] = format_double(theta_bar);
    t.meta["p_grid"] = "0.5,0.25";
    t.columns = {"nu",
                 "at_least_once_p0p5",
                 "quadratic_p0p5",
                 "at_least_once_p0p25",
                 "quadratic_p0p25"};
    const double ps[2] = {0.5, 0.25};
    for (int i = 0; i <= points; ++i) {
        double nu = -2.0 + 4.0 * i / points;
        std::vector<double> row{nu};
        for (double p : ps) {
            double c = delta_hat * p * std::pow(theta_bar, delta);
            QuadCoeffs q = quadratic_coeffs(c, p, delta);
            row.push_back(at_least_once_two_nu(c, p, delta, nu));
            row.push_back(q.a + q.b * nu * nu);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig_equalize(const std::map<std::string, double>& o, int points) {
    Overrides ov(o);
    double theta_bar = ov.take("theta_bar", 10.0);
    double delta_hat = ov.take("delta_hat", 1.0 / 3.0);
    double p = ov.take("p", 1.0 / 3.0);
    double delta = ov.take("delta", 2.0 / 5.0);
    ov.done("fig6");

    const double c = delta_hat * p * std::pow(theta_bar, delta);
    EqualizeResult design = equalize_at_least_once(delta_hat, p, delta,
                                                   theta_bar, false);
    Table t;
    t.meta["figure"] = "fig6";
    t.meta["theta_bar"] = format_double(theta_bar);
    t.meta["delta_hat"] = format_double(delta_hat);
    t.meta["p"] = format_double(p);
    t.meta["delta"] = format_double(delta);
    t.meta["design_nu"] = format_double(design.nu);
    t.meta["design_theta1"] = format_double(design.theta1);
    t.meta["design_theta2"] = format_double(design.theta2);
    t.meta["design_success"] = format_double(design.success);
    t.columns = {"nu", "at_least_once", "independent_pair_hard"};
    for (int i = 0; i <= points; ++i) {
        double nu = -1.5 + 2.0 * i / points;
        double single_hard = std::exp(-c * std::exp(-nu * delta));
        std::vector<double> row{
            nu, at_least_once_two_nu(c, p, delta, nu),
            1.0 - (1.0 - single_hard) * (1.0 - single_hard)};
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig_critical(const std::map<std::string, double>& o, int points) {
    Overrides ov(o);
    double theta = ov.take("theta", 10.0);
    double mu = ov.take("mu", 1.0);
    ov.done("fig7");

    Table t;
    t.meta["figure"] = "fig7";
    t.meta["theta"] = format_double(theta);
    t.meta["mu"] = format_double(mu);
    t.meta["lambda_over_mu_grid"] = "1,0.25";
    t.columns = {"delta", "p_c_lm1", "p_c_ind_lm1", "p_c_lm0p25",
                 "p_c_ind_lm0p25"};
    const double ratios[2] = {1.0, 0.25};
    const double lo = 0.05, hi = 0.95;
    for (int i = 0; i <= points; ++i) {
        double d = lo + (hi - lo) * i / points;
        std::vector<double> row{d};
        for (double ratio : ratios) {
            DelayModel m;
            m.base.lambda = ratio * mu;
            m.base.r = 1.0;
            m.base.theta = theta;
            m.base.delta = d;
            m.base.p = 0.5;
            m.mode = DistanceMode::rayleigh;
            m.mu = mu;
            CriticalProbs c = critical_probabilities(m);
            row.push_back(c.p_c);
            row.push_back(c.p_c_ind);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

std::vector<std::string> figure_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

Table figure_table(const std::string& name,
                   const std::map<std::string, double>& overrides,
                   int points) {
    check_points(points);
    if (name == "fig2") return fig_cond_success(overrides, points, false);
    if (name == "fig3") return fig_correlation(overrides, points);
    if (name == "fig4") return fig_cond_success(overrides, points, true);
    if (name == "fig5") return fig_asym_quadratic(overrides, points);
    if (name == "fig6") return fig_equalize(overrides, points);
    if (name == "fig7") return fig_critical(overrides, points);
    throw std::domain_error("unknown figure '" + name + "'");
}

}  // namespace tempcorr
