#include "tempcorr/compare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tempcorr/joint_stats.hpp"
#include "tempcorr/local_delay.hpp"
#include "tempcorr/specfun.hpp"

namespace tempcorr {
namespace {

double rayleigh_joint_independent(const mc::SimConfig& c, int n) {
    double pi_mu = M_PI * c.mu;
    double dp = contention(c.params).delta_prime;
    return pi_mu / (pi_mu + dp * c.params.p * n);
}

double analytic_joint(const mc::SimConfig& c, int n) {
    const bool ray = c.distance_mode == DistanceMode::rayleigh;
    if (c.bounded_path_loss && ray)
        throw std::domain_error(
            "compare: no closed form for bounded path gain with a random "
            "link distance");
    if (c.bounded_path_loss) {
        if (c.independent_interference)
            return std::pow(joint_success_bounded(c.params, 1), n);
        return joint_success_bounded(c.params, n);
    }
    if (ray) {
        DelayModel m;
        m.base = c.params;
        m.mode = DistanceMode::rayleigh;
        m.mu = c.mu;
        if (c.independent_interference)
            return rayleigh_joint_independent(c, n);
        return joint_success_random_distance(m, n).value;
    }
    if (c.independent_interference)
        return joint_success_independent(c.params, n);
    return joint_success(c.params, n);
}

double analytic_at_least_once(const mc::SimConfig& c, int n) {
    const bool ray = c.distance_mode == DistanceMode::rayleigh;
    if (!c.bounded_path_loss && !ray) {
        if (c.independent_interference) {
            double miss = -std::expm1(-contention(c.params).big_delta *
                                      c.params.p);
            return 1.0 - std::pow(miss, n);
        }
        return at_least_one_success(c.params, n);
    }
    if (c.bounded_path_loss && ray)
        throw std::domain_error(
            "compare: no closed form for bounded path gain with a random "
            "link distance");
    if (c.bounded_path_loss && c.independent_interference) {
        double miss = 1.0 - joint_success_bounded(c.params, 1);
        return 1.0 - std::pow(miss, n);
    }
    // inclusion-exclusion over the joint prefixes
    double sign = 1.0;
    double binom = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= n; ++k) {
        binom = binom * (n - k + 1) / k;
        sum += sign * binom * analytic_joint(c, k);
        sign = -sign;
    }
    return sum;
}

double analytic_for(const CompareSpec& spec, int n) {
    if (spec.reference_override >= 0.0) return spec.reference_override;
    if (spec.quantity == "joint_success")
        return analytic_joint(spec.config, n);
    if (spec.quantity == "at_least_once")
        return analytic_at_least_once(spec.config, n);
    throw std::domain_error("compare: unknown quantity '" + spec.quantity +
                            "'");
}

}  // namespace

CompareReport run_compare(const CompareSpec& spec) {
    if (spec.n_max < 1 || spec.n_max > 30)
        throw std::domain_error("compare: n_max must lie in [1, 30]");
    if (!(spec.z_limit > 0.0))
        throw std::domain_error("compare: z limit must be positive");

    mc::SimConfig config = spec.config;
    config.n_slots = spec.n_max;
    config.validate(mc::Estimator::joint_success);

    mc::JointRunResult sim = mc::run_joint(config);
    const auto& estimates = spec.quantity == "at_least_once"
                                ? sim.at_least_once
                                : sim.joint_success;

    CompareReport report;
    for (int n = 1; n <= spec.n_max; ++n) {
        const mc::SimEstimate& e = estimates[n - 1];
        CompareRow row;
        row.n = n;
        row.analytic = analytic_for(spec, n);
        row.estimate = e.mean;
        row.std_error = e.std_error;
        row.ci_lo = e.ci_lo;
        row.ci_hi = e.ci_hi;
        double diff = e.mean - row.analytic;
        if (e.std_error > 0.0)
            row.z = diff / e.std_error;
        else
            row.z = diff == 0.0 ? 0.0
                                : std::numeric_limits<double>::infinity();
        report.rows.push_back(row);
        report.max_abs_z = std::max(report.max_abs_z, std::fabs(row.z));
    }
    report.pass = report.max_abs_z <= spec.z_limit;
    return report;
}

Table CompareReport::table() const {
    Table t;
    t.columns = {"n",     "analytic", "estimate", "std_error",
                 "ci_lo", "ci_hi",    "z"};
    for (const auto& r : rows)
        t.rows.push_back({double(r.n), r.analytic, r.estimate, r.std_error,
                          r.ci_lo, r.ci_hi, r.z});
    t.meta["max_abs_z"] = format_double(max_abs_z);
    t.meta["pass"] = pass ? "true" : "false";
    return t;
}

}  // namespace tempcorr
