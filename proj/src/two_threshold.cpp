#include "tempcorr/two_threshold.hpp"

#include <cmath>
#include <stdexcept>

#include "tempcorr/roots.hpp"

namespace tempcorr {

double TwoThresholdSpec::theta_bar() const { return std::sqrt(theta1 * theta2); }

double TwoThresholdSpec::nu() const { return 0.5 * std::log(theta2 / theta1); }

void TwoThresholdSpec::validate() const {
    if (!std::isfinite(delta_hat) || delta_hat < 0.0)
        throw std::domain_error("delta_hat must be finite and >= 0");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("p must lie in [0, 1]");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("delta must lie in (0, 1)");
    if (!(theta1 > 0.0) || !(theta2 > 0.0))
        throw std::domain_error("thresholds must be > 0");
}

TwoThresholdSpec TwoThresholdSpec::from_nu(double delta_hat, double p,
                                           double delta, double theta_bar,
                                           double nu) {
    TwoThresholdSpec s;
    s.delta_hat = delta_hat;
    s.p = p;
    s.delta = delta;
    s.theta1 = theta_bar * std::exp(-nu);
    s.theta2 = theta_bar * std::exp(nu);
    return s;
}

double d2_hat(const TwoThresholdSpec& spec) {
    spec.validate();
    const double t1 = spec.theta1, t2 = spec.theta2;
    const double d = spec.delta, p = spec.p;
    double tb = spec.theta_bar();
    if (std::abs(t1 - t2) <= 1e-8 * tb)
        return std::pow(tb, d) * (2.0 * p - (1.0 - d) * p * p);
    double t1d = std::pow(t1, d), t2d = std::pow(t2, d);
    return p * (t1d + t2d) + p * p * (t1d * t2 - t2d * t1) / (t1 - t2);
}

double d2_shape(double p, double delta, double nu) {
    double ratio;
    if (std::abs(nu) < 1e-6) {
        double a = 1.0 - delta;
        ratio = a * (1.0 + (a * a - 1.0) * nu * nu / 6.0);
    } else {
        ratio = std::sinh(nu * (1.0 - delta)) / std::sinh(nu);
    }
    return 2.0 * std::cosh(nu * delta) - p * ratio;
}

double joint_success_two(const TwoThresholdSpec& spec) {
    return std::exp(-spec.delta_hat * d2_hat(spec));
}

double joint_sir_cdf(const TwoThresholdSpec& spec) {
    spec.validate();
    const double c1 =
        spec.delta_hat * spec.p * std::pow(spec.theta1, spec.delta);
    const double c2 =
        spec.delta_hat * spec.p * std::pow(spec.theta2, spec.delta);
    return 1.0 - std::exp(-c1) - std::exp(-c2) + joint_success_two(spec);
}

double at_least_once_two(const TwoThresholdSpec& spec) {
    return 1.0 - joint_sir_cdf(spec);
}

double at_least_once_two_nu(double c, double p, double delta, double nu) {
    return 2.0 * std::exp(-c * std::cosh(nu * delta)) *
               std::cosh(c * std::sinh(nu * delta)) -
           std::exp(-c * d2_shape(p, delta, nu));
}

QuadCoeffs quadratic_coeffs(double c, double p, double delta) {
    if (!(c >= 0.0) || !(p >= 0.0 && p <= 1.0) ||
        !(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("quadratic_coeffs: parameter out of range");
    const double g0 = 2.0 - p * (1.0 - delta);
    QuadCoeffs out;
    out.a = 2.0 * std::exp(-c) - std::exp(-c * g0);
    out.b = c * delta * delta * (c - 1.0) * std::exp(-c) +
            c * delta *
                (delta + p / 6.0 * (delta - 1.0) * (delta - 2.0)) *
                std::exp(-c * g0);
    return out;
}

QuadCoeffs quadratic_coeffs(const TwoThresholdSpec& spec) {
    spec.validate();
    double c = spec.delta_hat * spec.p * std::pow(spec.theta_bar(), spec.delta);
    return quadratic_coeffs(c, spec.p, spec.delta);
}

AsymmetryBudget affordable_asymmetry(const TwoThresholdSpec& spec) {
    spec.validate();
    const double d = spec.delta, p = spec.p;
    const double tb = spec.theta_bar();
    const double c = spec.delta_hat * p * std::pow(tb, d);
    const double kappa = d * (d + p / 6.0 * (d - 1.0) * (d - 2.0));
    AsymmetryBudget out;
    out.nu_hat_sq = p * (1.0 - d) / kappa;
    out.nu_hat = std::sqrt(out.nu_hat_sq);
    out.joint_at_nu_hat = joint_success_two(
        TwoThresholdSpec::from_nu(spec.delta_hat, p, d, tb, out.nu_hat));
    out.independent_pair = std::exp(-2.0 * c);
    return out;
}

EqualizeResult equalize_at_least_once(double delta_hat, double p, double delta,
                                      double theta_bar, bool exact) {
    TwoThresholdSpec probe;
    probe.delta_hat = delta_hat;
    probe.p = p;
    probe.delta = delta;
    probe.theta1 = probe.theta2 = theta_bar;
    probe.validate();
    const double c = delta_hat * p * std::pow(theta_bar, delta);
    if (!(c > 0.0))
        throw std::domain_error(
            "equalize_at_least_once: needs positive contention and p");
    double nu;
    if (exact) {
        auto gap = [&](double v) {
            double indep = 1.0 - std::pow(
                1.0 - std::exp(-c * std::exp(-v * delta)), 2.0);
            return at_least_once_two_nu(c, p, delta, v) - indep;
        };
        nu = bisect(gap, -5.0, 0.0);
    } else {
        double a = quadratic_coeffs(c, p, delta).a;
        double scale = -std::log(1.0 - std::sqrt(1.0 - a)) / c;  // e^{-nu delta}
        nu = -std::log(scale) / delta;
    }
    EqualizeResult out;
    out.nu = nu;
    out.theta1 = theta_bar * std::exp(-nu);
    out.theta2 = theta_bar * std::exp(nu);
    out.success = at_least_once_two_nu(c, p, delta, nu);
    return out;
}

double post_failure_threshold(double delta_hat, double p, double delta,
                              double theta1) {
    TwoThresholdSpec spec;
    spec.delta_hat = delta_hat;
    spec.p = p;
    spec.delta = delta;
    spec.theta1 = theta1;
    spec.theta2 = theta1;
    spec.validate();
    const double c1 = delta_hat * p * std::pow(theta1, delta);
    if (!(c1 > 0.0))
        throw std::domain_error(
            "post_failure_threshold: needs positive contention and p");
    const double target = std::exp(-c1) * (1.0 - std::exp(-c1));
    auto residual = [&](double log_t2) {
        TwoThresholdSpec s = spec;
        s.theta2 = std::exp(log_t2);
        double c2 = delta_hat * p * std::pow(s.theta2, delta);
        return std::exp(-c2) - joint_success_two(s) - target;
    };
    double root = bisect(residual, std::log(theta1) - 20.0, std::log(theta1));
    return std::exp(root);
}

ThroughputGain throughput_gain(double theta_bar, double nu) {
    if (!(theta_bar > 0.0))
        throw std::domain_error("throughput_gain: theta_bar must be > 0");
    const double denom = (1.0 + theta_bar) * (1.0 + theta_bar);
    const double half = std::sinh(0.5 * nu);
    ThroughputGain out;
    out.gain = std::log1p(2.0 * theta_bar * (2.0 * half * half) / denom);
    out.quadratic_bound = std::log1p(theta_bar * nu * nu / denom);
    return out;
}

}  // namespace tempcorr
