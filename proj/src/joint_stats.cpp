#include "tempcorr/joint_stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tempcorr/diversity.hpp"
#include "tempcorr/specfun.hpp"
#include "tempcorr/stable_sum.hpp"

namespace tempcorr {
namespace {

using big100 = boost::multiprecision::cpp_bin_float_100;

void check_n(int n) {
    if (n < 1 || n > kDiversityCap)
        throw std::domain_error("joint_stats: n out of range");
}

// Inclusion-exclusion chain in 100-digit precision; fallback when the double
// path reports a hopeless condition number.
double psi_big(double big_delta, double p, double delta, int n, bool outage) {
    big100 sum = 0;
    big100 binom = 1;
    const big100 bd(big_delta), bp(p), bdel(delta);
    for (int k = 1; k <= n; ++k) {
        binom = binom * big100(n - k + 1) / big100(k);
        big100 term = binom * exp(-bd * div_poly_any<big100>(k, bp, bdel));
        if (k % 2 == 1)
            sum += term;
        else
            sum -= term;
    }
    if (outage) sum = big100(1) - sum;
    return sum.convert_to<double>();
}

}  // namespace

double joint_success(const NetworkParams& params, int n) {
    check_n(n);
    const Contention c = contention(params);
    return std::exp(-c.big_delta * div_poly(n, params.p, params.delta));
}

double cond_success_after_successes(const NetworkParams& params, int n) {
    check_n(n + 1);
    const Contention c = contention(params);
    double dn = div_poly(n, params.p, params.delta);
    double dn1 = div_poly(n + 1, params.p, params.delta);
    return std::exp(-c.big_delta * (dn1 - dn));
}

double at_least_one_success(const NetworkParams& params, int n) {
    check_n(n);
    const Contention c = contention(params);
    StableSum sum;
    double binom = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom *= double(n - k + 1) / k;
        double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        sum.add(sgn * binom *
                std::exp(-c.big_delta * div_poly(k, params.p, params.delta)));
    }
    double psi = sum.value();
    if (sum.condition() > 1e12)
        psi = psi_big(c.big_delta, params.p, params.delta, n, false);
    double floor = std::exp(-c.big_delta * params.p);
    if (psi > 1.0 || psi < floor) {
        if (psi > 1.0 + 1e-9 || psi < floor - 1e-9)
            throw std::runtime_error(
                "at_least_one_success: result escaped its bounds");
        psi = std::min(1.0, std::max(floor, psi));
    }
    return psi;
}

double joint_outage(const NetworkParams& params, int n) {
    check_n(n);
    const Contention c = contention(params);
    // The k = 0 term of the inclusion-exclusion sum cancels the alternating
    // binomial identity, leaving expm1 summands; this keeps tiny-contention
    // outages at full relative precision instead of 1 - (1 - epsilon).
    StableSum sum;
    double binom = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom *= double(n - k + 1) / k;
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        sum.add(sgn * binom *
                std::expm1(-c.big_delta * div_poly(k, params.p, params.delta)));
    }
    double out = sum.value();
    if (sum.condition() > 1e12)
        out = psi_big(c.big_delta, params.p, params.delta, n, true);
    if (out < 0.0) {
        if (out < -1e-9)
            throw std::runtime_error("joint_outage: result escaped its bounds");
        out = 0.0;
    }
    return out;
}

double joint_success_independent(const NetworkParams& params, int n) {
    check_n(n);
    const Contention c = contention(params);
    return std::exp(-c.big_delta * params.p * n);
}

double correlation_coefficient(const NetworkParams& params) {
    const Contention c = contention(params);
    double den = std::expm1(c.big_delta * params.p);
    if (std::abs(den) < 1e-12) return params.p * (1.0 - params.delta);
    double num =
        std::expm1(c.big_delta * (1.0 - params.delta) * params.p * params.p);
    return num / den;
}

CondAfterFailure cond_success_after_failure(const NetworkParams& params) {
    const Contention c = contention(params);
    CondAfterFailure out;
    out.bound = 1.0 - params.p * (1.0 - params.delta);
    double den = std::expm1(c.big_delta * params.p);
    if (std::abs(den) < 1e-12) {
        out.value = out.bound;
        return out;
    }
    double num =
        -std::expm1(-c.big_delta * params.p *
                    (1.0 - params.p * (1.0 - params.delta)));
    out.value = num / den;
    return out;
}

double asymptotic_cond_outage(double p, double delta, int n) {
    if (n < 1) throw std::domain_error("asymptotic_cond_outage: n >= 1");
    return p * (1.0 - delta / n);
}

double taylor_at_least_once(const NetworkParams& params, int n) {
    check_n(n);
    const Contention c = contention(params);
    double coeff = std::exp(log_gamma(n - params.delta) -
                            log_gamma(double(n)) -
                            log_gamma(1.0 - params.delta));
    return 1.0 - c.big_delta * std::pow(params.p, n) * coeff;
}

double diversity_gain_estimate(const NetworkParams& params, int n,
                               GainMode mode, bool independent_interference) {
    params.validate();
    check_n(n);
    if (mode == GainMode::vary_contention && params.lambda <= 0.0)
        throw std::domain_error("diversity_gain_estimate: lambda must be > 0");
    if (mode == GainMode::vary_p && params.p <= 0.0)
        throw std::domain_error("diversity_gain_estimate: p must be > 0");

    auto outage = [&](double x) -> double {
        NetworkParams q = params;
        if (mode == GainMode::vary_contention)
            q.lambda = params.lambda * x;
        else
            q.p = params.p * x;
        if (independent_interference) {
            double dp = contention(q).big_delta * q.p;
            return std::pow(-std::expm1(-dp), n);
        }
        return joint_outage(q, n);
    };

    // Walk into the asymptotic regime, then measure log-log slopes down a
    // geometric ladder and cancel the leading finite-size correction, which
    // halves along with x, by extrapolating the last two slopes.
    double x0 = 1.0;
    for (int i = 0; i < 200 && outage(x0) >= 0.1; ++i) x0 *= 0.5;
    constexpr int kRungs = 8;
    double slope[kRungs - 1];
    double x = x0;
    double prev = std::log(outage(x));
    for (int j = 1; j < kRungs; ++j) {
        x *= 0.5;
        double cur = std::log(outage(x));
        slope[j - 1] = (prev - cur) / std::log(2.0);
        prev = cur;
    }
    double s = 2.0 * slope[kRungs - 2] - slope[kRungs - 3];
    return params.delta * s;
}

double joint_success_bounded(const NetworkParams& params, int n) {
    check_n(n);
    params.validate();
    const double d = params.delta;
    const double tp =
        params.theta * std::max(1.0, std::pow(params.r, params.alpha()));
    StableSum expo;
    double binom = 1.0;
    double pk = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom *= double(n - k + 1) / k;
        pk *= params.p;
        double bk = std::pow(tp / (1.0 + tp), double(k)) +
                    std::pow(tp, d) * d *
                        std::exp(log_gamma(k - d) + log_gamma(d) -
                                 log_gamma(double(k))) -
                    gauss_2f1(double(k), d, 1.0 + d, -1.0 / tp);
        double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        expo.add(sgn * binom * pk * bk);
    }
    return std::exp(-params.lambda * M_PI * expo.value());
}

}  // namespace tempcorr
