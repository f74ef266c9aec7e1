#include "tempcorr/local_delay.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "tempcorr/diversity.hpp"
#include "tempcorr/roots.hpp"
#include "tempcorr/specfun.hpp"
#include "tempcorr/stable_sum.hpp"

namespace tempcorr {
namespace {

using big100 = boost::multiprecision::cpp_bin_float_100;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

void check_n(int n) {
    if (n < 1 || n > kDiversityCap)
        throw std::domain_error("local_delay: n out of range");
}

void delay_pmf_big(double big_delta, double p, double delta, int n,
                   double* pmf, double* tail) {
    const big100 bd(big_delta), bp(p), bdel(delta);
    std::vector<big100> e(n + 1);
    e[0] = 1;
    for (int k = 1; k <= n; ++k)
        e[k] = exp(-bd * div_poly_any<big100>(k, bp, bdel));
    big100 ps = 0, ts = e[0];
    big100 b_pmf = 1, b_tail = 1;
    for (int k = 1; k <= n; ++k) {
        b_tail = b_tail * big100(n - k + 1) / big100(k);
        if (k > 1) b_pmf = b_pmf * big100(n - k + 1) / big100(k - 1);
        if (k % 2 == 1) {
            ps += b_pmf * e[k];
            ts -= b_tail * e[k];
        } else {
            ps -= b_pmf * e[k];
            ts += b_tail * e[k];
        }
    }
    *pmf = ps.convert_to<double>();
    *tail = ts.convert_to<double>();
}

}  // namespace

void DelayModel::validate() const {
    base.validate();
    if (mode == DistanceMode::rayleigh && !(mu > 0.0 && std::isfinite(mu)))
        throw std::domain_error("mu must be finite and > 0 in rayleigh mode");
}

double DelayModel::delta_prime() const {
    return contention(base).delta_prime;
}

double DelayModel::delta_dprime() const {
    return delta_prime() / (M_PI * mu);
}

RandomLinkSuccess joint_success_random_distance(const DelayModel& model,
                                                int n) {
    model.validate();
    check_n(n);
    if (model.mode != DistanceMode::rayleigh)
        throw std::domain_error(
            "joint_success_random_distance: requires rayleigh mode");
    const double pimu = M_PI * model.mu;
    const double dn = div_poly(n, model.base.p, model.base.delta);
    const double dd = model.delta_dprime();
    const double p = model.base.p;
    RandomLinkSuccess out;
    out.value = pimu / (pimu + model.delta_prime() * dn);
    double c2 = 0.5 * n * (n - 1) * dd * (1.0 - model.base.delta) + n * n * dd * dd;
    out.small_p_quadratic = 1.0 - n * dd * p + c2 * p * p;
    return out;
}

double all_nodes_joint_success(const NetworkParams& params, int n) {
    params.validate();
    check_n(n);
    double g = std::pow(params.theta, params.delta) *
               gamma_product(params.delta);
    double dn = div_poly(n, params.p, params.delta);
    return std::pow(params.p, double(n)) * (1.0 - params.p) /
           (1.0 - params.p + g * dn);
}

DelayPmf delay_pmf_fixed(const NetworkParams& params, int n) {
    check_n(n);
    const Contention c = contention(params);
    // pmf and tail share the same exponentials so the telescoping identity
    // P(M>n-1) - P(M>n) = P(M=n) survives in floating point.
    std::vector<double> e(n + 1);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k)
        e[k] = std::exp(-c.big_delta * div_poly(k, params.p, params.delta));
    StableSum pmf_sum, tail_sum;
    tail_sum.add(e[0]);
    double b_pmf = 1.0;   // C(n-1, k-1)
    double b_tail = 1.0;  // C(n, k)
    for (int k = 1; k <= n; ++k) {
        b_tail *= double(n - k + 1) / k;
        if (k > 1) b_pmf *= double(n - k + 1) / (k - 1);
        double sgn = (k % 2 == 1) ? 1.0 : -1.0;
        pmf_sum.add(sgn * b_pmf * e[k]);
        tail_sum.add(-sgn * b_tail * e[k]);
    }
    DelayPmf out;
    out.pmf = pmf_sum.value();
    out.tail = tail_sum.value();
    if (pmf_sum.condition() > 1e12 || tail_sum.condition() > 1e12)
        delay_pmf_big(c.big_delta, params.p, params.delta, n, &out.pmf,
                      &out.tail);
    if (out.pmf < 0.0 || out.tail < 0.0) {
        if (out.pmf < -1e-9 || out.tail < -1e-9)
            throw std::runtime_error("delay_pmf_fixed: escaped its bounds");
        out.pmf = std::max(0.0, out.pmf);
        out.tail = std::max(0.0, out.tail);
    }
    return out;
}

double mean_delay_fixed(const NetworkParams& params) {
    params.validate();
    if (params.p >= 1.0)
        throw std::domain_error("mean_delay_fixed: requires p < 1");
    const Contention c = contention(params);
    return std::exp(c.big_delta * params.p *
                    std::pow(1.0 - params.p, params.delta - 1.0));
}

MeanDelay mean_delay_random(const DelayModel& model, InterferenceMode mode,
                            int n_max) {
    model.validate();
    if (model.mode != DistanceMode::rayleigh)
        throw std::domain_error("mean_delay_random: requires rayleigh mode");
    if (n_max < 2) throw std::domain_error("mean_delay_random: n_max >= 2");
    const double pimu = M_PI * model.mu;
    const double dpr = model.delta_prime();
    const double p = model.base.p;
    MeanDelay out;
    out.converged = true;
    out.n_terms = 0;
    out.tail_estimate = 0.0;

    if (mode == InterferenceMode::independent) {
        if (dpr * p < pimu) {
            out.value = pimu / (pimu - dpr * p);
            out.finite = true;
        } else {
            out.value = INFINITY;
            out.finite = false;
        }
        return out;
    }

    const double crit =
        (p >= 1.0) ? INFINITY
                   : dpr * p * std::pow(1.0 - p, model.base.delta - 1.0);
    if (!(crit < pimu)) {
        out.value = INFINITY;
        out.finite = false;
        return out;
    }
    out.finite = true;

    // n-step outage sums cancel like 2^n, so everything runs in 100-digit
    // floats. The tail decays as a power law whose exponent is fitted from
    // the last two terms; the integral estimate of the remainder both closes
    // the sum and drives the stopping rule.
    const big100 bp(p), bdel(model.base.delta), bdd(dpr / pimu);
    std::vector<big100> q(n_max + 1);
    q[0] = 1;
    for (int k = 1; k <= n_max; ++k)
        q[k] = big100(1) /
               (1 + bdd * div_poly_any<big100>(k, bp, bdel));
    big100 partial = 1;  // P(M > 0)
    double prev_term = 1.0;
    double tail_est = INFINITY;
    out.converged = false;
    for (int n = 1; n <= n_max; ++n) {
        big100 s = q[0];
        big100 binom = 1;
        for (int k = 1; k <= n; ++k) {
            binom = binom * big100(n - k + 1) / big100(k);
            if (k % 2 == 0)
                s += binom * q[k];
            else
                s -= binom * q[k];
        }
        partial += s;
        out.n_terms = n;
        double t = s.convert_to<double>();
        if (n >= 2 && t > 0.0 && prev_term > 0.0) {
            double sigma =
                -std::log(t / prev_term) / std::log(double(n) / (n - 1));
            if (sigma > 1.0) {
                tail_est = t * n / (sigma - 1.0);
                double part = partial.convert_to<double>();
                if (t < 1e-12 * part && tail_est < 1e-9 * part) {
                    out.converged = true;
                    break;
                }
            }
        }
        prev_term = t;
    }
    out.tail_estimate = std::isfinite(tail_est) ? tail_est : 0.0;
    out.value = partial.convert_to<double>() + out.tail_estimate;
    return out;
}

CriticalProbs critical_probabilities(const DelayModel& model) {
    model.validate();
    if (model.mode != DistanceMode::rayleigh)
        throw std::domain_error("critical_probabilities: requires rayleigh mode");
    const double pimu = M_PI * model.mu;
    const double dpr = model.delta_prime();
    CriticalProbs out;
    if (dpr <= 0.0) {
        out.p_c = 1.0;
        out.p_c_ind = 1.0;
        return out;
    }
    out.p_c_ind = std::min(1.0, pimu / dpr);
    const double expo = model.base.delta - 1.0;
    auto excess = [&](double p) {
        return dpr * p * std::pow(1.0 - p, expo) - pimu;
    };
    out.p_c = bisect(excess, 0.0, 1.0, 1e-10);
    if (out.p_c > out.p_c_ind + 1e-9)
        throw std::runtime_error(
            "critical_probabilities: ordering violated");
    out.p_c = std::min(out.p_c, out.p_c_ind);
    return out;
}

IndependentPmf delay_pmf_independent(const DelayModel& model, int n) {
    model.validate();
    if (n < 1) throw std::domain_error("delay_pmf_independent: n >= 1");
    if (model.mode != DistanceMode::rayleigh)
        throw std::domain_error("delay_pmf_independent: requires rayleigh mode");
    const double beta = model.delta_dprime() * model.base.p;
    if (!(beta > 0.0))
        throw std::domain_error(
            "delay_pmf_independent: needs positive contention and p");
    const double s = 1.0 / beta;
    IndependentPmf out;
    out.exact = std::exp(log_gamma(n + 1.0) + log_gamma(1.0 + s) -
                         log_gamma(n + 1.0 + s)) /
                (n * beta);
    out.asymptote =
        std::exp(log_gamma(1.0 + s) - s * std::log(double(n))) / (n * beta);
    return out;
}

double binomial_identity_residual(double beta, int n_max) {
    if (!(beta >= 0.0 && beta < 1.0))
        throw std::domain_error(
            "binomial_identity_residual: beta must lie in [0, 1)");
    if (n_max < 0)
        throw std::domain_error("binomial_identity_residual: n_max >= 0");
    const cpp_rational b(beta);  // dyadic, hence exact
    cpp_rational total = 0;
    for (int n = 0; n <= n_max; ++n) {
        cpp_rational inner = 0;
        cpp_int binom = 1;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) binom = binom * (n - k + 1) / k;
            cpp_rational term = cpp_rational(binom) / (1 + k * b);
            if (k % 2 == 0)
                inner += term;
            else
                inner -= term;
        }
        total += inner;
    }
    cpp_rational residual = total - 1 / (1 - b);
    return residual.convert_to<double>();
}

TaylorMeanDelay taylor_mean_delay(const NetworkParams& params, int n) {
    params.validate();
    if (n < 0) throw std::domain_error("taylor_mean_delay: n >= 0");
    if (params.p >= 1.0)
        throw std::domain_error("taylor_mean_delay: requires p < 1");
    const Contention c = contention(params);
    const double d = params.delta;
    const double p = params.p;
    TaylorMeanDelay out;
    out.limit = 1.0 + c.big_delta * p * std::pow(1.0 - p, d - 1.0);
    double coeff = std::exp(log_gamma(n + 1.0 - d) - log_gamma(n + 1.0) -
                            log_gamma(1.0 - d));
    double rest = c.big_delta * std::pow(p, n + 1.0) * coeff *
                  gauss_2f1(1.0, n + 1.0 - d, n + 1.0, p);
    out.partial = out.limit - rest;
    return out;
}

}  // namespace tempcorr
