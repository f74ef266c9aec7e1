#include "tempcorr/diversity.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "tempcorr/specfun.hpp"
#include "tempcorr/stable_sum.hpp"

namespace tempcorr {
namespace {

void check_domain(int n, double p, double delta, int cap) {
    if (n < 1 || n > cap)
        throw std::domain_error("div_poly: n out of range");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("div_poly: p must lie in [0, 1]");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::domain_error("div_poly: delta must lie in [0, 1]");
}

}  // namespace

double div_poly(int n, double p, double delta, bool high_precision) {
    if (high_precision) {
        check_domain(n, p, delta, 4096);
        // The alternating sum cancels roughly 0.3 n digits, so even wide
        // floats fail for n in the hundreds. Rewriting the polynomial as
        // n p (1-p)^{n-1} sum_j C(n-1,j) (1+delta)_j / (j+1)! (p/(1-p))^j
        // makes every term positive; 50 digits then hold to any n here.
        using big = boost::multiprecision::cpp_bin_float_50;
        if (p == 0.0) return 0.0;
        if (p == 1.0) {
            big acc = n;
            for (int j = 1; j < n; ++j)
                acc *= (big(delta) + j) / (j + 1);
            return acc.convert_to<double>();
        }
        const big x = big(p) / (big(1) - big(p));
        big term = 1;
        big acc = 1;
        for (int j = 1; j < n; ++j) {
            term *= x * big(n - j) * (big(delta) + j) /
                    (big(j) * (big(j) + 1));
            acc += term;
        }
        acc *= big(n) * big(p) * pow(big(1) - big(p), n - 1);
        return acc.convert_to<double>();
    }
    check_domain(n, p, delta, kDiversityCap);
    StableSum sum;
    double binom_n = 1.0;  // C(n, k)
    double binom_d = 1.0;  // C(delta-1, k-1)
    double pk = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom_n *= double(n - k + 1) / k;
        if (k > 1) binom_d *= (delta - (k - 1)) / (k - 1);
        pk *= p;
        sum.add(binom_n * binom_d * pk);
    }
    return sum.value();
}

double div_poly_one_minus_delta(int n, double p, double delta) {
    check_domain(n, p, delta, kDiversityCap);
    const double u = 1.0 - delta;
    StableSum sum;
    double binom_n = 1.0;
    double pk = 1.0;
    double inv_fact = 1.0;  // 1/(k-1)!
    for (int k = 1; k <= n; ++k) {
        binom_n *= double(n - k + 1) / k;
        pk *= p;
        if (k > 1) inv_fact /= (k - 1);
        // All inner terms share the sign (-1)^{k-1}, so this sum is exact up
        // to rounding; the alternation lives in the outer loop.
        double inner = 0.0;
        double uj = 1.0;
        for (int j = 0; j <= k - 1; ++j) {
            double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            inner += sgn * stirling_first(k - 1, j) * uj;
            uj *= u;
        }
        sum.add(binom_n * pk * inv_fact * inner);
    }
    return sum.value();
}

double div_poly_delta_form(int n, double p, double delta) {
    check_domain(n, p, delta, kDiversityCap);
    StableSum sum;
    double binom_n = 1.0;
    double pk = 1.0;
    double inv_fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        binom_n *= double(n - k + 1) / k;
        pk *= p;
        if (k > 1) inv_fact /= (k - 1);
        StableSum inner;
        double dj = 1.0;  // delta^{j-1}
        for (int j = 1; j <= k; ++j) {
            inner.add(stirling_first(k, j) * dj);
            dj *= delta;
        }
        sum.add(binom_n * pk * inv_fact * inner.value());
    }
    return sum.value();
}

double div_poly_delta_up1_approx(int n, double p, double delta) {
    check_domain(n, p, delta, kDiversityCap);
    StableSum tail;
    double binom_n = double(n);
    double pk = p;
    for (int k = 2; k <= n; ++k) {
        binom_n *= double(n - k + 1) / k;
        pk *= p;
        double sgn = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k+1}
        tail.add(sgn * binom_n * pk / (k - 1));
    }
    return n * p + (1.0 - delta) * tail.value();
}

double simo_diversity(int n, double delta) {
    if (n < 1) throw std::domain_error("simo_diversity: requires n >= 1");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::domain_error("simo_diversity: delta must lie in [0, 1]");
    return std::exp(log_gamma(n + delta) - log_gamma(double(n)) -
                    log_gamma(1.0 + delta));
}

}  // namespace tempcorr
