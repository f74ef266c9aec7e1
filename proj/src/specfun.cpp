#include "tempcorr/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tempcorr {
namespace {

// Lanczos g = 7, truncated at 9 terms; good to ~1e-14 relative over the
// positive axis once paired with reflection below 0.5.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_log_gamma(double x) {
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    double t = x + 6.5;
    return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t +
           std::log(acc);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5)
        return std::log(M_PI / std::sin(M_PI * x)) - lanczos_log_gamma(1.0 - x);
    return lanczos_log_gamma(x);
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

double real_binomial(double a, int k) {
    if (k < 0) throw std::domain_error("real_binomial: requires k >= 0");
    double prod = 1.0;
    for (int i = 1; i <= k; ++i) prod *= (a - k + i) / i;
    return prod;
}

namespace {

bool nonpositive_int(double x, int* n) {
    if (x > 0.0 || x != std::round(x)) return false;
    *n = static_cast<int>(-x);
    return true;
}

// 2F1(-n, b; c; z): n+1 exact terms, any z.
double hyp_terminating(int n, double b, double c, double z) {
    double sum = 1.0;
    double term = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= (k - n) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
    }
    return sum;
}

double hyp_series(double a, double b, double c, double z) {
    double sum = 1.0;
    double term = 1.0;
    const double az = std::abs(z);
    for (int k = 0; k < kHypergeometricTermCap; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        if (term == 0.0) return sum;
        sum += term;
        // The term ratio tends to |z| monotonically once k dominates the
        // parameters, so max(next ratio, |z|) caps every later ratio and a
        // geometric tail bound applies.
        double next =
            std::abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0))) * az;
        double rho = std::max(az, next);
        if (k >= 4 && rho < 1.0 &&
            std::abs(term) * rho / (1.0 - rho) <= 1e-16 * std::abs(sum))
            return sum;
    }
    throw std::runtime_error("gauss_2f1: series did not converge");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
    if (!(c > 0.0)) throw std::domain_error("gauss_2f1: requires c > 0");
    int na = 0, nb = 0;
    bool ta = nonpositive_int(a, &na);
    bool tb = nonpositive_int(b, &nb);
    if (ta || tb) {
        if (ta && (!tb || na <= nb)) return hyp_terminating(na, b, c, z);
        return hyp_terminating(nb, a, c, z);
    }
    if (!(z < 1.0)) throw std::domain_error("gauss_2f1: requires z < 1");
    if (z > -1.0) return hyp_series(a, b, c, z);
    // Pfaff transformation; z <= -1 maps to w in [1/2, 1). Keeping the
    // smaller upper parameter in place makes the mapped series settle fast.
    if (a > b) std::swap(a, b);
    double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp_series(a, c - b, c, w);
}

namespace {

using boost::multiprecision::cpp_int;

const std::vector<std::vector<cpp_int>>& stirling_table() {
    static const std::vector<std::vector<cpp_int>> table = [] {
        std::vector<std::vector<cpp_int>> t(kStirlingMaxN + 1);
        for (int n = 0; n <= kStirlingMaxN; ++n) t[n].assign(n + 1, cpp_int(0));
        t[0][0] = 1;
        for (int n = 0; n < kStirlingMaxN; ++n)
            for (int k = 0; k <= n + 1; ++k) {
                cpp_int v = 0;
                if (k >= 1) v += t[n][k - 1];
                if (k <= n) v -= cpp_int(n) * t[n][k];
                t[n + 1][k] = v;
            }
        return t;
    }();
    return table;
}

const cpp_int& stirling_at(int n, int k) {
    if (n < 0 || k < 0 || k > n || n > kStirlingMaxN)
        throw std::domain_error("stirling_first: requires 0 <= k <= n <= 64");
    return stirling_table()[n][k];
}

}  // namespace

double stirling_first(int n, int k) {
    return stirling_at(n, k).convert_to<double>();
}

std::string stirling_first_string(int n, int k) {
    return stirling_at(n, k).str();
}

}  // namespace tempcorr
