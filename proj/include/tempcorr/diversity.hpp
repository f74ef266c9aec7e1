#pragma once

namespace tempcorr {

// Slot-count cap for the double-precision evaluations. The alternating sums
// here and in the inclusion-exclusion layers above lose roughly a digit per
// doubling of n; past 30 callers must opt into the high-precision path.
inline constexpr int kDiversityCap = 30;

// D_n(p, delta) = sum_{k=1}^{n} C(n,k) C(delta-1, k-1) p^k.
// Domain: n >= 1, p in [0,1], delta in [0,1] (the polynomial is finite at the
// endpoints). With high_precision set, n up to 4096 is evaluated in extended
// precision; otherwise n > 30 throws.
double div_poly(int n, double p, double delta, bool high_precision = false);

// Same value through the Stirling-number expansion in powers of (1 - delta).
double div_poly_one_minus_delta(int n, double p, double delta);

// Same value as a polynomial in delta (Stirling numbers of the first kind).
double div_poly_delta_form(int n, double p, double delta);

// First-order expansion around delta = 1:
//   n p + (1-delta) sum_{k=2}^{n} C(n,k) (-1)^{k+1} p^k / (k-1).
// Exact for n <= 2; useful when 1 - delta <= 1/3.
double div_poly_delta_up1_approx(int n, double p, double delta);

// D_n(1, delta) = Gamma(n+delta) / (Gamma(n) Gamma(1+delta)).
double simo_diversity(int n, double delta);

// Generic-precision binomial form, shared with the extended-precision delay
// sums. Real needs arithmetic and construction from int.
template <class Real>
Real div_poly_any(int n, const Real& p, const Real& delta) {
    Real sum = Real(0);
    Real binom_n = Real(1);   // C(n, k)
    Real binom_d = Real(1);   // C(delta-1, k-1)
    Real pk = Real(1);
    for (int k = 1; k <= n; ++k) {
        binom_n = binom_n * Real(n - k + 1) / Real(k);
        if (k > 1) binom_d = binom_d * (delta - Real(k - 1)) / Real(k - 1);
        pk = pk * p;
        sum += binom_n * binom_d * pk;
    }
    return sum;
}

}  // namespace tempcorr
