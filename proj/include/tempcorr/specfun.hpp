#pragma once

#include <string>

namespace tempcorr {

// log Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 coefficients) with
// the reflection formula below 0.5; relative error is around 1e-14 across
// [1e-3, 1e4]. Throws std::domain_error for x <= 0.
double log_gamma(double x);

// Gamma(x) for x > 0.
double gamma_fn(double x);

// Generalized binomial coefficient C(a, k) for real a and integer k >= 0,
// evaluated as the direct product of (a - k + i) / i for i = 1..k so zero and
// negative factors stay exact. C(a, 0) = 1.
double real_binomial(double a, int k);

// Gauss hypergeometric 2F1(a, b; c; z) for c > 0 on z <= 0 and 0 <= z < 1.
// Uses the defining series on (-1, 1) and the Pfaff transformation
// (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) for z <= -1, keeping the smaller of the
// two upper parameters so the mapped series converges quickly. Terminating
// (polynomial) cases are summed exactly for any z. Throws std::runtime_error
// if the series fails to converge within the term cap.
// The linear convergence rate after the Pfaff map is |z/(z-1)|, so large
// negative arguments need many cheap terms: z = -1e4 maps to w ~ 0.9999 and
// ~1.6e5 terms. The cap bounds runtime at a few milliseconds.
inline constexpr int kHypergeometricTermCap = 200000;
double gauss_2f1(double a, double b, double c, double z);

// Signed Stirling numbers of the first kind s(n, k) for 0 <= k <= n <= 64,
// built once from the exact integer recurrence s(n+1,k) = s(n,k-1) - n s(n,k).
// The double form rounds once on conversion (values above 2^53); the string
// form is the exact integer. Out-of-range arguments throw std::domain_error.
inline constexpr int kStirlingMaxN = 64;
double stirling_first(int n, int k);
std::string stirling_first_string(int n, int k);

}  // namespace tempcorr
