#pragma once

#include "tempcorr/network.hpp"

namespace tempcorr {

// P(success in all of n consecutive slots) = exp(-Delta D_n(p, delta)).
double joint_success(const NetworkParams& params, int n);

// P(success in slot n+1 | successes in slots 1..n).
double cond_success_after_successes(const NetworkParams& params, int n);

// P(at least one success in n slots), by inclusion-exclusion over the joint
// success chain. Clamps values within 1e-9 of [P(single success), 1]; a
// larger violation throws.
double at_least_one_success(const NetworkParams& params, int n);

// 1 - at_least_one_success, evaluated through expm1 so tiny contention does
// not cancel. This is the quantity whose decay sets the diversity gain.
double joint_outage(const NetworkParams& params, int n);

// Joint n-slot success if interference were drawn fresh each slot.
double joint_success_independent(const NetworkParams& params, int n);

// Pearson correlation of the success indicators of two slots:
//   (e^{Delta (1-delta) p^2} - 1) / (e^{Delta p} - 1).
double correlation_coefficient(const NetworkParams& params);

// P(success in slot 2 | failure in slot 1) and its small-contention ceiling
// 1 - p (1 - delta), approached as the contention goes to 0.
struct CondAfterFailure {
    double value;
    double bound;
};
CondAfterFailure cond_success_after_failure(const NetworkParams& params);

// Limit of P(outage in slot n+1 | n outages) as contention -> 0.
double asymptotic_cond_outage(double p, double delta, int n);

// First-order (small contention) approximation of at_least_one_success:
//   1 - Delta p^n Gamma(n - delta) / (Gamma(n) Gamma(1 - delta)).
double taylor_at_least_once(const NetworkParams& params, int n);

// Decay exponent of the joint outage with respect to the SIR threshold,
// measured numerically down a geometric ladder of the contention (or of p)
// with the leading finite-size correction extrapolated away. Scaling the
// contention by x is the same as scaling theta by x^{1/delta}, hence the
// final delta factor on the fitted slope.
enum class GainMode { vary_contention, vary_p };
double diversity_gain_estimate(const NetworkParams& params, int n, GainMode mode,
                               bool independent_interference = false);

// Joint success for the bounded path loss max{1, v^alpha}. The per-order
// coefficients combine elementary terms with a hypergeometric correction and
// reduce to the unbounded form as theta * max{1, r^alpha} grows.
double joint_success_bounded(const NetworkParams& params, int n);

}  // namespace tempcorr
