#pragma once

namespace tempcorr {

// Two transmissions with individual SIR thresholds. delta_hat is the
// contention constant with the theta^delta factor removed, so the pair
// (theta1, theta2) carries all threshold dependence. The equivalent
// (theta_bar, nu) parameterization uses theta_bar = sqrt(theta1 theta2) and
// nu = log(theta2 / theta1) / 2.
struct TwoThresholdSpec {
    double delta_hat = 1.0;
    double p = 0.5;
    double delta = 0.5;
    double theta1 = 1.0;
    double theta2 = 1.0;

    double theta_bar() const;
    double nu() const;
    void validate() const;

    static TwoThresholdSpec from_nu(double delta_hat, double p, double delta,
                                    double theta_bar, double nu);
};

// Success exponent: joint success = exp(-delta_hat * d2_hat(spec)).
//   d2_hat = p (th1^d + th2^d) + p^2 (th1^d th2 - th2^d th1) / (th1 - th2),
// with the equal-threshold limit th^d (2p - (1-delta) p^2).
double d2_hat(const TwoThresholdSpec& spec);

// Threshold-free shape g(nu) = 2 cosh(nu delta) - p sinh(nu (1-delta))/sinh(nu),
// so that d2_hat = p theta_bar^delta g(nu). Even in nu, minimal at nu = 0
// where it equals 2 - p (1 - delta).
double d2_shape(double p, double delta, double nu);

// P(SIR_1 > theta1 and SIR_2 > theta2).
double joint_success_two(const TwoThresholdSpec& spec);

// Joint SIR distribution P(SIR_1 <= theta1, SIR_2 <= theta2).
double joint_sir_cdf(const TwoThresholdSpec& spec);

// P(at least one of the two thresholds is met) = 1 - joint_sir_cdf.
double at_least_once_two(const TwoThresholdSpec& spec);

// Same quantity in the symmetric parameterization, as a function of
// c = delta_hat * p * theta_bar^delta only:
//   psi2 = 2 e^{-c cosh(nu delta)} cosh(c sinh(nu delta)) - e^{-c g(nu)}.
double at_least_once_two_nu(double c, double p, double delta, double nu);

// Quadratic expansion at nu = 0: psi2(nu) ~ a + b nu^2 with
//   a = 2 e^{-c} - e^{-c (2 - p (1-delta))}
//   b = c delta^2 (c-1) e^{-c}
//       + c delta [delta + (p/6)(delta-1)(delta-2)] e^{-c (2 - p (1-delta))}.
// b > 0 (nu = 0 is the global minimum); delta may be 1 here.
struct QuadCoeffs {
    double a;
    double b;
};
QuadCoeffs quadratic_coeffs(double c, double p, double delta);
QuadCoeffs quadratic_coeffs(const TwoThresholdSpec& spec);

// Threshold asymmetry which the slot correlation pays for: nu_hat solves
// (in the quadratic approximation of the exponent) joint asymmetric success
// = square of the symmetric single success.
struct AsymmetryBudget {
    double nu_hat_sq;
    double nu_hat;
    double joint_at_nu_hat;    // exp(-delta_hat d2_hat) at nu = nu_hat
    double independent_pair;   // exp(-2 c)
};
AsymmetryBudget affordable_asymmetry(const TwoThresholdSpec& spec);

// Pick nu < 0 so that two dependent transmissions at (theta_bar e^{-nu},
// theta_bar e^{nu}) succeed at least once with the same probability as an
// independent pair at the harder threshold. The closed form intersects the
// independent-pair curve with the symmetric minimum psi2(0); exact mode
// bisects against the true psi2(nu) on [-5, 0].
struct EqualizeResult {
    double nu;
    double theta1;
    double theta2;
    double success;  // psi2 at the designed nu
};
EqualizeResult equalize_at_least_once(double delta_hat, double p, double delta,
                                      double theta_bar, bool exact = false);

// Threshold for the second slot making the conditional success after a
// failure match the single-slot success at theta1. Bisection on log(theta2)
// over [log(theta1) - 20, log(theta1)]; throws when the contention is too
// small for a crossing inside the bracket.
double post_failure_threshold(double delta_hat, double p, double delta,
                              double theta1);

// Rate surplus of asymmetric thresholds under log(1 + theta) signaling:
//   gain = log(1 + 2 theta_bar (cosh nu - 1) / (1 + theta_bar)^2),
// bounded below by the same expression with nu^2/2 in place of cosh nu - 1.
struct ThroughputGain {
    double gain;
    double quadratic_bound;
};
ThroughputGain throughput_gain(double theta_bar, double nu);

}  // namespace tempcorr
