#pragma once

#include "tempcorr/network.hpp"

namespace tempcorr {

enum class DistanceMode { fixed, rayleigh };

// Local-delay configuration. In fixed mode the link distance is base.r; in
// rayleigh mode the distance is random with density 2*pi*mu*x*exp(-pi*mu*x^2)
// (mean 1/(2 sqrt(mu))) and base.r is ignored.
struct DelayModel {
    NetworkParams base;
    DistanceMode mode = DistanceMode::rayleigh;
    double mu = 1.0;

    void validate() const;
    double delta_prime() const;   // contention per unit link area
    double delta_dprime() const;  // delta_prime / (pi mu)
};

// Probability that transmissions 1..n all succeed when the link distance is
// Rayleigh but fixed across slots: pi mu / (pi mu + delta_prime * D_n).
// small_p_quadratic is the order-p^2 expansion
//   1 - n d'' p + [C(n,2) d'' (1-delta) + n^2 d''^2] p^2,  d'' = delta_dprime.
struct RandomLinkSuccess {
    double value;
    double small_p_quadratic;
};
RandomLinkSuccess joint_success_random_distance(const DelayModel& model, int n);

// Variant where every node transmits (probability p each slot) and the
// receiver process has intensity (1-p) lambda:
//   p^n (1-p) / (1 - p + theta^delta Gamma(1+delta) Gamma(1-delta) D_n).
double all_nodes_joint_success(const NetworkParams& params, int n);

// Delay distribution at fixed distance. pmf = P(M = n), tail = P(M > n).
struct DelayPmf {
    double pmf;
    double tail;
};
DelayPmf delay_pmf_fixed(const NetworkParams& params, int n);

// E M = exp(Delta p / (1-p)^{1-delta}); finite for every p < 1, domain error
// at p = 1.
double mean_delay_fixed(const NetworkParams& params);

enum class InterferenceMode { dependent, independent };

// Mean delay over the Rayleigh link distance. Independent mode has the
// closed form pi mu / (pi mu - delta_prime p) when positive, else infinity.
// Dependent mode sums the n-step outage terms; it is finite iff
// delta_prime p / (1-p)^{1-delta} < pi mu. The sum has a power-law tail, so
// the stopping rule combines a relative term threshold with a tail estimate
// from the locally fitted decay exponent; converged=false flags a truncation
// that did not meet tolerance within n_max terms.
struct MeanDelay {
    double value;
    bool finite;
    bool converged;
    int n_terms;
    double tail_estimate;
};
MeanDelay mean_delay_random(const DelayModel& model, InterferenceMode mode,
                            int n_max = 120);

// Phase-transition probabilities: p_c solves
// delta_prime p / (1-p)^{1-delta} = pi mu (bisection, always interior);
// p_c_ind = min(1, pi mu / delta_prime). p_c <= p_c_ind always.
struct CriticalProbs {
    double p_c;
    double p_c_ind;
};
CriticalProbs critical_probabilities(const DelayModel& model);

// Delay pmf when the interferer process is resampled every slot. With
// beta = delta_dprime * p and s = 1/beta:
//   exact     = Gamma(n+1) Gamma(1+s) / (n beta Gamma(n+1+s))
//   asymptote = Gamma(1+s) / (n beta) * n^{-s}
// exact <= asymptote for every n and the ratio tends to 1; both decay like
// n^{-1-s}, so the mean is finite iff beta < 1.
struct IndependentPmf {
    double exact;
    double asymptote;
};
IndependentPmf delay_pmf_independent(const DelayModel& model, int n);

// Residual of sum_{n=0}^{n_max} sum_{k=0}^n (-1)^k C(n,k)/(1+k beta) against
// 1/(1-beta), evaluated in exact rational arithmetic (beta taken as the exact
// rational value of the double). Requires 0 <= beta < 1.
double binomial_identity_residual(double beta, int n_max);

// Truncated-series estimate of the fixed-distance mean delay:
//   partial = 1 + Delta p (1-p)^{delta-1}
//             - Delta p^{n+1} Gamma(n+1-delta) 2F1(1, n+1-delta; n+1; p)
//               / (Gamma(n+1) Gamma(1-delta))
// and its n -> inf limit 1 + Delta p (1-p)^{delta-1}. partial increases to
// the limit.
struct TaylorMeanDelay {
    double partial;
    double limit;
};
TaylorMeanDelay taylor_mean_delay(const NetworkParams& params, int n);

}  // namespace tempcorr
