#pragma once

namespace tempcorr {

// Link-in-Poisson-field parameters. All downstream formulas are written in
// delta = 2/alpha; alpha is accepted at the CLI boundary and converted once.
struct NetworkParams {
    double lambda = 1.0;  // interferer intensity (nodes per unit area)
    double r = 1.0;       // link distance
    double theta = 1.0;   // SIR threshold (linear)
    double delta = 0.5;   // 2 / alpha, in (0, 1)
    double p = 0.5;       // per-slot transmit probability

    double alpha() const { return 2.0 / delta; }

    // Throws std::domain_error when out of range. delta is clamped away from
    // {0, 1} because Gamma(1 - delta) diverges at 1; the polynomial limits at
    // the endpoints live in the diversity module instead.
    void validate() const;
};

// Derived contention constants. big_delta drives every success exponent; the
// hatted and primed variants strip the theta and r^2 factors.
struct Contention {
    double big_delta;    // lambda pi r^2 theta^delta Gamma(1+delta) Gamma(1-delta)
    double delta_hat;    // big_delta / theta^delta
    double delta_prime;  // big_delta / r^2
    double gamma_sc;     // pi theta^delta Gamma(1+delta) Gamma(1-delta)
};

Contention contention(const NetworkParams& params);

// Gamma(1+delta) Gamma(1-delta); equals pi delta / sin(pi delta).
double gamma_product(double delta);

inline constexpr double kDeltaMin = 1e-4;
inline constexpr double kDeltaMax = 1.0 - 1e-4;

}  // namespace tempcorr
