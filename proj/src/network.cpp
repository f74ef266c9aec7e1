#include "tempcorr/network.hpp"

#include <cmath>
#include <stdexcept>

namespace tempcorr {

void NetworkParams::validate() const {
    if (!std::isfinite(lambda) || lambda < 0.0)
        throw std::domain_error("lambda must be finite and >= 0");
    if (!std::isfinite(r) || r <= 0.0)
        throw std::domain_error("r must be finite and > 0");
    if (!std::isfinite(theta) || theta <= 0.0)
        throw std::domain_error("theta must be finite and > 0");
    if (!(delta >= kDeltaMin && delta <= kDeltaMax))
        throw std::domain_error("delta must lie in [1e-4, 1 - 1e-4]");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("p must lie in [0, 1]");
}

double gamma_product(double delta) {
    // sin(pi delta) = sin(pi (1-delta)); the reflected argument keeps full
    // precision as delta approaches 1, where the direct product pi*delta
    // lands next to pi and the sine loses digits
    double u = delta > 0.5 ? 1.0 - delta : delta;
    return M_PI * delta / std::sin(M_PI * u);
}

Contention contention(const NetworkParams& params) {
    params.validate();
    Contention c;
    double theta_d = std::pow(params.theta, params.delta);
    c.gamma_sc = M_PI * theta_d * gamma_product(params.delta);
    c.delta_prime = params.lambda * c.gamma_sc;
    c.big_delta = c.delta_prime * params.r * params.r;
    c.delta_hat = c.big_delta / theta_d;
    return c;
}

}  // namespace tempcorr
