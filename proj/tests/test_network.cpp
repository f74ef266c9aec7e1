#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "tempcorr/network.hpp"
#include "tempcorr/specfun.hpp"

using namespace tempcorr;

TEST_SUITE("network") {

TEST_CASE("validate rejects out-of-range parameters") {
    NetworkParams ok;
    CHECK_NOTHROW(ok.validate());

    auto bad = ok;
    bad.lambda = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ok;
    bad.lambda = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ok;
    bad.r = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ok;
    bad.theta = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ok;
    bad.delta = 5e-5;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ok;
    bad.delta = 0.99999;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ok;
    bad.p = 1.1;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ok;
    bad.p = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);

    // boundary of the allowed delta range
    bad = ok;
    bad.delta = kDeltaMin;
    CHECK_NOTHROW(bad.validate());
    bad.delta = kDeltaMax;
    CHECK_NOTHROW(bad.validate());
    bad = ok;
    bad.p = 0.0;
    CHECK_NOTHROW(bad.validate());
    bad.p = 1.0;
    CHECK_NOTHROW(bad.validate());
    bad = ok;
    bad.lambda = 0.0;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("gamma_product matches the gamma-function route") {
    struct Fix {
        double delta, value;
    };
    const Fix fixtures[] = {
        {0.1, 1.016640738463051963161902},
        {0.25, 1.11072073453959156175397},
        {0.4, 1.32130639967764964207436},
        {0.5, 1.570796326794896619231322},
        {2.0 / 3.0, 2.418399152312290467458771},
        {0.8, 4.275837328462380453700737},
        // value for the binary double nearest 0.9999; the 1/(1-delta)
        // sensitivity makes the exact-decimal value differ at 1e-13
        {0.9999, 9999.000164478060579252749},
    };
    for (const auto& f : fixtures) {
        CHECK(gamma_product(f.delta) == doctest::Approx(f.value).epsilon(1e-13));
        double via_gamma =
            std::exp(log_gamma(1.0 + f.delta) + log_gamma(1.0 - f.delta));
        CHECK(gamma_product(f.delta) ==
              doctest::Approx(via_gamma).epsilon(1e-13));
    }
    CHECK(gamma_product(0.5) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
}

TEST_CASE("contention fields satisfy their algebraic relations") {
    NetworkParams params;
    params.lambda = 0.3;
    params.r = 1.7;
    params.theta = 4.0;
    params.delta = 0.35;
    params.p = 0.6;
    auto c = contention(params);

    CHECK(c.big_delta ==
          doctest::Approx(c.delta_hat * std::pow(params.theta, params.delta))
              .epsilon(1e-14));
    CHECK(c.delta_prime ==
          doctest::Approx(c.big_delta / (params.r * params.r)).epsilon(1e-14));
    CHECK(c.gamma_sc ==
          doctest::Approx(c.delta_prime / params.lambda).epsilon(1e-14));
    CHECK(c.gamma_sc ==
          doctest::Approx(M_PI * std::pow(params.theta, params.delta) *
                          gamma_product(params.delta))
              .epsilon(1e-14));
}

TEST_CASE("canonical density gives contention one half") {
    NetworkParams params;
    params.lambda = 0.10132118364233778;  // 1 / pi^2
    params.r = 1.0;
    params.theta = 1.0;
    params.delta = 0.5;
    auto c = contention(params);
    CHECK(c.big_delta == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.delta_hat == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.delta_prime == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("contention fixture used by the correlation sweep") {
    // lambda pi r^2 = 1/2, theta = 5, delta = 1/2
    NetworkParams params;
    params.lambda = 0.5 / M_PI;
    params.r = 1.0;
    params.theta = 5.0;
    params.delta = 0.5;
    auto c = contention(params);
    CHECK(c.big_delta ==
          doctest::Approx(1.756203682760181598289094).epsilon(1e-14));
}

TEST_CASE("alpha is the inverse exponent map") {
    NetworkParams params;
    params.delta = 0.4;
    CHECK(params.alpha() == doctest::Approx(5.0).epsilon(1e-15));
    params.delta = 0.5;
    CHECK(params.alpha() == doctest::Approx(4.0).epsilon(1e-15));
}

}  // TEST_SUITE
