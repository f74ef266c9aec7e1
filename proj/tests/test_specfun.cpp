#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "tempcorr/specfun.hpp"

using namespace tempcorr;

TEST_SUITE("specfun") {

TEST_CASE("log_gamma matches reference values") {
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(gamma_fn(6.0) == doctest::Approx(120.0).epsilon(1e-13));
    CHECK(log_gamma(1e4) ==
          doctest::Approx(82099.71749644237727264896).epsilon(1e-14));
    CHECK(log_gamma(1e-3) ==
          doctest::Approx(6.907178885383853682512345).epsilon(1e-13));
    CHECK(log_gamma(123.456) ==
          doctest::Approx(469.6055471299294687300692).epsilon(1e-14));
}

TEST_CASE("log_gamma recurrence and reflection") {
    for (double x : {0.07, 0.31, 1.8, 4.2, 17.0}) {
        CHECK(log_gamma(x + 1.0) ==
              doctest::Approx(log_gamma(x) + std::log(x)).epsilon(1e-13));
    }
    // reflection below 0.5: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    for (double x : {0.1, 0.3, 0.49}) {
        double lhs = gamma_fn(x) * gamma_fn(1.0 - x);
        CHECK(lhs == doctest::Approx(M_PI / std::sin(M_PI * x)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("real_binomial handles integer, fractional and negative tops") {
    CHECK(real_binomial(5.0, 2) == 10.0);
    CHECK(real_binomial(7.0, 0) == 1.0);
    CHECK(real_binomial(0.5, 3) == 0.0625);
    CHECK(real_binomial(3.0, 5) == 0.0);   // zero factor stays exact
    CHECK(real_binomial(-1.0, 4) == 1.0);  // (-1)^k pattern
    CHECK(real_binomial(-1.0, 5) == -1.0);
    CHECK_THROWS_AS(real_binomial(2.0, -1), std::domain_error);
}

TEST_CASE("gauss_2f1 terminating cases are exact for any z") {
    // 2F1(-n, b; b; z) = (1-z)^n, b cancels
    CHECK(gauss_2f1(-3.0, 2.5, 2.5, 0.4) ==
          doctest::Approx(0.216).epsilon(1e-14));
    CHECK(gauss_2f1(-2.0, 1.0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gauss_2f1(-1.0, 3.0, 2.0, 5.0) ==
          doctest::Approx(1.0 - 3.0 / 2.0 * 5.0).epsilon(1e-14));
    // second parameter terminating
    CHECK(gauss_2f1(2.5, -3.0, 2.5, 0.4) ==
          doctest::Approx(gauss_2f1(-3.0, 2.5, 2.5, 0.4)).epsilon(1e-14));
}

TEST_CASE("gauss_2f1 matches frozen high-precision values") {
    CHECK(gauss_2f1(1.0, 1.0, 2.0, -0.5) ==
          doctest::Approx(0.8109302162163287639560262).epsilon(1e-13));
    CHECK(gauss_2f1(2.0, 0.5, 1.5, -4.0) ==
          doctest::Approx(0.3767871794485226257542664).epsilon(1e-12));
    CHECK(gauss_2f1(1.0, 3.5, 5.0, 0.3) ==
          doctest::Approx(1.272014904650119970221746).epsilon(1e-13));
    CHECK(gauss_2f1(3.0, 0.4, 1.4, -0.25) ==
          doctest::Approx(0.833973690895818633696283).epsilon(1e-13));
    // deep Pfaff region
    CHECK(gauss_2f1(2.0, 0.25, 1.25, -1000.0) ==
          doctest::Approx(0.1481377432646053249677912).epsilon(1e-12));
    // slow-ish series near the radius of convergence
    CHECK(gauss_2f1(0.5, 0.5, 3.0, 0.9) ==
          doctest::Approx(1.108834889611490089067).epsilon(1e-12));
}

TEST_CASE("gauss_2f1 elementary identities") {
    // 2F1(1,1;2;z) = -log(1-z)/z on both sides of the Pfaff split
    for (double z : {0.5, 0.25, -0.75, -3.0, -40.0}) {
        CHECK(gauss_2f1(1.0, 1.0, 2.0, z) ==
              doctest::Approx(-std::log1p(-z) / z).epsilon(1e-12));
    }
    // binomial series: 2F1(1, 1-d; 1; p) = (1-p)^{d-1}
    for (double p : {0.1, 0.45, 0.8}) {
        for (double d : {0.2, 0.5, 0.9}) {
            CHECK(gauss_2f1(1.0, 1.0 - d, 1.0, p) ==
                  doctest::Approx(std::pow(1.0 - p, d - 1.0)).epsilon(1e-12));
        }
    }
    CHECK(gauss_2f1(0.7, 1.3, 2.1, 0.0) == 1.0);
}

TEST_CASE("gauss_2f1 domain and convergence failures throw") {
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, -2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 3.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 3.0, 1.5), std::domain_error);
    // converges mathematically, but the geometric error bound cannot certify
    // 1e-16 within the term cap this close to z = 1
    CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 3.0, 0.999999), std::runtime_error);
}

TEST_CASE("stirling numbers match known small values") {
    CHECK(stirling_first(0, 0) == 1.0);
    CHECK(stirling_first(3, 1) == 2.0);
    CHECK(stirling_first(3, 2) == -3.0);
    CHECK(stirling_first(3, 3) == 1.0);
    CHECK(stirling_first(4, 2) == 11.0);
    CHECK(stirling_first(5, 1) == 24.0);
    CHECK(stirling_first(5, 2) == -50.0);
    for (int n = 1; n <= 8; ++n) {
        CHECK(stirling_first(n, n) == 1.0);
        CHECK(stirling_first(n, 0) == 0.0);
    }
    CHECK(stirling_first_string(5, 2) == "-50");
}

TEST_CASE("stirling generating identity: falling factorial") {
    // sum_k s(n,k) x^k = x (x-1) ... (x-n+1)
    const double x = 0.7;
    double acc = 0.0;
    double xk = 1.0;
    for (int k = 0; k <= 6; ++k) {
        acc += stirling_first(6, k) * xk;
        xk *= x;
    }
    CHECK(acc == doctest::Approx(-8.909901).epsilon(1e-12));
}

TEST_CASE("stirling string form agrees with the double form") {
    double from_string = std::stod(stirling_first_string(20, 3));
    CHECK(from_string == doctest::Approx(stirling_first(20, 3)).epsilon(1e-15));
    // above 2^53 the double form is the rounded exact integer
    double big = std::stod(stirling_first_string(40, 2));
    CHECK(big == doctest::Approx(stirling_first(40, 2)).epsilon(1e-15));
}

TEST_CASE("stirling domain errors") {
    CHECK_THROWS_AS(stirling_first(65, 0), std::domain_error);
    CHECK_THROWS_AS(stirling_first(-1, 0), std::domain_error);
    CHECK_THROWS_AS(stirling_first(3, 4), std::domain_error);
    CHECK_THROWS_AS(stirling_first(3, -1), std::domain_error);
}

}  // TEST_SUITE
