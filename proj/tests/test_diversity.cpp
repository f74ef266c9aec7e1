#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "tempcorr/diversity.hpp"

using namespace tempcorr;

TEST_SUITE("diversity") {

TEST_CASE("three evaluation routes agree across the grid") {
    for (int n = 1; n <= 20; ++n) {
        for (int pi = 0; pi <= 10; ++pi) {
            for (int di = 0; di <= 10; ++di) {
                const double p = pi / 10.0;
                const double d = di / 10.0;
                const double a = div_poly(n, p, d);
                const double b = div_poly_one_minus_delta(n, p, d);
                const double c = div_poly_delta_form(n, p, d);
                CHECK(std::fabs(b - a) <= 1e-10);
                CHECK(std::fabs(c - a) <= 1e-10);
            }
        }
    }
}

TEST_CASE("boundary exponents collapse to elementary forms") {
    for (int n : {1, 2, 5, 12, 30}) {
        for (double p : {0.2, 0.5, 0.9}) {
            // the alternating sum sheds digits as n grows (the reason the
            // default cap sits at 30); the high-precision route does not
            CHECK(std::fabs(div_poly(n, p, 0.0) -
                            (1.0 - std::pow(1.0 - p, n))) <= 2e-8);
            CHECK(std::fabs(div_poly(n, p, 0.0, true) -
                            (1.0 - std::pow(1.0 - p, n))) <= 1e-14);
            CHECK(div_poly(n, p, 1.0) ==
                  doctest::Approx(n * p).epsilon(1e-13));
        }
    }
}

TEST_CASE("spot values") {
    CHECK(div_poly(2, 0.5, 0.5) == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(div_poly(5, 0.3, 0.7) ==
          doctest::Approx(1.276894960125).epsilon(1e-13));
    CHECK(div_poly(20, 0.85, 0.35) ==
          doctest::Approx(3.001393166160806836894).epsilon(1e-12));
    CHECK(div_poly(1, 0.37, 0.8) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("near-one-exponent expansion is exact for n up to two") {
    for (double p : {0.1, 0.6, 1.0}) {
        for (double d : {0.3, 0.7, 0.95}) {
            CHECK(div_poly_delta_up1_approx(1, p, d) ==
                  doctest::Approx(div_poly(1, p, d)).epsilon(1e-14));
            CHECK(div_poly_delta_up1_approx(2, p, d) ==
                  doctest::Approx(div_poly(2, p, d)).epsilon(1e-14));
        }
    }
}

TEST_CASE("near-one-exponent expansion error is second order") {
    // the dropped remainder scales like (1-delta)^2: halving 1-delta
    // shrinks the error fourfold
    auto err = [](int n, double p, double d) {
        return std::fabs(div_poly(n, p, d) -
                         div_poly_delta_up1_approx(n, p, d));
    };
    CHECK(err(4, 0.5, 0.8) / err(4, 0.5, 0.9) ==
          doctest::Approx(3.9808612440191387).epsilon(1e-6));
    CHECK(err(4, 0.5, 0.9) / err(4, 0.5, 0.95) ==
          doctest::Approx(3.9904534606205253).epsilon(1e-6));
    for (double d : {0.8, 0.9, 0.95}) {
        CHECK(err(4, 0.5, d) <= 0.22 * (1.0 - d) * (1.0 - d));
    }

    // usable once 1-delta <= 1/3; relative error shrinks with 1-delta
    double worst07 = 0.0;
    double worst09 = 0.0;
    for (int n = 3; n <= 30; ++n) {
        for (double p : {0.2, 0.5, 0.8, 1.0}) {
            worst07 = std::max(worst07, err(n, p, 0.7) / div_poly(n, p, 0.7));
            worst09 = std::max(worst09, err(n, p, 0.9) / div_poly(n, p, 0.9));
        }
    }
    CHECK(worst09 < 0.06);
    CHECK(worst09 < worst07);
}

TEST_CASE("single-transmitter limit matches the gamma ratio") {
    for (int n = 1; n <= 20; ++n) {
        for (double d : {0.2, 0.5, 0.8}) {
            CHECK(simo_diversity(n, d) ==
                  doctest::Approx(div_poly(n, 1.0, d)).epsilon(1e-10));
        }
    }
    CHECK(simo_diversity(3, 0.7) == doctest::Approx(2.295).epsilon(1e-13));
    CHECK(simo_diversity(10, 0.3) ==
          doctest::Approx(2.1998388673421875).epsilon(1e-13));
    CHECK(simo_diversity(1, 0.42) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("concave in the access probability") {
    const double h = 1e-3;
    for (int n : {2, 5, 17, 30}) {
        for (double d : {0.1, 0.5, 0.9}) {
            for (double p = 0.05; p < 0.95; p += 0.05) {
                double second = div_poly(n, p + h, d) - 2.0 * div_poly(n, p, d) +
                                div_poly(n, p - h, d);
                CHECK(second <= 1e-12);
            }
        }
    }
}

TEST_CASE("convex in the tail exponent") {
    const double h = 1e-3;
    for (int n : {2, 5, 17, 30}) {
        for (double p : {0.3, 0.7, 1.0}) {
            for (double d = 0.1; d < 0.91; d += 0.1) {
                double second = div_poly(n, p, d + h) - 2.0 * div_poly(n, p, d) +
                                div_poly(n, p, d - h);
                CHECK(second >= -1e-12);
            }
        }
    }
}

TEST_CASE("high precision route extends past the standard cap") {
    for (double p : {0.4, 0.9}) {
        for (double d : {0.3, 0.6}) {
            CHECK(div_poly(10, p, d, true) ==
                  doctest::Approx(div_poly(10, p, d)).epsilon(1e-13));
        }
    }
    // the plain alternating sum would lose all digits at n = 60
    CHECK(div_poly(60, 1.0, 0.45, true) ==
          doctest::Approx(simo_diversity(60, 0.45)).epsilon(1e-12));
    CHECK(div_poly(200, 1.0, 0.7, true) ==
          doctest::Approx(simo_diversity(200, 0.7)).epsilon(1e-12));
    // the gamma-ratio reference itself only carries ~1e-11 relative
    // accuracy this far out (difference of two log-gammas near 3e4)
    CHECK(div_poly(4096, 1.0, 0.3, true) ==
          doctest::Approx(simo_diversity(4096, 0.3)).epsilon(1e-9));
    // interior p at large n stays within the monotone envelope
    double mid = div_poly(500, 0.6, 0.5, true);
    CHECK(mid > div_poly(499, 0.6, 0.5, true));
    CHECK(mid < 500 * 0.6);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(div_poly(0, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(div_poly(kDiversityCap + 1, 0.5, 0.5), std::domain_error);
    CHECK_NOTHROW(div_poly(kDiversityCap + 1, 0.5, 0.5, true));
    CHECK_THROWS_AS(div_poly(4097, 0.5, 0.5, true), std::domain_error);
    CHECK_THROWS_AS(div_poly(2, 1.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(div_poly(2, -0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(div_poly(2, 0.5, 1.2), std::domain_error);
    CHECK_THROWS_AS(div_poly(2, 0.5, -0.2), std::domain_error);
}

}  // TEST_SUITE
