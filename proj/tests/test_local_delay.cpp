#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "tempcorr/local_delay.hpp"
#include "tempcorr/network.hpp"

using namespace tempcorr;

namespace {

NetworkParams canonical() {
    NetworkParams params;
    params.lambda = 0.10132118364233778;  // contention exactly 1/2
    params.r = 1.0;
    params.theta = 1.0;
    params.delta = 0.5;
    params.p = 0.5;
    return params;
}

NetworkParams with_big_delta(double big_delta, double p, double delta) {
    NetworkParams params;
    params.r = 1.0;
    params.theta = 1.0;
    params.delta = delta;
    params.p = p;
    params.lambda = big_delta / (M_PI * gamma_product(delta));
    return params;
}

DelayModel unit_model(double p, double mu) {
    DelayModel model;
    model.base.lambda = 1.0;
    model.base.r = 1.0;
    model.base.theta = 1.0;
    model.base.delta = 0.5;
    model.base.p = p;
    model.mode = DistanceMode::rayleigh;
    model.mu = mu;
    return model;
}

}  // namespace

TEST_SUITE("local_delay") {

TEST_CASE("delay distribution at fixed distance") {
    auto params = canonical();
    const double pmf[] = {0.7788007830714048682452, 0.1331522566435128308968,
                          0.04408755002776879465741, 0.01946288597524309001197};
    for (int n = 1; n <= 4; ++n) {
        CHECK(delay_pmf_fixed(params, n).pmf ==
              doctest::Approx(pmf[n - 1]).epsilon(1e-13));
    }
    CHECK(delay_pmf_fixed(params, 3).tail ==
          doctest::Approx(0.0439594102573135062006).epsilon(1e-12));
}

TEST_CASE("delay pmf telescopes and sums to one") {
    auto params = canonical();
    double prev_tail = 1.0;
    double acc = 0.0;
    for (int n = 1; n <= 25; ++n) {
        auto d = delay_pmf_fixed(params, n);
        // the shared exponentials keep the identity exact in structure;
        // what remains is alternating-sum noise, ~1e-10 absolute by n = 25
        CHECK(std::fabs(prev_tail - d.tail - d.pmf) < 1e-9);
        prev_tail = d.tail;
        acc += d.pmf;
    }
    CHECK(acc + prev_tail == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(delay_pmf_fixed(params, 0), std::domain_error);
    CHECK_THROWS_AS(delay_pmf_fixed(params, 31), std::domain_error);
}

TEST_CASE("joint success over a random link distance") {
    auto model = unit_model(0.5, 1.0);
    const double expected[] = {0.5600991535115573759105,
                               0.4211507311593792725799,
                               0.3520163741110260126841};
    for (int n = 1; n <= 3; ++n) {
        CHECK(joint_success_random_distance(model, n).value ==
              doctest::Approx(expected[n - 1]).epsilon(1e-13));
    }

    // second-order expansion: residual is cubic in p, so halving p
    // divides the gap by eight
    auto small = unit_model(1e-3, 1.0);
    auto half = unit_model(5e-4, 1.0);
    for (int n : {1, 2, 4}) {
        auto rs = joint_success_random_distance(small, n);
        auto rh = joint_success_random_distance(half, n);
        double gap = rs.value - rs.small_p_quadratic;
        double gap_half = rh.value - rh.small_p_quadratic;
        CHECK(std::fabs(gap) < 5e-7);
        CHECK(gap / gap_half == doctest::Approx(8.0).epsilon(0.01));
    }

    auto fixed = model;
    fixed.mode = DistanceMode::fixed;
    CHECK_THROWS_AS(joint_success_random_distance(fixed, 1),
                    std::domain_error);
}

TEST_CASE("all-transmitter variant does not depend on density") {
    NetworkParams params;
    params.lambda = 0.3;
    params.r = 1.0;
    params.theta = 1.0;
    params.delta = 0.5;
    params.p = 0.4;
    CHECK(all_nodes_joint_success(params, 1) ==
          doctest::Approx(0.1953890574782086341391).epsilon(1e-13));
    CHECK(all_nodes_joint_success(params, 2) ==
          doctest::Approx(0.05546012577633674052164).epsilon(1e-13));
    auto dense = params;
    dense.lambda = 2.0;
    CHECK(all_nodes_joint_success(dense, 2) ==
          doctest::Approx(all_nodes_joint_success(params, 2)).epsilon(1e-15));
}

TEST_CASE("mean delay at fixed distance") {
    auto params = canonical();
    CHECK(mean_delay_fixed(params) ==
          doctest::Approx(1.424119019480981600414).epsilon(1e-13));
    params.p = 1.0;
    CHECK_THROWS_AS(mean_delay_fixed(params), std::domain_error);
}

TEST_CASE("first-order mean delay error scales quadratically in contention") {
    auto full = with_big_delta(0.05, 0.5, 0.5);
    auto half = with_big_delta(0.025, 0.5, 0.5);
    double err_full = mean_delay_fixed(full) - taylor_mean_delay(full, 30).limit;
    double err_half = mean_delay_fixed(half) - taylor_mean_delay(half, 30).limit;
    CHECK(err_full / err_half == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("mean delay over random distance, correlated interference") {
    // p tuned so the tail decays like n^{-4}: too slow to converge within
    // the default 120 terms, so the power-law tail estimate has to close it
    auto model = unit_model(0.1469929300843543838503594, 1.0);
    auto md = mean_delay_random(model, InterferenceMode::dependent);
    CHECK(md.finite);
    CHECK_FALSE(md.converged);
    CHECK(md.n_terms == 120);
    CHECK(md.value == doctest::Approx(1.3333336597781270769).epsilon(1e-9));
    CHECK(md.tail_estimate ==
          doctest::Approx(1.82653742352e-5).epsilon(1e-4));

    // light contention converges well before the cap
    auto quick = mean_delay_random(unit_model(0.02, 1.0),
                                   InterferenceMode::dependent);
    CHECK(quick.converged);
    CHECK(quick.finite);
    CHECK(quick.n_terms < 60);
    CHECK(quick.value > 1.0);
    CHECK(quick.value < 1.2);

    // above the phase transition the mean diverges
    auto hot = mean_delay_random(unit_model(0.5, 1.0),
                                 InterferenceMode::dependent);
    CHECK_FALSE(hot.finite);
    CHECK(std::isinf(hot.value));

    CHECK_THROWS_AS(mean_delay_random(model, InterferenceMode::dependent, 1),
                    std::domain_error);
    auto fixed = model;
    fixed.mode = DistanceMode::fixed;
    CHECK_THROWS_AS(mean_delay_random(fixed, InterferenceMode::dependent),
                    std::domain_error);
}

TEST_CASE("mean delay over random distance, fresh interferers each slot") {
    auto model = unit_model(0.5, 1.0);
    double dpr = model.delta_prime();
    auto md = mean_delay_random(model, InterferenceMode::independent);
    CHECK(md.finite);
    CHECK(md.value ==
          doctest::Approx(M_PI / (M_PI - dpr * 0.5)).epsilon(1e-12));
    // same p keeps the independent mean finite while the correlated one blows
    // up: remembering interferer positions hurts
    CHECK_FALSE(
        mean_delay_random(model, InterferenceMode::dependent).finite);

    auto hot = mean_delay_random(unit_model(0.7, 1.0),
                                 InterferenceMode::independent);
    CHECK_FALSE(hot.finite);
    CHECK(std::isinf(hot.value));
}

TEST_CASE("critical probabilities against frozen values") {
    struct Fix {
        double mu, delta, p_c, p_c_ind;
    };
    const Fix fixtures[] = {
        {1.0, 0.2, 0.39490800842917633067, 0.59025383428895758076},
        {1.0, 0.3, 0.32629777049375169406, 0.43021595952286016447},
        {1.0, 0.5, 0.18206992436926325098, 0.20131684841794814014},
        {1.0, 0.8, 0.036789431215227175586, 0.037066264937423417368},
        {4.0, 0.5, 0.54386162801489195474, 0.80526739367179256058},
        {4.0, 0.8, 0.1437343346422597324, 0.14826505974969366947},
    };
    for (const auto& f : fixtures) {
        DelayModel model;
        model.base.lambda = 1.0;
        model.base.r = 1.0;
        model.base.theta = 10.0;
        model.base.delta = f.delta;
        model.base.p = 0.5;
        model.mode = DistanceMode::rayleigh;
        model.mu = f.mu;
        auto cp = critical_probabilities(model);
        CHECK(cp.p_c == doctest::Approx(f.p_c).epsilon(1e-8));
        CHECK(cp.p_c_ind == doctest::Approx(f.p_c_ind).epsilon(1e-10));
        CHECK(cp.p_c < cp.p_c_ind);
    }

    // weak contention saturates the independent threshold at one while the
    // correlated root stays interior
    DelayModel weak;
    weak.base.lambda = 0.25;
    weak.base.r = 1.0;
    weak.base.theta = 10.0;
    weak.base.delta = 0.3;
    weak.base.p = 0.5;
    weak.mode = DistanceMode::rayleigh;
    weak.mu = 1.0;
    auto cp = critical_probabilities(weak);
    CHECK(cp.p_c_ind == 1.0);
    CHECK(cp.p_c < 1.0);
    double dpr = weak.delta_prime();
    double residual = dpr * cp.p_c * std::pow(1.0 - cp.p_c, weak.base.delta - 1.0) -
                      M_PI * weak.mu;
    CHECK(std::fabs(residual) < 1e-8);
}

TEST_CASE("delay pmf with fresh interferers") {
    // mu chosen so beta = 1/2, hence P(M = n) = 4 / (n (n+1) (n+2))
    auto model = unit_model(0.5, M_PI / 2.0);
    auto p1 = delay_pmf_independent(model, 1);
    CHECK(p1.exact == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(p1.asymptote == doctest::Approx(4.0).epsilon(1e-13));
    auto p10 = delay_pmf_independent(model, 10);
    CHECK(p10.exact == doctest::Approx(1.0 / 330.0).epsilon(1e-12));
    CHECK(p10.asymptote == doctest::Approx(0.004).epsilon(1e-13));

    double prev_ratio = 0.0;
    for (int n : {1, 3, 10, 40, 100, 1000, 10000}) {
        auto d = delay_pmf_independent(model, n);
        CHECK(d.exact <= d.asymptote);
        double ratio = d.exact / d.asymptote;
        CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio == doctest::Approx(1.0).epsilon(5e-4));

    CHECK_THROWS_AS(delay_pmf_independent(model, 0), std::domain_error);
    auto fixed = model;
    fixed.mode = DistanceMode::fixed;
    CHECK_THROWS_AS(delay_pmf_independent(fixed, 1), std::domain_error);
}

TEST_CASE("alternating binomial sum misses its target by a power law") {
    CHECK(binomial_identity_residual(0.5, 60) ==
          doctest::Approx(-1.0 / 31.0).epsilon(1e-12));
    CHECK(binomial_identity_residual(0.25, 60) ==
          doctest::Approx(-1.0 / 31248.0).epsilon(1e-12));
    // at beta = 1/2 the residual collapses to -2/(N+2)
    for (int n_max : {5, 10, 23}) {
        CHECK(binomial_identity_residual(0.5, n_max) ==
              doctest::Approx(-2.0 / (n_max + 2)).epsilon(1e-12));
    }
    CHECK(binomial_identity_residual(0.0, 7) == 0.0);
    CHECK_THROWS_AS(binomial_identity_residual(1.0, 10), std::domain_error);
    CHECK_THROWS_AS(binomial_identity_residual(-0.1, 10), std::domain_error);
    CHECK_THROWS_AS(binomial_identity_residual(0.5, -1), std::domain_error);
}

TEST_CASE("series form of the mean delay increases to its limit") {
    auto params = with_big_delta(0.05, 0.3, 0.5);
    auto tm = taylor_mean_delay(params, 50);
    CHECK(tm.limit ==
          doctest::Approx(1.017928429140015904599532).epsilon(1e-14));
    CHECK(tm.partial == doctest::Approx(tm.limit).epsilon(1e-14));

    auto mid = with_big_delta(0.3, 0.4, 0.5);
    CHECK(taylor_mean_delay(mid, 6).partial ==
          doctest::Approx(1.1547424).epsilon(1e-6));
    double t3 = taylor_mean_delay(mid, 3).partial;
    double t6 = taylor_mean_delay(mid, 6).partial;
    double t12 = taylor_mean_delay(mid, 12).partial;
    CHECK(t3 < t6);
    CHECK(t6 < t12);
    CHECK(t12 < taylor_mean_delay(mid, 12).limit);

    CHECK(taylor_mean_delay(mid, 0).partial == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(taylor_mean_delay(mid, -1), std::domain_error);
    auto saturated = mid;
    saturated.p = 1.0;
    CHECK_THROWS_AS(taylor_mean_delay(saturated, 5), std::domain_error);
}

}  // TEST_SUITE
