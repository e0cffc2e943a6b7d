#include <cmath>

#include <doctest.h>

#include "errors.hpp"
#include "robustness.hpp"

using namespace qmem;

namespace {

double damping_robustness(double p) {
    return (p - 1.0 + std::sqrt(1.0 - 2.0 * p + 5.0 * p * p)) / 2.0;
}

} // namespace

TEST_CASE("identity anchors from formula and SDP") {
    for (int d : {2, 3}) {
        QuantumChannel id = identity_channel(d);
        CHECK(eig_lower_bound(id).value ==
              doctest::Approx(d - 1.0).epsilon(1e-9));
        RobustnessResult sdp = robustness_ppt(id, PptVariant::standard);
        CHECK(sdp.value == doctest::Approx(d - 1.0).epsilon(1e-6));
        CHECK(log_robustness(sdp) == doctest::Approx(std::log2(d)).epsilon(1e-6));
    }
}

TEST_CASE("eig bound on known families") {
    CHECK(eig_lower_bound(completely_depolarizing_channel(2)).value == 0.0);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        CHECK(eig_lower_bound(dephasing_channel(p)).value ==
              doctest::Approx(std::abs(2.0 * p - 1.0)).epsilon(1e-10));
        CHECK(eig_lower_bound(damping_channel(p)).value ==
              doctest::Approx(damping_robustness(p)).epsilon(1e-10));
    }
    CHECK(eig_lower_bound(damping_channel(0.5)).value ==
          doctest::Approx(0.30901699437).epsilon(1e-9));
    CHECK(eig_lower_bound(identity_channel(2)).is_exact);
    CHECK_FALSE(eig_lower_bound(erasure_channel(0.5)).is_exact);
}

TEST_CASE("moment bounds and their k-ordering") {
    QuantumChannel id = identity_channel(2);
    CHECK(moment_lower_bound(id, 1).value == doctest::Approx(0.0));
    CHECK(moment_lower_bound(id, 2).value ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
    // Approaches the eig bound (value 1) from below as k grows.
    CHECK(moment_lower_bound(id, 40).value ==
          doctest::Approx(std::pow(2.0, 39.0 / 40.0) - 1.0).epsilon(1e-12));
    for (int trial = 0; trial < 30; ++trial) {
        QuantumChannel n = random_channel(2, 2, 900 + trial);
        double eig = eig_lower_bound(n).value;
        double prev = moment_lower_bound(n, 1).value;
        for (int k = 2; k <= 6; ++k) {
            double cur = moment_lower_bound(n, k).value;
            CHECK(prev <= cur + 1e-9);
            prev = cur;
        }
        CHECK(prev <= eig + 1e-9);
    }
}

TEST_CASE("depolarizing robustness curve") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        RobustnessResult r = robustness_ppt(depolarizing_channel(p),
                                            PptVariant::standard);
        CHECK(r.value ==
              doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-6));
        CHECK(r.is_exact);
    }
}

TEST_CASE("erasure robustness equals p") {
    for (double p : {0.25, 0.5, 1.0}) {
        RobustnessResult r = robustness_ppt(erasure_channel(p),
                                            PptVariant::standard);
        CHECK(r.value == doctest::Approx(p).epsilon(1e-6));
        CHECK(r.is_exact); // 2x3 output: PPT = separable
    }
}

TEST_CASE("damping robustness from SDP matches the closed form") {
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
        RobustnessResult r = robustness_ppt(damping_channel(p),
                                            PptVariant::standard);
        CHECK(r.value == doctest::Approx(damping_robustness(p)).epsilon(1e-6));
    }
}

TEST_CASE("exactness cross-check: SDP equals eig formula for qubit outputs") {
    for (int trial = 0; trial < 100; ++trial) {
        int da = 2 + trial % 2;
        QuantumChannel n = random_channel(da, 2, 1400 + trial);
        double sdp = robustness_ppt(n, PptVariant::standard).value;
        double eig = eig_lower_bound(n).value;
        CHECK(std::abs(sdp - eig) < 1e-6);
    }
}

TEST_CASE("ordering chain: moment <= eig <= generalized <= standard") {
    for (int trial = 0; trial < 25; ++trial) {
        QuantumChannel n = trial % 2 ? random_channel(2, 3, 1500 + trial)
                                     : random_channel(2, 2, 1500 + trial);
        double m2 = moment_lower_bound(n, 2).value;
        double eig = eig_lower_bound(n).value;
        double gen = robustness_ppt(n, PptVariant::generalized).value;
        double std_r = robustness_ppt(n, PptVariant::standard).value;
        CHECK(m2 <= eig + 1e-6);
        CHECK(eig <= gen + 1e-6);
        CHECK(gen <= std_r + 1e-6);
    }
}

TEST_CASE("entanglement variants drop constraints and can only decrease") {
    for (int trial = 0; trial < 10; ++trial) {
        QuantumChannel n = random_channel(2, 3, 1600 + trial);
        double std_r = robustness_ppt(n, PptVariant::standard).value;
        double ent = robustness_ppt(n, PptVariant::entanglement).value;
        double ent_g =
            robustness_ppt(n, PptVariant::entanglement_generalized).value;
        CHECK(ent <= std_r + 1e-6);
        CHECK(ent_g <= ent + 1e-6);
    }
}

TEST_CASE("decomposition reconstructs the channel with PPT components") {
    for (int trial = 0; trial < 15; ++trial) {
        QuantumChannel n = random_channel(2, 2, 1700 + trial);
        RobustnessResult r = robustness_ppt(n, PptVariant::standard);
        REQUIRE(r.m_choi);
        REQUIRE(r.m_prime_choi);
        r.m_choi->validate();
        r.m_prime_choi->validate();
        CHECK(is_ppt_choi(*r.m_choi, 1e-7));
        CHECK(is_ppt_choi(*r.m_prime_choi, 1e-7));
        Mat rebuilt = (1.0 + r.value) * r.m_prime_choi->matrix -
                      r.value * r.m_choi->matrix;
        CHECK((rebuilt - n.choi.matrix).norm() < 1e-6);
    }
}

TEST_CASE("dual witness closes the gap") {
    for (int trial = 0; trial < 10; ++trial) {
        QuantumChannel n = trial % 2 ? random_channel(2, 3, 1800 + trial)
                                     : random_channel(2, 2, 1800 + trial);
        RobustnessResult r = robustness_ppt(n, PptVariant::standard);
        REQUIRE(r.witness);
        CHECK(hs_inner(*r.witness, n.choi.matrix) ==
              doctest::Approx(1.0 + r.value).epsilon(1e-5));
    }
}

TEST_CASE("monotonicity under pre/post processing") {
    for (int trial = 0; trial < 100; ++trial) {
        QuantumChannel pre = random_channel(2, 2, 2000 + trial);
        QuantumChannel n = random_channel(2, 2, 2100 + trial);
        QuantumChannel post = random_channel(2, 2, 2200 + trial);
        double before = robustness_ppt(n, PptVariant::standard).value;
        double after =
            robustness_ppt(compose(post, compose(n, pre)), PptVariant::standard)
                .value;
        CHECK(after <= before + 1e-6);
    }
}

TEST_CASE("convexity under channel mixing") {
    Rng rng(2300);
    for (int trial = 0; trial < 20; ++trial) {
        QuantumChannel n1 = random_channel(2, 2, 2300 + trial);
        QuantumChannel n2 = random_channel(2, 2, 2400 + trial);
        for (double lam : {0.25, 0.5, 0.75}) {
            Mat mixed = lam * n1.choi.matrix + (1.0 - lam) * n2.choi.matrix;
            QuantumChannel nm = channel_from_choi(ChoiState{2, 2, mixed});
            double rm = robustness_ppt(nm, PptVariant::standard).value;
            double r1 = robustness_ppt(n1, PptVariant::standard).value;
            double r2 = robustness_ppt(n2, PptVariant::standard).value;
            CHECK(rm <= lam * r1 + (1.0 - lam) * r2 + 1e-6);
        }
    }
}

TEST_CASE("tensor product sandwich for qubit factors") {
    for (int trial = 0; trial < 6; ++trial) {
        QuantumChannel n1 = random_channel(2, 2, 2500 + trial);
        QuantumChannel n2 = random_channel(2, 2, 2600 + trial);
        double r1 = robustness_ppt(n1, PptVariant::standard).value;
        double r2 = robustness_ppt(n2, PptVariant::standard).value;
        double rt = robustness_ppt(tensor(n1, n2), PptVariant::standard).value;
        CHECK(std::max(r1, r2) - 1e-6 <= rt);
        CHECK(rt <= 2.0 * r1 * r2 + r1 + r2 + 1e-6);
    }
}

TEST_CASE("robustness vanishes exactly on PPT Chois") {
    for (double p : {0.0, 0.2, 0.3, 1.0 / 3.0}) {
        CHECK(robustness_ppt(depolarizing_channel(p), PptVariant::standard)
                  .value < 1e-6);
    }
    for (int trial = 0; trial < 10; ++trial) {
        QuantumChannel eb = random_eb_channel(2, 2, 4, 2700 + trial);
        CHECK(robustness_ppt(eb, PptVariant::standard).value < 1e-6);
    }
    // Just above the boundary the value must be strictly positive.
    CHECK(robustness_ppt(depolarizing_channel(1.0 / 3.0 + 1e-3),
                         PptVariant::standard)
              .value > 1e-4);
}

TEST_CASE("derived measures") {
    RobustnessResult r;
    r.value = 0.0;
    CHECK(log_robustness(r) == 0.0);
    CHECK(synthesis_cost(r) == 0);
    r.value = 1.0;
    CHECK(log_robustness(r) == doctest::Approx(1.0));
    CHECK(synthesis_cost(r) == 1);
    r.value = 2.3;
    CHECK(synthesis_cost(r) == 2);
    r.value = 1.0000000001; // solver noise must not inflate the cost
    CHECK(synthesis_cost(r) == 1);

    RobustnessResult gen = robustness_ppt(identity_channel(2),
                                          PptVariant::generalized);
    CHECK(dmax(gen) == doctest::Approx(1.0).epsilon(1e-6));
    RobustnessResult eig = eig_lower_bound(identity_channel(2));
    CHECK_THROWS_AS(dmax(eig), Error);
}

TEST_CASE("dmax is additive for identity tensor powers") {
    QuantumChannel i4 = tensor(identity_channel(2), identity_channel(2));
    RobustnessResult r = robustness_ppt(i4, PptVariant::generalized);
    CHECK(dmax(r) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("capacity guard") {
    QuantumChannel big = identity_channel(5); // Choi side 25 > 16
    CHECK_THROWS_AS(robustness_ppt(big, PptVariant::standard), Error);
}
