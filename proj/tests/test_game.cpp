#include <cmath>

#include <doctest.h>

#include "errors.hpp"
#include "game.hpp"
#include "robustness.hpp"

using namespace qmem;

TEST_CASE("canned games validate and know their dimensions") {
    for (const char* name : {"depolarizing", "erasure", "damping(0.3)"}) {
        Game g = canned_game(name);
        CHECK_NOTHROW(g.validate());
        CHECK(g.d_in() == 2);
        CHECK(g.eb_normalized);
    }
    CHECK(canned_game("erasure").d_out() == 3);
    CHECK_THROWS_AS(canned_game("nosuch"), Error);
    CHECK_THROWS_AS(canned_game_damping(1.5), Error);
}

TEST_CASE("theory scores: dephasing channel under the depolarizing game") {
    Game g = canned_game_depolarizing();
    double expected[] = {0.5, 1.0, 1.5, 2.0};
    double ps[] = {0.25, 0.5, 0.75, 1.0};
    for (int k = 0; k < 4; ++k) {
        PayoffResult r = payoff(g, dephasing_channel(ps[k]));
        CHECK(r.payoff == doctest::Approx(expected[k]).epsilon(1e-9));
        double sum = 0.0;
        for (const PayoffTerm& t : r.per_setting)
            sum += t.weighted;
        CHECK(std::abs(sum - r.payoff) < 1e-12);
    }
    // Depolarizing channel payoff is 3p/2 + 1/2.
    CHECK(payoff(g, depolarizing_channel(1.0)).payoff ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(payoff(g, depolarizing_channel(0.4)).payoff ==
          doctest::Approx(1.1).epsilon(1e-9));
}

TEST_CASE("theory scores: erasure game") {
    Game g = canned_game_erasure();
    for (double p : {0.25, 0.5, 0.75, 1.0})
        CHECK(payoff(g, erasure_channel(p)).payoff ==
              doctest::Approx(1.0 + p).epsilon(1e-9));
    // Full erasure scores exactly 1 (bound 0).
    CHECK(payoff(g, erasure_channel(0.0)).payoff ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("theory scores: damping game") {
    double expected[] = {1.0757, 1.3090, 1.6353, 2.0};
    double ps[] = {0.25, 0.5, 0.75, 1.0};
    for (int k = 0; k < 4; ++k) {
        Game g = canned_game_damping(ps[k]);
        PayoffResult r = payoff(g, damping_channel(ps[k]));
        CHECK(r.payoff == doctest::Approx(expected[k]).epsilon(1e-4));
        // Payoff equals 1 + R(D_p) at the matched parameter.
        double rob = (ps[k] - 1.0 +
                      std::sqrt(1.0 - 2.0 * ps[k] + 5.0 * ps[k] * ps[k])) / 2.0;
        CHECK(r.payoff == doctest::Approx(1.0 + rob).epsilon(1e-10));
    }
}

TEST_CASE("canned witnesses have the closed forms") {
    Mat w_dep = game_to_witness(canned_game_depolarizing());
    CHECK((w_dep - 2.0 * max_entangled(2)).norm() < 1e-12);

    Mat w_era = game_to_witness(canned_game_erasure());
    Mat phi_plus = Mat::Zero(6, 6); // embedded qubit pair in 2x3
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(6);
    v(0) = v(4) = 1.0 / std::sqrt(2.0); // |00> + |11> over B indices 0..2
    phi_plus = v * v.adjoint();
    Mat expected = 2.0 * phi_plus +
                   kron(Mat::Identity(2, 2), ketbra(2, 2, 3));
    CHECK((w_era - expected).norm() < 1e-12);

    double p = 0.37;
    auto [a, b] = damping_psi0_coefficients(p);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = a;
    psi(3) = b;
    Mat w_dam = game_to_witness(canned_game_damping(p));
    CHECK((w_dam - 2.0 * (psi * psi.adjoint())).norm() < 1e-10);
}

TEST_CASE("payoff equals the witness overlap") {
    for (int trial = 0; trial < 20; ++trial) {
        QuantumChannel n = random_channel(2, 2, 3000 + trial);
        Game g = canned_game_damping(0.4);
        Mat w = game_to_witness(g);
        CHECK(payoff(g, n).payoff ==
              doctest::Approx(hs_inner(w, n.choi.matrix)).epsilon(1e-10));
    }
}

TEST_CASE("witness/game round trip on random Hermitian witnesses") {
    Rng rng(3100);
    for (int trial = 0; trial < 100; ++trial) {
        int db = trial % 2 ? 2 : 3;
        Mat w = random_hermitian(rng, 2 * db);
        Game g = witness_to_game(w, 2, db);
        CHECK_NOTHROW(g.validate());
        CHECK((game_to_witness(g) - w).norm() < 1e-9);
    }
}

TEST_CASE("identity and zero witnesses give constant games") {
    Game g1 = witness_to_game(Mat::Identity(4, 4), 2, 2);
    Game g0 = witness_to_game(Mat::Zero(4, 4), 2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        QuantumChannel n = random_channel(2, 2, 3200 + trial);
        CHECK(payoff(g1, n).payoff == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(payoff(g0, n).payoff) < 1e-12);
    }
}

TEST_CASE("round-tripped maximally entangled witness reproduces canned payoffs") {
    Game g = witness_to_game(2.0 * max_entangled(2), 2, 2);
    Game canned = canned_game_depolarizing();
    for (int trial = 0; trial < 10; ++trial) {
        QuantumChannel n = random_channel(2, 2, 3300 + trial);
        CHECK(payoff(g, n).payoff ==
              doctest::Approx(payoff(canned, n).payoff).epsilon(1e-9));
    }
}

TEST_CASE("EB normalization: canned games never exceed payoff 1 on EB channels") {
    for (const char* name : {"depolarizing", "erasure", "damping(0.6)"}) {
        Game g = canned_game(name);
        double max_p = -1e9, min_p = 1e9;
        for (int k = 0; k < 1000; ++k) {
            QuantumChannel eb = random_eb_channel(2, g.d_out(), 4, 4000 + k);
            double v = payoff(g, eb).payoff;
            max_p = std::max(max_p, v);
            min_p = std::min(min_p, v);
        }
        CHECK(max_p <= 1.0 + 1e-3);
        CHECK(min_p >= -1e-3);
    }
}

TEST_CASE("witness bound never exceeds the SDP robustness") {
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
        CHECK(payoff(canned_game_depolarizing(), dephasing_channel(p)).payoff -
                  1.0 <=
              robustness_ppt(dephasing_channel(p), PptVariant::standard).value +
                  1e-6);
        CHECK(payoff(canned_game_erasure(), erasure_channel(p)).payoff - 1.0 <=
              robustness_ppt(erasure_channel(p), PptVariant::standard).value +
                  1e-6);
        CHECK(payoff(canned_game_damping(p), damping_channel(p)).payoff - 1.0 <=
              robustness_ppt(damping_channel(p), PptVariant::standard).value +
                  1e-6);
    }
}

TEST_CASE("dual witness converts to a game that closes the gap") {
    for (int trial = 0; trial < 8; ++trial) {
        QuantumChannel n = trial % 2 ? random_channel(2, 3, 3500 + trial)
                                     : random_channel(2, 2, 3500 + trial);
        RobustnessResult r = robustness_ppt(n, PptVariant::standard);
        REQUIRE(r.witness);
        Game g = witness_to_game(*r.witness, n.d_in, n.d_out);
        CHECK(payoff(g, n).payoff == doctest::Approx(1.0 + r.value).epsilon(1e-5));
    }
}

TEST_CASE("gate witness bound") {
    Mat cx = Mat::Identity(4, 4);
    cx(2, 2) = cx(3, 3) = 0.0;
    cx(2, 3) = cx(3, 2) = 1.0;
    CHECK(gate_witness_bound(cx, 1.0) == doctest::Approx(3.0));
    CHECK(gate_witness_bound(cx, 0.9168) == doctest::Approx(2.667).epsilon(1e-3));
    Mat ghz = Mat::Identity(8, 8);
    CHECK(gate_witness_bound(ghz, 0.8546) == doctest::Approx(5.837).epsilon(1e-3));
    CHECK(gate_witness_bound(cx, 0.1) == 0.0);
    CHECK_THROWS_AS(gate_witness_bound(cx, 1.2), Error);
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(payoff(canned_game_erasure(), dephasing_channel(0.5)), Error);
}
