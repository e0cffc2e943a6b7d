#include <cmath>

#include <doctest.h>

#include "channel.hpp"
#include "errors.hpp"

using namespace qmem;

TEST_CASE("identity channel Choi is the maximally entangled state") {
    for (int d : {2, 3}) {
        QuantumChannel id = identity_channel(d);
        CHECK((id.choi.matrix - max_entangled(d)).norm() < 1e-13);
        Rng rng(d);
        Mat rho = random_density(rng, d);
        CHECK((apply_channel(id, rho) - rho).norm() < 1e-12);
    }
}

TEST_CASE("choi application matches kraus application") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        QuantumChannel n = random_channel(2, 3, 1000 + trial);
        QuantumChannel via_choi = channel_from_choi(n.choi);
        Mat rho = random_density(rng, 2);
        CHECK((apply_channel(n, rho) - apply_channel(via_choi, rho)).norm() <
              1e-11);
    }
}

TEST_CASE("choi validation enforces trace preservation") {
    ChoiState bad{2, 2, Mat::Identity(4, 4) / 4.0};
    CHECK_NOTHROW(bad.validate());
    bad.matrix(0, 0) = 0.5; // breaks the marginal
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("dephasing family") {
    // p=1 identity, p=1/2 completely dephasing.
    QuantumChannel half = dephasing_channel(0.5);
    Rng rng(5);
    Mat rho = random_density(rng, 2);
    Mat out = apply_channel(half, rho);
    CHECK(std::abs(out(0, 1)) < 1e-14);
    CHECK(std::abs(out(0, 0) - rho(0, 0)) < 1e-14);
    QuantumChannel one = dephasing_channel(1.0);
    CHECK((one.choi.matrix - max_entangled(2)).norm() < 1e-13);
}

TEST_CASE("depolarizing family mixes toward identity") {
    QuantumChannel n = depolarizing_channel(0.3);
    Rng rng(6);
    Mat rho = random_density(rng, 2);
    Mat expected = 0.3 * rho + 0.7 * Mat::Identity(2, 2) / 2.0;
    CHECK((apply_channel(n, rho) - expected).norm() < 1e-13);
}

TEST_CASE("damping family replaces with |0><0|") {
    QuantumChannel n = damping_channel(0.25);
    Rng rng(7);
    Mat rho = random_density(rng, 2);
    Mat expected = 0.25 * rho;
    expected(0, 0) += 0.75;
    CHECK((apply_channel(n, rho) - expected).norm() < 1e-13);
}

TEST_CASE("erasure family embeds and erases to |2>") {
    QuantumChannel n = erasure_channel(0.6);
    CHECK(n.d_out == 3);
    Rng rng(8);
    Mat rho = random_density(rng, 2);
    Mat out = apply_channel(n, rho);
    CHECK(std::abs(out(2, 2).real() - 0.4) < 1e-13);
    CHECK(std::abs(out(0, 0) - 0.6 * rho(0, 0)) < 1e-13);
}

TEST_CASE("lindblad dephasing matches the static family") {
    QuantumChannel a = lindblad_dephasing_channel(1.0, 0.7);
    double p = (1.0 + std::exp(-0.7)) / 2.0;
    QuantumChannel b = dephasing_channel(p);
    CHECK((a.choi.matrix - b.choi.matrix).norm() < 1e-12);
}

TEST_CASE("family parser") {
    CHECK(channel_family("identity(3)").d_in == 3);
    CHECK(channel_family("dephasing(0.25)").d_out == 2);
    CHECK(channel_family("erasure(0.5)").d_out == 3);
    CHECK(channel_family("lindblad_dephasing(1,0.5)").d_in == 2);
    CHECK_THROWS_AS(channel_family("unknown(1)"), Error);
    CHECK_THROWS_AS(channel_family("dephasing(2)"), Error);
}

TEST_CASE("compose matches sequential application") {
    Rng rng(9);
    QuantumChannel f = random_channel(2, 2, 31);
    QuantumChannel g = random_channel(2, 2, 32);
    QuantumChannel fg = compose(g, f);
    Mat rho = random_density(rng, 2);
    CHECK((apply_channel(fg, rho) - apply_channel(g, apply_channel(f, rho)))
              .norm() < 1e-12);
}

TEST_CASE("tensor product Choi ordering") {
    QuantumChannel a = dephasing_channel(0.3);
    QuantumChannel b = damping_channel(0.8);
    QuantumChannel t = tensor(a, b);
    CHECK(t.d_in == 4);
    CHECK(t.d_out == 4);
    Rng rng(10);
    Mat ra = random_density(rng, 2), rb = random_density(rng, 2);
    Mat out = apply_channel(t, kron(ra, rb));
    Mat expected = kron(apply_channel(a, ra), apply_channel(b, rb));
    CHECK((out - expected).norm() < 1e-11);
    t.choi.validate();
}

TEST_CASE("tensor capacity guard") {
    QuantumChannel big = identity_channel(8);
    // tensor Choi side 4096 exceeds the ceiling
    CHECK_THROWS_AS(tensor(big, big), Error);
}

TEST_CASE("partial trace of a product channel recovers a factor") {
    QuantumChannel a = dephasing_channel(0.3);
    QuantumChannel b = damping_channel(0.8);
    QuantumChannel t = tensor(a, b);
    QuantumChannel back = channel_partial_trace(t, Subsystem::B, 2, 2, 2, 2);
    CHECK((back.choi.matrix - a.choi.matrix).norm() < 1e-11);
}

TEST_CASE("random EB channels are PPT, random channels are CPTP") {
    for (int k = 0; k < 10; ++k) {
        QuantumChannel eb = random_eb_channel(2, 2, 4, 100 + k);
        eb.choi.validate();
        CHECK(is_ppt_choi(eb.choi));
        QuantumChannel n = random_channel(3, 2, 200 + k);
        n.choi.validate();
    }
}

TEST_CASE("kraus completeness is enforced") {
    std::vector<Mat> bad{0.5 * Mat::Identity(2, 2)};
    CHECK_THROWS_AS(channel_from_kraus(2, 2, std::move(bad)), Error);
}
