#pragma once

#include <string>
#include <vector>

#include "channel.hpp"

namespace qmem {

// A nonlocal guessing game: input states sigma_i, observables 0 <= O_j <= I,
// and real payoff coefficients alpha_ij. Equivalent to the Hermitian witness
// W = d_A sum_ij alpha_ij sigma_i^T (x) O_j.
struct Game {
    std::string label;
    std::vector<Mat> inputs;       // density matrices on d_A
    std::vector<Mat> observables;  // effects on d_B
    Eigen::MatrixXd alpha;
    bool eb_normalized = false;    // max EB payoff known to be <= 1

    int d_in() const { return inputs.empty() ? 0 : static_cast<int>(inputs[0].rows()); }
    int d_out() const {
        return observables.empty() ? 0 : static_cast<int>(observables[0].rows());
    }
    void validate() const;
};

struct PayoffTerm {
    int input;
    int observable;
    double probability;
    double weighted;
};

struct PayoffResult {
    double payoff = 0.0;
    std::vector<PayoffTerm> per_setting;
    // payoff - 1; a valid robustness bound only for EB-normalized games.
    double robustness_lower_bound = 0.0;
};

PayoffResult payoff(const Game& game, const QuantumChannel& channel);

Mat game_to_witness(const Game& game);

// Inverse construction through a Pauli-product (generalized Gell-Mann)
// operator basis; the result satisfies game_to_witness(g) == w.
Game witness_to_game(const Mat& w, int d_a, int d_b);

// The explicit constructions for depolarizing, erasure and stochastic
// damping channels. The damping game depends on the channel parameter p.
Game canned_game_depolarizing();
Game canned_game_erasure();
Game canned_game_damping(double p);
// Damping eigenstate coefficients alpha(p), beta(p) of |psi_0> = a|00>+b|11>.
std::pair<double, double> damping_psi0_coefficients(double p);

Game canned_game(const std::string& name);

// R(U~) >= d * F_choi - 1 for a target unitary of dimension d.
double gate_witness_bound(const Mat& u, double empirical_choi_fidelity);

} // namespace qmem
