#pragma once

#include <optional>

#include "channel.hpp"

namespace qmem {

// Memory qubit(s) coupled to a bath; H acts on memory (x) bath.
struct BathModel {
    Mat hamiltonian;
    Mat bath_state;
    int memory_dim = 2;
    int bath_dim = 2;
};

// Instantaneous pulses on the memory at times k/rate; no rate means free
// evolution.
struct PulseSequence {
    Mat pulse_unitary;
    std::optional<double> rate;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<QuantumChannel> channels;
    std::vector<double> robustness;
    std::vector<double> non_markovianity; // cumulative I(t)
};

// H = 0.2 (X_M X_B + Y_M Y_B) + Z_M Z_B, bath state 0.4|0><0| + 0.6|1><1|.
BathModel default_bath_model();
PulseSequence no_pulses();
PulseSequence x_pulses(double rate);

// The shipped decoupling rate (pulses per unit time) reproducing the large
// robustness improvement near t = 0.8.
double default_dd_rate();

// N_t(rho) = Tr_B[U_t (rho (x) rho_B) U_t^dag]; U_t interleaves segment
// propagators exp(-iH dt) with pulses.
QuantumChannel evolve_channel(const BathModel& model, const PulseSequence& pulses,
                              double t);

// Uniform grid on [0, t_max]; robustness from the eigenvalue formula (exact
// here); I accumulated as the sum of positive robustness increments.
Trajectory trajectory(const BathModel& model, const PulseSequence& pulses,
                      double t_max, int steps);

std::string trajectory_csv(const Trajectory& traj, const std::string& label);

} // namespace qmem
