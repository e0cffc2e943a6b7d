#include "dynamics.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "robustness.hpp"

namespace qmem {

BathModel default_bath_model() {
    BathModel m;
    m.memory_dim = 2;
    m.bath_dim = 2;
    m.hamiltonian = 0.2 * (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y())) +
                    kron(pauli_z(), pauli_z());
    m.bath_state = Mat::Zero(2, 2);
    m.bath_state(0, 0) = 0.4;
    m.bath_state(1, 1) = 0.6;
    return m;
}

PulseSequence no_pulses() {
    PulseSequence p;
    p.pulse_unitary = pauli_x();
    return p;
}

PulseSequence x_pulses(double rate) {
    if (rate <= 0.0)
        throw invalid_input("pulse rate must be positive");
    PulseSequence p;
    p.pulse_unitary = pauli_x();
    p.rate = rate;
    return p;
}

double default_dd_rate() {
    // Smallest integer number of pulses per pi giving at least a three-fold
    // robustness improvement at t = 0.8 for the default model.
    return 5.0 / M_PI;
}

namespace {

struct Propagator {
    EigResult eig; // of H

    Mat at(double dt) const {
        const long n = eig.eigenvalues.size();
        Eigen::VectorXcd phases(n);
        for (long k = 0; k < n; ++k)
            phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * dt));
        return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    }
};

} // namespace

QuantumChannel evolve_channel(const BathModel& model, const PulseSequence& pulses,
                              double t) {
    if (t < 0.0)
        throw invalid_input("evolve_channel: t must be nonnegative");
    const int dm = model.memory_dim;
    const int db = model.bath_dim;
    if (model.hamiltonian.rows() != static_cast<long>(dm) * db)
        throw invalid_input("evolve_channel: Hamiltonian side does not match dims");
    if ((pulses.pulse_unitary * pulses.pulse_unitary.adjoint() -
         Mat::Identity(dm, dm))
            .norm() > 1e-10)
        throw invalid_input("evolve_channel: pulse is not unitary");

    Propagator prop{herm_eig(model.hamiltonian)};
    Mat u = Mat::Identity(dm * db, dm * db);
    if (pulses.rate && t > 0.0) {
        const double dt = 1.0 / *pulses.rate;
        Mat pulse = kron(pulses.pulse_unitary, Mat::Identity(db, db));
        Mat seg = prop.at(dt);
        double reached = 0.0;
        for (int k = 1; k * dt <= t + 1e-12; ++k) {
            u = pulse * seg * u;
            reached = k * dt;
        }
        if (t - reached > 1e-12)
            u = prop.at(t - reached) * u;
    } else {
        u = prop.at(t);
    }

    // Stinespring: K_{i,j} = sqrt(q_j) (I (x) <i|) U (I (x) |b_j>).
    EigResult bath = herm_eig(model.bath_state);
    std::vector<Mat> kraus;
    for (long j = 0; j < bath.eigenvalues.size(); ++j) {
        double q = bath.eigenvalues(j);
        if (q < 1e-14)
            continue;
        for (int i = 0; i < db; ++i) {
            Mat k = Mat::Zero(dm, dm);
            for (int m = 0; m < dm; ++m)
                for (int mp = 0; mp < dm; ++mp) {
                    Complex acc = 0.0;
                    for (int b = 0; b < db; ++b)
                        acc += u(m * db + i, mp * db + b) * bath.eigenvectors(b, j);
                    k(m, mp) = acc;
                }
            kraus.push_back(std::sqrt(q) * k);
        }
    }
    return channel_from_kraus(dm, dm, std::move(kraus));
}

Trajectory trajectory(const BathModel& model, const PulseSequence& pulses,
                      double t_max, int steps) {
    if (steps < 2)
        throw invalid_input("trajectory: steps must be >= 2");
    if (t_max <= 0.0)
        throw invalid_input("trajectory: t_max must be positive");
    Trajectory traj;
    traj.times.reserve(steps);
    double accumulated = 0.0;
    double prev_r = 0.0;
    for (int k = 0; k < steps; ++k) {
        double t = t_max * k / (steps - 1);
        QuantumChannel n_t = evolve_channel(model, pulses, t);
        double r = eig_lower_bound(n_t).value;
        if (k > 0)
            accumulated += std::max(0.0, r - prev_r);
        prev_r = r;
        traj.times.push_back(t);
        traj.channels.push_back(std::move(n_t));
        traj.robustness.push_back(r);
        traj.non_markovianity.push_back(accumulated);
    }
    return traj;
}

std::string trajectory_csv(const Trajectory& traj, const std::string& label) {
    std::ostringstream out;
    out.precision(12);
    out << "t,robustness,non_markovianity,variant\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        out << traj.times[k] << ',' << traj.robustness[k] << ','
            << traj.non_markovianity[k] << ',' << label << '\n';
    return out.str();
}

} // namespace qmem
