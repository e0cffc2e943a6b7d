#pragma once

#include <cstdint>

#include "robustness.hpp"

namespace qmem {

// Quasi-probability decomposition Phi_N = (1+s) Phi_{m_plus} - s Phi_{m_minus}
// with both components PPT. one_norm = 1+2s, overhead = one_norm^2.
struct QuasiDecomposition {
    double s = 0.0;
    QuantumChannel m_plus;
    QuantumChannel m_minus;
    double one_norm = 1.0;
    double overhead = 1.0;
    // True when d_A*d_B <= 6, where PPT components are genuinely separable
    // (measure-and-prepare); above that the classical-simulation reading of
    // the protocol is a relaxation.
    bool classical_form = true;
};

struct SampleResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t shots = 0;
    double overhead = 1.0;
};

// Probe dimension d_c = 1 + ceil(s); acting on a probe Choi Phi_C gives
// Tr[psi+ Phi_C] * target + Tr[(I - psi+) Phi_C] * filler.
struct SuperChannel {
    ChoiState target;
    ChoiState filler;
    int probe_dimension = 1;
};

QuasiDecomposition decompose(const QuantumChannel& n,
                             const SdpOptions& options = {});

// Sign-sampling estimator for Tr[O N(rho)] with |O| <= 1: each shot draws a
// component with probability proportional to its weight, measures O on the
// component output, and scales by sign * one_norm.
SampleResult sample_estimate(const QuasiDecomposition& dec, const Mat& rho,
                             const Mat& observable, std::uint64_t shots,
                             std::uint64_t seed);

SuperChannel synthesis_superchannel(const QuantumChannel& n_target,
                                    const SdpOptions& options = {});

ChoiState apply_superchannel(const SuperChannel& sc, const ChoiState& probe);

} // namespace qmem
