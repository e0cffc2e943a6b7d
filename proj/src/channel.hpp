#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace qmem {

// Choi convention: subsystem A (input copy) first, B (output) second,
// Phi = (1/d_A) sum_ij |i><j|_A (x) N(|i><j|). Normalized to unit trace,
// so Tr_B Phi = I_A / d_A. PPT tests act on subsystem A.
struct ChoiState {
    int d_a = 0;
    int d_b = 0;
    Mat matrix;

    // PSD / unit-trace / marginal gates.
    void validate(double psd_tol = 1e-9, double trace_tol = 1e-10,
                  double marginal_tol = 1e-9) const;
};

// A CPTP map held as Kraus operators and/or a normalized Choi matrix.
// The Choi matrix is always populated.
struct QuantumChannel {
    int d_in = 0;
    int d_out = 0;
    std::vector<Mat> kraus; // may be empty (Choi-only channel)
    ChoiState choi;
};

// Maximum Choi side accepted anywhere (tensor products, bath models).
inline constexpr int kMaxChoiSide = 64;

ChoiState kraus_to_choi(int d_in, int d_out, const std::vector<Mat>& kraus);

QuantumChannel channel_from_kraus(int d_in, int d_out, std::vector<Mat> kraus);
QuantumChannel channel_from_choi(ChoiState choi);

// N(rho) = d_A Tr_A[(rho^T (x) I) Phi] when no Kraus set is present.
Mat apply_channel(const QuantumChannel& n, const Mat& rho);

// --- the paper's channel families ---------------------------------------

QuantumChannel identity_channel(int d);
QuantumChannel dephasing_channel(double p);     // p rho + (1-p) Z rho Z
QuantumChannel depolarizing_channel(double p);  // p rho + (1-p) I/2
QuantumChannel damping_channel(double p);       // p rho + (1-p) |0><0|
QuantumChannel erasure_channel(double p);       // p rho + (1-p) |2><2|, qutrit out
QuantumChannel lindblad_dephasing_channel(double gamma, double t);
QuantumChannel completely_depolarizing_channel(int d);

// Parses "identity(2)", "dephasing(0.3)", "lindblad_dephasing(1,0.5)", ...
QuantumChannel channel_family(const std::string& spec);

// --- channel algebra -----------------------------------------------------

QuantumChannel compose(const QuantumChannel& later, const QuantumChannel& earlier);

// Tensor product; Choi indices are reordered to the A1A2:B1B2 convention
// (factor Chois are A1B1 and A2B2).
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

// Marginal channel Tr_part N(. (x) I/d) for a declared bipartition of the
// input and output spaces.
QuantumChannel channel_partial_trace(const QuantumChannel& n, Subsystem part,
                                     int d_in_a, int d_in_b,
                                     int d_out_a, int d_out_b);

// Measure-and-prepare channel with a random POVM and Haar-random pure
// output states. Separable Choi by construction.
QuantumChannel random_eb_channel(int d_in, int d_out, int n_outcomes,
                                 std::uint64_t seed);

// Generic random CPTP channel (Stinespring from a Haar unitary).
QuantumChannel random_channel(int d_in, int d_out, std::uint64_t seed);

bool is_ppt_choi(const ChoiState& choi, double tol = 1e-9);

} // namespace qmem
