#pragma once

#include <optional>
#include <string>

#include "channel.hpp"
#include "sdp.hpp"

namespace qmem {

enum class RobustnessMethod {
    eig,
    moment,
    sdp_ppt,
    sdp_ppt_generalized,
    sdp_entanglement,
    sdp_entanglement_generalized,
    witness,
};

enum class PptVariant {
    standard,
    generalized,
    entanglement,
    entanglement_generalized,
};

struct RobustnessResult {
    double value = 0.0;
    RobustnessMethod method = RobustnessMethod::eig;
    int moment_order = 0; // set for the moment method
    bool is_exact = false;
    // Decomposition Phi_N = (1+s) Phi_{M'} - s Phi_M.
    std::optional<ChoiState> m_choi;
    std::optional<ChoiState> m_prime_choi;
    std::optional<Mat> witness;
};

// Theorem: R >= d_A * max eig(Phi_N) - 1, exact PPT robustness for qubit
// outputs and the exact robustness when additionally d_A <= 3.
RobustnessResult eig_lower_bound(const QuantumChannel& n);

// R >= d_A^{(k-1)/k} (Tr Phi^k)^{1/k} - 1.
RobustnessResult moment_lower_bound(const QuantumChannel& n, int k);

// PPT-relaxed robustness SDPs: minimize Tr M subject to Phi_N + M = M',
// M, M' >= 0, PPT constraints per variant, and (except for the entanglement
// variants) the Choi marginal constraint Tr_B M = (Tr M / d_A) I_A.
RobustnessResult robustness_ppt(const QuantumChannel& n, PptVariant variant,
                                const SdpOptions& options = {});

double log_robustness(const RobustnessResult& r);
int synthesis_cost(const RobustnessResult& r);
// log2(1 + R_G); requires a generalized-variant result.
double dmax(const RobustnessResult& r);

std::string method_name(const RobustnessResult& r);

} // namespace qmem
