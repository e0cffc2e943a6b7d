#pragma once

#include <string>
#include <vector>

#include "matrix.hpp"

namespace qmem {

// Linear objective over Hermitian PSD blocks with real linear equality
// constraints, sum_b <C_{c,b}, X_b> = rhs_c under the real Hilbert-Schmidt
// inner product. Solved by a dense primal-dual interior-point method
// (HKM scaling, Mehrotra predictor-corrector, dense Schur complement).
class SdpProblem {
public:
    int add_block(const std::string& label, int side);
    void set_objective(int block, const Mat& coeff);
    // Hermitian coefficient per touched block.
    void add_constraint(const std::vector<std::pair<int, Mat>>& coeffs, double rhs);

    int num_blocks() const { return static_cast<int>(sides_.size()); }
    int num_constraints() const { return static_cast<int>(constraints_.size()); }
    int block_side(int b) const { return sides_[b]; }
    const std::string& block_label(int b) const { return labels_[b]; }

    struct Entry {
        int row;
        int col;
        Complex value;
    };
    struct BlockCoeff {
        int block;
        std::vector<Entry> entries; // all nonzeros of the Hermitian coefficient
    };
    struct Constraint {
        std::vector<BlockCoeff> blocks;
        double rhs;
    };

    // Solver-facing internals (treated as read-only outside this class).
    std::vector<std::string> labels_;
    std::vector<int> sides_;
    std::vector<Mat> objective_;
    std::vector<Constraint> constraints_;
};

enum class SdpStatus { optimal, infeasible, max_iterations };

struct SdpOptions {
    double tol = 1e-8;
    int max_iter = 200;
    double initial_scale = 1.0;
    // Dual objective magnitude beyond which the primal problem is declared
    // infeasible (divergence-based certificate).
    double divergence = 1e8;
};

struct SdpSolution {
    SdpStatus status = SdpStatus::max_iterations;
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::vector<Mat> primal_blocks;
    std::vector<double> dual_multipliers; // aligned with original constraint order
    int iterations = 0;
    std::vector<double> gap_history; // relative duality gap per iteration
};

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

} // namespace qmem
