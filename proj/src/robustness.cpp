#include "robustness.hpp"

#include <cmath>

#include "errors.hpp"

namespace qmem {

namespace {

bool marginal_constrained(PptVariant v) {
    return v == PptVariant::standard || v == PptVariant::generalized;
}

bool ppt_on_m(PptVariant v) {
    return v == PptVariant::standard || v == PptVariant::entanglement;
}

} // namespace

RobustnessResult eig_lower_bound(const QuantumChannel& n) {
    RobustnessResult r;
    r.method = RobustnessMethod::eig;
    double lambda_max = max_eigenvalue(symmetrize(n.choi.matrix));
    r.value = std::max(0.0, n.d_in * lambda_max - 1.0);
    r.is_exact = (n.d_in <= 3 && n.d_out == 2);
    return r;
}

RobustnessResult moment_lower_bound(const QuantumChannel& n, int k) {
    if (k < 1)
        throw invalid_input("moment_lower_bound: k must be >= 1");
    RobustnessResult r;
    r.method = RobustnessMethod::moment;
    r.moment_order = k;
    EigResult eig = herm_eig(symmetrize(n.choi.matrix));
    double moment = 0.0;
    for (int i = 0; i < eig.eigenvalues.size(); ++i)
        moment += std::pow(std::max(eig.eigenvalues(i), 0.0), k);
    double d = n.d_in;
    r.value = std::max(0.0, std::pow(d, (k - 1.0) / k) * std::pow(moment, 1.0 / k) - 1.0);
    r.is_exact = false;
    return r;
}

RobustnessResult robustness_ppt(const QuantumChannel& n, PptVariant variant,
                                const SdpOptions& options) {
    const int da = n.d_in;
    const int db = n.d_out;
    const int side = da * db;
    if (side > 16)
        throw capacity_error("robustness_ppt: d_A*d_B exceeds 16");
    const Mat phi = symmetrize(n.choi.matrix);

    SdpProblem prob;
    const int bm = prob.add_block("M", side);
    const int bmp = prob.add_block("M'", side);
    const int bp = ppt_on_m(variant) ? prob.add_block("M_pt", side) : -1;
    const int bpp = prob.add_block("M'_pt", side);

    prob.set_objective(bm, Mat::Identity(side, side));

    const std::vector<Mat> basis = hermitian_basis(side);

    // M' - M = Phi_N; the multipliers of these rows assemble the witness.
    std::vector<int> eq_rows;
    for (const Mat& b : basis) {
        eq_rows.push_back(prob.num_constraints());
        prob.add_constraint({{bmp, b}, {bm, -b}}, hs_inner(b, phi));
    }
    // PT blocks track the partial transposes: P - X^{T_A} = 0. Since the
    // basis is closed under partial transposition, couple b on the PT block
    // with -b^{T_A} on the source block.
    for (const Mat& b : basis) {
        Mat bt = partial_transpose(b, Subsystem::A, da, db);
        if (bp >= 0)
            prob.add_constraint({{bp, b}, {bm, -bt}}, 0.0);
        prob.add_constraint({{bpp, b}, {bmp, -bt}}, 0.0);
    }
    // Choi marginal on M: Tr_B M = (Tr M / d_A) I_A, written against the
    // traceless Hermitian basis of A.
    if (marginal_constrained(variant)) {
        for (const Mat& g : gell_mann_basis(da))
            prob.add_constraint({{bm, kron(g, Mat::Identity(db, db))}}, 0.0);
    }

    SdpSolution sol = solve_sdp(prob, options);
    if (sol.status == SdpStatus::infeasible)
        throw solver_failure("robustness_ppt: SDP reported infeasible");
    if (sol.status == SdpStatus::max_iterations)
        throw solver_failure("robustness_ppt: SDP did not converge");

    RobustnessResult r;
    switch (variant) {
        case PptVariant::standard: r.method = RobustnessMethod::sdp_ppt; break;
        case PptVariant::generalized: r.method = RobustnessMethod::sdp_ppt_generalized; break;
        case PptVariant::entanglement: r.method = RobustnessMethod::sdp_entanglement; break;
        case PptVariant::entanglement_generalized:
            r.method = RobustnessMethod::sdp_entanglement_generalized;
            break;
    }
    double s = std::max(sol.primal_value, 0.0);
    r.value = s;
    r.is_exact = (side <= 6) &&
                 (variant == PptVariant::standard || variant == PptVariant::generalized);

    // Only the standard variant certifies both components as PPT Chois.
    if (variant == PptVariant::standard) {
        const Mat m_mat = symmetrize(sol.primal_blocks[bm]);
        const Mat mp_mat = symmetrize(sol.primal_blocks[bmp]);
        if (s > 1e-9) {
            r.m_choi = ChoiState{da, db, m_mat / s};
            r.m_prime_choi = ChoiState{da, db, mp_mat / (1.0 + s)};
        } else {
            // Free channel: trivial decomposition N = 1 * N - 0 * Delta.
            r.value = s = 0.0;
            r.m_choi = ChoiState{da, db,
                                 Mat::Identity(side, side) / static_cast<double>(side)};
            r.m_prime_choi = ChoiState{da, db, phi};
        }
    }

    // Witness W = I + sum over equality rows of y_c B_c, so that
    // Tr[Phi_N W] = 1 + s by strong duality.
    Mat w = Mat::Identity(side, side);
    for (std::size_t i = 0; i < basis.size(); ++i)
        w += sol.dual_multipliers[eq_rows[i]] * basis[i];
    r.witness = symmetrize(w);
    return r;
}

double log_robustness(const RobustnessResult& r) {
    return std::log2(1.0 + r.value);
}

int synthesis_cost(const RobustnessResult& r) {
    // Downward nudge so solver noise on exact integers does not inflate the
    // qubit count.
    double ceil_r = std::ceil(r.value - 1e-9);
    if (ceil_r <= 0.0)
        return 0;
    return static_cast<int>(std::ceil(std::log2(ceil_r + 1.0) - 1e-9));
}

double dmax(const RobustnessResult& r) {
    if (r.method != RobustnessMethod::sdp_ppt_generalized)
        throw invalid_input("dmax: requires a generalized-variant result");
    return std::log2(1.0 + r.value);
}

std::string method_name(const RobustnessResult& r) {
    switch (r.method) {
        case RobustnessMethod::eig: return "eig";
        case RobustnessMethod::moment:
            return "moment(" + std::to_string(r.moment_order) + ")";
        case RobustnessMethod::sdp_ppt: return "sdp_ppt";
        case RobustnessMethod::sdp_ppt_generalized: return "sdp_ppt_generalized";
        case RobustnessMethod::sdp_entanglement: return "sdp_entanglement";
        case RobustnessMethod::sdp_entanglement_generalized:
            return "sdp_entanglement_generalized";
        case RobustnessMethod::witness: return "witness";
    }
    return "unknown";
}

} // namespace qmem
