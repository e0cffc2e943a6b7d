#include "sdp.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace qmem {

namespace {

constexpr double kStepFraction = 0.98;
constexpr double kRankDropTol = 1e-12;

// Re sum_entries v * M(col,row) = Re Tr[A M] for A given by its entries.
double sparse_trace(const std::vector<SdpProblem::Entry>& entries, const Mat& m) {
    Complex acc = 0.0;
    for (const auto& e : entries)
        acc += e.value * m(e.col, e.row);
    return acc.real();
}

double sparse_norm(const std::vector<SdpProblem::Entry>& entries) {
    double acc = 0.0;
    for (const auto& e : entries)
        acc += std::norm(e.value);
    return std::sqrt(acc);
}

// Largest alpha in (0, inf] with X + alpha * D >= 0, given X > 0.
double max_step(const Eigen::LLT<Mat>& chol, const Mat& d) {
    Mat w = chol.matrixL().solve(d);
    w = chol.matrixL().solve(w.adjoint().eval()).adjoint();
    double lambda_min = min_eigenvalue(symmetrize(w));
    if (lambda_min >= -1e-14)
        return std::numeric_limits<double>::infinity();
    return -1.0 / lambda_min;
}

} // namespace

int SdpProblem::add_block(const std::string& label, int side) {
    if (side < 1)
        throw invalid_input("sdp: block side must be >= 1");
    labels_.push_back(label);
    sides_.push_back(side);
    objective_.push_back(Mat::Zero(side, side));
    long total = 0;
    for (int s : sides_)
        total += static_cast<long>(s) * s;
    if (total > 20000)
        throw capacity_error("sdp: total variable dimension exceeds 20000");
    return static_cast<int>(sides_.size()) - 1;
}

void SdpProblem::set_objective(int block, const Mat& coeff) {
    if (herm_deviation(coeff) > 1e-12)
        throw invalid_input("sdp: objective coefficient is not Hermitian");
    objective_.at(block) = symmetrize(coeff);
}

void SdpProblem::add_constraint(const std::vector<std::pair<int, Mat>>& coeffs,
                                double rhs) {
    Constraint c;
    c.rhs = rhs;
    for (const auto& [block, mat] : coeffs) {
        if (mat.rows() != sides_.at(block) || mat.cols() != sides_.at(block))
            throw invalid_input("sdp: constraint coefficient has wrong side");
        if (herm_deviation(mat) > 1e-12)
            throw invalid_input("sdp: constraint coefficient is not Hermitian");
        BlockCoeff bc;
        bc.block = block;
        for (int i = 0; i < mat.rows(); ++i)
            for (int j = 0; j < mat.cols(); ++j)
                if (std::abs(mat(i, j)) > 0.0)
                    bc.entries.push_back({i, j, mat(i, j)});
        if (!bc.entries.empty())
            c.blocks.push_back(std::move(bc));
    }
    constraints_.push_back(std::move(c));
}

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options) {
    const int nb = problem.num_blocks();
    const int m_all = problem.num_constraints();

    // Rank-filter the constraint rows via pivot-free incremental Cholesky of
    // the Gram matrix; redundant-but-consistent rows are dropped.
    std::vector<int> kept;
    {
        Eigen::MatrixXd gram(m_all, m_all);
        auto pair_inner = [&](int c1, int c2) {
            double acc = 0.0;
            const auto& a = problem.constraints_[c1];
            const auto& b = problem.constraints_[c2];
            for (const auto& ba : a.blocks)
                for (const auto& bb : b.blocks) {
                    if (ba.block != bb.block)
                        continue;
                    for (const auto& ea : ba.entries)
                        for (const auto& eb : bb.entries)
                            if (ea.row == eb.row && ea.col == eb.col)
                                acc += (std::conj(ea.value) * eb.value).real();
                }
            return acc;
        };
        for (int i = 0; i < m_all; ++i)
            for (int j = i; j < m_all; ++j)
                gram(i, j) = gram(j, i) = pair_inner(i, j);
        // Incremental Cholesky over rows in order; drop rows whose residual
        // norm against the span of the kept ones falls below the gate.
        Eigen::MatrixXd l(m_all, m_all);
        for (int i = 0; i < m_all; ++i) {
            int r = static_cast<int>(kept.size());
            Eigen::VectorXd lrow(r);
            for (int k = 0; k < r; ++k) {
                double acc = gram(i, kept[k]);
                for (int t = 0; t < k; ++t)
                    acc -= lrow(t) * l(k, t);
                lrow(k) = acc / l(k, k);
            }
            double diag = gram(i, i) - lrow.squaredNorm();
            if (diag > kRankDropTol * std::max(1.0, gram(i, i))) {
                l.row(r).head(r) = lrow.transpose();
                l(r, r) = std::sqrt(diag);
                kept.push_back(i);
            } else {
                // Redundant row: check rhs consistency before dropping.
                Eigen::VectorXd coeff = lrow;
                for (int k = r - 1; k >= 0; --k) {
                    for (int t = k + 1; t < r; ++t)
                        coeff(k) -= l(t, k) * coeff(t);
                    coeff(k) /= l(k, k);
                }
                double implied = 0.0;
                for (int k = 0; k < r; ++k)
                    implied += coeff(k) * problem.constraints_[kept[k]].rhs;
                if (std::abs(implied - problem.constraints_[i].rhs) > 1e-9) {
                    SdpSolution sol;
                    sol.status = SdpStatus::infeasible;
                    return sol;
                }
            }
        }
    }
    const int m = static_cast<int>(kept.size());

    std::vector<int> sides(nb);
    for (int b = 0; b < nb; ++b)
        sides[b] = problem.block_side(b);
    int nu = 0;
    for (int s : sides)
        nu += s;

    double obj_norm = 0.0;
    for (const Mat& c : problem.objective_)
        obj_norm = std::max(obj_norm, c.norm());
    double rhs_norm = 1.0;
    for (int c : kept)
        rhs_norm = std::max(rhs_norm, std::abs(problem.constraints_[c].rhs));

    const double eta = options.initial_scale * (1.0 + obj_norm);
    std::vector<Mat> x(nb), s(nb);
    for (int b = 0; b < nb; ++b) {
        x[b] = eta * Mat::Identity(sides[b], sides[b]);
        s[b] = eta * Mat::Identity(sides[b], sides[b]);
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

    auto op_a = [&](const std::vector<Mat>& blocks) {
        Eigen::VectorXd out(m);
        for (int c = 0; c < m; ++c) {
            double acc = 0.0;
            for (const auto& bc : problem.constraints_[kept[c]].blocks)
                acc += sparse_trace(bc.entries, blocks[bc.block]);
            out(c) = acc;
        }
        return out;
    };
    auto op_at = [&](const Eigen::VectorXd& mult) {
        std::vector<Mat> out(nb);
        for (int b = 0; b < nb; ++b)
            out[b] = Mat::Zero(sides[b], sides[b]);
        for (int c = 0; c < m; ++c)
            for (const auto& bc : problem.constraints_[kept[c]].blocks)
                for (const auto& e : bc.entries)
                    out[bc.block](e.row, e.col) += mult(c) * e.value;
        return out;
    };

    SdpSolution sol;
    SdpStatus status = SdpStatus::max_iterations;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        sol.iterations = iter + 1;

        double pval = 0.0;
        for (int b = 0; b < nb; ++b)
            pval += hs_inner(problem.objective_[b], x[b]);
        double dval = 0.0;
        for (int c = 0; c < m; ++c)
            dval += y(c) * problem.constraints_[kept[c]].rhs;

        Eigen::VectorXd rp(m);
        for (int c = 0; c < m; ++c)
            rp(c) = problem.constraints_[kept[c]].rhs - 0.0;
        rp -= op_a(x);

        std::vector<Mat> aty = op_at(y);
        std::vector<Mat> rd(nb);
        double rd_norm = 0.0;
        for (int b = 0; b < nb; ++b) {
            rd[b] = problem.objective_[b] - s[b] - aty[b];
            rd_norm = std::max(rd_norm, rd[b].cwiseAbs().maxCoeff());
        }

        double mu = 0.0;
        for (int b = 0; b < nb; ++b)
            mu += (x[b] * s[b]).trace().real();
        mu /= nu;

        double gap = std::abs(pval - dval) / (1.0 + std::abs(pval) + std::abs(dval));
        sol.gap_history.push_back(gap);

        double rp_rel = m > 0 ? rp.cwiseAbs().maxCoeff() / rhs_norm : 0.0;
        double rd_rel = rd_norm / (1.0 + obj_norm);
        if (gap <= options.tol && rp_rel <= options.tol && rd_rel <= options.tol) {
            status = SdpStatus::optimal;
            sol.primal_value = pval;
            sol.dual_value = dval;
            break;
        }
        if (std::abs(dval) > options.divergence ||
            (m > 0 && y.cwiseAbs().maxCoeff() > options.divergence)) {
            status = SdpStatus::infeasible;
            sol.primal_value = pval;
            sol.dual_value = dval;
            break;
        }
        sol.primal_value = pval;
        sol.dual_value = dval;

        // Factor the blocks.
        std::vector<Eigen::LLT<Mat>> x_chol(nb), s_chol(nb);
        std::vector<Mat> s_inv(nb);
        bool factor_ok = true;
        for (int b = 0; b < nb; ++b) {
            x_chol[b].compute(x[b]);
            s_chol[b].compute(s[b]);
            if (x_chol[b].info() != Eigen::Success || s_chol[b].info() != Eigen::Success) {
                factor_ok = false;
                break;
            }
            s_inv[b] = s_chol[b].solve(Mat::Identity(sides[b], sides[b]));
        }
        if (!factor_ok)
            break; // numerical stall; report the current iterate

        // T_{c,b} = X_b A_{c,b} S_b^{-1}, built from sparse A.
        std::vector<std::vector<std::pair<int, Mat>>> t(m);
        for (int c = 0; c < m; ++c)
            for (const auto& bc : problem.constraints_[kept[c]].blocks) {
                Mat tm = Mat::Zero(sides[bc.block], sides[bc.block]);
                for (const auto& e : bc.entries)
                    tm += e.value * (x[bc.block].col(e.row) * s_inv[bc.block].row(e.col));
                t[c].emplace_back(bc.block, std::move(tm));
            }

        Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
        for (int c = 0; c < m; ++c)
            for (const auto& [block, tm] : t[c])
                for (int c2 = 0; c2 < m; ++c2)
                    for (const auto& bc2 : problem.constraints_[kept[c2]].blocks)
                        if (bc2.block == block)
                            schur(c2, c) += sparse_trace(bc2.entries, tm);
        schur = 0.5 * (schur + schur.transpose().eval());

        Eigen::LLT<Eigen::MatrixXd> schur_chol(schur);
        Eigen::LDLT<Eigen::MatrixXd> schur_ldlt;
        bool use_ldlt = schur_chol.info() != Eigen::Success;
        if (use_ldlt) {
            Eigen::MatrixXd reg = schur +
                1e-12 * std::max(1.0, schur.trace() / std::max(1, m)) *
                    Eigen::MatrixXd::Identity(m, m);
            schur_ldlt.compute(reg);
            if (schur_ldlt.info() != Eigen::Success)
                break;
        }
        auto schur_solve = [&](const Eigen::VectorXd& v) {
            return use_ldlt ? schur_ldlt.solve(v).eval() : schur_chol.solve(v).eval();
        };

        auto direction = [&](double sigma_mu, const std::vector<Mat>* corr_x,
                             const std::vector<Mat>* corr_s, Eigen::VectorXd& dy,
                             std::vector<Mat>& dx, std::vector<Mat>& ds) {
            // W_b = sigma*mu*Sinv - X - X Rd Sinv - dXaff dSaff Sinv
            std::vector<Mat> w(nb);
            for (int b = 0; b < nb; ++b) {
                w[b] = sigma_mu * s_inv[b] - x[b] - x[b] * rd[b] * s_inv[b];
                if (corr_x)
                    w[b] -= (*corr_x)[b] * (*corr_s)[b] * s_inv[b];
            }
            Eigen::VectorXd h = rp;
            for (int c = 0; c < m; ++c)
                for (const auto& bc : problem.constraints_[kept[c]].blocks)
                    h(c) -= sparse_trace(bc.entries, w[bc.block]);
            dy = schur_solve(h);
            std::vector<Mat> atdy = op_at(dy);
            dx.resize(nb);
            ds.resize(nb);
            for (int b = 0; b < nb; ++b) {
                ds[b] = rd[b] - atdy[b];
                dx[b] = symmetrize(w[b] + x[b] * atdy[b] * s_inv[b]);
            }
        };

        // Predictor.
        Eigen::VectorXd dy_aff;
        std::vector<Mat> dx_aff, ds_aff;
        direction(0.0, nullptr, nullptr, dy_aff, dx_aff, ds_aff);

        double ap_aff = 1.0, ad_aff = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap_aff = std::min(ap_aff, kStepFraction * max_step(x_chol[b], dx_aff[b]));
            ad_aff = std::min(ad_aff, kStepFraction * max_step(s_chol[b], ds_aff[b]));
        }
        double mu_aff = 0.0;
        for (int b = 0; b < nb; ++b)
            mu_aff += ((x[b] + ap_aff * dx_aff[b]) * (s[b] + ad_aff * ds_aff[b]))
                          .trace()
                          .real();
        mu_aff = std::max(mu_aff / nu, 0.0);
        double sigma = std::pow(mu_aff / mu, 3.0);
        sigma = std::clamp(sigma, 0.0, 1.0);

        // Corrector.
        Eigen::VectorXd dy;
        std::vector<Mat> dx, ds;
        direction(sigma * mu, &dx_aff, &ds_aff, dy, dx, ds);

        double ap = 1.0, ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, kStepFraction * max_step(x_chol[b], dx[b]));
            ad = std::min(ad, kStepFraction * max_step(s_chol[b], ds[b]));
        }
        if (!(ap > 1e-14) || !(ad > 1e-14))
            break; // stalled

        for (int b = 0; b < nb; ++b) {
            x[b] = symmetrize(x[b] + ap * dx[b]);
            s[b] = symmetrize(s[b] + ad * ds[b]);
        }
        y += ad * dy;
    }

    sol.status = status;
    sol.primal_blocks = std::move(x);
    sol.dual_multipliers.assign(m_all, 0.0);
    for (int c = 0; c < m; ++c)
        sol.dual_multipliers[kept[c]] = y(c);
    return sol;
}

} // namespace qmem
