#include "game.hpp"

#include <cmath>

#include "errors.hpp"

namespace qmem {

namespace {

Mat effect_from(const Mat& base) {
    return symmetrize(base);
}

double sup_norm(const Mat& hermitian) {
    EigResult e = herm_eig(hermitian);
    return std::max(std::abs(e.eigenvalues(0)),
                    std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
}

} // namespace

void Game::validate() const {
    if (inputs.empty() || observables.empty())
        throw invalid_input("game: needs at least one input and one observable");
    if (alpha.rows() != static_cast<long>(inputs.size()) ||
        alpha.cols() != static_cast<long>(observables.size()))
        throw invalid_input("game: alpha shape does not match inputs/observables");
    for (const Mat& s : inputs) {
        if (std::abs(s.trace().real() - 1.0) > 1e-10 || herm_deviation(s) > 1e-10 ||
            min_eigenvalue(symmetrize(s)) < -1e-10)
            throw invalid_input("game: input is not a density matrix");
    }
    for (const Mat& o : observables) {
        Mat sym = symmetrize(o);
        if (min_eigenvalue(sym) < -1e-9 || max_eigenvalue(sym) > 1.0 + 1e-9)
            throw invalid_input("game: observable is not an effect (0 <= O <= I)");
    }
}

PayoffResult payoff(const Game& game, const QuantumChannel& channel) {
    if (game.d_in() != channel.d_in || game.d_out() != channel.d_out)
        throw invalid_input("payoff: game dimensions do not match channel");
    PayoffResult result;
    for (std::size_t i = 0; i < game.inputs.size(); ++i) {
        Mat out = apply_channel(channel, game.inputs[i]);
        for (std::size_t j = 0; j < game.observables.size(); ++j) {
            double a = game.alpha(i, j);
            if (a == 0.0)
                continue;
            double prob = (game.observables[j].adjoint() * out).trace().real();
            result.per_setting.push_back(
                {static_cast<int>(i), static_cast<int>(j), prob, a * prob});
            result.payoff += a * prob;
        }
    }
    result.robustness_lower_bound = result.payoff - 1.0;
    return result;
}

Mat game_to_witness(const Game& game) {
    const int da = game.d_in();
    const int db = game.d_out();
    Mat w = Mat::Zero(da * db, da * db);
    for (std::size_t i = 0; i < game.inputs.size(); ++i)
        for (std::size_t j = 0; j < game.observables.size(); ++j) {
            double a = game.alpha(i, j);
            if (a == 0.0)
                continue;
            w += a * kron(game.inputs[i].transpose(), game.observables[j]);
        }
    return symmetrize(static_cast<double>(da) * w);
}

Game witness_to_game(const Mat& w, int d_a, int d_b) {
    if (w.rows() != static_cast<long>(d_a) * d_b || w.rows() != w.cols())
        throw invalid_input("witness_to_game: witness side does not match dims");
    if (herm_deviation(w) > 1e-10)
        throw invalid_input("witness_to_game: witness is not Hermitian");

    // Operator bases {I, G_k} on both sides; Paulis for d = 2, generalized
    // Gell-Mann matrices otherwise.
    std::vector<Mat> basis_a{Mat::Identity(d_a, d_a)};
    std::vector<Mat> basis_b{Mat::Identity(d_b, d_b)};
    for (const Mat& g : gell_mann_basis(d_a))
        basis_a.push_back(g);
    for (const Mat& g : gell_mann_basis(d_b))
        basis_b.push_back(g);

    Game game;
    game.label = "from_witness";
    game.eb_normalized = false;

    // sigma_0 = I/d, sigma_a = (I + G_a^T / |G_a|) / d; O_0 = I,
    // O_b = (I + G_b / |G_b|) / 2.
    std::vector<double> scale_a{1.0}, scale_b{1.0};
    game.inputs.push_back(Mat::Identity(d_a, d_a) / d_a);
    for (std::size_t a = 1; a < basis_a.size(); ++a) {
        double u = sup_norm(basis_a[a]);
        scale_a.push_back(u);
        game.inputs.push_back(
            (Mat::Identity(d_a, d_a) + basis_a[a].transpose() / u) / d_a);
    }
    game.observables.push_back(Mat::Identity(d_b, d_b));
    for (std::size_t b = 1; b < basis_b.size(); ++b) {
        double v = sup_norm(basis_b[b]);
        scale_b.push_back(v);
        game.observables.push_back(
            0.5 * (Mat::Identity(d_b, d_b) + basis_b[b] / v));
    }

    game.alpha = Eigen::MatrixXd::Zero(basis_a.size(), basis_b.size());
    for (std::size_t a = 0; a < basis_a.size(); ++a) {
        double na = hs_inner(basis_a[a], basis_a[a]);
        for (std::size_t b = 0; b < basis_b.size(); ++b) {
            double nb = hs_inner(basis_b[b], basis_b[b]);
            double coeff = hs_inner(kron(basis_a[a], basis_b[b]), w) / (na * nb);
            if (std::abs(coeff) < 1e-15)
                continue;
            // Expansion in terms of d_a * sigma^T and O:
            //   I_A = d_a sigma_0^T, G_a = u d_a (sigma_a^T - sigma_0^T)
            //   I_B = O_0,           G_b = v (2 O_b - O_0)
            struct Term { std::size_t idx; double c; };
            std::vector<Term> ta, tb;
            if (a == 0) {
                ta.push_back({0, 1.0});
            } else {
                ta.push_back({a, scale_a[a]});
                ta.push_back({0, -scale_a[a]});
            }
            if (b == 0) {
                tb.push_back({0, 1.0});
            } else {
                tb.push_back({b, 2.0 * scale_b[b]});
                tb.push_back({0, -scale_b[b]});
            }
            for (const Term& x : ta)
                for (const Term& ybt : tb)
                    game.alpha(x.idx, ybt.idx) += coeff * x.c * ybt.c;
        }
    }
    return game;
}

namespace {

std::vector<Mat> depolarizing_inputs() {
    Mat id = Mat::Identity(2, 2);
    double r3 = 1.0 / std::sqrt(3.0);
    return {
        0.5 * id,
        0.5 * (id + pauli_x()),
        0.5 * (id - pauli_y()),
        0.5 * (id + pauli_z()),
        0.5 * (id + r3 * (pauli_x() + pauli_y() + pauli_z())),
    };
}

} // namespace

Game canned_game_depolarizing() {
    Game g;
    g.label = "depolarizing";
    g.eb_normalized = true;
    g.inputs = depolarizing_inputs();
    for (const Mat& s : g.inputs)
        g.observables.push_back(effect_from(s.transpose()));
    double r3 = std::sqrt(3.0);
    g.alpha = Eigen::MatrixXd::Zero(5, 5);
    g.alpha(0, 0) = 2.0 * r3;
    g.alpha(0, 4) = -r3;
    g.alpha(1, 1) = 1.0;
    g.alpha(2, 2) = -1.0;
    g.alpha(3, 3) = 1.0;
    g.alpha(4, 0) = -r3;
    return g;
}

Game canned_game_erasure() {
    Game g;
    g.label = "erasure";
    g.eb_normalized = true;
    g.inputs = depolarizing_inputs();
    // Qubit effects embedded into the qutrit output space, plus |2><2|.
    Mat i2 = Mat::Zero(3, 3);
    i2(0, 0) = i2(1, 1) = 1.0;
    auto embed = [&](const Mat& q) {
        Mat out = Mat::Zero(3, 3);
        out.topLeftCorner(2, 2) = q;
        return out;
    };
    double r3 = 1.0 / std::sqrt(3.0);
    g.observables = {
        0.5 * i2,
        0.5 * (i2 + embed(pauli_x())),
        0.5 * (i2 + embed(pauli_y())),
        0.5 * (i2 + embed(pauli_z())),
        0.5 * (i2 + r3 * embed(pauli_x() - pauli_y() + pauli_z())),
        ketbra(2, 2, 3),
    };
    double s3 = std::sqrt(3.0);
    g.alpha = Eigen::MatrixXd::Zero(5, 6);
    g.alpha(0, 0) = 2.0 * s3;
    g.alpha(0, 4) = -s3;
    g.alpha(0, 5) = 1.0;
    g.alpha(1, 1) = 1.0;
    g.alpha(2, 2) = -1.0;
    g.alpha(3, 3) = 1.0;
    g.alpha(4, 0) = -s3;
    return g;
}

std::pair<double, double> damping_psi0_coefficients(double p) {
    double disc = std::sqrt(1.0 - 2.0 * p + 5.0 * p * p);
    double num = 1.0 - p + disc;
    double den = std::sqrt(num * num + 4.0 * p * p);
    return {num / den, 2.0 * p / den};
}

Game canned_game_damping(double p) {
    if (p < 0.0 || p > 1.0)
        throw invalid_input("canned_game_damping: p outside [0,1]");
    auto [a, b] = damping_psi0_coefficients(p);
    Mat id = Mat::Identity(2, 2);
    double r2 = 1.0 / std::sqrt(2.0);
    Game g;
    g.label = "damping";
    g.eb_normalized = true;
    g.observables = {
        0.5 * id,
        0.5 * (id + pauli_x()),
        0.5 * (id + pauli_y()),
        0.5 * (id + pauli_z()),
        0.5 * (id - pauli_z()),
        0.5 * (id + r2 * (pauli_x() - pauli_y())),
    };
    for (const Mat& o : g.observables)
        g.inputs.push_back(effect_from(o.transpose()));
    double ab = a * b;
    double s2 = std::sqrt(2.0);
    g.alpha = Eigen::MatrixXd::Zero(6, 6);
    g.alpha(0, 0) = 4.0 * s2 * ab;
    g.alpha(0, 5) = -2.0 * s2 * ab;
    g.alpha(1, 1) = 2.0 * ab;
    g.alpha(2, 2) = -2.0 * ab;
    g.alpha(3, 3) = a * a;
    g.alpha(4, 4) = b * b;
    g.alpha(5, 0) = -2.0 * s2 * ab;
    return g;
}

Game canned_game(const std::string& name) {
    if (name == "depolarizing")
        return canned_game_depolarizing();
    if (name == "erasure")
        return canned_game_erasure();
    auto open = name.find('(');
    if (name.rfind("damping", 0) == 0 && open != std::string::npos) {
        double p = std::stod(name.substr(open + 1));
        return canned_game_damping(p);
    }
    throw invalid_input("unknown canned game: " + name);
}

double gate_witness_bound(const Mat& u, double empirical_choi_fidelity) {
    if (empirical_choi_fidelity < 0.0 || empirical_choi_fidelity > 1.0)
        throw invalid_input("gate_witness_bound: fidelity outside [0,1]");
    double d = static_cast<double>(u.rows());
    return std::max(0.0, d * empirical_choi_fidelity - 1.0);
}

} // namespace qmem
