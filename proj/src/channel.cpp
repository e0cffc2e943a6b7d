#include "channel.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace qmem {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << name << ": parameter p=" << p << " outside [0,1]";
        throw invalid_input(os.str());
    }
}

void check_kraus_tp(int d_in, const std::vector<Mat>& kraus) {
    Mat sum = Mat::Zero(d_in, d_in);
    for (const Mat& k : kraus)
        sum += k.adjoint() * k;
    if ((sum - Mat::Identity(d_in, d_in)).cwiseAbs().maxCoeff() > 1e-10)
        throw invalid_input("Kraus set is not trace preserving");
}

} // namespace

void ChoiState::validate(double psd_tol, double trace_tol, double marginal_tol) const {
    if (matrix.rows() != static_cast<long>(d_a) * d_b)
        throw invalid_input("ChoiState: matrix side does not match d_a*d_b");
    if (std::abs(matrix.trace().real() - 1.0) > trace_tol ||
        std::abs(matrix.trace().imag()) > trace_tol)
        throw invalid_input("ChoiState: trace is not 1");
    if (min_eigenvalue(symmetrize(matrix)) < -psd_tol)
        throw invalid_input("ChoiState: matrix is not PSD");
    Mat marg = partial_trace(matrix, Subsystem::B, d_a, d_b);
    if ((marg - Mat::Identity(d_a, d_a) / d_a).cwiseAbs().maxCoeff() > marginal_tol)
        throw invalid_input("ChoiState: marginal on A is not I/d_a");
}

ChoiState kraus_to_choi(int d_in, int d_out, const std::vector<Mat>& kraus) {
    check_kraus_tp(d_in, kraus);
    Mat phi = Mat::Zero(d_in * d_out, d_in * d_out);
    for (const Mat& k : kraus) {
        // vec of K under the |i>_A (x) K|i>_B layout.
        Eigen::VectorXcd v(d_in * d_out);
        for (int i = 0; i < d_in; ++i)
            v.segment(i * d_out, d_out) = k.col(i);
        phi += v * v.adjoint();
    }
    return ChoiState{d_in, d_out, phi / d_in};
}

QuantumChannel channel_from_kraus(int d_in, int d_out, std::vector<Mat> kraus) {
    for (const Mat& k : kraus)
        if (k.rows() != d_out || k.cols() != d_in)
            throw invalid_input("Kraus operator has wrong shape");
    QuantumChannel ch;
    ch.d_in = d_in;
    ch.d_out = d_out;
    ch.choi = kraus_to_choi(d_in, d_out, kraus);
    ch.kraus = std::move(kraus);
    return ch;
}

QuantumChannel channel_from_choi(ChoiState choi) {
    choi.validate();
    QuantumChannel ch;
    ch.d_in = choi.d_a;
    ch.d_out = choi.d_b;
    ch.choi = std::move(choi);
    return ch;
}

Mat apply_channel(const QuantumChannel& n, const Mat& rho) {
    if (rho.rows() != n.d_in || rho.cols() != n.d_in)
        throw invalid_input("apply: state dimension does not match channel input");
    if (!n.kraus.empty()) {
        Mat out = Mat::Zero(n.d_out, n.d_out);
        for (const Mat& k : n.kraus)
            out += k * rho * k.adjoint();
        return out;
    }
    Mat lifted = kron(rho.transpose(), Mat::Identity(n.d_out, n.d_out));
    return static_cast<double>(n.d_in) *
           partial_trace(lifted * n.choi.matrix, Subsystem::A, n.d_in, n.d_out);
}

QuantumChannel identity_channel(int d) {
    if (d < 1)
        throw invalid_input("identity: dimension must be >= 1");
    return channel_from_kraus(d, d, {Mat::Identity(d, d)});
}

QuantumChannel dephasing_channel(double p) {
    check_probability(p, "dephasing");
    return channel_from_kraus(2, 2,
                              {std::sqrt(p) * Mat::Identity(2, 2),
                               std::sqrt(1.0 - p) * pauli_z()});
}

QuantumChannel depolarizing_channel(double p) {
    check_probability(p, "depolarizing");
    return channel_from_kraus(2, 2,
                              {std::sqrt((1.0 + 3.0 * p) / 4.0) * Mat::Identity(2, 2),
                               std::sqrt((1.0 - p) / 4.0) * pauli_x(),
                               std::sqrt((1.0 - p) / 4.0) * pauli_y(),
                               std::sqrt((1.0 - p) / 4.0) * pauli_z()});
}

QuantumChannel damping_channel(double p) {
    check_probability(p, "damping");
    return channel_from_kraus(2, 2,
                              {std::sqrt(p) * Mat::Identity(2, 2),
                               std::sqrt(1.0 - p) * ketbra(0, 0, 2),
                               std::sqrt(1.0 - p) * ketbra(0, 1, 2)});
}

QuantumChannel erasure_channel(double p) {
    check_probability(p, "erasure");
    Mat embed = Mat::Zero(3, 2);
    embed(0, 0) = 1.0;
    embed(1, 1) = 1.0;
    Mat e0 = Mat::Zero(3, 2);
    e0(2, 0) = 1.0;
    Mat e1 = Mat::Zero(3, 2);
    e1(2, 1) = 1.0;
    return channel_from_kraus(2, 3,
                              {std::sqrt(p) * embed, std::sqrt(1.0 - p) * e0,
                               std::sqrt(1.0 - p) * e1});
}

QuantumChannel lindblad_dephasing_channel(double gamma, double t) {
    if (gamma < 0.0 || t < 0.0)
        throw invalid_input("lindblad_dephasing: gamma and t must be >= 0");
    return dephasing_channel(0.5 * (1.0 + std::exp(-gamma * t)));
}

QuantumChannel completely_depolarizing_channel(int d) {
    // rho -> I/d via the full Heisenberg-Weyl twirl; Choi is I/d^2.
    std::vector<Mat> kraus;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            kraus.push_back(ketbra(i, j, d) / std::sqrt(static_cast<double>(d)));
    return channel_from_kraus(d, d, std::move(kraus));
}

QuantumChannel channel_family(const std::string& spec) {
    auto open = spec.find('(');
    auto close = spec.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw invalid_input("channel family: expected name(args): " + spec);
    std::string name = spec.substr(0, open);
    std::string args = spec.substr(open + 1, close - open - 1);
    std::vector<double> vals;
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ','))
        vals.push_back(std::stod(tok));
    auto arg = [&](std::size_t i) {
        if (vals.size() <= i)
            throw invalid_input("channel family: missing argument in " + spec);
        return vals[i];
    };
    if (name == "identity")
        return identity_channel(static_cast<int>(arg(0)));
    if (name == "dephasing")
        return dephasing_channel(arg(0));
    if (name == "depolarizing")
        return depolarizing_channel(arg(0));
    if (name == "damping")
        return damping_channel(arg(0));
    if (name == "erasure")
        return erasure_channel(arg(0));
    if (name == "lindblad_dephasing")
        return lindblad_dephasing_channel(arg(0), arg(1));
    if (name == "completely_depolarizing")
        return completely_depolarizing_channel(static_cast<int>(arg(0)));
    throw invalid_input("unknown channel family: " + name);
}

QuantumChannel compose(const QuantumChannel& later, const QuantumChannel& earlier) {
    if (earlier.d_out != later.d_in)
        throw invalid_input("compose: inner dimensions do not match");
    if (!later.kraus.empty() && !earlier.kraus.empty() &&
        later.kraus.size() * earlier.kraus.size() <= 256) {
        std::vector<Mat> kraus;
        for (const Mat& l : later.kraus)
            for (const Mat& e : earlier.kraus)
                kraus.push_back(l * e);
        return channel_from_kraus(earlier.d_in, later.d_out, std::move(kraus));
    }
    // Choi route: push the A'-basis matrix units through both maps.
    int d_in = earlier.d_in;
    int d_out = later.d_out;
    Mat phi = Mat::Zero(d_in * d_out, d_in * d_out);
    for (int i = 0; i < d_in; ++i)
        for (int j = 0; j < d_in; ++j) {
            Mat out = apply_channel(later, apply_channel(earlier, ketbra(i, j, d_in)));
            for (int k = 0; k < d_out; ++k)
                for (int l = 0; l < d_out; ++l)
                    phi(i * d_out + k, j * d_out + l) = out(k, l) / static_cast<double>(d_in);
        }
    return channel_from_choi(ChoiState{d_in, d_out, symmetrize(phi)});
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
    long side = static_cast<long>(a.d_in) * b.d_in * a.d_out * b.d_out;
    if (side > kMaxChoiSide)
        throw capacity_error("tensor: resulting Choi side exceeds capacity");
    QuantumChannel ch;
    ch.d_in = a.d_in * b.d_in;
    ch.d_out = a.d_out * b.d_out;
    if (!a.kraus.empty() && !b.kraus.empty()) {
        for (const Mat& ka : a.kraus)
            for (const Mat& kb : b.kraus)
                ch.kraus.push_back(kron(ka, kb));
    }
    // Reorder A1 B1 A2 B2 -> A1 A2 B1 B2.
    Mat prod = kron(a.choi.matrix, b.choi.matrix);
    int da1 = a.d_in, db1 = a.d_out, da2 = b.d_in, db2 = b.d_out;
    int n = da1 * db1 * da2 * db2;
    auto reindex = [&](int a1, int b1, int a2, int b2) {
        return ((a1 * da2 + a2) * db1 + b1) * db2 + b2;
    };
    Mat phi(n, n);
    for (int a1 = 0; a1 < da1; ++a1)
        for (int b1 = 0; b1 < db1; ++b1)
            for (int a2 = 0; a2 < da2; ++a2)
                for (int b2 = 0; b2 < db2; ++b2) {
                    int row_src = ((a1 * db1 + b1) * da2 + a2) * db2 + b2;
                    int row_dst = reindex(a1, b1, a2, b2);
                    for (int a1c = 0; a1c < da1; ++a1c)
                        for (int b1c = 0; b1c < db1; ++b1c)
                            for (int a2c = 0; a2c < da2; ++a2c)
                                for (int b2c = 0; b2c < db2; ++b2c) {
                                    int col_src = ((a1c * db1 + b1c) * da2 + a2c) * db2 + b2c;
                                    int col_dst = reindex(a1c, b1c, a2c, b2c);
                                    phi(row_dst, col_dst) = prod(row_src, col_src);
                                }
                }
    ch.choi = ChoiState{ch.d_in, ch.d_out, phi};
    ch.choi.validate();
    return ch;
}

QuantumChannel channel_partial_trace(const QuantumChannel& n, Subsystem part,
                                     int d_in_a, int d_in_b,
                                     int d_out_a, int d_out_b) {
    if (d_in_a * d_in_b != n.d_in || d_out_a * d_out_b != n.d_out)
        throw invalid_input("channel_partial_trace: bipartition does not divide dims");
    int d_in_keep = (part == Subsystem::B) ? d_in_a : d_in_b;
    int d_out_keep = (part == Subsystem::B) ? d_out_a : d_out_b;
    int d_in_drop = (part == Subsystem::B) ? d_in_b : d_in_a;
    Mat maximally_mixed = Mat::Identity(d_in_drop, d_in_drop) / d_in_drop;
    Mat phi = Mat::Zero(d_in_keep * d_out_keep, d_in_keep * d_out_keep);
    for (int i = 0; i < d_in_keep; ++i)
        for (int j = 0; j < d_in_keep; ++j) {
            Mat in = (part == Subsystem::B) ? kron(ketbra(i, j, d_in_keep), maximally_mixed)
                                            : kron(maximally_mixed, ketbra(i, j, d_in_keep));
            Mat out_full = apply_channel(n, in);
            Mat out = (part == Subsystem::B)
                          ? partial_trace(out_full, Subsystem::B, d_out_a, d_out_b)
                          : partial_trace(out_full, Subsystem::A, d_out_a, d_out_b);
            for (int k = 0; k < d_out_keep; ++k)
                for (int l = 0; l < d_out_keep; ++l)
                    phi(i * d_out_keep + k, j * d_out_keep + l) =
                        out(k, l) / static_cast<double>(d_in_keep);
        }
    return channel_from_choi(ChoiState{d_in_keep, d_out_keep, symmetrize(phi)});
}

QuantumChannel random_eb_channel(int d_in, int d_out, int n_outcomes,
                                 std::uint64_t seed) {
    if (n_outcomes < 1)
        throw invalid_input("random_eb_channel: n_outcomes must be >= 1");
    Rng rng(seed);
    // POVM from normalized random positive operators.
    std::vector<Mat> raw;
    Mat total = Mat::Zero(d_in, d_in);
    for (int i = 0; i < n_outcomes; ++i) {
        raw.push_back(random_psd(rng, d_in));
        total += raw.back();
    }
    EigResult eig_total = herm_eig(total);
    Mat inv_sqrt = eig_total.eigenvectors *
                   eig_total.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() *
                   eig_total.eigenvectors.adjoint();
    std::vector<Mat> kraus;
    for (int i = 0; i < n_outcomes; ++i) {
        Mat povm = symmetrize(inv_sqrt * raw[i] * inv_sqrt);
        Eigen::VectorXcd prep = random_pure_state(rng, d_out);
        EigResult eig_povm = herm_eig(povm);
        for (int k = 0; k < d_in; ++k) {
            double w = std::max(eig_povm.eigenvalues(k), 0.0);
            if (w < 1e-14)
                continue;
            kraus.push_back(std::sqrt(w) * prep * eig_povm.eigenvectors.col(k).adjoint());
        }
    }
    return channel_from_kraus(d_in, d_out, std::move(kraus));
}

QuantumChannel random_channel(int d_in, int d_out, std::uint64_t seed) {
    Rng rng(seed);
    // Stinespring: isometry from d_in into d_out * d_env, environment traced out.
    int d_env = d_in; // keeps Kraus rank moderate
    Mat u = random_unitary(rng, d_out * d_env);
    std::vector<Mat> kraus;
    for (int e = 0; e < d_env; ++e) {
        Mat k(d_out, d_in);
        for (int o = 0; o < d_out; ++o)
            for (int i = 0; i < d_in; ++i)
                k(o, i) = u(o * d_env + e, i); // input embedded as env index 0
        kraus.push_back(k);
    }
    return channel_from_kraus(d_in, d_out, std::move(kraus));
}

bool is_ppt_choi(const ChoiState& choi, double tol) {
    Mat pt = partial_transpose(choi.matrix, Subsystem::A, choi.d_a, choi.d_b);
    return min_eigenvalue(symmetrize(pt)) >= -tol;
}

} // namespace qmem
