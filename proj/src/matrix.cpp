#include "matrix.hpp"

#include <cmath>

#include "errors.hpp"

namespace qmem {

double herm_deviation(const Mat& a) {
    return (a - a.adjoint().eval()).cwiseAbs().maxCoeff();
}

Mat symmetrize(const Mat& a) {
    return 0.5 * (a + a.adjoint().eval());
}

EigResult herm_eig(const Mat& a) {
    if (a.rows() != a.cols())
        throw invalid_input("herm_eig: matrix is not square");
    if (a.size() > 0 && herm_deviation(a) > kHermTol)
        throw invalid_input("herm_eig: matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(a));
    if (solver.info() != Eigen::Success)
        throw solver_failure("herm_eig: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double max_eigenvalue(const Mat& hermitian) {
    EigResult r = herm_eig(hermitian);
    return r.eigenvalues(r.eigenvalues.size() - 1);
}

double min_eigenvalue(const Mat& hermitian) {
    return herm_eig(hermitian).eigenvalues(0);
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat partial_trace(const Mat& a, Subsystem sys, int d_a, int d_b) {
    if (a.rows() != a.cols() || a.rows() != static_cast<long>(d_a) * d_b)
        throw invalid_input("partial_trace: dimension mismatch");
    if (sys == Subsystem::B) {
        Mat out = Mat::Zero(d_a, d_a);
        for (int i = 0; i < d_a; ++i)
            for (int j = 0; j < d_a; ++j)
                for (int k = 0; k < d_b; ++k)
                    out(i, j) += a(i * d_b + k, j * d_b + k);
        return out;
    }
    Mat out = Mat::Zero(d_b, d_b);
    for (int k = 0; k < d_b; ++k)
        for (int l = 0; l < d_b; ++l)
            for (int i = 0; i < d_a; ++i)
                out(k, l) += a(i * d_b + k, i * d_b + l);
    return out;
}

Mat partial_transpose(const Mat& a, Subsystem sys, int d_a, int d_b) {
    if (a.rows() != a.cols() || a.rows() != static_cast<long>(d_a) * d_b)
        throw invalid_input("partial_transpose: dimension mismatch");
    Mat out(a.rows(), a.cols());
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_a; ++j)
            for (int k = 0; k < d_b; ++k)
                for (int l = 0; l < d_b; ++l) {
                    if (sys == Subsystem::A)
                        out(j * d_b + k, i * d_b + l) = a(i * d_b + k, j * d_b + l);
                    else
                        out(i * d_b + l, j * d_b + k) = a(i * d_b + k, j * d_b + l);
                }
    return out;
}

double hs_inner(const Mat& a, const Mat& b) {
    return (a.adjoint() * b).trace().real();
}

Mat ketbra(int ket, int bra, int dim) {
    Mat out = Mat::Zero(dim, dim);
    out(ket, bra) = 1.0;
    return out;
}

Mat max_entangled(int d) {
    Mat out = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out(i * d + i, j * d + j) = 1.0 / d;
    return out;
}

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

std::vector<Mat> hermitian_basis(int n) {
    std::vector<Mat> basis;
    basis.reserve(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
        basis.push_back(ketbra(k, k, n));
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            basis.push_back(ketbra(k, l, n) + ketbra(l, k, n));
            basis.push_back(Complex(0, 1) * (ketbra(k, l, n) - ketbra(l, k, n)));
        }
    return basis;
}

std::vector<Mat> gell_mann_basis(int n) {
    std::vector<Mat> basis;
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            basis.push_back(ketbra(k, l, n) + ketbra(l, k, n));
            basis.push_back(Complex(0, 1) * (ketbra(k, l, n) - ketbra(l, k, n)));
        }
    for (int k = 1; k < n; ++k) {
        Mat d = Mat::Zero(n, n);
        for (int i = 0; i < k; ++i)
            d(i, i) = 1.0;
        d(k, k) = -static_cast<double>(k);
        basis.push_back(std::sqrt(2.0 / (k * (k + 1.0))) * d);
    }
    return basis;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Mat random_hermitian(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = Complex(gauss(rng), gauss(rng));
    return symmetrize(g);
}

Mat random_psd(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = Complex(gauss(rng), gauss(rng));
    return g.adjoint() * g;
}

Eigen::VectorXcd random_pure_state(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = Complex(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

Mat random_density(Rng& rng, int n) {
    Mat p = random_psd(rng, n);
    return p / p.trace().real();
}

Mat random_unitary(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (int i = 0; i < n; ++i) {
        Complex d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

} // namespace qmem
