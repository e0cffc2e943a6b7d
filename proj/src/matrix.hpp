#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qmem {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Subsystem selector for bipartite operations. A is the slower-varying
// (row-major leading) index throughout.
enum class Subsystem { A, B };

struct EigResult {
    RVec eigenvalues; // ascending
    Mat eigenvectors; // columns, unitary
};

// Tolerance gate for Hermiticity of inputs to herm_eig.
inline constexpr double kHermTol = 1e-10;

double herm_deviation(const Mat& a);
Mat symmetrize(const Mat& a);

// Eigendecomposition of a Hermitian matrix; throws invalid_input if the
// pre-symmetrization deviation exceeds kHermTol.
EigResult herm_eig(const Mat& a);

double max_eigenvalue(const Mat& hermitian);
double min_eigenvalue(const Mat& hermitian);

Mat kron(const Mat& a, const Mat& b);
Mat partial_trace(const Mat& a, Subsystem sys, int d_a, int d_b);
Mat partial_transpose(const Mat& a, Subsystem sys, int d_a, int d_b);

// Real Hilbert-Schmidt inner product Re Tr[A^dag B].
double hs_inner(const Mat& a, const Mat& b);

// |ket><bra| over computational basis indices.
Mat ketbra(int ket, int bra, int dim);

// Normalized maximally entangled state (1/d) sum_ij |ii><jj| on d*d.
Mat max_entangled(int d);

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

// Hermitian operator basis of side n: E_kk, E_kl+E_lk, i(E_kl-E_lk).
std::vector<Mat> hermitian_basis(int n);

// Traceless Hermitian basis on side n (generalized Gell-Mann matrices,
// unnormalized: X-like, Y-like, and diagonal ladder operators).
std::vector<Mat> gell_mann_basis(int n);

// --- seeded sampling helpers -------------------------------------------

using Rng = std::mt19937_64;

// SplitMix64 step; used to derive independent sub-seeds.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

Mat random_hermitian(Rng& rng, int n);
Mat random_psd(Rng& rng, int n);
// Haar-random pure state as a column vector.
Eigen::VectorXcd random_pure_state(Rng& rng, int n);
Mat random_density(Rng& rng, int n);
Mat random_unitary(Rng& rng, int n);

} // namespace qmem
