#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <vector>

#include "subheat/geometry.hpp"

namespace subheat {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;

enum class OperatorKind { sublaplacian, boxb };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from(const std::string& name);

// Ordered multi-index over the horizontal generators {0, 1}; composition is
// right-to-left, so {0,1} means X_0 applied after X_1.
using MultiIndex = std::vector<int>;

enum class KernelSide { x, y };

// Sparse Hermitian positive-semidefinite horizontal operator (units 1/length^2).
// sublaplacian: L = X_0^* X_0 + X_1^* X_1 with X_g = h^{-1}(S_g - I);
// boxb: Z^* Z with Z = h^{-1}((S_0 - I) + i (S_1 - I)); adjoints are taken in
// the mu-weighted inner product <f,g> = sum_x f(x) conj(g(x)) mu(x).
struct HorizontalOperator {
  SparseOp matrix;
  OperatorKind kind = OperatorKind::sublaplacian;
  GeometryPtr geom;
};

HorizontalOperator assemble_operator(const GeometryPtr& geom, OperatorKind kind);

// First-order horizontal difference field X_g = h^{-1}(S_g - I) as a sparse
// real operator stored complex for uniform composition.
SparseOp generator_field(const DiscreteGeometry& geom, int generator);

// Z = X_0 + i X_1.
SparseOp horizontal_z_field(const DiscreteGeometry& geom);

// Schwartz-kernel table with the measure-weighted convention
// (Tf)(x) = sum_y K(x,y) f(y) mu(y).
struct KernelMatrix {
  Eigen::MatrixXcd K;
  GeometryPtr geom;

  int nodes() const { return static_cast<int>(K.rows()); }
  // Matrix acting on coefficient vectors: K scaled columnwise by mu.
  Eigen::MatrixXcd coefficient_matrix() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const;
};

KernelMatrix identity_kernel(const GeometryPtr& geom);
KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b);

// Full eigendecomposition in the mu-weighted inner product.  Kernel
// eigenvalues (lambda <= eps_ker) are stored as exact zeros so that spectral
// identities involving F(0) and the projector hold to rounding.
struct SpectralData {
  Eigen::VectorXd eigenvalues;   // ascending, length N
  Eigen::MatrixXcd eigenvectors; // columns mu-orthonormal
  std::vector<int> kernel_indices;
  double eps_ker = 0.0;
  bool narrow_gap_warning = false;  // lambda_gap < 100 * eps_ker
  OperatorKind kind = OperatorKind::sublaplacian;
  GeometryPtr geom;

  int nodes() const { return static_cast<int>(eigenvalues.size()); }
  double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }
  double lambda_min_nonzero() const;
  bool in_kernel(int k) const { return eigenvalues(k) == 0.0; }
  // Kernel table of the orthogonal projector onto the zero eigenspace.
  KernelMatrix projector() const;
};

// eps_ker <= 0 selects the default 1e-10 * lambda_max.
SpectralData spectral_decompose(const HorizontalOperator& op, double eps_ker = -1.0);

// D^alpha applied to the first (side=x) or second (side=y) kernel argument.
KernelMatrix horizontal_derivative(const KernelMatrix& kernel,
                                   const MultiIndex& alpha, KernelSide side);

// mu-weighted pairing and norms on node fields.
Complex mu_inner(const DiscreteGeometry& geom, const Eigen::VectorXcd& f,
                 const Eigen::VectorXcd& g);
double mu_norm(const DiscreteGeometry& geom, const Eigen::VectorXcd& f);

// sum_y |K(x,y)|^2 mu(y) and sum_x |K(x,y)|^2 mu(x), as vectors over rows /
// columns; the L^2 norms of kernel slices used throughout the bounds.
Eigen::VectorXd row_l2_norms(const KernelMatrix& kernel);
Eigen::VectorXd col_l2_norms(const KernelMatrix& kernel);

// mu-weighted L^2 -> L^2 operator norm of a kernel table (largest singular
// value of the symmetrized coefficient matrix).
double operator_l2_norm(const KernelMatrix& kernel);

}  // namespace subheat
