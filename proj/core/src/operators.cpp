#include "subheat/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "subheat/error.hpp"

namespace subheat {

std::string to_string(OperatorKind kind) {
  return kind == OperatorKind::sublaplacian ? "sublaplacian" : "boxb";
}

OperatorKind operator_kind_from(const std::string& name) {
  if (name == "sublaplacian") return OperatorKind::sublaplacian;
  if (name == "boxb") return OperatorKind::boxb;
  fail(ErrorCode::invalid_argument, "unknown operator kind '" + name + "'");
}

SparseOp generator_field(const DiscreteGeometry& geom, int generator) {
  if (generator != 0 && generator != 1)
    fail(ErrorCode::invalid_argument,
         "invalid multi-index: unknown generator id " + std::to_string(generator));
  const int N = geom.node_count;
  const double inv_h = 1.0 / geom.h;
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(2 * static_cast<size_t>(N));
  for (int v = 0; v < N; ++v) {
    trip.emplace_back(v, geom.shift[generator][v], Complex(inv_h, 0.0));
    trip.emplace_back(v, v, Complex(-inv_h, 0.0));
  }
  SparseOp X(N, N);
  X.setFromTriplets(trip.begin(), trip.end());
  return X;
}

SparseOp horizontal_z_field(const DiscreteGeometry& geom) {
  SparseOp Z = generator_field(geom, 0) + Complex(0.0, 1.0) * generator_field(geom, 1);
  Z.makeCompressed();
  return Z;
}

HorizontalOperator assemble_operator(const GeometryPtr& geom, OperatorKind kind) {
  HorizontalOperator op;
  op.kind = kind;
  op.geom = geom;
  SparseOp X0 = generator_field(*geom, 0);
  SparseOp X1 = generator_field(*geom, 1);
  // mu is uniform on both models, so the mu-adjoint is the plain adjoint.
  if (kind == OperatorKind::sublaplacian) {
    op.matrix = SparseOp(X0.adjoint() * X0) + SparseOp(X1.adjoint() * X1);
  } else {
    SparseOp Z = X0 + Complex(0.0, 1.0) * X1;
    op.matrix = SparseOp(Z.adjoint() * Z);
  }
  op.matrix.makeCompressed();
  return op;
}

Eigen::MatrixXcd KernelMatrix::coefficient_matrix() const {
  return K * geom->mu.asDiagonal();
}

Eigen::VectorXcd KernelMatrix::apply(const Eigen::VectorXcd& f) const {
  return K * geom->mu.cast<Complex>().cwiseProduct(f);
}

KernelMatrix identity_kernel(const GeometryPtr& geom) {
  KernelMatrix out;
  out.geom = geom;
  out.K = geom->mu.cwiseInverse().cast<Complex>().asDiagonal();
  return out;
}

KernelMatrix compose(const KernelMatrix& a, const KernelMatrix& b) {
  if (a.nodes() != b.nodes())
    fail(ErrorCode::invalid_argument, "compose: kernel dimension mismatch");
  KernelMatrix out;
  out.geom = a.geom;
  out.K = a.K * a.geom->mu.asDiagonal() * b.K;
  return out;
}

double SpectralData::lambda_min_nonzero() const {
  for (int k = 0; k < nodes(); ++k)
    if (eigenvalues(k) > 0.0) return eigenvalues(k);
  fail(ErrorCode::numerical, "spectrum has no nonzero eigenvalue");
}

KernelMatrix SpectralData::projector() const {
  KernelMatrix out;
  out.geom = geom;
  const int N = nodes();
  out.K = Eigen::MatrixXcd::Zero(N, N);
  for (int k : kernel_indices)
    out.K.noalias() += eigenvectors.col(k) * eigenvectors.col(k).adjoint();
  return out;
}

namespace {

// Phase-fix each eigenvector (largest-magnitude entry made real positive),
// then order ascending with lexicographic tie-breaking inside degenerate
// clusters so the decomposition is deterministic.
void canonicalize(Eigen::VectorXd& lam, Eigen::MatrixXcd& V) {
  const int N = static_cast<int>(lam.size());
  for (int k = 0; k < N; ++k) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < N; ++i) {
      double m = std::norm(V(i, k));
      if (m > best * (1.0 + 1e-12)) {
        best = m;
        arg = i;
      }
    }
    Complex z = V(arg, k);
    double mod = std::abs(z);
    if (mod > 0.0) V.col(k) *= std::conj(z) / mod;
  }
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  double tie = 1e-12 * std::max(std::abs(lam(0)), std::abs(lam(N - 1)));
  auto lex_less = [&](int a, int b) {
    for (int i = 0; i < N; ++i) {
      const Complex &za = V(i, a), &zb = V(i, b);
      if (za.real() != zb.real()) return za.real() < zb.real();
      if (za.imag() != zb.imag()) return za.imag() < zb.imag();
    }
    return false;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (lam(a) < lam(b) - tie) return true;
    if (lam(b) < lam(a) - tie) return false;
    return lex_less(a, b);
  });
  Eigen::VectorXd lam2(N);
  Eigen::MatrixXcd V2(N, N);
  for (int k = 0; k < N; ++k) {
    lam2(k) = lam(order[k]);
    V2.col(k) = V.col(order[k]);
  }
  lam.swap(lam2);
  V.swap(V2);
}

}  // namespace

SpectralData spectral_decompose(const HorizontalOperator& op, double eps_ker) {
  const int N = static_cast<int>(op.matrix.rows());
  const Eigen::VectorXd& mu = op.geom->mu;

  // Symmetrize in the measure: B = M^{1/2} A M^{-1/2} is Hermitian in the
  // plain inner product; e_k = M^{-1/2} u_k are then mu-orthonormal.
  Eigen::VectorXd sqrt_mu = mu.cwiseSqrt();
  Eigen::MatrixXcd B = sqrt_mu.cast<Complex>().asDiagonal() *
                       Eigen::MatrixXcd(op.matrix) *
                       sqrt_mu.cwiseInverse().cast<Complex>().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(B);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::numerical, "eigensolver failed to converge on " +
                                   to_string(op.kind) + " (" +
                                   op.geom->spec.to_string() + ")");

  SpectralData spec;
  spec.kind = op.kind;
  spec.geom = op.geom;
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = sqrt_mu.cwiseInverse().cast<Complex>().asDiagonal() *
                      solver.eigenvectors();
  canonicalize(spec.eigenvalues, spec.eigenvectors);

  double lam_max = std::max(spec.eigenvalues(N - 1), 0.0);
  spec.eps_ker = eps_ker > 0.0 ? eps_ker : 1e-10 * lam_max;
  for (int k = 0; k < N; ++k) {
    if (spec.eigenvalues(k) <= spec.eps_ker) {
      spec.kernel_indices.push_back(k);
      spec.eigenvalues(k) = 0.0;  // exact zero: see header contract
    }
  }
  if (spec.kernel_indices.empty())
    fail(ErrorCode::numerical,
         "spectral_decompose: operator kernel is empty (constants should be "
         "annihilated)");
  double gap = 0.0;
  for (int k = 0; k < N; ++k)
    if (spec.eigenvalues(k) > 0.0) {
      gap = spec.eigenvalues(k);
      break;
    }
  spec.narrow_gap_warning = gap > 0.0 && gap < 100.0 * spec.eps_ker;
  return spec;
}

KernelMatrix horizontal_derivative(const KernelMatrix& kernel,
                                   const MultiIndex& alpha, KernelSide side) {
  for (int g : alpha)
    if (g != 0 && g != 1)
      fail(ErrorCode::invalid_argument,
           "invalid multi-index: unknown generator id " + std::to_string(g));
  KernelMatrix out = kernel;
  // Right-to-left composition: the last entry of alpha acts first.
  for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) {
    SparseOp X = generator_field(*kernel.geom, *it);
    if (side == KernelSide::x)
      out.K = X * out.K;
    else
      out.K = out.K * SparseOp(X.transpose());
  }
  return out;
}

Complex mu_inner(const DiscreteGeometry& geom, const Eigen::VectorXcd& f,
                 const Eigen::VectorXcd& g) {
  return (g.conjugate().cwiseProduct(f).cwiseProduct(geom.mu.cast<Complex>())).sum();
}

double mu_norm(const DiscreteGeometry& geom, const Eigen::VectorXcd& f) {
  return std::sqrt(f.cwiseAbs2().cwiseProduct(geom.mu).sum());
}

Eigen::VectorXd row_l2_norms(const KernelMatrix& kernel) {
  return (kernel.K.cwiseAbs2() * kernel.geom->mu).cwiseSqrt();
}

Eigen::VectorXd col_l2_norms(const KernelMatrix& kernel) {
  return (kernel.K.cwiseAbs2().transpose() * kernel.geom->mu).cwiseSqrt();
}

double operator_l2_norm(const KernelMatrix& kernel) {
  // Coefficient matrix conjugated by M^{1/2} is the operator in an
  // orthonormal frame; its largest singular value is the mu-weighted norm.
  Eigen::VectorXd sq = kernel.geom->mu.cwiseSqrt();
  Eigen::MatrixXcd B = sq.cast<Complex>().asDiagonal() * kernel.K *
                       sq.cast<Complex>().asDiagonal();
  return B.jacobiSvd().singularValues()(0);
}

}  // namespace subheat
