#pragma once

#include <vector>

#include <Eigen/Core>

#include "grasslen/kernels.hpp"
#include "grasslen/multivector.hpp"
#include "grasslen/numeric_rank.hpp"

namespace grasslen {

/// One decomposable summand phi_1 ^ ... ^ phi_n; the factors are the
/// columns of an m x n matrix.
struct DecompTerm {
  Eigen::MatrixXcd factors;

  int m() const noexcept { return static_cast<int>(factors.rows()); }
  int n() const noexcept { return static_cast<int>(factors.cols()); }
  Multivector evaluate() const { return wedge_vectors(factors); }
};

/// Sum of the wedges of `terms`; all terms must share (m, n).
Multivector sum_terms(int m, int n, const std::vector<DecompTerm>& terms);

struct RankReport {
  int rank = 0;
  /// Orthonormal basis of the smallest F with psi in the n-th power of F.
  std::vector<VectorM> support_basis;
  std::vector<double> spectrum;
  bool ambiguous = false;
  double tol = kRankTol;
};

/// Dimension of the span of all (n-1)-fold basis contractions of psi.
/// Throws std::domain_error on the zero multivector.
RankReport support_rank(const Multivector& psi, double tol = kRankTol);

/// Sum over every (n-1)-subset I and (n+1)-subset J of
/// |sum_k (-1)^k p(I, j_k) p(J \ j_k)|^2. Vanishes exactly on decomposables.
double plucker_residual(const Multivector& psi, Exec exec = Exec::Serial);

struct DecomposabilityReport {
  bool decomposable = false;
  double plucker_residual = 0.0;
  /// sqrt(plucker_residual) / ||psi||^2, invariant under scaling.
  double relative_residual = 0.0;
  int support_rank = 0;
  /// support_rank == n agrees with the Pluecker verdict.
  bool rank_agrees = false;
};

/// Decomposable iff relative_residual <= tol. Throws on psi = 0.
DecomposabilityReport is_decomposable(const Multivector& psi, double tol = kRankTol,
                                      Exec exec = Exec::Serial);

struct SchmidtResult {
  int length = 0;
  int skew_rank = 0;
  std::vector<DecompTerm> terms;
  /// Block weights, descending.
  std::vector<double> weights;
  double residual = 0.0;
  bool ambiguous = false;
};

/// Exact length of a 2-vector: half the numeric rank of its skew-symmetric
/// coefficient matrix, with one orthogonal plane per term.
SchmidtResult schmidt_length(const Multivector& psi, double tol = kRankTol);

/// The m x m skew-symmetric matrix of a 2-vector.
Eigen::MatrixXcd skew_matrix(const Multivector& psi);

} // namespace grasslen
