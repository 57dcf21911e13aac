#include "grasslen/decomp_rank.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "grasslen/errors.hpp"

namespace grasslen {

namespace {

void require_nonzero(const Multivector& psi) {
  if (psi.is_zero()) throw std::domain_error("operation undefined on the zero multivector");
}

} // namespace

Multivector sum_terms(int m, int n, const std::vector<DecompTerm>& terms) {
  Multivector out(m, n);
  if (terms.empty()) return out;
  const SubsetTableChain chain(m, n);
  std::vector<Scalar> acc(out.size());
  for (const auto& t : terms) {
    if (t.m() != m || t.n() != n) throw std::invalid_argument("term shape mismatch");
    const auto w = kernels::wedge_columns(t.factors, chain);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w[i];
  }
  return Multivector(m, n, std::move(acc));
}

RankReport support_rank(const Multivector& psi, double tol) {
  require_nonzero(psi);
  const int m = psi.m(), n = psi.n();
  if (n == 0) throw std::invalid_argument("support rank needs grade >= 1");
  const SubsetTable lower(m, n - 1);

  // Column K holds the vector obtained by contracting psi with every covector
  // in K: entry j is +-psi(K u {j}).
  Eigen::MatrixXcd span(m, static_cast<Eigen::Index>(lower.size()));
  span.setZero();
  for (std::size_t k = 0; k < lower.size(); ++k) {
    const Mask mask = lower.mask(k);
    for (int j = 0; j < m; ++j) {
      const Mask bit = Mask{1} << j;
      if (mask & bit) continue;
      const Scalar c = psi[mask_rank(m, mask | bit)];
      span(j, static_cast<Eigen::Index>(k)) = (count_below(mask, j) & 1) ? -c : c;
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(span, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  std::vector<double> rel(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) rel[static_cast<std::size_t>(i)] = s(i) / s(0);
  const NumericRank nr = classify_spectrum(std::move(rel), tol);

  RankReport out;
  out.rank = nr.rank;
  out.spectrum = nr.spectrum;
  out.ambiguous = nr.ambiguous;
  out.tol = tol;
  for (int i = 0; i < nr.rank; ++i) out.support_basis.emplace_back(svd.matrixU().col(i));
  return out;
}

double plucker_residual(const Multivector& psi, Exec exec) {
  if (psi.n() < 1) throw std::invalid_argument("Pluecker residual needs grade >= 1");
  return kernels::plucker_residual(psi.m(), psi.n(), psi.coeffs(), exec);
}

DecomposabilityReport is_decomposable(const Multivector& psi, double tol, Exec exec) {
  require_nonzero(psi);
  DecomposabilityReport out;
  out.plucker_residual = plucker_residual(psi, exec);
  out.relative_residual = std::sqrt(out.plucker_residual) / psi.squared_norm();
  out.decomposable = out.relative_residual <= tol;
  out.support_rank = support_rank(psi, tol).rank;
  out.rank_agrees = (out.support_rank == psi.n()) == out.decomposable;
  return out;
}

Eigen::MatrixXcd skew_matrix(const Multivector& psi) {
  if (psi.n() != 2) throw std::invalid_argument("skew matrix needs a 2-vector");
  const int m = psi.m();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  const SubsetTable t(m, 2);
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto ij = t.members(r);
    a(ij[0], ij[1]) = psi[r];
    a(ij[1], ij[0]) = -psi[r];
  }
  return a;
}

SchmidtResult schmidt_length(const Multivector& psi, double tol) {
  if (psi.n() != 2) throw std::invalid_argument("Schmidt decomposition needs grade 2");
  require_nonzero(psi);
  Eigen::MatrixXcd a = skew_matrix(psi);

  const NumericRank nr = numeric_rank_svd(a, tol);
  if (nr.rank % 2 != 0)
    throw NumericalError("odd numeric rank " + std::to_string(nr.rank) +
                         " of a skew matrix; tolerance too close to the spectrum");

  SchmidtResult out;
  out.skew_rank = nr.rank;
  out.length = nr.rank / 2;
  out.ambiguous = nr.ambiguous;

  // Peel one plane per step. If A v = sigma u for the top singular pair,
  // sigma (u w^T - w u^T) with w = conj(v) is an exact 2x2 block of A and u,
  // w are orthonormal.
  for (int b = 0; b < out.length; ++b) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double sigma = svd.singularValues()(0);
    const Eigen::VectorXcd u = svd.matrixU().col(0);
    const Eigen::VectorXcd w = svd.matrixV().col(0).conjugate();
    a -= sigma * (u * w.transpose() - w * u.transpose());
    DecompTerm term;
    term.factors.resize(psi.m(), 2);
    term.factors.col(0) = sigma * u;
    term.factors.col(1) = w;
    out.terms.push_back(std::move(term));
    out.weights.push_back(sigma);
  }
  out.residual = (psi - sum_terms(psi.m(), 2, out.terms)).norm() / psi.norm();
  return out;
}

} // namespace grasslen
