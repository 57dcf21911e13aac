#include "grasslen/numeric_rank.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace grasslen {

NumericRank classify_spectrum(std::vector<double> relative, double tol) {
  NumericRank out;
  for (double s : relative) {
    if (s >= tol) ++out.rank;
    if (s >= tol / 10.0 && s <= tol * 10.0) out.ambiguous = true;
  }
  out.spectrum = std::move(relative);
  return out;
}

NumericRank numeric_rank_svd(const Eigen::MatrixXcd& a, double tol) {
  if (a.size() == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  std::vector<double> rel(static_cast<std::size_t>(s.size()));
  const double top = s.size() > 0 ? s(0) : 0.0;
  if (top == 0.0) return classify_spectrum(std::vector<double>(rel.size(), 0.0), tol);
  for (Eigen::Index i = 0; i < s.size(); ++i) rel[static_cast<std::size_t>(i)] = s(i) / top;
  return classify_spectrum(std::move(rel), tol);
}

NumericRank numeric_rank_qr(const Eigen::MatrixXcd& a, double tol) {
  if (a.size() == 0) return {};
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  const auto diag = qr.matrixR().diagonal().cwiseAbs().eval();
  std::vector<double> rel(static_cast<std::size_t>(diag.size()));
  const double top = diag.size() > 0 ? diag(0) : 0.0;
  if (top == 0.0) return classify_spectrum(std::vector<double>(rel.size(), 0.0), tol);
  for (Eigen::Index i = 0; i < diag.size(); ++i) rel[static_cast<std::size_t>(i)] = diag(i) / top;
  return classify_spectrum(std::move(rel), tol);
}

} // namespace grasslen
