#pragma once

#include <vector>

#include <Eigen/Core>

namespace grasslen {

/// Default relative threshold for numeric rank decisions.
inline constexpr double kRankTol = 1e-8;

struct NumericRank {
  int rank = 0;
  /// Singular values (or |R_ii| for the QR route), divided by the largest.
  std::vector<double> spectrum;
  /// Some relative value lies within a factor of 10 of the threshold, so the
  /// cut does not sit in a clear gap.
  bool ambiguous = false;
};

/// Rank from singular values: count of sigma_i >= tol * sigma_max.
NumericRank numeric_rank_svd(const Eigen::MatrixXcd& a, double tol = kRankTol);

/// Rank from a column-pivoted Householder QR, thresholding |R_ii| against
/// |R_00|. Used for the large Terracini matrices where an SVD is too slow.
NumericRank numeric_rank_qr(const Eigen::MatrixXcd& a, double tol = kRankTol);

/// Applies the threshold and gap test to a descending, normalised spectrum.
NumericRank classify_spectrum(std::vector<double> relative, double tol);

} // namespace grasslen
