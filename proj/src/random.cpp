#include "grasslen/random.hpp"

#include <complex>

#include <Eigen/QR>

namespace grasslen {

Eigen::MatrixXcd random_unitary(int m, Rng& rng) {
  const Eigen::MatrixXcd g = complex_gaussian(m, m, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const auto d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

} // namespace grasslen
