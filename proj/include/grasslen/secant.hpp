#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "grasslen/kernels.hpp"
#include "grasslen/multivector.hpp"
#include "grasslen/numeric_rank.hpp"
#include "grasslen/random.hpp"

namespace grasslen {

/// A point of the Grassmann cone given by n independent factors (columns).
class GrassmannPoint {
public:
  explicit GrassmannPoint(Eigen::MatrixXcd factors, double tol = kRankTol);

  /// Independent complex Gaussian factors.
  static GrassmannPoint random(int m, int n, Rng& rng);

  const Eigen::MatrixXcd& factors() const noexcept { return factors_; }
  int m() const noexcept { return static_cast<int>(factors_.rows()); }
  int n() const noexcept { return static_cast<int>(factors_.cols()); }

private:
  Eigen::MatrixXcd factors_;
};

/// All n*m substitutions phi_1 ^ .. ^ e_v ^ .. ^ phi_n, slot-major. They
/// span the affine tangent space of the cone, of dimension n(m-n)+1.
std::vector<Multivector> tangent_cone_basis(const GrassmannPoint& p);

enum class RankMethod { Auto, Svd, Qr };

struct SecantOptions {
  int trials = 3;
  double tol = kRankTol;
  bool certify = false;
  std::uint64_t seed = kDefaultSeed;
  Exec exec = Exec::Serial;
  RankMethod method = RankMethod::Auto;
  /// Largest C(m,n) accepted.
  std::uint64_t max_dim = 100000;
};

/// Measured dimension of the variety of sums of l points of G(n,m), with l
/// the number of points throughout.
struct SecantReport {
  int m = 0;
  int n = 0;
  int l = 0;
  int affine_rank = 0;
  int projective_dim = 0;
  int expected_dim = 0;
  int defect = 0;
  int trials = 0;
  double tol = kRankTol;
  std::uint64_t seed = 0;
  bool ambiguous = false;
  bool certified = false;
  /// Exact rank mod `prime` on integer points; -1 when certification did not run.
  long modular_rank = -1;
  std::uint64_t prime = 0;
};

/// min(l (n(m-n)+1) - 1, C(m,n) - 1).
int expected_secant_dim(int m, int n, int l);

/// Terracini rank of l random points, maximised over trials. Throws
/// CapExceeded when C(m,n) exceeds opts.max_dim.
SecantReport secant_dim(int m, int n, int l, const SecantOptions& opts = {});

struct ScanResult {
  std::vector<SecantReport> reports;
  std::vector<std::string> notices;
};

/// Every (m, n, l) with n in n_set, n < m <= m_max and 1 <= l <= l_max,
/// ordered by (n, m, l). Cells over the size cap are skipped with a notice.
/// Each cell draws from its own seed derived from (opts.seed, m, n, l).
ScanResult defect_scan(int m_max, const std::vector<int>& n_set, int l_max, const SecantOptions& opts = {});

/// Explicit grid variant used by the CLI: every combination of the lists.
ScanResult defect_scan(const std::vector<int>& m_set, const std::vector<int>& n_set,
                       const std::vector<int>& l_set, const SecantOptions& opts = {});

/// Smallest l with l (n(m-n)+1) - 1 >= C(m,n) - 1.
int min_filling_l(int m, int n);

/// CSV with header m,n,l,projective_dim,expected_dim,defect,certified,tol,seed.
std::string secant_csv(const std::vector<SecantReport>& reports);

} // namespace grasslen
