#include "grasslen/secant.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "grasslen/errors.hpp"
#include "grasslen/modular.hpp"

namespace grasslen {

namespace {

constexpr Eigen::Index kSvdLimit = 600;
constexpr std::int64_t kIntegerRange = 1000000;

std::uint64_t cone_dim(int m, int n) {
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(m - n) + 1;
}

void check_shape(int m, int n, int l) {
  if (m < 1 || m > kMaxDim) throw std::invalid_argument("ambient dimension out of range");
  if (n < 1 || n > m) throw std::invalid_argument("grade must lie in [1, m]");
  if (l < 1) throw std::invalid_argument("need at least one point");
}

NumericRank measure(const Eigen::MatrixXcd& a, double tol, RankMethod method) {
  if (method == RankMethod::Auto)
    method = std::min(a.rows(), a.cols()) <= kSvdLimit ? RankMethod::Svd : RankMethod::Qr;
  return method == RankMethod::Svd ? numeric_rank_svd(a, tol) : numeric_rank_qr(a, tol);
}

// Exact rank modulo a random 62-bit prime of the full substitution
// generators at l integer points.
std::pair<long, std::uint64_t> modular_terracini_rank(int m, int n, int l, std::uint64_t seed,
                                                      const SubsetTableChain& chain, Exec exec) {
  Rng rng(derive_seed(seed, 0xCE27));
  const std::uint64_t p = modular::random_prime(rng);
  std::uniform_int_distribution<std::int64_t> entry(-kIntegerRange, kIntegerRange);
  modular::Matrix stacked;
  stacked.cols = chain.grade(n).size();
  for (int i = 0; i < l; ++i) {
    std::vector<std::int64_t> factors(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
    for (auto& x : factors) x = entry(rng);
    const modular::Matrix rows = modular::tangent_rows(factors, m, n, p, chain);
    stacked.data.insert(stacked.data.end(), rows.data.begin(), rows.data.end());
    stacked.rows += rows.rows;
  }
  return {static_cast<long>(modular::rank(stacked, p, exec)), p};
}

} // namespace

GrassmannPoint::GrassmannPoint(Eigen::MatrixXcd factors, double tol) : factors_(std::move(factors)) {
  if (factors_.cols() < 1 || factors_.cols() > factors_.rows())
    throw std::invalid_argument("a Grassmann point needs 1 <= n <= m factors");
  if (numeric_rank_svd(factors_, tol).rank != factors_.cols())
    throw std::invalid_argument("Grassmann point factors are linearly dependent");
}

GrassmannPoint GrassmannPoint::random(int m, int n, Rng& rng) {
  for (;;) {
    Eigen::MatrixXcd f = complex_gaussian(m, n, rng);
    if (numeric_rank_svd(f).rank == n) return GrassmannPoint(std::move(f));
  }
}

std::vector<Multivector> tangent_cone_basis(const GrassmannPoint& p) {
  const int m = p.m(), n = p.n();
  const SubsetTableChain chain(m, n);
  std::vector<Multivector> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (int slot = 0; slot < n; ++slot) {
    const Eigen::MatrixXcd map = kernels::slot_matrix(p.factors(), slot, chain);
    for (int v = 0; v < m; ++v) {
      std::vector<Scalar> c(map.col(v).data(), map.col(v).data() + map.rows());
      out.emplace_back(m, n, std::move(c));
    }
  }
  return out;
}

int expected_secant_dim(int m, int n, int l) {
  const std::uint64_t total = binomial(m, n);
  const std::uint64_t cone = static_cast<std::uint64_t>(l) * cone_dim(m, n);
  return static_cast<int>(std::min(cone, total) - 1);
}

SecantReport secant_dim(int m, int n, int l, const SecantOptions& opts) {
  check_shape(m, n, l);
  if (opts.trials < 1) throw std::invalid_argument("need at least one trial");
  const std::uint64_t total = binomial(m, n);
  if (total > opts.max_dim)
    throw CapExceeded("C(" + std::to_string(m) + "," + std::to_string(n) + ") = " + std::to_string(total) +
                      " exceeds the cap " + std::to_string(opts.max_dim));

  const SubsetTableChain chain(m, n);
  const int ceiling = expected_secant_dim(m, n, l) + 1;

  SecantReport rep;
  rep.m = m;
  rep.n = n;
  rep.l = l;
  rep.tol = opts.tol;
  rep.seed = opts.seed;
  for (int t = 0; t < opts.trials; ++t) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(t)));
    std::vector<Eigen::MatrixXcd> points;
    points.reserve(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) points.push_back(GrassmannPoint::random(m, n, rng).factors());
    const Eigen::MatrixXcd a = kernels::terracini_matrix(points, chain, opts.exec);
    const NumericRank nr = measure(a, opts.tol, opts.method);
    rep.affine_rank = std::max(rep.affine_rank, nr.rank);
    rep.ambiguous = rep.ambiguous || nr.ambiguous;
    rep.trials = t + 1;
    // the rank cannot exceed the expected value, so later trials cannot change the max
    if (rep.affine_rank >= ceiling) break;
  }
  rep.projective_dim = rep.affine_rank - 1;
  rep.expected_dim = ceiling - 1;
  rep.defect = rep.expected_dim - rep.projective_dim;

  if (opts.certify) {
    const auto [mod_rank, p] = modular_terracini_rank(m, n, l, opts.seed, chain, opts.exec);
    rep.modular_rank = mod_rank;
    rep.prime = p;
    rep.certified = mod_rank == rep.affine_rank;
  }
  return rep;
}

ScanResult defect_scan(const std::vector<int>& m_set, const std::vector<int>& n_set,
                       const std::vector<int>& l_set, const SecantOptions& opts) {
  struct Cell {
    int m, n, l;
  };
  std::vector<Cell> cells;
  ScanResult out;
  for (int n : n_set)
    for (int m : m_set) {
      if (n < 1 || n >= m) continue;
      if (binomial(m, n) > opts.max_dim) {
        out.notices.push_back("skipped (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                              "): C(m,n) exceeds the cap");
        continue;
      }
      for (int l : l_set)
        if (l >= 1) cells.push_back({m, n, l});
    }

  std::vector<SecantReport> reports(cells.size());
  SecantOptions cell_opts = opts;
  cell_opts.exec = Exec::Serial;
  const auto count = static_cast<std::int64_t>(cells.size());
  auto run = [&](std::int64_t i) {
    const Cell& c = cells[static_cast<std::size_t>(i)];
    SecantOptions o = cell_opts;
    o.seed = derive_seed(opts.seed, static_cast<std::uint64_t>(c.m), static_cast<std::uint64_t>(c.n),
                         static_cast<std::uint64_t>(c.l));
    reports[static_cast<std::size_t>(i)] = secant_dim(c.m, c.n, c.l, o);
  };
  if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) run(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) run(i);
  }
  out.reports = std::move(reports);
  return out;
}

ScanResult defect_scan(int m_max, const std::vector<int>& n_set, int l_max, const SecantOptions& opts) {
  if (m_max < 2 || l_max < 1 || n_set.empty()) throw std::invalid_argument("empty scan range");
  std::vector<int> ms, ls;
  for (int m = 2; m <= m_max; ++m) ms.push_back(m);
  for (int l = 1; l <= l_max; ++l) ls.push_back(l);
  return defect_scan(ms, n_set, ls, opts);
}

int min_filling_l(int m, int n) {
  if (m < 1 || n < 0 || n > m) throw std::invalid_argument("need 0 <= n <= m");
  const std::uint64_t target = binomial(m, n) - 1;
  const std::uint64_t step = cone_dim(m, n);
  int l = 1;
  for (std::uint64_t reach = step - 1; reach < target; reach += step) ++l;
  return l;
}

std::string secant_csv(const std::vector<SecantReport>& reports) {
  std::ostringstream os;
  os << "m,n,l,projective_dim,expected_dim,defect,certified,tol,seed\n";
  for (const auto& r : reports) {
    char tol[32];
    std::snprintf(tol, sizeof tol, "%g", r.tol);
    os << r.m << ',' << r.n << ',' << r.l << ',' << r.projective_dim << ',' << r.expected_dim << ','
       << r.defect << ',' << (r.certified ? "true" : "false") << ',' << tol << ',' << r.seed << '\n';
  }
  return os.str();
}

} // namespace grasslen
