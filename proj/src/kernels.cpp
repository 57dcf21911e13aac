#include "grasslen/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <Eigen/QR>

namespace grasslen::kernels {

std::vector<Scalar> wedge_columns(const Eigen::MatrixXcd& factors, const SubsetTableChain& chain) {
  const int k = static_cast<int>(factors.cols());
  const int m = static_cast<int>(factors.rows());
  if (k == 0) return {Scalar{1.0}};
  if (chain.m() != m || chain.max_grade() < k) throw std::invalid_argument("subset chain too short");
  std::vector<Scalar> w(factors.col(0).data(), factors.col(0).data() + m);
  std::vector<Scalar> next;
  for (int j = 1; j < k; ++j) {
    const SubsetTable& t = chain.grade(j + 1);
    next.assign(t.size(), Scalar{});
    for (std::size_t r = 0; r < t.size(); ++r) {
      const auto members = t.members(r);
      Scalar acc{};
      // moving factor j in front of the members above position p
      for (int p = 0; p <= j; ++p) {
        const Scalar term = w[t.drop(r, p)] * factors(members[p], j);
        acc += ((j - p) & 1) ? -term : term;
      }
      next[r] = acc;
    }
    w.swap(next);
  }
  return w;
}

namespace {

std::vector<Scalar> rest_wedge(const Eigen::MatrixXcd& factors, int slot, const SubsetTableChain& chain) {
  const int n = static_cast<int>(factors.cols());
  Eigen::MatrixXcd rest(factors.rows(), n - 1);
  for (int c = 0, k = 0; c < n; ++c)
    if (c != slot) rest.col(k++) = factors.col(c);
  return wedge_columns(rest, chain);
}

} // namespace

void slot_matrix_from_rest(std::span<const Scalar> rest_wedge, int slot, const SubsetTable& grade_n,
                           Eigen::Ref<Eigen::MatrixXcd> out) {
  const int n = grade_n.n();
  out.setZero();
  for (std::size_t r = 0; r < grade_n.size(); ++r) {
    const auto members = grade_n.members(r);
    for (int p = 0; p < n; ++p) {
      const Scalar c = rest_wedge[grade_n.drop(r, p)];
      out(static_cast<Eigen::Index>(r), members[p]) = ((slot + p) & 1) ? -c : c;
    }
  }
}

Eigen::MatrixXcd slot_matrix(const Eigen::MatrixXcd& factors, int slot, const SubsetTableChain& chain) {
  const int n = static_cast<int>(factors.cols());
  if (slot < 0 || slot >= n) throw std::invalid_argument("slot out of range");
  const SubsetTable& t = chain.grade(n);
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(t.size()), factors.rows());
  const auto rest = rest_wedge(factors, slot, chain);
  slot_matrix_from_rest(rest, slot, t, out);
  return out;
}

void tangent_generators(const Eigen::MatrixXcd& factors, const SubsetTableChain& chain,
                        Eigen::Ref<Eigen::MatrixXcd> out) {
  const int m = static_cast<int>(factors.rows());
  const int n = static_cast<int>(factors.cols());
  const SubsetTable& t = chain.grade(n);

  // Standard basis vectors off the pivot rows complete the factors to a basis.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(factors.transpose());
  std::vector<int> order(qr.colsPermutation().indices().data(),
                         qr.colsPermutation().indices().data() + m);
  std::vector<int> free_rows(order.begin() + n, order.end());
  std::sort(free_rows.begin(), free_rows.end());

  const auto point = wedge_columns(factors, chain);
  out.col(0) = Eigen::Map<const Eigen::VectorXcd>(point.data(), static_cast<Eigen::Index>(point.size()));

  Eigen::Index col = 1;
  for (int slot = 0; slot < n; ++slot) {
    const auto rest = rest_wedge(factors, slot, chain);
    const Eigen::Index first = col;
    for (std::size_t i = 0; i < free_rows.size(); ++i) out.col(col++).setZero();
    for (std::size_t r = 0; r < t.size(); ++r) {
      const auto members = t.members(r);
      for (int p = 0; p < n; ++p) {
        const auto it = std::lower_bound(free_rows.begin(), free_rows.end(), members[p]);
        if (it == free_rows.end() || *it != members[p]) continue;
        const Scalar c = rest[t.drop(r, p)];
        out(static_cast<Eigen::Index>(r), first + (it - free_rows.begin())) = ((slot + p) & 1) ? -c : c;
      }
    }
  }
}

namespace {

// Quadrics with a fixed (n-1)-subset `lo`, summed over every (n+1)-subset.
double plucker_row(int m, int n, std::span<const Scalar> coeffs, Mask lo, const SubsetTable& hi,
                   std::vector<std::int64_t>& lookup) {
  // lookup[v] = signed (ordinal + 1) of lo u {v} with v appended last; 0 if v in lo
  for (int v = 0; v < m; ++v) {
    const Mask bit = Mask{1} << v;
    if (lo & bit) {
      lookup[v] = 0;
      continue;
    }
    const auto r = static_cast<std::int64_t>(mask_rank(m, lo | bit)) + 1;
    const int above = popcount(lo) - count_below(lo, v);
    lookup[v] = (above & 1) ? -r : r;
  }
  double acc = 0.0;
  for (std::size_t r = 0; r < hi.size(); ++r) {
    const auto members = hi.members(r);
    Scalar q{};
    for (int k = 0; k <= n; ++k) {
      const std::int64_t e = lookup[members[k]];
      if (e == 0) continue;
      const Scalar left = coeffs[static_cast<std::size_t>(e > 0 ? e - 1 : -e - 1)];
      const Scalar term = left * coeffs[hi.drop(r, k)];
      // (-1)^k from the relation, (-1) again when the appended index had to move
      q += (((k & 1) != 0) != (e < 0)) ? -term : term;
    }
    acc += std::norm(q);
  }
  return acc;
}

bool plucker_trivial(int m, int n) { return n < 1 || n + 1 > m; }

} // namespace

namespace serial {

double plucker_residual(int m, int n, std::span<const Scalar> coeffs) {
  if (plucker_trivial(m, n)) return 0.0;
  const SubsetTable lo(m, n - 1), hi(m, n + 1);
  std::vector<double> partial(lo.size());
  std::vector<std::int64_t> lookup(static_cast<std::size_t>(m));
  for (std::size_t a = 0; a < lo.size(); ++a) partial[a] = plucker_row(m, n, coeffs, lo.mask(a), hi, lookup);
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

Eigen::MatrixXcd terracini_matrix(std::span<const Eigen::MatrixXcd> points, const SubsetTableChain& chain) {
  if (points.empty()) throw std::invalid_argument("no points");
  const int m = static_cast<int>(points.front().rows());
  const int n = static_cast<int>(points.front().cols());
  const Eigen::Index d = n * (m - n) + 1;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(chain.grade(n).size()),
                       d * static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto block = out.middleCols(static_cast<Eigen::Index>(i) * d, d);
    tangent_generators(points[i], chain, block);
    block.colwise().normalize();
  }
  return out;
}

} // namespace serial

namespace omp {

double plucker_residual(int m, int n, std::span<const Scalar> coeffs) {
  if (plucker_trivial(m, n)) return 0.0;
  const SubsetTable lo(m, n - 1), hi(m, n + 1);
  std::vector<double> partial(lo.size());
  const auto count = static_cast<std::int64_t>(lo.size());
#pragma omp parallel
  {
    std::vector<std::int64_t> lookup(static_cast<std::size_t>(m));
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t a = 0; a < count; ++a)
      partial[static_cast<std::size_t>(a)] =
          plucker_row(m, n, coeffs, lo.mask(static_cast<std::size_t>(a)), hi, lookup);
  }
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

Eigen::MatrixXcd terracini_matrix(std::span<const Eigen::MatrixXcd> points, const SubsetTableChain& chain) {
  if (points.empty()) throw std::invalid_argument("no points");
  const int m = static_cast<int>(points.front().rows());
  const int n = static_cast<int>(points.front().cols());
  const Eigen::Index d = n * (m - n) + 1;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(chain.grade(n).size()),
                       d * static_cast<Eigen::Index>(points.size()));
  const auto count = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    auto block = out.middleCols(i * d, d);
    tangent_generators(points[static_cast<std::size_t>(i)], chain, block);
    block.colwise().normalize();
  }
  return out;
}

} // namespace omp

} // namespace grasslen::kernels
