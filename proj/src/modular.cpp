#include "grasslen/modular.hpp"

#include <stdexcept>
#include <utility>

namespace grasslen::modular {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) noexcept {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t x) noexcept {
  if (x < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (x % q == 0) return x == q;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these bases are deterministic below 3.3e24
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t y = pow_mod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      y = mul_mod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(Rng& rng, int bits) {
  if (bits < 3 || bits > 63) throw std::invalid_argument("prime size must be 3..63 bits");
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  std::uniform_int_distribution<std::uint64_t> dist(lo, (lo << 1) - 1);
  for (;;) {
    const std::uint64_t c = dist(rng) | 1;
    if (is_prime(c)) return c;
  }
}

std::size_t rank(Matrix& a, std::uint64_t p, Exec exec) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows && a.row(pivot)[c] == 0) ++pivot;
    if (pivot == a.rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.row(pivot)[j], a.row(r)[j]);
    const std::uint64_t inv = inv_mod(a.row(r)[c], p);
    const std::uint64_t* top = a.row(r);
    const auto first = static_cast<std::int64_t>(r + 1);
    const auto last = static_cast<std::int64_t>(a.rows);
    auto eliminate = [&](std::int64_t i) {
      std::uint64_t* row = a.row(static_cast<std::size_t>(i));
      if (row[c] == 0) return;
      const std::uint64_t f = mul_mod(row[c], inv, p);
      for (std::size_t j = c; j < a.cols; ++j) {
        const std::uint64_t t = mul_mod(f, top[j], p);
        row[j] = row[j] >= t ? row[j] - t : row[j] + p - t;
      }
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t i = first; i < last; ++i) eliminate(i);
    } else {
      for (std::int64_t i = first; i < last; ++i) eliminate(i);
    }
    ++r;
  }
  return r;
}

namespace {

std::vector<std::uint64_t> wedge_mod(const std::vector<std::vector<std::uint64_t>>& cols, std::uint64_t p, const SubsetTableChain& chain) {
  if (cols.empty()) return {1 % p};
  std::vector<std::uint64_t> w(cols[0].begin(), cols[0].end());
  std::vector<std::uint64_t> next;
  const int k = static_cast<int>(cols.size());
  for (int j = 1; j < k; ++j) {
    const SubsetTable& t = chain.grade(j + 1);
    next.assign(t.size(), 0);
    for (std::size_t r = 0; r < t.size(); ++r) {
      const auto members = t.members(r);
      std::uint64_t acc = 0;
      for (int q = 0; q <= j; ++q) {
        const std::uint64_t term = mul_mod(w[t.drop(r, q)], cols[j][members[q]], p);
        if ((j - q) & 1) acc = acc >= term ? acc - term : acc + p - term;
        else acc = (acc + term) % p;
      }
      next[r] = acc;
    }
    w.swap(next);
  }
  return w;
}

} // namespace

Matrix tangent_rows(const std::vector<std::int64_t>& factors, int m, int n, std::uint64_t p,
                    const SubsetTableChain& chain) {
  if (factors.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n))
    throw std::invalid_argument("factor matrix has the wrong size");
  std::vector<std::vector<std::uint64_t>> cols(static_cast<std::size_t>(n),
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(m)));
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < m; ++i) cols[c][i] = reduce(factors[static_cast<std::size_t>(c) * m + i], p);

  const SubsetTable& t = chain.grade(n);
  Matrix out;
  out.rows = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  out.cols = t.size();
  out.data.assign(out.rows * out.cols, 0);
  for (int slot = 0; slot < n; ++slot) {
    std::vector<std::vector<std::uint64_t>> rest;
    for (int c = 0; c < n; ++c)
      if (c != slot) rest.push_back(cols[c]);
    const auto w = wedge_mod(rest, p, chain);
    for (std::size_t r = 0; r < t.size(); ++r) {
      const auto members = t.members(r);
      for (int q = 0; q < n; ++q) {
        const std::uint64_t v = w[t.drop(r, q)];
        out.row(static_cast<std::size_t>(slot) * m + members[q])[r] = ((slot + q) & 1) ? (v == 0 ? 0 : p - v) : v;
      }
    }
  }
  return out;
}

} // namespace grasslen::modular
