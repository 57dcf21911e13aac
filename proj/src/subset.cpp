#include "grasslen/subset.hpp"

#include <array>
#include <limits>
#include <stdexcept>
#include <string>

namespace grasslen {

namespace {

using PascalTable = std::array<std::array<Ordinal, kMaxDim + 1>, kMaxDim + 1>;

// Every C(m, k) with m <= 64 fits in 64 bits (C(64,32) ~ 1.8e18).
constexpr PascalTable make_pascal() {
  PascalTable t{};
  for (int m = 0; m <= kMaxDim; ++m) {
    t[m][0] = 1;
    for (int k = 1; k <= m; ++k) t[m][k] = t[m - 1][k - 1] + (k <= m - 1 ? t[m - 1][k] : 0);
  }
  return t;
}

constexpr PascalTable kPascal = make_pascal();

} // namespace

Ordinal binomial(int m, int k) {
  if (m < 0 || k < 0 || k > m) return 0;
  if (m <= kMaxDim) return kPascal[m][k];
  if (k > m - k) k = m - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    // acc * (m - k + i) / i is exact at every step: acc = C(m-k+i-1, i-1).
    acc = acc * static_cast<unsigned>(m - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<Ordinal>::max())
      throw std::overflow_error("binomial C(" + std::to_string(m) + "," +
                                std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<Ordinal>(acc);
}

Ordinal binomial_small(int m, int k) noexcept {
  if (m < 0 || k < 0 || k > m) return 0;
  return kPascal[m][k];
}

SubsetIndex::SubsetIndex(int m, std::vector<int> members) : m_(m), members_(std::move(members)) {
  if (m < 0 || m > kMaxDim) throw std::invalid_argument("ambient dimension out of range");
  int prev = 0;
  for (int v : members_) {
    if (v < 1 || v > m) throw std::invalid_argument("subset member out of range");
    if (v <= prev) throw std::invalid_argument("subset members must be strictly increasing");
    prev = v;
  }
}

Mask SubsetIndex::mask() const noexcept {
  Mask out = 0;
  for (int v : members_) out |= Mask{1} << (v - 1);
  return out;
}

Ordinal mask_rank(int m, Mask mask) noexcept {
  const int n = popcount(mask);
  Ordinal r = 0;
  int next_free = 0; // smallest value the i-th member may take
  for (int i = 0; mask != 0; ++i) {
    const int c = __builtin_ctzll(mask);
    mask &= mask - 1;
    // Subsets agreeing on the first i members but with a smaller i-th member.
    r += binomial_small(m - next_free, n - i) - binomial_small(m - c, n - i);
    next_free = c + 1;
  }
  return r;
}

Mask mask_unrank(int m, int n, Ordinal ordinal) noexcept {
  Mask out = 0;
  int v = 0;
  for (int i = 0; i < n; ++i) {
    for (;; ++v) {
      const Ordinal block = binomial_small(m - 1 - v, n - 1 - i);
      if (ordinal < block) break;
      ordinal -= block;
    }
    out |= Mask{1} << v;
    ++v;
  }
  return out;
}

Ordinal subset_rank(const SubsetIndex& s) { return mask_rank(s.m(), s.mask()); }

SubsetIndex subset_unrank(int m, int n, Ordinal ordinal) {
  if (n < 0 || n > m || m > kMaxDim) throw std::invalid_argument("invalid (m, n)");
  if (ordinal >= binomial(m, n)) throw std::out_of_range("subset ordinal out of range");
  Mask mask = mask_unrank(m, n, ordinal);
  std::vector<int> members;
  members.reserve(static_cast<std::size_t>(n));
  while (mask) {
    members.push_back(__builtin_ctzll(mask) + 1);
    mask &= mask - 1;
  }
  return SubsetIndex(m, std::move(members));
}

int shuffle_sign(Mask a, Mask b) noexcept {
  int inversions = 0;
  while (b) {
    const int j = __builtin_ctzll(b);
    b &= b - 1;
    // members of a above j
    inversions += popcount(j == 63 ? 0 : (a >> (j + 1)));
  }
  return (inversions & 1) ? -1 : 1;
}

SubsetTable::SubsetTable(int m, int n) : m_(m), n_(n) {
  if (m < 0 || m > kMaxDim || n < 0 || n > m) throw std::invalid_argument("invalid (m, n)");
  const Ordinal count = binomial(m, n);
  if (count > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("subset table too large");
  size_ = static_cast<std::size_t>(count);
  members_.resize(size_ * static_cast<std::size_t>(n));
  drop_.resize(size_ * static_cast<std::size_t>(n));
  masks_.resize(size_);

  std::vector<int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = i;
  for (std::size_t r = 0; r < size_; ++r) {
    Mask mask = 0;
    for (int i = 0; i < n; ++i) {
      members_[r * n + i] = static_cast<std::uint8_t>(c[i]);
      mask |= Mask{1} << c[i];
    }
    masks_[r] = mask;
    for (int i = 0; i < n; ++i)
      drop_[r * n + i] = static_cast<std::uint32_t>(mask_rank(m, mask & ~(Mask{1} << c[i])));
    // advance to the next combination in lexicographic order
    int i = n - 1;
    while (i >= 0 && c[i] == m - n + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
  }
}

SubsetTableChain::SubsetTableChain(int m, int max_grade) : m_(m) {
  if (max_grade < 0 || max_grade > m) throw std::invalid_argument("invalid grade range");
  tables_.reserve(static_cast<std::size_t>(max_grade) + 1);
  for (int k = 0; k <= max_grade; ++k) tables_.emplace_back(m, k);
}

} // namespace grasslen
