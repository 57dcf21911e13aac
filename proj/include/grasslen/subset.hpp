#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace grasslen {

/// Largest ambient dimension supported. Subsets are carried as 64-bit masks.
inline constexpr int kMaxDim = 64;

using Ordinal = std::uint64_t;
using Mask = std::uint64_t;

/// Exact binomial coefficient C(m, k). Throws std::overflow_error if the
/// value does not fit in 64 bits; returns 0 for k < 0 or k > m.
Ordinal binomial(int m, int k);

/// Binomial for table lookups where both arguments are known to lie in
/// [0, kMaxDim]. No overflow check beyond what binomial() performs.
Ordinal binomial_small(int m, int k) noexcept;

/// A strictly increasing list of 1-based members drawn from {1..m}.
class SubsetIndex {
public:
  SubsetIndex(int m, std::vector<int> members);

  int m() const noexcept { return m_; }
  int n() const noexcept { return static_cast<int>(members_.size()); }
  std::span<const int> members() const noexcept { return members_; }
  Mask mask() const noexcept;

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;

private:
  int m_;
  std::vector<int> members_;
};

/// Lexicographic ordinal of s among all n-subsets of {1..m}, 0-based.
Ordinal subset_rank(const SubsetIndex& s);

/// Inverse of subset_rank. Throws std::out_of_range for ordinal >= C(m,n).
SubsetIndex subset_unrank(int m, int n, Ordinal ordinal);

// Mask helpers. Bit b of a mask stands for member b+1.

/// Lexicographic ordinal of the n-subset encoded by `mask`.
Ordinal mask_rank(int m, Mask mask) noexcept;

/// Mask of the n-subset with the given lexicographic ordinal.
Mask mask_unrank(int m, int n, Ordinal ordinal) noexcept;

/// Sign of the shuffle that sorts the concatenation (a, b) of two disjoint
/// sorted subsets: (-1)^#{(i, j) : i in a, j in b, i > j}.
int shuffle_sign(Mask a, Mask b) noexcept;

inline int popcount(Mask x) noexcept { return __builtin_popcountll(x); }

/// Number of members of `mask` strictly below the 0-based bit `bit`.
inline int count_below(Mask mask, int bit) noexcept {
  return popcount(mask & ((Mask{1} << bit) - 1));
}

/// Precomputed lexicographic enumeration of all n-subsets of {1..m}:
/// the sorted members of each ordinal and, for each member position, the
/// ordinal of the (n-1)-subset left after removing it.
class SubsetTable {
public:
  SubsetTable(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }

  /// 0-based members of ordinal `r`, ascending.
  std::span<const std::uint8_t> members(std::size_t r) const noexcept {
    return {members_.data() + r * static_cast<std::size_t>(n_),
            static_cast<std::size_t>(n_)};
  }
  /// Ordinal (in the (n-1)-subset order) of members(r) without position p.
  std::uint32_t drop(std::size_t r, int p) const noexcept {
    return drop_[r * static_cast<std::size_t>(n_) + static_cast<std::size_t>(p)];
  }
  Mask mask(std::size_t r) const noexcept { return masks_[r]; }

private:
  int m_;
  int n_;
  std::size_t size_;
  std::vector<std::uint8_t> members_;
  std::vector<std::uint32_t> drop_;
  std::vector<Mask> masks_;
};

/// Subset tables for every grade 0..max_grade of one ambient dimension.
class SubsetTableChain {
public:
  SubsetTableChain(int m, int max_grade);

  int m() const noexcept { return m_; }
  int max_grade() const noexcept { return static_cast<int>(tables_.size()) - 1; }
  const SubsetTable& grade(int k) const { return tables_.at(static_cast<std::size_t>(k)); }

private:
  int m_;
  std::vector<SubsetTable> tables_;
};

} // namespace grasslen
