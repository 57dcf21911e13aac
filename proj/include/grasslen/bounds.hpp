#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grasslen/subset.hpp"

namespace grasslen {

/// Duality reduction n -> min(n, m - n).
int reduced_grade(int m, int n);

struct BoundValue {
  std::uint64_t value = 1;
  /// n = 0 or n = m: every nonzero element is a scalar multiple of one
  /// decomposable, so the length is trivially 1.
  bool degenerate = false;
};

/// Dimension-count lower bound ceil(C(m,n) / (n(m-n)+1)) on the maximal
/// length over C (and a fortiori over R).
BoundValue lower_bound_new(int m, int n);

/// The same bound as an exact fraction, numerator / denominator.
struct Fraction {
  Ordinal numerator;
  Ordinal denominator;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};
Fraction lower_bound_new_fraction(int m, int n);

/// Classical lower bound floor((m-n+2)/2) after duality reduction. For a
/// reduced grade of 1 the formula overshoots the trivial exact value, so 1
/// is returned there.
BoundValue lower_bound_old(int m, int n);

/// Order term m^(n-1) / (2 n!) of the known upper bound, after duality
/// reduction. Asymptotic order only, not a certified bound.
double upper_bound_order(int m, int n);

enum class FieldScope { AnyCharZero, Complex };
std::string to_string(FieldScope scope);

struct ExactValue {
  std::uint64_t value;
  FieldScope scope;
  std::string source;
};

/// Known exact maximal lengths, after duality reduction.
std::optional<ExactValue> exact_value(int m, int n);

struct BoundsRecord {
  int m = 0;
  int n = 0;
  /// n > m: the exterior power is the zero space and no bound is defined.
  bool empty_space = false;
  bool degenerate = false;
  std::uint64_t lower_old = 0;
  std::uint64_t lower_new = 0;
  std::optional<double> upper_order;
  std::optional<ExactValue> exact;
};

/// One record per (m, n) for m in [m_min, m_max] and n in n_set, ordered by
/// m then n ascending.
std::vector<BoundsRecord> bounds_table(int m_min, int m_max, std::vector<int> n_set);

/// CSV with header m,n,lower_old,lower_new,upper_order,exact,exact_field,source.
std::string bounds_csv(const std::vector<BoundsRecord>& records);

/// Plot-ready series: one block per n, each headed "# n=<n>" and holding the
/// columns m,lower_old,lower_new,exact. Blocks separated by a blank line.
std::string bounds_plot_data(const std::vector<BoundsRecord>& records);

} // namespace grasslen
