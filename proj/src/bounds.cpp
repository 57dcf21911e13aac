#include "grasslen/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace grasslen {

namespace {

void check_range(int m, int n) {
  if (m < 1 || n < 0 || n > m) throw std::invalid_argument("bounds need 0 <= n <= m and m >= 1");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

} // namespace

int reduced_grade(int m, int n) {
  check_range(m, n);
  return std::min(n, m - n);
}

Fraction lower_bound_new_fraction(int m, int n) {
  check_range(m, n);
  return {binomial(m, n), static_cast<Ordinal>(n) * static_cast<Ordinal>(m - n) + 1};
}

BoundValue lower_bound_new(int m, int n) {
  check_range(m, n);
  if (n == 0 || n == m) return {1, true};
  const Fraction f = lower_bound_new_fraction(m, n);
  return {(f.numerator + f.denominator - 1) / f.denominator, false};
}

BoundValue lower_bound_old(int m, int n) {
  const int k = reduced_grade(m, n);
  if (k == 0) return {1, true};
  if (k == 1) return {1, false};
  return {static_cast<std::uint64_t>((m - k + 2) / 2), false};
}

double upper_bound_order(int m, int n) {
  const int k = reduced_grade(m, n);
  if (k == 0) throw std::invalid_argument("upper bound order undefined for n = 0 or n = m");
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return std::pow(static_cast<double>(m), k - 1) / (2.0 * factorial);
}

std::string to_string(FieldScope scope) {
  return scope == FieldScope::Complex ? "C" : "any-char-0";
}

std::optional<ExactValue> exact_value(int m, int n) {
  const int k = reduced_grade(m, n);
  if (k == 0) return ExactValue{1, FieldScope::AnyCharZero, "degenerate (n=0 or n=m)"};
  if (k == 1) return ExactValue{1, FieldScope::AnyCharZero, "trivial (n=1)"};
  if (k == 2) return ExactValue{static_cast<std::uint64_t>(m / 2), FieldScope::AnyCharZero,
                                "Schmidt decomposition"};
  if (k == 3) {
    if (m == 6) return ExactValue{3, FieldScope::AnyCharZero, "Glassco"};
    if (m == 7) return ExactValue{4, FieldScope::Complex, "Westwick"};
    if (m == 8) return ExactValue{5, FieldScope::Complex, "Westwick"};
  }
  return std::nullopt;
}

std::vector<BoundsRecord> bounds_table(int m_min, int m_max, std::vector<int> n_set) {
  if (m_min < 1 || m_max < m_min) throw std::invalid_argument("empty or invalid m range");
  if (n_set.empty()) throw std::invalid_argument("empty n set");
  std::sort(n_set.begin(), n_set.end());
  n_set.erase(std::unique(n_set.begin(), n_set.end()), n_set.end());
  if (n_set.front() < 0) throw std::invalid_argument("negative grade");

  std::vector<BoundsRecord> out;
  for (int m = m_min; m <= m_max; ++m) {
    for (int n : n_set) {
      BoundsRecord r;
      r.m = m;
      r.n = n;
      if (n > m) {
        r.empty_space = true;
        out.push_back(r);
        continue;
      }
      const BoundValue lo = lower_bound_old(m, n);
      const BoundValue hi = lower_bound_new(m, n);
      r.degenerate = hi.degenerate;
      r.lower_old = lo.value;
      r.lower_new = hi.value;
      if (!r.degenerate) r.upper_order = upper_bound_order(m, n);
      r.exact = exact_value(m, n);
      out.push_back(r);
    }
  }
  return out;
}

std::string bounds_csv(const std::vector<BoundsRecord>& records) {
  std::ostringstream os;
  os << "m,n,lower_old,lower_new,upper_order,exact,exact_field,source\n";
  for (const auto& r : records) {
    os << r.m << ',' << r.n << ',';
    if (r.empty_space) {
      os << ",,,,,empty space (n>m)\n";
      continue;
    }
    os << r.lower_old << ',' << r.lower_new << ',';
    if (r.upper_order) os << format_double(*r.upper_order);
    os << ',';
    if (r.exact) os << r.exact->value << ',' << to_string(r.exact->scope) << ',' << r.exact->source;
    else os << ",,";
    os << '\n';
  }
  return os.str();
}

std::string bounds_plot_data(const std::vector<BoundsRecord>& records) {
  std::map<int, std::vector<const BoundsRecord*>> series;
  for (const auto& r : records)
    if (!r.empty_space) series[r.n].push_back(&r);
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, rows] : series) {
    if (!first) os << '\n';
    first = false;
    os << "# n=" << n << '\n' << "m,lower_old,lower_new,exact\n";
    for (const auto* r : rows) {
      os << r->m << ',' << r->lower_old << ',' << r->lower_new << ',';
      if (r->exact) os << r->exact->value;
      os << '\n';
    }
  }
  return os.str();
}

} // namespace grasslen
