#pragma once

#include <cstdint>
#include <vector>

#include "grasslen/multivector.hpp"
#include "grasslen/random.hpp"

namespace testing {

inline grasslen::Multivector random_multivector(int m, int n, grasslen::Rng& rng) {
  const auto size = static_cast<Eigen::Index>(grasslen::binomial(m, n));
  const Eigen::MatrixXcd c = grasslen::complex_gaussian(size, 1, rng);
  return grasslen::Multivector(m, n, std::vector<grasslen::Scalar>(c.data(), c.data() + size));
}

inline grasslen::Multivector unit(const grasslen::Multivector& psi) { return (1.0 / psi.norm()) * psi; }

// All sorted k-subsets of {1..m} in lexicographic order, by the textbook
// successor rule.
inline std::vector<std::vector<int>> lex_subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == m - k + i + 1) --i;
    if (i < 0) return out;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

} // namespace testing
