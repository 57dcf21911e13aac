#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace grasslen {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// splitmix64 finaliser; used to derive independent per-cell seeds.
inline std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) noexcept {
  return mix_seed(mix_seed(mix_seed(base ^ mix_seed(a)) ^ b) ^ c);
}

/// Matrix with i.i.d. standard complex Gaussian entries, (x + iy)/sqrt(2).
inline Eigen::MatrixXcd complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr double scale = 0.70710678118654752440;
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = {scale * re, scale * im};
    }
  return out;
}

/// Random unitary matrix (QR of a complex Gaussian matrix, phases fixed).
Eigen::MatrixXcd random_unitary(int m, Rng& rng);

} // namespace grasslen
