#pragma once

#include <cstdint>
#include <vector>

#include "grasslen/kernels.hpp"
#include "grasslen/random.hpp"

namespace grasslen::modular {

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t x) noexcept;

/// Uniformly drawn prime in [2^(bits-1), 2^bits), bits <= 63.
std::uint64_t random_prime(Rng& rng, int bits = 62);

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) noexcept;
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) noexcept { return pow_mod(a, p - 2, p); }
inline std::uint64_t reduce(std::int64_t x, std::uint64_t p) noexcept {
  const std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

/// Dense row-major matrix over Z/p.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> data;

  std::uint64_t* row(std::size_t r) { return data.data() + r * cols; }
};

/// Exact rank over Z/p by Gaussian elimination. Destroys `a`.
std::size_t rank(Matrix& a, std::uint64_t p, Exec exec = Exec::Serial);

/// Every substitution generator phi_1 ^ .. ^ e_v ^ .. ^ phi_n (slot-major,
/// n*m rows of C(m,n) entries each) of the integer point `factors`
/// (column-major m x n), reduced mod p.
Matrix tangent_rows(const std::vector<std::int64_t>& factors, int m, int n, std::uint64_t p,
                    const SubsetTableChain& chain);

} // namespace grasslen::modular
