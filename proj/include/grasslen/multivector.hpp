#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "grasslen/subset.hpp"

namespace grasslen {

using Scalar = std::complex<double>;

/// An element of C^m. Entry i is the coefficient on the i-th basis vector.
using VectorM = Eigen::VectorXcd;

/// Coefficient field a multivector is declared over. Real means every
/// imaginary part is exactly zero.
enum class Field { Complex, Real };

/// Dense element of the n-th exterior power of C^m, coefficients indexed by
/// the lexicographic ordinal of sorted n-subsets of {1..m}.
class Multivector {
public:
  /// Zero multivector.
  Multivector(int m, int n, Field field = Field::Complex);
  Multivector(int m, int n, std::vector<Scalar> coeffs, Field field = Field::Complex);

  /// e_{i1} ^ ... ^ e_{in} for 1-based sorted indices.
  static Multivector basis(int m, std::initializer_list<int> indices);
  static Multivector basis(const SubsetIndex& s);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  Field field() const noexcept { return field_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
  Scalar operator[](Ordinal r) const { return coeffs_[static_cast<std::size_t>(r)]; }
  Scalar at(const SubsetIndex& s) const;

  /// Coefficients as an Eigen column vector (read-only view).
  Eigen::Map<const Eigen::VectorXcd> vec() const noexcept {
    return {coeffs_.data(), static_cast<Eigen::Index>(coeffs_.size())};
  }

  double norm() const noexcept;
  double squared_norm() const noexcept;
  bool is_zero() const noexcept;

  /// Same coefficients retagged; throws if retagging as Real with nonzero
  /// imaginary parts.
  Multivector with_field(Field field) const;

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator-() const;
  friend Multivector operator*(Scalar c, const Multivector& a);
  friend Multivector operator*(const Multivector& a, Scalar c) { return c * a; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

private:
  void check_compatible(const Multivector& o) const;

  int m_;
  int n_;
  Field field_;
  std::vector<Scalar> coeffs_;
};

/// Field of a combination: Real only if every input is Real.
inline Field join(Field a, Field b) noexcept {
  return (a == Field::Real && b == Field::Real) ? Field::Real : Field::Complex;
}

/// phi_1 ^ ... ^ phi_k for the columns of `factors` (m x k).
Multivector wedge_vectors(const Eigen::MatrixXcd& factors);
Multivector wedge_vectors(std::span<const VectorM> vs);

/// Exterior product of a grade-p and a grade-q multivector.
Multivector wedge(const Multivector& a, const Multivector& b);

/// Interior product with the j-th dual basis covector (1-based j).
Multivector contract(const Multivector& psi, int j);

/// Complement map onto grade m-n: coefficient on I^c is sign(I, I^c) times
/// the coefficient on I. No complex conjugation is applied.
Multivector hodge_dual(const Multivector& psi);

/// Induced action of a linear map A (m x m) on the n-th exterior power.
Multivector apply_linear(const Eigen::MatrixXcd& a, const Multivector& psi);

/// Largest relative coefficient difference ||a - b|| / max(||a||, ||b||, tiny).
double relative_distance(const Multivector& a, const Multivector& b);

} // namespace grasslen
