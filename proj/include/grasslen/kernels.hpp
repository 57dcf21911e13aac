#pragma once

// Inner loops shared by the modules. Where a kernel is data-parallel it
// comes in two flavours: `serial` is the reference implementation that the
// tests compare against, `omp` distributes the outer loop with OpenMP.
// Both produce bit-identical results: partial sums are stored per outer
// index and reduced in a fixed order.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "grasslen/multivector.hpp"
#include "grasslen/subset.hpp"

namespace grasslen {

enum class Exec { Serial, Parallel };

namespace kernels {

/// Coefficients of the wedge of the columns of `factors` (m x k), built one
/// factor at a time. `chain` must cover grades 0..k of the same m.
std::vector<Scalar> wedge_columns(const Eigen::MatrixXcd& factors, const SubsetTableChain& chain);

/// Matrix (C(m,n) x m) of the linear map v -> phi_1 ^ .. ^ v ^ .. ^ phi_n
/// with v substituted at 0-based `slot`. `factors` is m x n.
Eigen::MatrixXcd slot_matrix(const Eigen::MatrixXcd& factors, int slot, const SubsetTableChain& chain);

/// Same map, given the precomputed wedge of the other n-1 factors.
void slot_matrix_from_rest(std::span<const Scalar> rest_wedge, int slot, const SubsetTable& grade_n,
                           Eigen::Ref<Eigen::MatrixXcd> out);

/// n(m-n)+1 generators of the affine tangent space of the Grassmann cone at
/// the point spanned by `factors`: the point itself, followed by every slot
/// substitution by the standard basis vectors outside a pivot row set.
/// Writes into `out` (C(m,n) x (n(m-n)+1)).
void tangent_generators(const Eigen::MatrixXcd& factors, const SubsetTableChain& chain,
                        Eigen::Ref<Eigen::MatrixXcd> out);

/// Sum of squared magnitudes of all Pluecker quadrics of a grade-n
/// coefficient vector, enumerating every (n-1)-subset I and (n+1)-subset J.
namespace serial {
double plucker_residual(int m, int n, std::span<const Scalar> coeffs);
Eigen::MatrixXcd terracini_matrix(std::span<const Eigen::MatrixXcd> points, const SubsetTableChain& chain);
} // namespace serial

namespace omp {
double plucker_residual(int m, int n, std::span<const Scalar> coeffs);
Eigen::MatrixXcd terracini_matrix(std::span<const Eigen::MatrixXcd> points, const SubsetTableChain& chain);
} // namespace omp

inline double plucker_residual(int m, int n, std::span<const Scalar> coeffs, Exec exec) {
  return exec == Exec::Parallel ? omp::plucker_residual(m, n, coeffs)
                                : serial::plucker_residual(m, n, coeffs);
}

/// Stacked tangent generators of every point, columns scaled to unit norm.
inline Eigen::MatrixXcd terracini_matrix(std::span<const Eigen::MatrixXcd> points,
                                         const SubsetTableChain& chain, Exec exec) {
  return exec == Exec::Parallel ? omp::terracini_matrix(points, chain)
                                : serial::terracini_matrix(points, chain);
}

} // namespace kernels
} // namespace grasslen
