#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grasslen/decomp_rank.hpp"
#include "grasslen/kernels.hpp"
#include "grasslen/multivector.hpp"
#include "grasslen/random.hpp"

namespace grasslen {

struct FitOptions {
  int restarts = 20;
  int max_sweeps = 500;
  /// Target relative residual ||psi - sum|| / ||psi||.
  double residual_tol = 1e-8;
  /// A sweep improving the relative residual by less than this fraction ends
  /// the restart.
  double stall_tol = 1e-10;
  std::uint64_t seed = 20240611;
  Exec exec = Exec::Serial;
  /// Restarts stop once one reaches residual_tol; the lowest such index wins.
  bool stop_on_success = true;
  /// A restart is abandoned as diverging when a balanced factor norm exceeds
  /// this multiple of ||psi||^(1/n).
  double divergence_factor = 1e6;
  /// A restart that is still improving at max_sweeps, whose terms outgrow
  /// ||psi|| and grew by this factor over the second half of the sweeps, is
  /// reported as a diverging (border) fit.
  double growth_factor = 1.05;
  /// After every sweep, try one damped Gauss-Newton step on all factors
  /// jointly; it is kept only when it lowers the objective. Skipped when
  /// l*n*m exceeds joint_max_unknowns.
  bool joint_step = true;
  int joint_max_unknowns = 1500;
  /// Record the objective after every slot update of the returned restart.
  bool record_trace = false;

  void validate() const;
};

struct FitReport {
  int l = 0;
  double best_residual = 0.0;
  std::vector<DecompTerm> terms;
  int sweeps_used = 0;
  int restart_index = -1;
  int restarts_run = 0;
  int discarded_restarts = 0;
  /// Largest ||term_j|| / ||psi|| at the end of the returned restart.
  double cancellation_ratio = 0.0;
  /// Largest balanced factor norm over ||psi||^(1/n).
  double factor_norm_ratio = 0.0;
  /// Residual still falling while the terms grow: likely a border fit whose
  /// limit has no exact length-l decomposition.
  bool diverging = false;
  std::vector<double> objective_trace;
};

/// Fits psi by a sum of l decomposable terms with alternating least squares:
/// every slot update solves the exact linear least-squares problem for one
/// factor with all others frozen.
FitReport als_fit(const Multivector& psi, int l, const FitOptions& opts = {});

struct LengthEstimate {
  /// Smallest l <= l_max whose fit met residual_tol; empty if none did.
  std::optional<int> length;
  std::vector<FitReport> reports;
  bool diverging = false;
};

/// Numerical length at tolerance opts.residual_tol. An upper-bound estimate:
/// local minima may overestimate it.
LengthEstimate estimate_length(const Multivector& psi, int l_max, const FitOptions& opts = {});

/// n i.i.d. complex Gaussian factors and their wedge.
std::pair<DecompTerm, Multivector> random_decomposable(int m, int n, std::uint64_t seed);

/// Sum of l independent random decomposables and the ground-truth terms.
std::pair<Multivector, std::vector<DecompTerm>> planted_sum(int m, int n, int l, std::uint64_t seed);

} // namespace grasslen
