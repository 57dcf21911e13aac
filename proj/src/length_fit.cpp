#include "grasslen/length_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace grasslen {

namespace {

constexpr double kSlotCutoff = 1e-10;

struct Restart {
  bool finite = true;
  bool diverged = false; // abandoned at the factor-norm cap
  bool still_falling = false;
  double cancel_mid = 0.0; // largest term norm over ||psi|| halfway through the sweep budget
  double cancel_end = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  int sweeps = 0;
  std::vector<Eigen::MatrixXcd> factors;
  std::vector<double> trace;
};

bool all_finite(const Eigen::MatrixXcd& a) { return a.allFinite(); }

// Spread each term's magnitude evenly over its factors.
void balance(std::vector<Eigen::MatrixXcd>& factors) {
  for (auto& f : factors) {
    const Eigen::VectorXd norms = f.colwise().norm().transpose();
    if ((norms.array() <= 0.0).any()) continue;
    const double geo = std::exp(norms.array().log().mean());
    for (Eigen::Index k = 0; k < f.cols(); ++k) f.col(k) *= geo / norms(k);
  }
}

double max_factor_norm(const std::vector<Eigen::MatrixXcd>& factors) {
  double out = 0.0;
  for (const auto& f : factors) out = std::max(out, f.colwise().norm().maxCoeff());
  return out;
}

Restart run_restart(const Eigen::VectorXcd& target, int m, int n, int l, const FitOptions& opts, int index,
                    const SubsetTableChain& chain) {
  const SubsetTable& grade_n = chain.grade(n);
  const auto size = static_cast<Eigen::Index>(grade_n.size());
  const double target_norm = target.norm();
  const double target_sq = target_norm * target_norm;
  const double factor_scale = std::pow(target_norm, 1.0 / n);

  Restart out;
  Rng rng(opts.seed + static_cast<std::uint64_t>(index));

  // random start, each term rescaled to norm ||psi|| / sqrt(l)
  out.factors.resize(static_cast<std::size_t>(l));
  std::vector<Eigen::VectorXcd> term(static_cast<std::size_t>(l));
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(size);
  for (int j = 0; j < l; ++j) {
    auto& f = out.factors[static_cast<std::size_t>(j)];
    f = complex_gaussian(m, n, rng);
    auto w = kernels::wedge_columns(f, chain);
    Eigen::VectorXcd t = Eigen::Map<Eigen::VectorXcd>(w.data(), size);
    const double tn = t.norm();
    if (tn > 0.0) {
      const double s = std::pow(target_norm / std::sqrt(static_cast<double>(l)) / tn, 1.0 / n);
      f *= s;
      t *= std::pow(s, n);
    }
    sum += t;
    term[static_cast<std::size_t>(j)] = std::move(t);
  }

  Eigen::MatrixXcd slot(size, m);
  Eigen::MatrixXcd rest(m, n - 1);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(kSlotCutoff);

  const Eigen::Index unknowns = static_cast<Eigen::Index>(l) * n * m;
  const bool joint = opts.joint_step && unknowns <= opts.joint_max_unknowns;
  double damping = 1e-3;
  Eigen::MatrixXcd jac;
  if (joint) jac.resize(size, unknowns);

  double previous = (target - sum).norm() / target_norm;
  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    for (int j = 0; j < l; ++j) {
      auto& f = out.factors[static_cast<std::size_t>(j)];
      auto& tj = term[static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k) {
        for (int c = 0, q = 0; c < n; ++c)
          if (c != k) rest.col(q++) = f.col(c);
        const auto rw = kernels::wedge_columns(rest, chain);
        kernels::slot_matrix_from_rest(rw, k, grade_n, slot);
        const Eigen::VectorXcd partial = target - (sum - tj);
        const double before = (partial - tj).squaredNorm();
        cod.compute(slot);
        const Eigen::VectorXcd x = cod.solve(partial);
        const Eigen::VectorXcd fresh = slot * x;
        const double after = (partial - fresh).squaredNorm();
        if (!std::isfinite(after) || !all_finite(x)) {
          out.finite = false;
          return out;
        }
        if (after <= before) {
          f.col(k) = x;
          sum += fresh - tj;
          tj = fresh;
        }
        if (opts.record_trace) out.trace.push_back(std::min(after, before) / target_sq);
      }
    }
    if (joint) {
      // Levenberg-Marquardt step on all factors at once, kept only if it helps
      for (int j = 0; j < l; ++j) {
        const auto& f = out.factors[static_cast<std::size_t>(j)];
        for (int k = 0; k < n; ++k) {
          for (int c = 0, q = 0; c < n; ++c)
            if (c != k) rest.col(q++) = f.col(c);
          kernels::slot_matrix_from_rest(kernels::wedge_columns(rest, chain), k, grade_n, slot);
          jac.middleCols((static_cast<Eigen::Index>(j) * n + k) * m, m) = slot;
        }
      }
      const Eigen::VectorXcd resid = target - sum;
      const double current = resid.squaredNorm();
      Eigen::MatrixXcd normal = jac.adjoint() * jac;
      const double scale = normal.diagonal().real().maxCoeff();
      normal.diagonal().array() += damping * scale;
      const Eigen::VectorXcd step = normal.ldlt().solve(jac.adjoint() * resid);
      std::vector<Eigen::MatrixXcd> trial = out.factors;
      std::vector<Eigen::VectorXcd> trial_term(static_cast<std::size_t>(l));
      Eigen::VectorXcd trial_sum = Eigen::VectorXcd::Zero(size);
      for (int j = 0; j < l; ++j) {
        auto& f = trial[static_cast<std::size_t>(j)];
        for (int k = 0; k < n; ++k) f.col(k) += step.segment((static_cast<Eigen::Index>(j) * n + k) * m, m);
        auto w = kernels::wedge_columns(f, chain);
        trial_term[static_cast<std::size_t>(j)] = Eigen::Map<Eigen::VectorXcd>(w.data(), size);
        trial_sum += trial_term[static_cast<std::size_t>(j)];
      }
      const double after = (target - trial_sum).squaredNorm();
      if (std::isfinite(after) && step.allFinite() && after < current) {
        out.factors = std::move(trial);
        term = std::move(trial_term);
        damping = std::max(damping / 3.0, 1e-12);
        if (opts.record_trace) out.trace.push_back(after / target_sq);
      } else {
        damping = std::min(damping * 4.0, 1e6);
      }
    }
    balance(out.factors);
    sum.setZero();
    for (const auto& t : term) sum += t;
    const double rel = (target - sum).norm() / target_norm;
    double cancel = 0.0;
    for (const auto& t : term) cancel = std::max(cancel, t.norm() / target_norm);
    if (sweep == (opts.max_sweeps + 1) / 2) out.cancel_mid = cancel;
    out.cancel_end = cancel;
    out.sweeps = sweep;
    out.residual = rel;
    if (!std::isfinite(rel)) {
      out.finite = false;
      return out;
    }
    if (rel <= opts.residual_tol) return out;
    if (max_factor_norm(out.factors) > opts.divergence_factor * factor_scale) {
      out.diverged = true;
      return out;
    }
    const bool stalled = previous - rel <= opts.stall_tol * previous;
    previous = rel;
    if (stalled) return out;
  }
  out.still_falling = true;
  return out;
}

} // namespace

void FitOptions::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
  if (!(residual_tol > 0.0 && residual_tol < 1.0)) throw std::invalid_argument("residual_tol must lie in (0, 1)");
  if (!(stall_tol > 0.0)) throw std::invalid_argument("stall_tol must be positive");
  if (!(divergence_factor > 1.0) || !(growth_factor > 1.0))
    throw std::invalid_argument("divergence thresholds must exceed 1");
}

FitReport als_fit(const Multivector& psi, int l, const FitOptions& opts) {
  opts.validate();
  if (l < 1) throw std::invalid_argument("trial length must be >= 1");
  if (psi.is_zero()) throw std::domain_error("cannot fit the zero multivector");
  const int m = psi.m(), n = psi.n();
  if (n < 1) throw std::invalid_argument("fitting needs grade >= 1");

  const SubsetTableChain chain(m, n);
  const Eigen::VectorXcd target = psi.vec();

  std::vector<Restart> results(static_cast<std::size_t>(opts.restarts));
  std::vector<bool> ran(results.size(), false);
  int batch = 1;
#ifdef _OPENMP
  if (opts.exec == Exec::Parallel) batch = std::max(1, omp_get_max_threads());
#endif
  int chosen = -1;
  for (int start = 0; start < opts.restarts && chosen < 0; start += batch) {
    const int stop = std::min(opts.restarts, start + batch);
    if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (int i = start; i < stop; ++i) results[i] = run_restart(target, m, n, l, opts, i, chain);
    } else {
      for (int i = start; i < stop; ++i) results[i] = run_restart(target, m, n, l, opts, i, chain);
    }
    for (int i = start; i < stop; ++i) ran[i] = true;
    if (opts.stop_on_success)
      for (int i = start; i < stop; ++i)
        if (results[i].finite && results[i].residual <= opts.residual_tol) {
          chosen = i;
          break;
        }
  }

  FitReport rep;
  rep.l = l;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!ran[i]) continue;
    ++rep.restarts_run;
    if (!results[i].finite) {
      ++rep.discarded_restarts;
      continue;
    }
    if (chosen < 0 && (rep.restart_index < 0 || results[i].residual < results[rep.restart_index].residual))
      rep.restart_index = static_cast<int>(i);
  }
  if (chosen >= 0) rep.restart_index = chosen;
  if (rep.restart_index < 0) throw std::runtime_error("every restart produced non-finite values");

  Restart& best = results[static_cast<std::size_t>(rep.restart_index)];
  rep.sweeps_used = best.sweeps;
  rep.objective_trace = std::move(best.trace);
  for (auto& f : best.factors) rep.terms.push_back(DecompTerm{std::move(f)});

  // Residual and term sizes recomputed from the returned terms.
  const Multivector fit = sum_terms(m, n, rep.terms);
  const double psi_norm = psi.norm();
  rep.best_residual = (psi - fit).norm() / psi_norm;
  for (const auto& t : rep.terms) {
    rep.cancellation_ratio = std::max(rep.cancellation_ratio, t.evaluate().norm() / psi_norm);
    rep.factor_norm_ratio =
        std::max(rep.factor_norm_ratio, t.factors.colwise().norm().maxCoeff() / std::pow(psi_norm, 1.0 / n));
  }
  rep.diverging = best.diverged ||
                  (best.still_falling && rep.best_residual > opts.residual_tol && best.cancel_end > 1.0 &&
                   best.cancel_end > opts.growth_factor * best.cancel_mid);
  return rep;
}

LengthEstimate estimate_length(const Multivector& psi, int l_max, const FitOptions& opts) {
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  LengthEstimate out;
  for (int l = 1; l <= l_max; ++l) {
    FitReport rep = als_fit(psi, l, opts);
    const bool hit = rep.best_residual <= opts.residual_tol;
    out.diverging = out.diverging || rep.diverging;
    out.reports.push_back(std::move(rep));
    if (hit) {
      out.length = l;
      break;
    }
  }
  return out;
}

std::pair<DecompTerm, Multivector> random_decomposable(int m, int n, std::uint64_t seed) {
  if (n < 1 || n > m) throw std::invalid_argument("need 1 <= n <= m");
  Rng rng(seed);
  for (;;) {
    DecompTerm t{complex_gaussian(m, n, rng)};
    Multivector w = t.evaluate();
    if (w.norm() > 1e-12) return {std::move(t), std::move(w)};
  }
}

std::pair<Multivector, std::vector<DecompTerm>> planted_sum(int m, int n, int l, std::uint64_t seed) {
  if (l < 1) throw std::invalid_argument("need at least one term");
  std::vector<DecompTerm> terms;
  for (int j = 0; j < l; ++j)
    terms.push_back(random_decomposable(m, n, derive_seed(seed, static_cast<std::uint64_t>(j))).first);
  Multivector psi = sum_terms(m, n, terms);
  return {std::move(psi), std::move(terms)};
}

} // namespace grasslen
