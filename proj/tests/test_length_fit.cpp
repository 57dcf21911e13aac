#include <doctest.h>

#include "grasslen/decomp_rank.hpp"
#include "grasslen/length_fit.hpp"
#include "support.hpp"

using namespace grasslen;
using testing::random_multivector;

namespace {

Multivector e(int m, std::initializer_list<int> idx) { return Multivector::basis(m, idx); }

} // namespace

TEST_SUITE("length_fit") {

TEST_CASE("random_decomposable and planted_sum") {
  const auto [term, w] = random_decomposable(6, 3, 5);
  CHECK(is_decomposable(w).decomposable);
  CHECK(support_rank(w).rank == 3);
  CHECK(random_decomposable(6, 3, 5).second == w);
  CHECK(relative_distance(term.evaluate(), w) == 0.0);

  CHECK(is_decomposable(planted_sum(6, 3, 1, 3).first).decomposable);
  CHECK(schmidt_length(planted_sum(4, 2, 2, 3).first).length <= 2);
  const auto [psi, terms] = planted_sum(7, 3, 3, 4);
  CHECK(psi.norm() > 0.0);
  CHECK(terms.size() == 3);
  CHECK(relative_distance(sum_terms(7, 3, terms), psi) < 1e-14);
}

TEST_CASE("a decomposable input fits with one term") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Multivector w = random_decomposable(7, 3, 40 + s).second;
    FitOptions o;
    o.seed = s;
    const FitReport r = als_fit(w, 1, o);
    REQUIRE(r.best_residual < 1e-8);
  }
  CHECK(estimate_length(e(4, {1, 2}), 3).length == 1);
}

TEST_CASE("e12 + e34 leaves 1/sqrt(2) with one term") {
  const FitReport r = als_fit(e(4, {1, 2}) + e(4, {3, 4}), 1);
  CHECK(r.best_residual == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  const auto est = estimate_length(e(4, {1, 2}) + e(4, {3, 4}), 3);
  CHECK(est.length == 2);
}

TEST_CASE("objective never increases within a restart") {
  const auto planted = planted_sum(7, 3, 3, 9).first;
  FitOptions o;
  o.record_trace = true;
  o.restarts = 1;
  o.max_sweeps = 60;
  for (int l : {2, 3}) {
    const FitReport r = als_fit(planted, l, o);
    REQUIRE(r.objective_trace.size() > 10);
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
      REQUIRE(r.objective_trace[i] <= r.objective_trace[i - 1] * (1.0 + 1e-12) + 1e-300);
  }
}

TEST_CASE("returned terms reproduce best_residual") {
  const auto planted = planted_sum(6, 3, 2, 10).first;
  FitOptions o;
  o.max_sweeps = 15;
  o.restarts = 3;
  const FitReport r = als_fit(planted, 2, o);
  const double direct = (planted - sum_terms(6, 3, r.terms)).norm() / planted.norm();
  CHECK(std::abs(direct - r.best_residual) <= 1e-12);
  CHECK(r.terms.size() == 2);
}

TEST_CASE("residual is invariant under rotation and scaling") {
  Rng rng(41);
  const Multivector psi = random_multivector(6, 3, rng);
  const Eigen::MatrixXcd u = random_unitary(6, rng);
  FitOptions o;
  o.restarts = 4;
  o.max_sweeps = 40;
  const double base = als_fit(psi, 1, o).best_residual;
  CHECK(als_fit(Scalar{0.0, 7.0} * psi, 1, o).best_residual == doctest::Approx(base).epsilon(1e-10));
  // a rotated target starts from differently placed factors, so compare the converged optima
  o.max_sweeps = 500;
  o.restarts = 10;
  const double a = als_fit(psi, 1, o).best_residual;
  const double b = als_fit(apply_linear(u, psi), 1, o).best_residual;
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
}

TEST_CASE("planted sums are recovered at their length") {
  for (auto [m, n, l] : std::vector<std::tuple<int, int, int>>{{6, 3, 2}, {7, 3, 2}, {8, 4, 2}}) {
    int ok = 0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto psi = planted_sum(m, n, l, 500 + s).first;
      FitOptions o;
      o.seed = s;
      const auto est = estimate_length(psi, l, o);
      ok += est.length && *est.length <= l;
    }
    CHECK(ok >= 4);
  }
}

TEST_CASE("estimate_length agrees with schmidt on 2-vectors") {
  Rng rng(42);
  for (int m = 4; m <= 8; ++m) {
    const Multivector psi = random_multivector(m, 2, rng);
    FitOptions o;
    o.residual_tol = 1e-6;
    const auto est = estimate_length(psi, m / 2, o);
    REQUIRE(est.length);
    CHECK(*est.length == schmidt_length(psi).length);
  }
}

TEST_CASE("border example flags diverging factors") {
  const Multivector w = e(6, {1, 2, 6}) + e(6, {1, 3, 5}) + e(6, {2, 3, 4});
  const FitReport two = als_fit(w, 2);
  CHECK(two.best_residual > 1e-8);
  CHECK(two.diverging);
  const FitReport three = als_fit(w, 3);
  CHECK(three.best_residual < 1e-8);
  CHECK_FALSE(three.diverging);
}

TEST_CASE("parallel restarts choose the same fit") {
  const auto psi = planted_sum(7, 3, 2, 77).first;
  FitOptions o;
  o.restarts = 6;
  o.stop_on_success = false;
  o.max_sweeps = 50;
  o.exec = Exec::Serial;
  const FitReport a = als_fit(psi, 2, o);
  o.exec = Exec::Parallel;
  const FitReport b = als_fit(psi, 2, o);
  CHECK(a.restart_index == b.restart_index);
  CHECK(a.best_residual == b.best_residual);
}

TEST_CASE("option validation and errors") {
  FitOptions o;
  o.restarts = 0;
  CHECK_THROWS(o.validate());
  o = {};
  o.residual_tol = 1.0;
  CHECK_THROWS(o.validate());
  CHECK_THROWS(als_fit(Multivector(4, 2), 1));
  CHECK_THROWS(als_fit(e(4, {1, 2}), 0));
  CHECK_THROWS(estimate_length(e(4, {1, 2}), 0));
}

} // TEST_SUITE
