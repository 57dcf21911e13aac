#include <doctest.h>

#include "grasslen/bounds.hpp"
#include "grasslen/errors.hpp"
#include "grasslen/numeric_rank.hpp"
#include "grasslen/secant.hpp"

using namespace grasslen;

namespace {

int span_dim(const std::vector<Multivector>& vs) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(vs.front().size()), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) a.col(static_cast<Eigen::Index>(i)) = vs[i].vec();
  return numeric_rank_svd(a).rank;
}

// Rank <= 2l skew m x m matrices: affine dimension C(m,2) - C(m-2l,2).
int skew_oracle(int m, int l) {
  const int rest = std::max(0, m - 2 * l);
  return m * (m - 1) / 2 - rest * (rest - 1) / 2 - 1;
}

} // namespace

TEST_SUITE("secant") {

TEST_CASE("tangent cone basis spans n(m-n)+1 and contains the point") {
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(6, 3);
  const GrassmannPoint p(f);
  auto vs = tangent_cone_basis(p);
  CHECK(vs.size() == 18);
  CHECK(span_dim(vs) == 10);
  vs.push_back(wedge_vectors(f));
  CHECK(span_dim(vs) == 10);
  CHECK(span_dim(tangent_cone_basis(GrassmannPoint(Eigen::MatrixXcd::Identity(4, 2)))) == 5);

  Rng rng(31);
  for (int m = 2; m <= 8; ++m)
    for (int n = 1; n <= m; ++n) CHECK(span_dim(tangent_cone_basis(GrassmannPoint::random(m, n, rng))) == n * (m - n) + 1);
}

TEST_CASE("dependent factors are rejected") {
  Eigen::MatrixXcd f(4, 2);
  f << 1, 2, 1, 2, 0, 0, 3, 6;
  CHECK_THROWS_AS(GrassmannPoint{f}, std::invalid_argument);
}

TEST_CASE("secant examples") {
  const auto a = secant_dim(6, 3, 2);
  CHECK(a.projective_dim == 19);
  CHECK(a.expected_dim == 19);
  CHECK(a.defect == 0);
  const auto b = secant_dim(6, 2, 2);
  CHECK(b.projective_dim == 13);
  CHECK(b.expected_dim == 14);
  CHECK(b.defect == 1);
  CHECK(secant_dim(6, 3, 1).projective_dim == 9);
}

TEST_CASE("l = 1 gives the Grassmannian dimension") {
  for (int m = 2; m <= 9; ++m)
    for (int n = 1; n < m; ++n) {
      const auto r = secant_dim(m, n, 1);
      REQUIRE(r.projective_dim == n * (m - n));
      REQUIRE(r.defect == 0);
    }
}

TEST_CASE("n = 2 matches the skew-rank stratification") {
  for (int m = 4; m <= 9; ++m)
    for (int l = 1; l <= m / 2; ++l) {
      const auto r = secant_dim(m, 2, l);
      REQUIRE(r.projective_dim == skew_oracle(m, l));
      if (l >= 2 && l < m / 2) REQUIRE(r.defect >= 1);
    }
}

TEST_CASE("duality, monotonicity and the expected-dimension ceiling") {
  for (int m = 3; m <= 8; ++m)
    for (int n = 1; n < m; ++n) {
      int previous = -1;
      for (int l = 1; l <= 3; ++l) {
        const auto r = secant_dim(m, n, l);
        REQUIRE(r.projective_dim == secant_dim(m, m - n, l).projective_dim);
        REQUIRE(r.projective_dim >= previous);
        REQUIRE(r.projective_dim <= r.expected_dim);
        REQUIRE(r.affine_rank <= l * (n * (m - n) + 1));
        previous = r.projective_dim;
      }
    }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  SecantOptions o;
  o.seed = 99;
  o.certify = true;
  const auto a = secant_dim(7, 3, 3, o);
  const auto b = secant_dim(7, 3, 3, o);
  CHECK(a.projective_dim == b.projective_dim);
  CHECK(a.prime == b.prime);
  CHECK(a.modular_rank == b.modular_rank);
  CHECK(secant_csv({a}) == secant_csv({b}));
}

TEST_CASE("certification agrees with the numeric rank") {
  SecantOptions o;
  o.certify = true;
  for (auto [m, n, l] : std::vector<std::tuple<int, int, int>>{{6, 3, 2}, {6, 2, 2}, {7, 3, 3}, {8, 4, 2}}) {
    const auto r = secant_dim(m, n, l, o);
    CHECK(r.certified);
    CHECK(r.modular_rank == r.affine_rank);
  }
  CHECK(secant_dim(7, 3, 3, o).defect == 1);
}

TEST_CASE("numeric rank routes agree") {
  Rng rng(32);
  const Eigen::MatrixXcd a = complex_gaussian(60, 8, rng) * complex_gaussian(8, 50, rng);
  CHECK(numeric_rank_svd(a).rank == 8);
  CHECK(numeric_rank_qr(a).rank == 8);
  SecantOptions svd, qr;
  svd.method = RankMethod::Svd;
  qr.method = RankMethod::Qr;
  CHECK(secant_dim(8, 3, 3, svd).projective_dim == secant_dim(8, 3, 3, qr).projective_dim);
}

TEST_CASE("ambiguous spectra are flagged") {
  const auto clear = classify_spectrum({1.0, 0.5, 1e-14}, 1e-8);
  CHECK(clear.rank == 2);
  CHECK_FALSE(clear.ambiguous);
  const auto murky = classify_spectrum({1.0, 0.5, 3e-8}, 1e-8);
  CHECK(murky.rank == 3);
  CHECK(murky.ambiguous);
}

TEST_CASE("min_filling_l") {
  CHECK(min_filling_l(8, 3) == 4);
  CHECK(min_filling_l(6, 3) == 2);
  for (int m = 2; m <= 20; ++m)
    for (int n = 1; n < m; ++n) REQUIRE(static_cast<std::uint64_t>(min_filling_l(m, n)) == lower_bound_new(m, n).value);
}

TEST_CASE("size cap") {
  SecantOptions o;
  o.max_dim = 1000;
  CHECK_THROWS_AS(secant_dim(14, 7, 1, o), CapExceeded);
  const auto scan = defect_scan(std::vector<int>{6, 14}, {3, 7}, {1}, o);
  CHECK(scan.reports.size() == 2); // (6,3) and (14,3); (6,7) is empty
  CHECK(scan.notices.size() == 1);
}

TEST_CASE("defect scan") {
  SecantOptions o;
  o.exec = Exec::Serial;
  const auto serial = defect_scan(7, {1, 2}, 3, o);
  o.exec = Exec::Parallel;
  const auto parallel = defect_scan(7, {1, 2}, 3, o);
  CHECK(secant_csv(serial.reports) == secant_csv(parallel.reports));
  for (const auto& r : serial.reports) {
    CHECK(r.defect >= 0);
    if (r.n == 1) CHECK(r.defect == 0);
    if (r.n == 2 && r.l >= 2 && r.l < r.m / 2) CHECK(r.defect >= 1);
  }
  const std::string csv = secant_csv(serial.reports);
  CHECK(csv.rfind("m,n,l,projective_dim,expected_dim,defect,certified,tol,seed\n", 0) == 0);
}

} // TEST_SUITE
