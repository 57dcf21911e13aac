#include <doctest.h>

#include <Eigen/LU>

#include "grasslen/errors.hpp"
#include "grasslen/io.hpp"
#include "grasslen/multivector.hpp"
#include "support.hpp"

using namespace grasslen;
using testing::lex_subsets;
using testing::random_multivector;

namespace {

Multivector e(int m, std::initializer_list<int> idx) { return Multivector::basis(m, idx); }

VectorM basis_vec(int m, int i) {
  VectorM v = VectorM::Zero(m);
  v(i - 1) = 1.0;
  return v;
}

bool close(const Multivector& a, const Multivector& b, double tol = 1e-12) {
  return relative_distance(a, b) <= tol;
}

} // namespace

TEST_SUITE("exterior") {

TEST_CASE("subset rank examples") {
  CHECK(subset_rank(SubsetIndex(6, {1, 2, 3})) == 0);
  CHECK(subset_rank(SubsetIndex(6, {4, 5, 6})) == 19);
  CHECK(subset_rank(SubsetIndex(6, {1, 2, 4})) == 1);
}

TEST_CASE("subset rank matches enumeration order and round-trips for m <= 16") {
  for (int m = 0; m <= 16; ++m)
    for (int n = 0; n <= m; ++n) {
      const auto all = lex_subsets(m, n);
      REQUIRE(all.size() == binomial(m, n));
      for (std::size_t r = 0; r < all.size(); ++r) {
        const SubsetIndex s(m, all[r]);
        REQUIRE(subset_rank(s) == r);
        const SubsetIndex back = subset_unrank(m, n, r);
        REQUIRE(back == s);
      }
    }
}

TEST_CASE("invalid subsets are rejected") {
  CHECK_THROWS_AS(SubsetIndex(4, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SubsetIndex(4, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SubsetIndex(4, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SubsetIndex(4, {3, 5}), std::invalid_argument);
  CHECK_THROWS_AS(subset_unrank(6, 3, 20), std::out_of_range);
}

TEST_CASE("binomial is exact up to 64 and detects overflow") {
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK(binomial(10, 11) == 0);
  for (int m = 1; m <= 64; ++m)
    for (int k = 1; k < m; ++k) REQUIRE(binomial(m, k) == binomial(m - 1, k - 1) + binomial(m - 1, k));
}

TEST_CASE("wedge_vectors examples") {
  Eigen::MatrixXcd f(4, 2);
  f << 1, 0, 0, 1, 0, 0, 0, 0;
  CHECK(wedge_vectors(f) == e(4, {1, 2}));
  f.col(0).swap(f.col(1));
  CHECK(wedge_vectors(f) == -e(4, {1, 2}));
  f.col(0) = basis_vec(4, 1) + basis_vec(4, 2);
  f.col(1) = f.col(0);
  CHECK(wedge_vectors(f).is_zero());
  CHECK_THROWS(wedge_vectors(Eigen::MatrixXcd::Identity(3, 4)));
}

TEST_CASE("wedge_vectors equals minors of the factor matrix") {
  Rng rng(11);
  for (int m = 1; m <= 8; ++m)
    for (int k = 1; k <= m; ++k) {
      const Eigen::MatrixXcd f = complex_gaussian(m, k, rng);
      const Multivector w = wedge_vectors(f);
      const auto subsets = lex_subsets(m, k);
      for (std::size_t r = 0; r < subsets.size(); ++r) {
        Eigen::MatrixXcd rows(k, k);
        for (int i = 0; i < k; ++i) rows.row(i) = f.row(subsets[r][static_cast<std::size_t>(i)] - 1);
        const Scalar det = rows.determinant();
        REQUIRE(std::abs(w[r] - det) <= 1e-12 * (1.0 + std::abs(det)));
      }
    }
}

TEST_CASE("wedge examples") {
  CHECK(wedge(Multivector::basis(4, {1}), e(4, {2, 3})) == e(4, {1, 2, 3}));
  CHECK(wedge(e(4, {1, 2}), e(4, {1, 3})).is_zero());
  CHECK(wedge(e(4, {1, 2}), e(4, {3, 4})) == wedge(e(4, {3, 4}), e(4, {1, 2})));
  CHECK(wedge(e(4, {2}), e(4, {1})) == -e(4, {1, 2}));
  CHECK_THROWS(wedge(e(4, {1, 2}), e(4, {1, 2, 3})));
}

TEST_CASE("wedge agrees with wedge_vectors on decomposables") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd f = complex_gaussian(7, 3, rng);
    const Multivector a = wedge_vectors(Eigen::MatrixXcd(f.leftCols(1)));
    const Multivector b = wedge_vectors(Eigen::MatrixXcd(f.rightCols(2)));
    CHECK(close(wedge(a, b), wedge_vectors(f)));
  }
}

TEST_CASE("wedge with a grade-0 scalar scales") {
  Rng rng(13);
  const Multivector psi = random_multivector(5, 2, rng);
  const Multivector two(5, 0, {Scalar{2.0, 0.0}});
  CHECK(close(wedge(two, psi), 2.0 * psi));
}

TEST_CASE("contract examples") {
  CHECK(contract(e(4, {1, 2}), 1) == e(4, {2}));
  CHECK(contract(e(4, {1, 2}), 2) == -e(4, {1}));
  CHECK(contract(e(4, {1, 2}), 3).is_zero());
  CHECK_THROWS(contract(Multivector(4, 0), 1));
  CHECK_THROWS(contract(e(4, {1, 2}), 5));
}

TEST_CASE("hodge dual examples") {
  CHECK(hodge_dual(e(4, {1, 2})) == e(4, {3, 4}));
  CHECK(hodge_dual(e(4, {1, 3})) == -e(4, {2, 4}));
  CHECK(hodge_dual(hodge_dual(e(4, {1, 2}))) == e(4, {1, 2}));
}

TEST_CASE("hodge dual matches the wedge with the complement") {
  // e_I ^ e_{I^c} = sign(I, I^c) e_{1..m}, and the dual carries exactly that sign
  for (int m = 1; m <= 7; ++m)
    for (int n = 0; n <= m; ++n)
      for (const auto& s : lex_subsets(m, n)) {
        const Multivector b = Multivector::basis(SubsetIndex(m, s));
        const Multivector d = hodge_dual(b);
        const Multivector top = wedge(b, d);
        REQUIRE(top.size() == 1);
        REQUIRE(top[0] == Scalar{1.0, 0.0});
      }
}

TEST_CASE("hodge dual twice is (-1)^(n(m-n)) bit for bit and keeps the norm") {
  Rng rng(14);
  for (int m = 1; m <= 9; ++m)
    for (int n = 0; n <= m; ++n) {
      const Multivector psi = random_multivector(m, n, rng);
      const Multivector twice = hodge_dual(hodge_dual(psi));
      const bool odd = (n * (m - n)) % 2 != 0;
      REQUIRE(twice == (odd ? -psi : psi));
      REQUIRE(hodge_dual(psi).norm() == doctest::Approx(psi.norm()).epsilon(1e-14));
    }
}

TEST_CASE("apply_linear acts as the induced map on decomposables") {
  Rng rng(15);
  const Eigen::MatrixXcd a = complex_gaussian(6, 6, rng);
  const Eigen::MatrixXcd f = complex_gaussian(6, 3, rng);
  CHECK(close(apply_linear(a, wedge_vectors(f)), wedge_vectors(a * f), 1e-11));
}

TEST_CASE("multivector invariants") {
  CHECK_THROWS(Multivector(4, 2, std::vector<Scalar>(5)));
  CHECK_THROWS(Multivector(4, 5));
  CHECK_THROWS(Multivector(4, 1, {{1, 0}, {0, 1}, {0, 0}, {0, 0}}, Field::Real));
  CHECK(Multivector(4, 0).size() == 1);
  CHECK(Multivector(4, 4).size() == 1);
  const Multivector r = e(4, {1, 2}).with_field(Field::Real);
  CHECK((r + r).field() == Field::Real);
  CHECK((Scalar{0, 1} * r).field() == Field::Complex);
}

TEST_CASE("serialize examples") {
  const Multivector psi = e(4, {1, 2});
  const auto doc = io::to_json(psi);
  CHECK(doc["m"] == 4);
  CHECK(doc["n"] == 2);
  REQUIRE(doc["terms"].size() == 1);
  CHECK(doc["terms"][0][0] == io::json::array({1, 2}));
  CHECK(doc["terms"][0][1].get<double>() == 1.0);
  CHECK(doc["terms"][0][2].get<double>() == 0.0);
}

TEST_CASE("serialize round-trips random multivectors exactly") {
  Rng rng(16);
  for (int m = 1; m <= 8; ++m)
    for (int n = 0; n <= m; ++n) {
      const Multivector psi = random_multivector(m, n, rng);
      REQUIRE(io::parse(io::serialize(psi)) == psi);
    }
  const Multivector real = e(5, {1, 3}).with_field(Field::Real);
  CHECK(io::parse(io::serialize(real)).field() == Field::Real);
}

TEST_CASE("malformed documents are rejected") {
  const char* bad[] = {
      R"({"m":4,"n":2,"field":"C","terms":[[[2,1],1,0]]})",
      R"({"m":4,"n":2,"field":"C","terms":[[[1,2],1,0],[[1,2],2,0]]})",
      R"({"m":4,"n":2,"field":"C","terms":[[[1,5],1,0]]})",
      R"({"m":4,"n":2,"field":"C","terms":[[[1],1,0]]})",
      R"({"m":4,"n":2,"field":"R","terms":[[[1,2],1,0.5]]})",
      R"({"m":4,"n":2,"field":"Q","terms":[]})",
      R"({"m":4,"field":"C","terms":[]})",
      R"({"m":64,"n":32,"field":"C","terms":[]})",
      R"({"m":65,"n":1,"field":"C","terms":[]})",
      R"({"m":4,"n":2,"field":"C","terms":[[[1,2],"x",0]]})",
      R"([1,2,3])",
      R"({"m":4,)",
  };
  for (const char* text : bad) CHECK_THROWS_AS(io::parse(text), ParseError);
}

TEST_CASE("terms documents round-trip") {
  Rng rng(17);
  std::vector<DecompTerm> terms{{complex_gaussian(5, 2, rng)}, {complex_gaussian(5, 2, rng)}};
  const auto back = io::terms_from_json(io::json::parse(io::terms_to_json(5, 2, terms).dump()));
  REQUIRE(back.size() == 2);
  CHECK(back[0].factors == terms[0].factors);
  CHECK(back[1].factors == terms[1].factors);
}

} // TEST_SUITE
