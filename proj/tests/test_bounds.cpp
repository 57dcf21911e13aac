#include <doctest.h>

#include <sstream>

#include "grasslen/bounds.hpp"

using namespace grasslen;

TEST_SUITE("bounds") {

TEST_CASE("lower_bound_new examples") {
  CHECK(lower_bound_new(6, 3).value == 2);
  CHECK(lower_bound_new(8, 3).value == 4);
  CHECK(lower_bound_new(12, 4).value == 15);
  CHECK(lower_bound_new(14, 7).value == 69);
  const Fraction f = lower_bound_new_fraction(8, 3);
  CHECK(f.numerator == 56);
  CHECK(f.denominator == 16);
  CHECK(lower_bound_new(5, 0).degenerate);
  CHECK(lower_bound_new(5, 5).value == 1);
}

TEST_CASE("lower_bound_old examples") {
  CHECK(lower_bound_old(8, 3).value == 3);
  CHECK(lower_bound_old(12, 8).value == 5);
  for (int m = 4; m <= 20; ++m) CHECK(lower_bound_old(m, 2).value == static_cast<std::uint64_t>(m / 2));
  // reduced grade 1: the classical formula does not apply and the exact value is 1
  CHECK(lower_bound_old(9, 1).value == 1);
  CHECK(lower_bound_old(9, 8).value == 1);
}

TEST_CASE("upper_bound_order examples") {
  CHECK(upper_bound_order(10, 3) == doctest::Approx(100.0 / 12.0));
  CHECK(upper_bound_order(10, 2) == doctest::Approx(2.5));
  CHECK(upper_bound_order(10, 7) == doctest::Approx(100.0 / 12.0));
  CHECK_THROWS(upper_bound_order(5, 5));
}

TEST_CASE("exact_value table") {
  const auto v73 = exact_value(7, 3);
  REQUIRE(v73);
  CHECK(v73->value == 4);
  CHECK(v73->scope == FieldScope::Complex);
  const auto v85 = exact_value(8, 5);
  REQUIRE(v85);
  CHECK(v85->value == 5);
  const auto v63 = exact_value(6, 3);
  REQUIRE(v63);
  CHECK(v63->value == 3);
  CHECK(v63->scope == FieldScope::AnyCharZero);
  CHECK_FALSE(exact_value(9, 3));
  CHECK(exact_value(9, 1)->value == 1);
  CHECK(exact_value(11, 9)->value == 5);
  CHECK(to_string(FieldScope::AnyCharZero) == "any-char-0");
}

TEST_CASE("invariants for m <= 20") {
  for (int m = 2; m <= 20; ++m)
    for (int n = 1; n < m; ++n) {
      const auto lnew = lower_bound_new(m, n).value;
      const auto lold = lower_bound_old(m, n).value;
      REQUIRE(lnew == lower_bound_new(m, m - n).value);
      REQUIRE(lnew >= 1);
      REQUIRE(lold >= 1);
      if (const auto ex = exact_value(m, n)) {
        REQUIRE(lnew <= ex->value);
        REQUIRE(lold <= ex->value);
      }
      if (n >= 3 && 2 * n <= m) {
        REQUIRE(lnew >= lold);
        if (m >= 8) REQUIRE(lnew > lold);
      }
      if (n >= 2 && 2 * n <= m) REQUIRE(lnew >= lower_bound_new(m, n - 1).value);
    }
}

TEST_CASE("ratio to the upper-bound order tends to 2/n") {
  for (int n : {3, 4, 5}) {
    const double ratio = static_cast<double>(lower_bound_new(10000, n).value) / upper_bound_order(10000, n);
    CHECK(ratio >= 0.9 * 2.0 / n);
    CHECK(ratio <= 1.1 * 2.0 / n);
  }
}

TEST_CASE("bounds_table rows and CSV") {
  const auto rows = bounds_table(6, 8, {3});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].lower_new == 2);
  CHECK(rows[1].lower_new == 3);
  CHECK(rows[2].lower_new == 4);
  CHECK(rows[0].exact->value == 3);
  CHECK(rows[1].exact->value == 4);
  CHECK(rows[2].exact->value == 5);

  const auto wide = bounds_table(4, 14, {2, 3, 4, 5});
  CHECK(wide.size() == 11 * 4);
  const std::string csv = bounds_csv(wide);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "m,n,lower_old,lower_new,upper_order,exact,exact_field,source");
  int count = 0;
  while (std::getline(in, line)) ++count;
  CHECK(count == 44);
  CHECK(csv.find("8,3,3,4,5.33333,5,C,Westwick\n") != std::string::npos);
  CHECK(csv.find("4,5,,,,,,empty space (n>m)\n") != std::string::npos);
  CHECK(bounds_csv(wide) == csv);
  CHECK_THROWS(bounds_table(5, 4, {2}));
  CHECK_THROWS(bounds_table(4, 5, {}));
}

TEST_CASE("plot data has one block per n") {
  const std::string plot = bounds_plot_data(bounds_table(6, 7, {2, 3}));
  CHECK(plot.find("# n=2\nm,lower_old,lower_new,exact\n6,3,") == 0);
  CHECK(plot.find("\n\n# n=3\n") != std::string::npos);
}

} // TEST_SUITE
