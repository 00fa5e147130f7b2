#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "cch2/errors.hpp"
#include "cch2/morse.hpp"
#include "cch2/search.hpp"

using namespace cch2;

namespace {

CCRecord record_with_index(int n_minus, int n_zero = 1) {
  CCRecord r;
  r.spectrum.n_minus = n_minus;
  r.spectrum.n_zero = n_zero;
  r.spectrum.nondegenerate = (n_zero == 1);
  r.degenerate = (n_zero != 1);
  return r;
}

}  // namespace

TEST_CASE("integer polynomial arithmetic") {
  const IntPolynomial p({1, 2});      // 1 + 2t
  const IntPolynomial q({0, 3, 1});   // 3t + t^2
  CHECK(p.degree() == 1);
  CHECK(q.degree() == 2);
  CHECK((p + q) == IntPolynomial({1, 5, 1}));
  CHECK((q - p) == IntPolynomial({-1, 1, 1}));
  CHECK((p * q) == IntPolynomial({0, 3, 7, 2}));
  CHECK(p.eval(2) == 5);
  CHECK(q.eval(-1) == -2);
  CHECK(IntPolynomial::zero().is_zero());
  CHECK(IntPolynomial::zero().degree() == -1);
  CHECK(IntPolynomial({0, 0, 0}).is_zero());  // trailing zeros trimmed
  CHECK(IntPolynomial({1, -1}).nonnegative() == false);
  CHECK(IntPolynomial({2, 0, 1}).nonnegative());
  CHECK(IntPolynomial({1, 2}).str() == "1 + 2t");
}

TEST_CASE("synthetic division by 1 + t") {
  // exact: (1+t)(2+t) = 2 + 3t + t^2
  const PolyDivision exact = IntPolynomial({2, 3, 1}).divide_by_one_plus_t();
  CHECK(exact.remainder == 0);
  CHECK(exact.quotient == IntPolynomial({2, 1}));

  // inexact: remainder is the value at t = -1
  const IntPolynomial gap({-1, 1});  // 3t - (1 + 2t)
  const PolyDivision inexact = gap.divide_by_one_plus_t();
  CHECK(inexact.remainder == gap.eval(-1));
  CHECK(inexact.remainder != 0);

  // reconstruction identity p = (1+t) q + r for a generic polynomial
  const IntPolynomial p({4, -2, 5, 1});
  const PolyDivision d = p.divide_by_one_plus_t();
  CHECK((IntPolynomial({1, 1}) * d.quotient + IntPolynomial({d.remainder})) == p);
}

TEST_CASE("reference polynomial of the quotient space") {
  CHECK(poincare_polynomial(2) == IntPolynomial({1}));
  CHECK(poincare_polynomial(3) == IntPolynomial({1, 2}));
  CHECK(poincare_polynomial(4) == IntPolynomial({1, 5, 6}));
  CHECK(poincare_polynomial(5) == IntPolynomial({1, 9, 26, 24}));
  for (int n : {3, 4, 5, 6, 7}) {
    const IntPolynomial p = poincare_polynomial(n);
    CHECK(p.degree() == n - 2);
    long long fact = 1;  // leading coefficient (N-1)!/1, i.e. 2*3*...*(N-1)
    for (int k = 2; k < n; ++k) fact *= k;
    CHECK(p.coeff(n - 2) == fact);
    long long half_perms = 1;  // P(1) = N!/2
    for (int k = 3; k <= n; ++k) half_perms *= k;
    CHECK(p.eval(1) == half_perms);
  }
}

TEST_CASE("index-count polynomial from classified records") {
  std::vector<CCRecord> classes;
  classes.push_back(record_with_index(0));
  classes.push_back(record_with_index(0));
  classes.push_back(record_with_index(1));
  classes.push_back(record_with_index(1));
  classes.push_back(record_with_index(1));
  CHECK(morse_polynomial(classes) == IntPolynomial({2, 3}));
  CHECK(morse_polynomial({}).is_zero());
}

TEST_CASE("audit certifies the canonical three-body census and not truncations") {
  const IntPolynomial m({2, 3});  // 2 + 3t
  const IntPolynomial p({1, 2});  // 1 + 2t
  const MorseAudit good = morse_inequality_audit(m, p);
  CHECK(good.division_exact);
  CHECK(good.R_nonnegative);
  REQUIRE(good.R.has_value());
  CHECK(*good.R == IntPolynomial({1}));
  CHECK(good.census_complete_hypothesis);

  // geodesic classes alone: M = 3t, M - P = -1 + t is not divisible
  const MorseAudit truncated = morse_inequality_audit(IntPolynomial({0, 3}), p);
  CHECK_FALSE(truncated.division_exact);
  CHECK_FALSE(truncated.census_complete_hypothesis);

  // divisible but with a negative quotient coefficient: M - P = -(1+t)
  const MorseAudit negative = morse_inequality_audit(IntPolynomial({0, 1}), p);
  CHECK(negative.division_exact);
  CHECK_FALSE(negative.R_nonnegative);
  CHECK_FALSE(negative.census_complete_hypothesis);

  // degenerate classes always block certification
  const MorseAudit degen = morse_inequality_audit(m, p, 1);
  CHECK(degen.degenerate_classes == 1);
  CHECK_FALSE(degen.census_complete_hypothesis);
}

TEST_CASE("count lower bounds") {
  CHECK(lower_bounds(2).total == 1);
  CHECK(lower_bounds(2).non_geodesic == 0);
  CHECK(lower_bounds(2).geodesic == 1);

  CHECK(lower_bounds(3).total == 5);
  CHECK(lower_bounds(3).non_geodesic == 2);
  CHECK(lower_bounds(3).geodesic == 3);

  CHECK(lower_bounds(4).total == 24);
  CHECK(lower_bounds(4).non_geodesic == 12);
  CHECK(lower_bounds(4).geodesic == 12);

  CHECK(lower_bounds(5).total == 132);
  CHECK(lower_bounds(5).non_geodesic == 72);
  CHECK(lower_bounds(5).geodesic == 60);

  // total = non_geodesic + geodesic is an identity of the three formulas
  for (int n = 2; n <= 20; ++n) {
    const LowerBounds b = lower_bounds(n);
    CHECK(b.total == b.non_geodesic + b.geodesic);
  }
  CHECK_THROWS_AS((void)lower_bounds(21), SizeLimitError);
}

TEST_CASE("census report assembles audit and bound checks") {
  SearchParams params;
  params.trials = 2000;
  params.seed = 1;
  const CensusResult result = census({1.0, 1.3, 0.8}, 1.0, params);
  const CensusReport report = census_report(result, 3);

  CHECK(report.geodesic_count == 3);
  CHECK(report.non_geodesic_count == 2);
  CHECK(report.total_met);
  CHECK(report.non_geodesic_met);
  CHECK(report.audit.census_complete_hypothesis);
  CHECK(report.audit.M == IntPolynomial({2, 3}));
  CHECK(report.audit.P == IntPolynomial({1, 2}));
  REQUIRE(report.audit.R.has_value());
  CHECK(*report.audit.R == IntPolynomial({1}));
  CHECK(report.bounds.total == 5);
}
