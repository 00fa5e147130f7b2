#include "cch2/morse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cch2/errors.hpp"

namespace cch2 {

bool IntPolynomial::nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](long long v) { return v >= 0; });
}

long long IntPolynomial::eval(long long t) const {
  long long v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
  return v;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<long long> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t k = 0; k < r.size(); ++k) r[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return IntPolynomial{std::move(r)};
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<long long> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t k = 0; k < r.size(); ++k) r[k] = coeff(static_cast<int>(k)) - o.coeff(static_cast<int>(k));
  return IntPolynomial{std::move(r)};
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return zero();
  std::vector<long long> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t a = 0; a < c_.size(); ++a)
    for (size_t b = 0; b < o.c_.size(); ++b) r[a + b] += c_[a] * o.c_[b];
  return IntPolynomial{std::move(r)};
}

PolyDivision IntPolynomial::divide_by_one_plus_t() const {
  PolyDivision d;
  if (is_zero()) return d;
  const int deg = degree();
  std::vector<long long> qc(std::max(deg, 0), 0);
  long long carry = c_[deg];  // synthetic division at root -1
  for (int k = deg - 1; k >= 0; --k) {
    qc[k] = carry;
    carry = c_[k] - carry;
  }
  d.quotient = IntPolynomial{std::move(qc)};
  d.remainder = carry;  // equals eval(-1)
  return d;
}

std::string IntPolynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = 0; k <= degree(); ++k) {
    const long long v = coeff(k);
    if (v == 0) continue;
    if (!s.empty()) s += (v > 0) ? " + " : " - ";
    else if (v < 0) s += "-";
    const long long av = v < 0 ? -v : v;
    if (av != 1 || k == 0) s += std::to_string(av);
    if (k >= 1) s += var;
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

IntPolynomial morse_polynomial(const std::vector<CCRecord>& classes) {
  int top = 0;
  for (const auto& r : classes) top = std::max(top, r.spectrum.n_minus);
  std::vector<long long> c(top + 1, 0);
  for (const auto& r : classes) ++c[r.spectrum.n_minus];
  return IntPolynomial{std::move(c)};
}

IntPolynomial poincare_polynomial(int n) {
  if (n < 2) throw std::invalid_argument("poincare_polynomial: need n >= 2");
  IntPolynomial p = IntPolynomial::one();
  for (int k = 2; k <= n - 1; ++k) p = p * IntPolynomial{{1, k}};
  return p;
}

MorseAudit morse_inequality_audit(const IntPolynomial& m, const IntPolynomial& p,
                                  int degenerate_classes) {
  MorseAudit audit;
  audit.M = m;
  audit.P = p;
  audit.degenerate_classes = degenerate_classes;
  const auto division = (m - p).divide_by_one_plus_t();
  audit.division_exact = (division.remainder == 0);
  if (audit.division_exact) {
    audit.R = division.quotient;
    audit.R_nonnegative = division.quotient.nonnegative();
  }
  audit.census_complete_hypothesis =
      audit.division_exact && audit.R_nonnegative && degenerate_classes == 0;
  return audit;
}

LowerBounds lower_bounds(int n) {
  if (n < 2) throw std::invalid_argument("lower_bounds: need n >= 2");
  if (n > 20) throw SizeLimitError("lower_bounds: factorial overflows past n = 20");
  long long fact = 1;  // (n-1)!
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  LowerBounds b;
  b.total = (3LL * n - 4) * fact / 2;
  b.non_geodesic = (2LL * n - 4) * fact / 2;
  b.geodesic = fact * n / 2;
  return b;
}

CensusReport census_report(const CensusResult& result, int n) {
  CensusReport rep;
  rep.classes = result.classes;
  rep.stats = result.stats;
  int degenerate = 0;
  for (const auto& r : rep.classes) {
    if (r.is_geodesic) ++rep.geodesic_count;
    if (r.degenerate) ++degenerate;
  }
  rep.non_geodesic_count = static_cast<int>(rep.classes.size()) - rep.geodesic_count;
  rep.audit = morse_inequality_audit(morse_polynomial(rep.classes),
                                     poincare_polynomial(n), degenerate);
  rep.bounds = lower_bounds(n);
  rep.total_met = static_cast<long long>(rep.classes.size()) >= rep.bounds.total;
  rep.non_geodesic_met = rep.non_geodesic_count >= rep.bounds.non_geodesic;
  return rep;
}

}  // namespace cch2
