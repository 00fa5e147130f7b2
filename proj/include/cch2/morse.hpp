#pragma once

// Exact integer polynomial bookkeeping: index-count polynomial of a census,
// the reference polynomial of the quotient sphere, the divisibility audit,
// and the resulting count lower bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cch2/search.hpp"

namespace cch2 {

struct PolyDivision;

class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<long long> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static IntPolynomial zero() { return IntPolynomial{}; }
  static IntPolynomial one() { return IntPolynomial{{1}}; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  long long coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0;
  }
  const std::vector<long long>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool nonnegative() const;
  long long eval(long long t) const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  bool operator==(const IntPolynomial&) const = default;

  // p = (1 + t) q + r with integer q and constant r = p(-1): synthetic
  // division.  Exact when r == 0.
  PolyDivision divide_by_one_plus_t() const;

  std::string str(const std::string& var = "t") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<long long> c_;  // c_[k] multiplies t^k; no trailing zeros
};

struct PolyDivision {
  IntPolynomial quotient;
  long long remainder = 0;
};

// Coefficient k = number of classes whose index (n_minus) is k.  Degenerate
// records (nullity > 1) are still counted; callers pass their number to the
// audit, which refuses to certify.
IntPolynomial morse_polynomial(const std::vector<CCRecord>& classes);

// (1 + 2t)(1 + 3t)...(1 + (N-1)t); empty product for N = 2.
IntPolynomial poincare_polynomial(int n);

struct MorseAudit {
  IntPolynomial M;
  IntPolynomial P;
  std::optional<IntPolynomial> R;  // present when the division is exact
  bool division_exact = false;
  bool R_nonnegative = false;
  int degenerate_classes = 0;
  // true when M - P = (1+t) R with R >= 0 and no degenerate classes: the
  // census is consistent with completeness (never a proof of it).
  bool census_complete_hypothesis = false;
};

MorseAudit morse_inequality_audit(const IntPolynomial& m, const IntPolynomial& p,
                                  int degenerate_classes = 0);

struct LowerBounds {
  long long total = 0;         // (3N-4)(N-1)!/2
  long long non_geodesic = 0;  // (2N-4)(N-1)!/2
  long long geodesic = 0;      // N!/2
};

// Exact in 64-bit for N <= 20; throws SizeLimitError beyond.
LowerBounds lower_bounds(int n);

struct CensusReport {
  std::vector<CCRecord> classes;
  TrialStats stats;
  MorseAudit audit;
  LowerBounds bounds;
  int geodesic_count = 0;
  int non_geodesic_count = 0;
  bool total_met = false;
  bool non_geodesic_met = false;
};

CensusReport census_report(const CensusResult& result, int n);

}  // namespace cch2
