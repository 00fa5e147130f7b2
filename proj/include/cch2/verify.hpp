#pragma once

// Randomized property battery over the geometric and spectral claims the
// library is built on.  Deterministic for a fixed (n, cases, seed).

#include <cstdint>
#include <string>
#include <vector>

namespace cch2 {

struct PropertyCheck {
  std::string name;
  int cases = 0;
  bool passed = true;
  double worst = 0.0;  // tightest margin / largest error seen, per `note`
  std::string note;
};

std::vector<PropertyCheck> run_property_battery(int n, int cases, std::uint64_t seed);

}  // namespace cch2
