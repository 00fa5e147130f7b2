#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace cch2 {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;        // argument / input parse problems
inline constexpr int kExitNumerical = 2;    // no convergence, collisions
inline constexpr int kExitInertia = 3;      // spectral inertia mismatch
inline constexpr int kExitBounds = 4;       // census below the lower bounds
inline constexpr int kExitNotCC = 5;        // classified input fails the residual test
inline constexpr int kExitProperty = 6;     // property battery failure

struct RunOptions {
  std::vector<double> masses;
  double c = 1.0;
  int trials = 2000;
  std::uint64_t seed = 1;
  double tol_residual = 1e-8;
  double tol_zero = 1e-7;
  std::string format = "text";  // json | csv | text
  std::string out_path;         // empty = stdout
  std::string input_path;       // classify
  int n = 3;
  int cases = 100;
};

int cmd_geodesic(const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_census(const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_classify(const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunOptions& opt, std::ostream& out, std::ostream& err);

// "1,1.3,0.8" or "equal:4"
std::vector<double> parse_masses(const std::string& spec);

}  // namespace cch2
