#pragma once

// Multistart search for central configurations on a level set {I = c}:
// projected gradient flow into the Newton basin, Gauss-Newton refinement
// with a rotation gauge, canonicalization, and deduplication.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cch2/geodesic.hpp"
#include "cch2/hessian.hpp"
#include "cch2/rng.hpp"
#include "cch2/types.hpp"

namespace cch2 {

struct SearchParams {
  int trials = 2000;
  std::uint64_t seed = 1;

  double start_range = 2.0;  // chart coordinates drawn uniform(-range, range)

  double flow_step_init = 0.05;
  double flow_step_max = 0.4;
  double flow_step_min = 1e-9;
  int flow_max_steps = 1500;        // per direction
  double switch_threshold = 1e-4;   // hand off to Newton below this residual

  double newton_basin = 1e-2;
  int newton_max_iter = 60;
  double newton_tol_step = 1e-12;
  double newton_success_residual = 1e-10;

  double record_residual = 1e-9;
  double dedupe_tol = 1e-6;
  double min_distance_floor = 1e-4;
  double geodesic_detect_rel = 1e-8;
  double zero_tol_factor = 1e-7;  // eigenvalue-zero classification in records

  // Every k-th trial starts exactly on a geodesic line (0 disables).  The
  // projected flow preserves the line, where the collinear rest points are
  // minima, so this stratum reaches the saddles that generic descent misses.
  int collinear_every = 4;
};

enum class FlowStatus { Converged, StepBudgetExhausted, CollisionApproach };

struct FlowResult {
  Configuration config;
  double residual = 0.0;
  FlowStatus status = FlowStatus::StepBudgetExhausted;
  int steps = 0;
  int direction = -1;  // -1 descent, +1 ascent (direction that produced config)
};

// Integrates the field +-X with adaptive Euler steps, re-projecting onto the
// hyperboloid pointwise and onto {I = c} after every step.  Descent first;
// ascent is attempted when descent does not reach the switch threshold.
FlowResult flow_integrate(const Configuration& start, double c, const SearchParams& p);

struct NewtonResult {
  Configuration config;
  double lambda = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
};

// Gauss-Newton on (chart coordinates, lambda) for grad(U - lambda I) = 0 and
// I = c, with a gauge row pinning the rotation direction of the step.
// Requires cc_residual(start) below the basin threshold.
NewtonResult newton_refine(const Configuration& start, double c,
                           const SearchParams& p = {});

// Rotates the weighted moment vector sum m_i w_i (x_i, y_i) onto the +x axis;
// when that vector is ~0 (always at a central configuration), rotates the
// body of largest r_i to y = 0, x > 0.  Idempotent; throws NoAnchor when
// every body sits at (0,0,1).
Configuration canonicalize(const Configuration& q);

struct CCRecord {
  Configuration configuration;  // canonicalized
  double lambda = 0.0;
  double U_value = 0.0;
  double I_value = 0.0;
  double residual = 0.0;
  SpectrumReport spectrum;
  bool is_geodesic = false;
  std::optional<Ordering> ordering;  // geodesic records only
  bool degenerate = false;           // nullity > 1
  bool near_collision = false;
  int trial = -1;
  int hits = 1;
  int class_id = -1;
};

// Builds the record for a refined configuration: canonicalize, classify the
// spectrum, detect the geodesic case and its ordering.
CCRecord make_record(const Configuration& refined, double lambda, double residual,
                     int trial, const SearchParams& p = {});

// Merges records that agree in canonical chart coordinates within tol (the
// rotation by pi is checked too) and whose U values agree to 1e-8 relative.
// Keeps the lowest-residual representative; output sorted by U then coords.
std::vector<CCRecord> dedupe(std::vector<CCRecord> records, double tol);

struct TrialStats {
  int trials = 0;
  int converged = 0;
  int collision_abandoned = 0;
  int budget_exhausted = 0;
  int outside_basin = 0;
  int newton_failed = 0;
  int rejected_records = 0;  // refined but above record tolerance etc.
};

struct CensusResult {
  std::vector<CCRecord> classes;
  TrialStats stats;
};

// Seeded deterministic multistart: trial t draws from stream (seed, t).
CensusResult census(const std::vector<double>& masses, double c, const SearchParams& p);

// Start sample: chart coordinates uniform in (-range, range), dilated onto
// {I = c} by a 1-D root solve.
Configuration random_start_on_level(const std::vector<double>& masses, double c,
                                    Rng& rng, double range);

// Same, but every body on the geodesic {y = 0} (exactly, so the flow stays
// on the line).
Configuration collinear_start_on_level(const std::vector<double>& masses, double c,
                                       Rng& rng, double range);

struct WitnessResult {
  std::vector<Eigen::Vector2d> v_chart;  // graph-chart components per body
  double dU_v = 0.0;
  double dI_v = 0.0;
  double norm = 0.0;  // Euclidean norm of the stacked chart vector
};

// Tangent direction to {I = c} along which dU blows down as the first
// cluster contracts: v_i = w_i^2 (x_i, y_i) on the first cluster, 0 on middle
// clusters, w_i * v0 on the last, with v0 solving the dI(v) = 0 equation.
// Throws DegenerateCluster when that equation has ~0 coefficients.
WitnessResult collision_repulsion_witness(const Configuration& q,
                                          const std::vector<std::vector<int>>& clusters);

}  // namespace cch2
