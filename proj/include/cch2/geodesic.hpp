#pragma once

// Central configurations lying on the geodesic phi = 0: one per ordering of
// the bodies along the line, up to rotation by pi.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cch2/hessian.hpp"
#include "cch2/types.hpp"

namespace cch2 {

// slots[k] = index of the body in the k-th position along the geodesic.
// Canonical representative: lexicographically smaller of the permutation and
// its reversal (reversal = rotation by pi).
struct Ordering {
  std::vector<int> slots;

  bool operator==(const Ordering&) const = default;
};

Ordering canonical_ordering(const Ordering& o);

// All N!/2 canonical orderings, lexicographic.  Throws SizeLimitError when
// the count would exceed 10^6.
std::vector<Ordering> enumerate_orderings(int n);

struct GeodesicCC {
  std::vector<double> thetas;  // body order (thetas[i] belongs to body i)
  std::vector<double> masses;
  double level_c = 0.0;
  double lambda = 0.0;
  double residual = 0.0;  // sup norm of the 1-D system at the solution
  Ordering ordering;
  int iterations = 0;
};

// Damped Newton on (theta_1..theta_N, lambda) for the collinear system
//   dU/dtheta_i = lambda dI/dtheta_i,  I = c.
// Start: equally spaced thetas in the given ordering, balanced and dilated
// onto the level set.  Throws NoConvergence after the iteration budget.
GeodesicCC solve_geodesic(const std::vector<double>& masses, const Ordering& ordering,
                          double c, int max_iterations = 200);

// Same solver from a caller-supplied initial theta vector (body order).
GeodesicCC solve_geodesic_from(const std::vector<double>& masses,
                               const Ordering& ordering, double c,
                               std::vector<double> theta0, int max_iterations = 200);

Configuration embed(const GeodesicCC& g);  // onto phi = 0 in the hyperboloid

// C = diag(cosh theta_i), Mbar = diag(m_i), and the interaction matrix
//   A_ij = m_j / sinh^3 d_ij             (i != j)
//   A_ii = -sum_{j != i} m_j cosh theta_j / (cosh theta_i sinh^3 d_ij),
// for which the phi-block of the chart Hessian is C Mbar (A - 2 lambda) C.
struct SpectralMatrices {
  Eigen::MatrixXd C;
  Eigen::MatrixXd Mbar;
  Eigen::MatrixXd A;
  Eigen::MatrixXd H_phi;
  double lambda = 0.0;
};

SpectralMatrices build_spectral_matrices(const GeodesicCC& g);

// A has real spectrum: it is similar to the symmetric Mbar^1/2 A Mbar^-1/2.
Eigen::VectorXd interaction_eigenvalues(const SpectralMatrices& s);

struct InertiaReport {
  SpectrumReport h_phi;
  SpectrumReport a_shifted;  // of A - 2 lambda, via the symmetric similar matrix
  bool match = false;
};

// Inertia of H_phi must equal the inertia of A - 2 lambda (congruence via
// C Mbar^1/2).  Throws InertiaMismatch when the counts disagree.
InertiaReport verify_inertia_via_sylvester(const GeodesicCC& g);

// For strictly increasing thetas, every triple satisfies
//   k < i < j :  1/(sinh^3(t_j - t_k) cosh t_j)  <  1/(sinh^3(t_i - t_k) cosh t_i)
//   i < j < k :  1/(sinh^3(t_k - t_j) cosh t_j)  >  1/(sinh^3(t_k - t_i) cosh t_i)
// Returns the worst margin (min of required strict gaps); throws
// std::invalid_argument unless the list increases strictly.
double distance_inequalities_check(const std::vector<double>& thetas);

struct ConeProbeReport {
  int samples = 0;
  int pairs_checked = 0;
  double min_margin = 0.0;
  bool all_positive = false;
};

// Samples boundary points of the cone
//   K = { u : sum_i m_i cosh(theta_i) u_i = 0,
//         u_1/cosh t_1 <= ... <= u_N/cosh t_N }   (thetas sorted increasing)
// with at least one equality block, rejecting multiples of (cosh theta_i),
// and verifies that d/dt (u_j/cosh t_j - u_i/cosh t_i) > 0 under u' = A u for
// every tied pair i < j.  Throws ConeViolation if a margin is <= 0.
ConeProbeReport cone_invariance_probe(const GeodesicCC& g, int samples,
                                      std::uint64_t seed);

}  // namespace cch2
