#pragma once

// Force function, moment of inertia, their gradients on the hyperboloid,
// and the projected field whose restpoints are the central configurations.

#include <Eigen/Core>
#include <vector>

#include "cch2/types.hpp"

namespace cch2 {

inline constexpr double kCollisionThreshold = 1e-12;
inline constexpr double kNearCollisionThreshold = 1e-4;
inline constexpr double kDenominatorFloor = 1e-14;

double min_pairwise_distance(const Configuration& q);
bool near_collision(const Configuration& q);

// U = sum_{i<j} m_i m_j coth d_ij.  Throws CollisionError below the
// collision threshold.
double force_function(const Configuration& q);

// I = sum_i m_i (x_i^2 + y_i^2)
double moment_of_inertia(const Configuration& q);

// Gradients with respect to the metric induced on each hyperboloid factor
// (not mass-weighted).  Components are tangent at each body.
std::vector<Eigen::Vector3d> grad_U(const Configuration& q);
std::vector<Eigen::Vector3d> grad_I(const Configuration& q);

// <u, v> = sum_i m_i u_i . v_i  (Minkowski dot per body); positive definite
// on tangent vectors.
double mass_metric(const Configuration& q, const TangentVector& u,
                   const TangentVector& v);

// Multiplier lambda(q) = <M^-1 grad U, M^-1 grad I> / <M^-1 grad I, M^-1 grad I>.
// Negative for every noncollision configuration.
double lambda_value(const Configuration& q);

// Numerator of lambda, two algebraically equal routes:
// the direct inner product and the pair sum
//   sum_{i<j} m_i m_j [ (w_i^2+w_j^2)(1 - cosh d_ij) - (w_i - w_j)^2 ] / sinh^3 d_ij.
double lambda_numerator_direct(const Configuration& q);
double lambda_numerator_pairsum(const Configuration& q);

// Denominator <M^-1 grad I, M^-1 grad I> = 4 sum_i m_i r_i^2 w_i^2; throws
// DegenerateDenominator below the floor (every body at the apex).
double lambda_denominator(const Configuration& q);

// X = M^-1 grad U - lambda(q) M^-1 grad I, tangent to {I = c} minus collisions.
TangentVector gradient_field_X(const Configuration& q);

// ||X|| in the mass metric; zero exactly at central configurations.
double cc_residual(const Configuration& q);

// max(|sum m_i x_i w_i|, |sum m_i y_i w_i|); vanishes at central configurations.
double moment_relations_check(const Configuration& q);

}  // namespace cch2
