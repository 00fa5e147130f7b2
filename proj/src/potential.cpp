#include "cch2/potential.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cch2/errors.hpp"
#include "cch2/geometry.hpp"

namespace cch2 {

namespace {

double pair_distance_checked(const Configuration& q, int i, int j) {
  const double d = geodesic_distance(q.points[i], q.points[j]);
  if (d < kCollisionThreshold) {
    throw CollisionError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                         " are closer than the collision threshold");
  }
  return d;
}

Eigen::Vector3d as_vec(const HPoint& p) { return {p.x, p.y, p.w}; }

}  // namespace

double min_pairwise_distance(const Configuration& q) {
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < q.size(); ++i)
    for (int j = i + 1; j < q.size(); ++j)
      dmin = std::min(dmin, geodesic_distance(q.points[i], q.points[j]));
  return dmin;
}

bool near_collision(const Configuration& q) {
  return q.size() >= 2 && min_pairwise_distance(q) < kNearCollisionThreshold;
}

double force_function(const Configuration& q) {
  double u = 0.0;
  for (int i = 0; i < q.size(); ++i)
    for (int j = i + 1; j < q.size(); ++j)
      u += q.masses[i] * q.masses[j] / std::tanh(pair_distance_checked(q, i, j));
  return u;
}

double moment_of_inertia(const Configuration& q) {
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    const HPoint& p = q.points[i];
    s += q.masses[i] * (p.x * p.x + p.y * p.y);
  }
  return s;
}

std::vector<Eigen::Vector3d> grad_U(const Configuration& q) {
  const int n = q.size();
  std::vector<Eigen::Vector3d> g(n, Eigen::Vector3d::Zero());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = pair_distance_checked(q, i, j);
      const double sh = std::sinh(d), ch = std::cosh(d);
      const double k = q.masses[i] * q.masses[j] / (sh * sh * sh);
      const Eigen::Vector3d qi = as_vec(q.points[i]), qj = as_vec(q.points[j]);
      g[i] += k * (qj - ch * qi);
      g[j] += k * (qi - ch * qj);
    }
  }
  return g;
}

std::vector<Eigen::Vector3d> grad_I(const Configuration& q) {
  std::vector<Eigen::Vector3d> g(q.size());
  for (int i = 0; i < q.size(); ++i) {
    const HPoint& p = q.points[i];
    const double r2 = p.x * p.x + p.y * p.y;
    g[i] = 2.0 * q.masses[i] * Eigen::Vector3d{p.x * p.w * p.w, p.y * p.w * p.w, p.w * r2};
  }
  return g;
}

double mass_metric(const Configuration& q, const TangentVector& u,
                   const TangentVector& v) {
  double s = 0.0;
  for (int i = 0; i < q.size(); ++i)
    s += q.masses[i] * minkowski_dot(u.components[i], v.components[i]);
  return s;
}

double lambda_denominator(const Configuration& q) {
  // <M^-1 grad I, M^-1 grad I>_mass: |grad_i I|^2 = 4 m_i^2 w_i^2 r_i^2
  double den = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    const HPoint& p = q.points[i];
    den += 4.0 * q.masses[i] * (p.x * p.x + p.y * p.y) * p.w * p.w;
  }
  if (den < kDenominatorFloor) {
    throw DegenerateDenominator(
        "all bodies at (0,0,1): the multiplier is undefined there");
  }
  return den;
}

double lambda_numerator_direct(const Configuration& q) {
  const auto gu = grad_U(q);
  const auto gi = grad_I(q);
  double num = 0.0;
  // <M^-1 grad U, M^-1 grad I> = sum_i (1/m_i) grad_i U . grad_i I
  for (int i = 0; i < q.size(); ++i)
    num += minkowski_dot(gu[i], gi[i]) / q.masses[i];
  return num;
}

double lambda_numerator_pairsum(const Configuration& q) {
  double num = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    for (int j = i + 1; j < q.size(); ++j) {
      const double d = pair_distance_checked(q, i, j);
      const double sh = std::sinh(d), ch = std::cosh(d);
      const double wi = q.points[i].w, wj = q.points[j].w;
      num += 2.0 * q.masses[i] * q.masses[j] *
             ((wi * wi + wj * wj) * (1.0 - ch) - (wi - wj) * (wi - wj)) /
             (sh * sh * sh);
    }
  }
  return num;
}

double lambda_value(const Configuration& q) {
  return lambda_numerator_direct(q) / lambda_denominator(q);
}

TangentVector gradient_field_X(const Configuration& q) {
  const double lam = lambda_value(q);
  const auto gu = grad_U(q);
  const auto gi = grad_I(q);
  TangentVector x;
  x.components.resize(q.size());
  for (int i = 0; i < q.size(); ++i)
    x.components[i] = (gu[i] - lam * gi[i]) / q.masses[i];
  return x;
}

double cc_residual(const Configuration& q) {
  const TangentVector x = gradient_field_X(q);
  // the form is positive on tangent vectors; roundoff on a ~0 vector can
  // leave a tiny negative value
  return std::sqrt(std::max(0.0, mass_metric(q, x, x)));
}

double moment_relations_check(const Configuration& q) {
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    sx += q.masses[i] * q.points[i].x * q.points[i].w;
    sy += q.masses[i] * q.points[i].y * q.points[i].w;
  }
  return std::max(std::abs(sx), std::abs(sy));
}

}  // namespace cch2
