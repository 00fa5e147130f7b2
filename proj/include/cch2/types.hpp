#pragma once

// Core value types for configurations of point masses on the hyperbolic
// plane, represented on the upper sheet of the hyperboloid
//   x^2 + y^2 - w^2 = -1,  w > 0
// sitting in Minkowski 3-space with bilinear form diag(+1, +1, -1).

#include <Eigen/Core>
#include <vector>

namespace cch2 {

struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;
};

// Global coordinates (theta, phi) -> (sinh t, cosh t sinh p, cosh t cosh p).
// phi = 0 is the geodesic through (0,0,1) in the x-w plane.
struct ChartPoint {
  double theta = 0.0;
  double phi = 0.0;
};

// Coordinates of the projection (x, y, w) -> (x, y); inverse is the lift
// w = sqrt(x^2 + y^2 + 1).
struct GraphPoint {
  double x = 0.0;
  double y = 0.0;
};

struct Configuration {
  std::vector<HPoint> points;
  std::vector<double> masses;

  int size() const { return static_cast<int>(points.size()); }
};

// Per-body ambient vectors v_i with v_i Minkowski-orthogonal to q_i.
struct TangentVector {
  std::vector<Eigen::Vector3d> components;

  int size() const { return static_cast<int>(components.size()); }
};

}  // namespace cch2
