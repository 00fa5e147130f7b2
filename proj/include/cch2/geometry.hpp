#pragma once

#include <array>
#include <Eigen/Core>

#include "cch2/types.hpp"

namespace cch2 {

// Bilinear form x1*x2 + y1*y2 - w1*w2.
double minkowski_dot(const HPoint& a, const HPoint& b);
double minkowski_dot(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

// arcosh(-a.b).  The argument is clamped to >= 1 to absorb roundoff;
// throws ArgumentBelowOne when -a.b < 1 - 1e-9, which no roundoff explains.
double geodesic_distance(const HPoint& a, const HPoint& b);

// sinh/cosh overflow guard: chart coordinates beyond this are rejected.
inline constexpr double kChartRangeLimit = 30.0;

HPoint chart_to_ambient(const ChartPoint& c);
ChartPoint ambient_to_chart(const HPoint& p);
HPoint lift(const GraphPoint& g);

// Rotation about the w-axis by `angle`, acting on (x, y).
HPoint so2_rotate(const HPoint& p, double angle);
Configuration so2_rotate(const Configuration& q, double angle);

double hyperboloid_defect(const HPoint& p);  // x^2 + y^2 - w^2 + 1

enum class ChartTag { Graph, ThetaPhi };

// Pointwise data of a chart u = (u0, u1) -> q(u) on the hyperboloid:
// position, Jacobian columns, and second partials.  second[0] = q_{u0 u0},
// second[1] = q_{u0 u1}, second[2] = q_{u1 u1}.
struct ChartFrame {
  Eigen::Vector3d q;
  Eigen::Matrix<double, 3, 2> jac;
  std::array<Eigen::Vector3d, 3> second;
};

ChartFrame chart_frame(double u0, double u1, ChartTag tag);

// Chart coordinates of an ambient point: (x, y) or (theta, phi).
Eigen::Vector2d chart_coords_of(const HPoint& p, ChartTag tag);
HPoint point_from_chart(double u0, double u1, ChartTag tag);

// Stacked chart coordinates of a configuration, coordinate-major:
// (u0 of every body, then u1 of every body).  Length 2N.
Eigen::VectorXd configuration_chart_coords(const Configuration& q, ChartTag tag);
Configuration configuration_from_chart(const Eigen::VectorXd& coords,
                                       const std::vector<double>& masses,
                                       ChartTag tag);

inline int chart_index(int body, int axis, int n) { return axis * n + body; }

}  // namespace cch2
