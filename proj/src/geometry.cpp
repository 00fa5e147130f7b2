#include "cch2/geometry.hpp"

#include <cmath>
#include <string>

#include "cch2/errors.hpp"

namespace cch2 {

double minkowski_dot(const HPoint& a, const HPoint& b) {
  return a.x * b.x + a.y * b.y - a.w * b.w;
}

double minkowski_dot(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

double geodesic_distance(const HPoint& a, const HPoint& b) {
  // identical triples pair to exactly -1 only in exact arithmetic; acosh
  // would turn the 1-ulp defect into a ~1e-8 distance
  if (a.x == b.x && a.y == b.y && a.w == b.w) return 0.0;
  const double arg = -minkowski_dot(a, b);
  if (arg < 1.0 - 1e-9) {
    throw ArgumentBelowOne("geodesic_distance: -p.q = " + std::to_string(arg) +
                           " is below 1 beyond roundoff");
  }
  return std::acosh(arg < 1.0 ? 1.0 : arg);
}

namespace {

void check_chart_range(double u0, double u1) {
  if (std::abs(u0) > kChartRangeLimit || std::abs(u1) > kChartRangeLimit) {
    throw ChartRangeError("chart coordinate exceeds |30|; sinh/cosh would overflow");
  }
}

}  // namespace

HPoint chart_to_ambient(const ChartPoint& c) {
  check_chart_range(c.theta, c.phi);
  const double st = std::sinh(c.theta), ct = std::cosh(c.theta);
  const double sp = std::sinh(c.phi), cp = std::cosh(c.phi);
  return HPoint{st, ct * sp, ct * cp};
}

ChartPoint ambient_to_chart(const HPoint& p) {
  const double theta = std::asinh(p.x);
  const double phi = std::asinh(p.y / std::cosh(theta));
  return ChartPoint{theta, phi};
}

HPoint lift(const GraphPoint& g) {
  return HPoint{g.x, g.y, std::sqrt(g.x * g.x + g.y * g.y + 1.0)};
}

HPoint so2_rotate(const HPoint& p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return HPoint{c * p.x - s * p.y, s * p.x + c * p.y, p.w};
}

Configuration so2_rotate(const Configuration& q, double angle) {
  Configuration out = q;
  for (auto& p : out.points) p = so2_rotate(p, angle);
  return out;
}

double hyperboloid_defect(const HPoint& p) {
  return p.x * p.x + p.y * p.y - p.w * p.w + 1.0;
}

ChartFrame chart_frame(double u0, double u1, ChartTag tag) {
  ChartFrame f;
  if (tag == ChartTag::ThetaPhi) {
    check_chart_range(u0, u1);
    const double st = std::sinh(u0), ct = std::cosh(u0);
    const double sp = std::sinh(u1), cp = std::cosh(u1);
    f.q = {st, ct * sp, ct * cp};
    f.jac.col(0) = Eigen::Vector3d{ct, st * sp, st * cp};
    f.jac.col(1) = Eigen::Vector3d{0.0, ct * cp, ct * sp};
    f.second[0] = f.q;                                  // d2q/dtheta2
    f.second[1] = Eigen::Vector3d{0.0, st * cp, st * sp};
    f.second[2] = Eigen::Vector3d{0.0, ct * sp, ct * cp};
  } else {
    const double w = std::sqrt(u0 * u0 + u1 * u1 + 1.0);
    const double w3 = w * w * w;
    f.q = {u0, u1, w};
    f.jac.col(0) = Eigen::Vector3d{1.0, 0.0, u0 / w};
    f.jac.col(1) = Eigen::Vector3d{0.0, 1.0, u1 / w};
    f.second[0] = Eigen::Vector3d{0.0, 0.0, (1.0 + u1 * u1) / w3};
    f.second[1] = Eigen::Vector3d{0.0, 0.0, -u0 * u1 / w3};
    f.second[2] = Eigen::Vector3d{0.0, 0.0, (1.0 + u0 * u0) / w3};
  }
  return f;
}

Eigen::Vector2d chart_coords_of(const HPoint& p, ChartTag tag) {
  if (tag == ChartTag::Graph) return {p.x, p.y};
  const ChartPoint c = ambient_to_chart(p);
  return {c.theta, c.phi};
}

HPoint point_from_chart(double u0, double u1, ChartTag tag) {
  if (tag == ChartTag::Graph) return lift(GraphPoint{u0, u1});
  return chart_to_ambient(ChartPoint{u0, u1});
}

Eigen::VectorXd configuration_chart_coords(const Configuration& q, ChartTag tag) {
  const int n = q.size();
  Eigen::VectorXd coords(2 * n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2d u = chart_coords_of(q.points[i], tag);
    coords[chart_index(i, 0, n)] = u[0];
    coords[chart_index(i, 1, n)] = u[1];
  }
  return coords;
}

Configuration configuration_from_chart(const Eigen::VectorXd& coords,
                                       const std::vector<double>& masses,
                                       ChartTag tag) {
  const int n = static_cast<int>(masses.size());
  Configuration q;
  q.masses = masses;
  q.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    q.points.push_back(point_from_chart(coords[chart_index(i, 0, n)],
                                        coords[chart_index(i, 1, n)], tag));
  }
  return q;
}

}  // namespace cch2
