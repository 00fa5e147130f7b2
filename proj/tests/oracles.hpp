#pragma once

// Test oracles.  Everything here recomputes its target from raw coordinates
// on an independent code path (its own distance formulas, plain loops, finite
// differences), so that a library bug cannot cancel out of a comparison.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cch2/geometry.hpp"
#include "cch2/rng.hpp"
#include "cch2/types.hpp"

namespace oracle {

// hyperbolic law of cosines in the (theta, phi) chart
// q = (sinh th, cosh th sinh ph, cosh th cosh ph)
inline double cosh_dist_thetaphi(double th1, double ph1, double th2, double ph2) {
  return std::cosh(th1) * std::cosh(th2) * std::cosh(ph1 - ph2) -
         std::sinh(th1) * std::sinh(th2);
}

// graph chart with w = sqrt(1 + x^2 + y^2)
inline double cosh_dist_graph(double x1, double y1, double x2, double y2) {
  const double w1 = std::sqrt(1.0 + x1 * x1 + y1 * y1);
  const double w2 = std::sqrt(1.0 + x2 * x2 + y2 * y2);
  return w1 * w2 - x1 * x2 - y1 * y2;
}

// U and I evaluated straight from stacked chart coordinates (coordinate-major:
// first coordinate of every body, then the second coordinate of every body).
inline double potential_from_chart(const Eigen::VectorXd& z,
                                   const std::vector<double>& m, cch2::ChartTag tag) {
  const int n = static_cast<int>(m.size());
  double u = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double ch = (tag == cch2::ChartTag::ThetaPhi)
                            ? cosh_dist_thetaphi(z[i], z[n + i], z[j], z[n + j])
                            : cosh_dist_graph(z[i], z[n + i], z[j], z[n + j]);
      const double d = std::acosh(ch);
      u += m[i] * m[j] * std::cosh(d) / std::sinh(d);
    }
  }
  return u;
}

inline double inertia_from_chart(const Eigen::VectorXd& z, const std::vector<double>& m,
                                 cch2::ChartTag tag) {
  const int n = static_cast<int>(m.size());
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    if (tag == cch2::ChartTag::ThetaPhi) {
      const double st = std::sinh(z[i]);
      const double ct = std::cosh(z[i]);
      const double sp = std::sinh(z[n + i]);
      s += m[i] * (st * st + ct * ct * sp * sp);
    } else {
      s += m[i] * (z[i] * z[i] + z[n + i] * z[n + i]);
    }
  }
  return s;
}

// central differences
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& z, double h) {
  Eigen::VectorXd g(z.size());
  for (int k = 0; k < z.size(); ++k) {
    Eigen::VectorXd zp = z, zm = z;
    zp[k] += h;
    zm[k] -= h;
    g[k] = (f(zp) - f(zm)) / (2.0 * h);
  }
  return g;
}

inline Eigen::MatrixXd fd_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& z, double h) {
  const int n = static_cast<int>(z.size());
  Eigen::MatrixXd hess(n, n);
  const double f0 = f(z);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      double v;
      if (a == b) {
        Eigen::VectorXd zp = z, zm = z;
        zp[a] += h;
        zm[a] -= h;
        v = (f(zp) - 2.0 * f0 + f(zm)) / (h * h);
      } else {
        Eigen::VectorXd zpp = z, zpm = z, zmp = z, zmm = z;
        zpp[a] += h;
        zpp[b] += h;
        zpm[a] += h;
        zpm[b] -= h;
        zmp[a] -= h;
        zmp[b] += h;
        zmm[a] -= h;
        zmm[b] -= h;
        v = (f(zpp) - f(zpm) - f(zmp) + f(zmm)) / (4.0 * h * h);
      }
      hess(a, b) = v;
      hess(b, a) = v;
    }
  }
  return hess;
}

// well-separated random configuration expressed through chart draws
inline cch2::Configuration random_config(int n, cch2::Rng& rng, double range = 1.2,
                                         double min_gap = 0.25) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    cch2::Configuration q;
    for (int i = 0; i < n; ++i) {
      q.masses.push_back(rng.uniform(0.5, 2.0));
      q.points.push_back(cch2::chart_to_ambient(
          cch2::ChartPoint{rng.uniform(-range, range), rng.uniform(-range, range)}));
    }
    bool ok = true;
    double inertia = 0.0;
    for (int i = 0; i < n && ok; ++i) {
      inertia += q.masses[i] * (q.points[i].x * q.points[i].x +
                                q.points[i].y * q.points[i].y);
      for (int j = i + 1; j < n && ok; ++j) {
        const double ch = cosh_dist_graph(q.points[i].x, q.points[i].y, q.points[j].x,
                                          q.points[j].y);
        if (std::acosh(std::max(1.0, ch)) < min_gap) ok = false;
      }
    }
    if (ok && inertia > 0.05) return q;
  }
  throw std::runtime_error("oracle::random_config: sampling failed");
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double max_rel_err(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

}  // namespace oracle
