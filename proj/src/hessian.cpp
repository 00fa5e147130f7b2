#include "cch2/hessian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <string>

#include "cch2/errors.hpp"
#include "cch2/potential.hpp"

namespace cch2 {

namespace {

std::vector<ChartFrame> frames_of(const Configuration& q, ChartTag tag) {
  std::vector<ChartFrame> f;
  f.reserve(q.size());
  for (const auto& p : q.points) {
    const Eigen::Vector2d u = chart_coords_of(p, tag);
    f.push_back(chart_frame(u[0], u[1], tag));
  }
  return f;
}

double mdot(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return minkowski_dot(a, b);
}

// U restricted to one pair depends on s = -q_i.q_j = cosh d only:
//   u(s) = s / sqrt(s^2 - 1),  u'   = -(s^2-1)^{-3/2} = -1/sinh^3 d,
//                              u''  = 3 s (s^2-1)^{-5/2} = 3 cosh d / sinh^5 d.
struct PairKernel {
  double du;   // u'(s)
  double ddu;  // u''(s)
};

PairKernel pair_kernel(const Configuration& q, int i, int j) {
  const double d = geodesic_distance(q.points[i], q.points[j]);
  if (d < kCollisionThreshold) {
    throw CollisionError("bodies " + std::to_string(i) + " and " + std::to_string(j) +
                         " are closer than the collision threshold");
  }
  const double sh = std::sinh(d), ch = std::cosh(d);
  const double sh3 = sh * sh * sh;
  return PairKernel{-1.0 / sh3, 3.0 * ch / (sh3 * sh * sh)};
}

}  // namespace

Eigen::VectorXd chart_grad_U(const Configuration& q, ChartTag tag) {
  const int n = q.size();
  const auto frames = frames_of(q, tag);
  const auto gu = grad_U(q);
  Eigen::VectorXd g(2 * n);
  // dU(d/du_{i,a}) = grad_i U . J_i[:,a]  (Minkowski pairing of tangent vectors)
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a)
      g[chart_index(i, a, n)] = mdot(gu[i], frames[i].jac.col(a));
  return g;
}

Eigen::VectorXd chart_grad_I(const Configuration& q, ChartTag tag) {
  const int n = q.size();
  const auto frames = frames_of(q, tag);
  Eigen::VectorXd g(2 * n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d& p = frames[i].q;
    for (int a = 0; a < 2; ++a) {
      const auto col = frames[i].jac.col(a);
      g[chart_index(i, a, n)] =
          2.0 * q.masses[i] * (p[0] * col[0] + p[1] * col[1]);
    }
  }
  return g;
}

Eigen::MatrixXd chart_hessian_U(const Configuration& q, ChartTag tag) {
  const int n = q.size();
  const auto frames = frames_of(q, tag);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PairKernel k = pair_kernel(q, i, j);
      const double mm = q.masses[i] * q.masses[j];
      const Eigen::Vector3d &qi = frames[i].q, &qj = frames[j].q;

      // first partials of s = -q_i.q_j
      Eigen::Vector2d dsi, dsj;
      for (int a = 0; a < 2; ++a) {
        dsi[a] = -mdot(frames[i].jac.col(a), qj);
        dsj[a] = -mdot(frames[j].jac.col(a), qi);
      }

      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const int ia = chart_index(i, a, n), ib = chart_index(i, b, n);
          const int ja = chart_index(j, a, n), jb = chart_index(j, b, n);

          if (b >= a) {
            const int sa = a + b;  // index into the packed second-derivative triple
            const double sii = -mdot(frames[i].second[sa], qj);
            const double sjj = -mdot(frames[j].second[sa], qi);
            h(ia, ib) += mm * (k.ddu * dsi[a] * dsi[b] + k.du * sii);
            h(ja, jb) += mm * (k.ddu * dsj[a] * dsj[b] + k.du * sjj);
            if (b > a) {
              h(ib, ia) = h(ia, ib);
              h(jb, ja) = h(ja, jb);
            }
          }
          const double sij = -mdot(frames[i].jac.col(a), frames[j].jac.col(b));
          const double v = mm * (k.ddu * dsi[a] * dsj[b] + k.du * sij);
          h(ia, jb) += v;
          h(jb, ia) += v;
        }
      }
    }
  }
  return h;
}

Eigen::MatrixXd chart_hessian_I(const Configuration& q, ChartTag tag) {
  const int n = q.size();
  const auto frames = frames_of(q, tag);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  // I is a sum over bodies of m_i (x^2 + y^2): block diagonal.
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d& p = frames[i].q;
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        const auto ca = frames[i].jac.col(a);
        const auto cb = frames[i].jac.col(b);
        const Eigen::Vector3d& s = frames[i].second[a + b];
        const double v = 2.0 * q.masses[i] *
                         (ca[0] * cb[0] + ca[1] * cb[1] + p[0] * s[0] + p[1] * s[1]);
        h(chart_index(i, a, n), chart_index(i, b, n)) = v;
        h(chart_index(i, b, n), chart_index(i, a, n)) = v;
      }
    }
  }
  return h;
}

Eigen::MatrixXd hessian_chart(const Configuration& q, ChartTag tag) {
  const double lam = lambda_value(q);
  return chart_hessian_U(q, tag) - lam * chart_hessian_I(q, tag);
}

Eigen::MatrixXd chart_mass_metric(const Configuration& q, ChartTag tag) {
  const int n = q.size();
  const auto frames = frames_of(q, tag);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < 2; ++a)
      for (int b = a; b < 2; ++b) {
        const double v =
            q.masses[i] * mdot(frames[i].jac.col(a), frames[i].jac.col(b));
        g(chart_index(i, a, n), chart_index(i, b, n)) = v;
        g(chart_index(i, b, n), chart_index(i, a, n)) = v;
      }
  }
  return g;
}

Eigen::MatrixXd tangent_basis(const Configuration& q, ChartTag tag) {
  const int n2 = 2 * q.size();
  const Eigen::VectorXd gi = chart_grad_I(q, tag);
  const Eigen::MatrixXd g = chart_mass_metric(q, tag);

  // Work in coordinates where the mass metric is the identity: y = L^T v with
  // G = L L^T.  The constraint row becomes gt = L^-1 gi.
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  Eigen::VectorXd gt = llt.matrixL().solve(gi);
  const double norm = gt.norm();
  if (norm < 1e-12) {
    throw DegenerateDenominator("grad I vanishes: no level-set tangent space here");
  }

  // Householder reflector mapping gt to a multiple of e_0; its remaining
  // columns are an orthonormal basis of the kernel of gt^T.
  Eigen::VectorXd u = gt;
  u[0] += (gt[0] >= 0.0 ? norm : -norm);
  const double uu = u.squaredNorm();
  Eigen::MatrixXd y(n2, n2 - 1);
  for (int c = 1; c < n2; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n2);
    e[c] = 1.0;
    y.col(c - 1) = e - (2.0 * u[c] / uu) * u;
  }
  return llt.matrixL().transpose().solve(y);
}

ConstrainedHessian constrained_hessian(const Configuration& q, ChartTag tag) {
  ConstrainedHessian out;
  out.chart_tag = tag;
  out.basis = tangent_basis(q, tag);
  const Eigen::MatrixXd h = hessian_chart(q, tag);
  Eigen::MatrixXd m = out.basis.transpose() * h * out.basis;
  out.matrix = 0.5 * (m + m.transpose());
  out.at_critical_point = cc_residual(q) < 1e-8;
  return out;
}

SpectrumReport spectrum_of(const Eigen::MatrixXd& sym, double zero_tol_factor) {
  const double scale = sym.cwiseAbs().maxCoeff();
  const double asym = (sym - sym.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(scale, 1.0)) {
    throw NonSymmetricError("spectrum requested for a non-symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()),
                                                    Eigen::EigenvaluesOnly);
  SpectrumReport r;
  const Eigen::VectorXd ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  const double emax = ev.cwiseAbs().maxCoeff();
  r.zero_tolerance = zero_tol_factor * std::max(emax, 1.0);
  for (double e : r.eigenvalues) {
    if (std::abs(e) <= r.zero_tolerance)
      ++r.n_zero;
    else if (e < 0.0)
      ++r.n_minus;
    else
      ++r.n_plus;
    if (std::abs(e) >= 0.1 * r.zero_tolerance && std::abs(e) <= 10.0 * r.zero_tolerance)
      r.marginal = true;
  }
  r.nondegenerate = (r.n_zero == 1);
  return r;
}

SpectrumReport spectrum(const ConstrainedHessian& h, double zero_tol_factor) {
  return spectrum_of(h.matrix, zero_tol_factor);
}

TangentVector rotation_null_vector(const Configuration& q) {
  TangentVector v;
  v.components.reserve(q.size());
  for (const auto& p : q.points)
    v.components.push_back(Eigen::Vector3d{-p.y, p.x, 0.0});
  return v;
}

Eigen::VectorXd tangent_chart_components(const Configuration& q,
                                         const TangentVector& v, ChartTag tag) {
  const int n = q.size();
  const auto frames = frames_of(q, tag);
  Eigen::VectorXd c(2 * n);
  for (int i = 0; i < n; ++i) {
    // tangent vectors lie in the column space of J_i; least squares is exact
    const Eigen::Vector2d ci =
        frames[i].jac.colPivHouseholderQr().solve(v.components[i]);
    c[chart_index(i, 0, n)] = ci[0];
    c[chart_index(i, 1, n)] = ci[1];
  }
  return c;
}

}  // namespace cch2
