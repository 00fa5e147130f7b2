#include "cch2/geodesic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cch2/errors.hpp"
#include "cch2/geometry.hpp"
#include "cch2/potential.hpp"
#include "cch2/rng.hpp"

namespace cch2 {

Ordering canonical_ordering(const Ordering& o) {
  Ordering rev{std::vector<int>(o.slots.rbegin(), o.slots.rend())};
  return rev.slots < o.slots ? rev : o;
}

std::vector<Ordering> enumerate_orderings(int n) {
  if (n < 2) throw std::invalid_argument("enumerate_orderings: need n >= 2");
  double count = 0.5;
  for (int k = 2; k <= n; ++k) count *= k;
  if (count > 1e6) {
    throw SizeLimitError("enumerate_orderings: n!/2 exceeds 10^6 for n = " +
                         std::to_string(n));
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Ordering> out;
  do {
    Ordering o{perm};
    if (canonical_ordering(o) == o) out.push_back(std::move(o));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// 1-D pieces of the collinear system in body order.
struct LineSystem {
  const std::vector<double>& m;
  double c;

  // F = (dU/dtheta_i - lambda dI/dtheta_i, I - c)
  Eigen::VectorXd residual(const Eigen::VectorXd& z) const {
    const int n = static_cast<int>(m.size());
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n + 1);
    const double lam = z[n];
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = std::abs(z[i] - z[j]);
        const double sh = std::sinh(d);
        f[i] -= m[i] * m[j] * ((z[i] > z[j]) ? 1.0 : -1.0) / (sh * sh);
      }
      f[i] -= lam * m[i] * std::sinh(2.0 * z[i]);
      const double s = std::sinh(z[i]);
      inertia += m[i] * s * s;
    }
    f[n] = inertia - c;
    return f;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z) const {
    const int n = static_cast<int>(m.size());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + 1, n + 1);
    const double lam = z[n];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = std::abs(z[i] - z[j]);
        const double sh = std::sinh(d);
        const double k = 2.0 * m[i] * m[j] * std::cosh(d) / (sh * sh * sh);
        jac(i, i) += k;
        jac(i, j) = -k;
      }
      jac(i, i) -= 2.0 * lam * m[i] * std::cosh(2.0 * z[i]);
      jac(i, n) = -m[i] * std::sinh(2.0 * z[i]);
      jac(n, i) = m[i] * std::sinh(2.0 * z[i]);
    }
    return jac;
  }
};

bool ordered_with_gap(const Eigen::VectorXd& z, const Ordering& o, double gap) {
  for (size_t k = 0; k + 1 < o.slots.size(); ++k)
    if (z[o.slots[k + 1]] - z[o.slots[k]] < gap) return false;
  return true;
}

// Shift all thetas by the root of sum m_i sinh(2(theta_i + s))/2 = 0.
void balance_shift(std::vector<double>& th, const std::vector<double>& m) {
  auto f = [&](double s) {
    double v = 0.0;
    for (size_t i = 0; i < th.size(); ++i) v += m[i] * std::sinh(2.0 * (th[i] + s)) / 2.0;
    return v;
  };
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200 && f(lo) > 0.0; ++it) lo *= 1.5;
  for (int it = 0; it < 200 && f(hi) < 0.0; ++it) hi *= 1.5;
  for (int it = 0; it < 90; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  for (double& t : th) t += s;
}

// Dilate thetas so that sum m_i sinh^2(s theta_i) = c.
void dilate_to_level(std::vector<double>& th, const std::vector<double>& m, double c) {
  auto inertia = [&](double s) {
    double v = 0.0;
    for (size_t i = 0; i < th.size(); ++i) {
      const double x = std::sinh(s * th[i]);
      v += m[i] * x * x;
    }
    return v;
  };
  double hi = 1.0;
  int guard = 0;
  while (inertia(hi) < c && guard++ < 100) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 90; ++it) {
    const double mid = 0.5 * (lo + hi);
    (inertia(mid) < c ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  for (double& t : th) t *= s;
}

}  // namespace

GeodesicCC solve_geodesic_from(const std::vector<double>& masses,
                               const Ordering& ordering, double c,
                               std::vector<double> theta0, int max_iterations) {
  const int n = static_cast<int>(masses.size());
  if (static_cast<int>(ordering.slots.size()) != n) {
    throw std::invalid_argument("solve_geodesic: ordering size mismatch");
  }
  LineSystem sys{masses, c};

  Eigen::VectorXd z(n + 1);
  for (int i = 0; i < n; ++i) z[i] = theta0[i];
  {
    Configuration q;
    q.masses = masses;
    for (int i = 0; i < n; ++i)
      q.points.push_back(HPoint{std::sinh(z[i]), 0.0, std::cosh(z[i])});
    z[n] = lambda_value(q);
  }

  int it = 0;
  for (; it < max_iterations; ++it) {
    const Eigen::VectorXd f = sys.residual(z);
    const double fn = f.lpNorm<Eigen::Infinity>();
    if (fn < 1e-13) break;

    const Eigen::VectorXd delta = sys.jacobian(z).partialPivLu().solve(-f);
    double s = 1.0;
    bool accepted = false;
    while (s >= 1e-8) {
      Eigen::VectorXd zn = z + s * delta;
      const bool valid = ordered_with_gap(zn.head(n), ordering, 1e-10) &&
                         zn.head(n).lpNorm<Eigen::Infinity>() <= kChartRangeLimit;
      if (valid && sys.residual(zn).lpNorm<Eigen::Infinity>() <= (1.0 - 1e-4 * s) * fn) {
        z = zn;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;  // roundoff floor (or a genuine stall: gated below)
  }

  const double fn = sys.residual(z).lpNorm<Eigen::Infinity>();
  if (fn >= 1e-10) {
    throw NoConvergence("solve_geodesic: residual " + std::to_string(fn) +
                        " after " + std::to_string(it) + " iterations");
  }

  GeodesicCC g;
  g.thetas.assign(z.data(), z.data() + n);
  g.masses = masses;
  g.level_c = c;
  g.lambda = z[n];
  g.residual = fn;
  g.ordering = canonical_ordering(ordering);
  g.iterations = it;
  return g;
}

GeodesicCC solve_geodesic(const std::vector<double>& masses, const Ordering& ordering,
                          double c, int max_iterations) {
  const int n = static_cast<int>(masses.size());
  std::vector<double> th(n);
  for (int k = 0; k < n; ++k) th[ordering.slots[k]] = k - 0.5 * (n - 1);
  for (int round = 0; round < 2; ++round) {
    balance_shift(th, masses);
    dilate_to_level(th, masses, c);
  }
  return solve_geodesic_from(masses, ordering, c, th, max_iterations);
}

Configuration embed(const GeodesicCC& g) {
  Configuration q;
  q.masses = g.masses;
  q.points.reserve(g.thetas.size());
  for (double t : g.thetas)
    q.points.push_back(HPoint{std::sinh(t), 0.0, std::cosh(t)});
  return q;
}

SpectralMatrices build_spectral_matrices(const GeodesicCC& g) {
  const int n = static_cast<int>(g.thetas.size());
  SpectralMatrices s;
  s.lambda = g.lambda;
  s.C = Eigen::MatrixXd::Zero(n, n);
  s.Mbar = Eigen::MatrixXd::Zero(n, n);
  s.A = Eigen::MatrixXd::Zero(n, n);
  s.H_phi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    s.C(i, i) = std::cosh(g.thetas[i]);
    s.Mbar(i, i) = g.masses[i];
  }
  for (int i = 0; i < n; ++i) {
    const double chi = std::cosh(g.thetas[i]);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(g.thetas[i] - g.thetas[j]);
      const double sh3 = std::pow(std::sinh(d), 3);
      const double chj = std::cosh(g.thetas[j]);
      s.A(i, j) = g.masses[j] / sh3;
      s.A(i, i) -= g.masses[j] * chj / (chi * sh3);
      s.H_phi(i, j) = g.masses[i] * g.masses[j] * chi * chj / sh3;
      s.H_phi(i, i) -= g.masses[i] * g.masses[j] * chi * chj / sh3;
    }
    s.H_phi(i, i) -= 2.0 * g.lambda * g.masses[i] * chi * chi;
  }
  return s;
}

namespace {

// Symmetric matrix similar to A: conjugation by Mbar^{1/2} gives
// S_ij = sqrt(m_i m_j) / sinh^3 d_ij off the diagonal, same diagonal.
Eigen::MatrixXd symmetrized_interaction(const GeodesicCC& g) {
  const int n = static_cast<int>(g.thetas.size());
  Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double chi = std::cosh(g.thetas[i]);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(g.thetas[i] - g.thetas[j]);
      const double sh3 = std::pow(std::sinh(d), 3);
      sym(i, j) = std::sqrt(g.masses[i] * g.masses[j]) / sh3;
      sym(i, i) -= g.masses[j] * std::cosh(g.thetas[j]) / (chi * sh3);
    }
  }
  return sym;
}

}  // namespace

Eigen::VectorXd interaction_eigenvalues(const SpectralMatrices& s) {
  const int n = static_cast<int>(s.A.rows());
  Eigen::MatrixXd sym(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sym(i, j) = (i == j) ? s.A(i, i)
                           : std::sqrt(s.A(i, j) * s.A(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

InertiaReport verify_inertia_via_sylvester(const GeodesicCC& g) {
  const SpectralMatrices s = build_spectral_matrices(g);
  const int n = static_cast<int>(g.thetas.size());
  InertiaReport r;
  r.h_phi = spectrum_of(s.H_phi);
  const Eigen::MatrixXd shifted =
      symmetrized_interaction(g) - 2.0 * g.lambda * Eigen::MatrixXd::Identity(n, n);
  r.a_shifted = spectrum_of(shifted);
  r.match = r.h_phi.n_minus == r.a_shifted.n_minus &&
            r.h_phi.n_zero == r.a_shifted.n_zero &&
            r.h_phi.n_plus == r.a_shifted.n_plus;
  if (!r.match) {
    throw InertiaMismatch(
        "inertia of H_phi (" + std::to_string(r.h_phi.n_minus) + "," +
        std::to_string(r.h_phi.n_zero) + "," + std::to_string(r.h_phi.n_plus) +
        ") differs from inertia of A - 2 lambda (" +
        std::to_string(r.a_shifted.n_minus) + "," + std::to_string(r.a_shifted.n_zero) +
        "," + std::to_string(r.a_shifted.n_plus) + ")");
  }
  return r;
}

double distance_inequalities_check(const std::vector<double>& thetas) {
  const int n = static_cast<int>(thetas.size());
  for (int i = 0; i + 1 < n; ++i) {
    if (!(thetas[i] < thetas[i + 1])) {
      throw std::invalid_argument("distance_inequalities_check: thetas must increase strictly");
    }
  }
  auto term = [&](int a, int b) {
    // 1 / (sinh^3(theta_b - theta_a) cosh theta_b) for theta_b > theta_a... sign
    // handled by caller; a and b index the distance, the cosh belongs to b.
    const double sh = std::sinh(std::abs(thetas[b] - thetas[a]));
    return 1.0 / (sh * sh * sh * std::cosh(thetas[b]));
  };
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        worst = std::min(worst, term(k, i) - term(k, j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double shj = std::sinh(thetas[k] - thetas[j]);
        const double shi = std::sinh(thetas[k] - thetas[i]);
        worst = std::min(worst, 1.0 / (shj * shj * shj * std::cosh(thetas[j])) -
                                    1.0 / (shi * shi * shi * std::cosh(thetas[i])));
      }
  return worst;
}

ConeProbeReport cone_invariance_probe(const GeodesicCC& g, int samples,
                                      std::uint64_t seed) {
  const int n = static_cast<int>(g.thetas.size());
  // sorted order along the line
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return g.thetas[a] < g.thetas[b]; });
  GeodesicCC sorted = g;
  for (int k = 0; k < n; ++k) {
    sorted.thetas[k] = g.thetas[perm[k]];
    sorted.masses[k] = g.masses[perm[k]];
  }
  const Eigen::MatrixXd a = build_spectral_matrices(sorted).A;

  std::vector<double> ch(n), w(n);
  double wsum = 0.0;
  for (int k = 0; k < n; ++k) {
    ch[k] = std::cosh(sorted.thetas[k]);
    w[k] = sorted.masses[k] * ch[k] * ch[k];
    wsum += w[k];
  }

  Rng rng(seed);
  ConeProbeReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  int attempts = 0;
  const int max_attempts = 200 * samples + 200;
  while (report.samples < samples && attempts++ < max_attempts) {
    // boundary point in slope coordinates t_k = u_k / cosh(theta_k):
    // sorted values with one tied block, then shifted into the hyperplane
    // sum m_k cosh^2(theta_k) t_k = 0 (shifts move along the rejected ray).
    std::vector<double> t(n);
    for (double& v : t) v = rng.uniform(-1.0, 1.0);
    std::sort(t.begin(), t.end());
    const int lo = rng.next_below(n - 1);
    const int hi = lo + 1 + rng.next_below(n - 1 - lo);
    double mean = 0.0;
    for (int k = lo; k <= hi; ++k) mean += t[k];
    mean /= (hi - lo + 1);
    for (int k = lo; k <= hi; ++k) t[k] = mean;

    double shift = 0.0;
    for (int k = 0; k < n; ++k) shift += w[k] * t[k];
    shift /= wsum;
    for (double& v : t) v -= shift;

    double tmax = 0.0;
    for (double v : t) tmax = std::max(tmax, std::abs(v));
    if (tmax < 1e-12) continue;  // multiple of (cosh theta_k): not a boundary ray

    Eigen::VectorXd u(n);
    for (int k = 0; k < n; ++k) u[k] = t[k] * ch[k];
    const Eigen::VectorXd du = a * u;

    ++report.samples;
    for (int i = lo; i <= hi; ++i) {
      for (int j = i + 1; j <= hi; ++j) {
        const double margin = du[j] / ch[j] - du[i] / ch[i];
        ++report.pairs_checked;
        report.min_margin = std::min(report.min_margin, margin);
        if (margin <= 0.0) {
          throw ConeViolation("cone probe: nonpositive boundary derivative " +
                              std::to_string(margin));
        }
      }
    }
  }
  report.all_positive = true;
  if (report.pairs_checked == 0) report.min_margin = 0.0;
  return report;
}

}  // namespace cch2
