#include "cch2/search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cch2/errors.hpp"
#include "cch2/geometry.hpp"
#include "cch2/potential.hpp"

namespace cch2 {

namespace {

double level_value(const Configuration& q) { return moment_of_inertia(q); }

// Radial rescaling (x,y) -> beta (x,y), w recomputed: exact projection onto
// {I = c} within the hyperboloid.
Configuration project_to_level(const Configuration& q, double c) {
  const double inertia = level_value(q);
  if (inertia <= 0.0) {
    throw DegenerateDenominator("cannot project onto {I = c} from the apex");
  }
  const double beta = std::sqrt(c / inertia);
  Configuration out = q;
  for (auto& p : out.points) {
    p.x *= beta;
    p.y *= beta;
    p.w = std::sqrt(1.0 + p.x * p.x + p.y * p.y);
  }
  return out;
}

struct FlowLeg {
  Configuration config;
  double residual;
  FlowStatus status;
  int steps;
};

FlowLeg run_flow(const Configuration& start, double c, const SearchParams& p,
                 int direction) {
  Configuration q = project_to_level(start, c);
  double u_val = force_function(q);
  double h = p.flow_step_init;

  Configuration best = q;
  double best_res = std::numeric_limits<double>::infinity();

  int step = 0;
  for (; step < p.flow_max_steps; ++step) {
    const TangentVector x = gradient_field_X(q);
    const double res = std::sqrt(mass_metric(q, x, x));
    if (res < best_res) {
      best_res = res;
      best = q;
    }
    if (res < p.switch_threshold) {
      return FlowLeg{q, res, FlowStatus::Converged, step};
    }

    bool accepted = false;
    while (h >= p.flow_step_min) {
      Configuration qn = q;
      for (int i = 0; i < q.size(); ++i) {
        qn.points[i].x += direction * h * x.components[i][0];
        qn.points[i].y += direction * h * x.components[i][1];
        qn.points[i].w = std::sqrt(1.0 + qn.points[i].x * qn.points[i].x +
                                   qn.points[i].y * qn.points[i].y);
      }
      qn = project_to_level(qn, c);
      if (min_pairwise_distance(qn) < p.min_distance_floor) {
        return FlowLeg{best, best_res, FlowStatus::CollisionApproach, step};
      }
      const double u_new = force_function(qn);
      // X ascends U; a descent step must not increase it (and vice versa)
      const double slack = 1e-14 * std::abs(u_val);
      if ((direction < 0 && u_new <= u_val + slack) ||
          (direction > 0 && u_new >= u_val - slack)) {
        q = qn;
        u_val = u_new;
        accepted = true;
        break;
      }
      h *= 0.5;
    }
    if (!accepted) break;  // step size underflow: the field is fighting the projection
    h = std::min(h * 1.3, p.flow_step_max);
  }
  return FlowLeg{best, best_res, FlowStatus::StepBudgetExhausted, step};
}

}  // namespace

FlowResult flow_integrate(const Configuration& start, double c, const SearchParams& p) {
  const FlowLeg down = run_flow(start, c, p, -1);
  if (down.status == FlowStatus::Converged) {
    return FlowResult{down.config, down.residual, down.status, down.steps, -1};
  }
  const FlowLeg up = run_flow(start, c, p, +1);
  if (up.status == FlowStatus::Converged) {
    return FlowResult{up.config, up.residual, up.status, up.steps, +1};
  }
  const bool both_collided = down.status == FlowStatus::CollisionApproach &&
                             up.status == FlowStatus::CollisionApproach;
  const FlowLeg& pick = (down.residual <= up.residual) ? down : up;
  return FlowResult{pick.config, pick.residual,
                    both_collided ? FlowStatus::CollisionApproach
                                  : FlowStatus::StepBudgetExhausted,
                    down.steps + up.steps, (&pick == &down) ? -1 : +1};
}

NewtonResult newton_refine(const Configuration& start, double c, const SearchParams& p) {
  const int n = start.size();
  const double entry_res = cc_residual(start);
  if (entry_res >= p.newton_basin) {
    throw NoConvergence("newton_refine: start residual " + std::to_string(entry_res) +
                        " is outside the basin threshold");
  }
  if (entry_res < 1e-12) {
    return NewtonResult{start, lambda_value(start), entry_res, 0, true, {entry_res}};
  }

  const ChartTag tag = ChartTag::Graph;
  Eigen::VectorXd z = configuration_chart_coords(start, tag);
  double lam = lambda_value(start);

  NewtonResult out;
  out.residual_history.push_back(entry_res);

  auto main_residual = [&](const Eigen::VectorXd& coords, double lambda,
                           const Configuration& q) {
    Eigen::VectorXd r(2 * n + 1);
    r.head(2 * n) = chart_grad_U(q, tag) - lambda * chart_grad_I(q, tag);
    r[2 * n] = moment_of_inertia(q) - c;
    (void)coords;
    return r;
  };

  Configuration q = start;
  Eigen::VectorXd r = main_residual(z, lam, q);
  double step_norm = 1.0;

  int it = 0;
  for (; it < p.newton_max_iter; ++it) {
    if (step_norm < p.newton_tol_step) break;

    Eigen::MatrixXd jac(2 * n + 2, 2 * n + 1);
    jac.topLeftCorner(2 * n, 2 * n) =
        chart_hessian_U(q, tag) - lam * chart_hessian_I(q, tag);
    jac.topRightCorner(2 * n, 1) = -chart_grad_I(q, tag);
    jac.block(2 * n, 0, 1, 2 * n) = chart_grad_I(q, tag).transpose();
    jac(2 * n, 2 * n) = 0.0;
    // gauge: the step must not move along the rotation orbit
    jac.block(2 * n + 1, 0, 1, 2 * n) =
        tangent_chart_components(q, rotation_null_vector(q), tag).transpose();
    jac(2 * n + 1, 2 * n) = 0.0;

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n + 2);
    rhs.head(2 * n + 1) = -r;
    const Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(rhs);
    if (!delta.allFinite() || delta.lpNorm<Eigen::Infinity>() > 1e6) {
      throw SingularSystem("newton_refine: unbounded correction step");
    }

    const double rn = r.norm();
    double s = 1.0;
    bool accepted = false;
    while (s >= 1e-6) {
      const Eigen::VectorXd zn = z + s * delta.head(2 * n);
      const double lam_n = lam + s * delta[2 * n];
      Configuration qn = configuration_from_chart(zn, start.masses, tag);
      if (min_pairwise_distance(qn) > kCollisionThreshold) {
        const Eigen::VectorXd r_n = main_residual(zn, lam_n, qn);
        if (r_n.norm() <= (1.0 - 1e-4 * s) * rn) {
          z = zn;
          lam = lam_n;
          q = qn;
          r = r_n;
          step_norm = (s * delta).lpNorm<Eigen::Infinity>();
          accepted = true;
          break;
        }
      }
      s *= 0.5;
    }
    if (!accepted) break;
    out.residual_history.push_back(cc_residual(q));
  }

  out.config = q;
  out.lambda = lam;
  out.residual = cc_residual(q);
  out.iterations = it;
  out.converged = out.residual < p.newton_success_residual;
  if (!out.converged) {
    throw NoConvergence("newton_refine: stalled at residual " +
                        std::to_string(out.residual));
  }
  return out;
}

Configuration canonicalize(const Configuration& q) {
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    mx += q.masses[i] * q.points[i].w * q.points[i].x;
    my += q.masses[i] * q.points[i].w * q.points[i].y;
  }
  double angle;
  if (std::hypot(mx, my) >= 1e-10) {
    angle = -std::atan2(my, mx);
  } else {
    int anchor = -1;
    double rbest = 1e-12;
    for (int i = 0; i < q.size(); ++i) {
      const double r = std::hypot(q.points[i].x, q.points[i].y);
      if (r > rbest) {
        rbest = r;
        anchor = i;
      }
    }
    if (anchor < 0) {
      throw NoAnchor("canonicalize: every body is at (0,0,1)");
    }
    angle = -std::atan2(q.points[anchor].y, q.points[anchor].x);
  }
  return so2_rotate(q, angle);
}

CCRecord make_record(const Configuration& refined, double lambda, double residual,
                     int trial, const SearchParams& p) {
  CCRecord rec;
  rec.configuration = canonicalize(refined);
  rec.lambda = lambda;
  rec.U_value = force_function(rec.configuration);
  rec.I_value = moment_of_inertia(rec.configuration);
  rec.residual = std::min(residual, cc_residual(rec.configuration));
  rec.spectrum = spectrum(constrained_hessian(rec.configuration), p.zero_tol_factor);
  rec.degenerate = !rec.spectrum.nondegenerate;
  rec.near_collision = near_collision(rec.configuration);
  rec.trial = trial;

  double max_r = 0.0, max_y = 0.0;
  for (const auto& pt : rec.configuration.points) {
    max_r = std::max(max_r, std::hypot(pt.x, pt.y));
    max_y = std::max(max_y, std::abs(pt.y));
  }
  rec.is_geodesic = max_y < p.geodesic_detect_rel * max_r;
  if (rec.is_geodesic) {
    const int n = rec.configuration.size();
    std::vector<int> slots(n);
    std::iota(slots.begin(), slots.end(), 0);
    std::sort(slots.begin(), slots.end(), [&](int a, int b) {
      return rec.configuration.points[a].x < rec.configuration.points[b].x;
    });
    rec.ordering = canonical_ordering(Ordering{slots});
  }
  return rec;
}

namespace {

std::vector<double> flat_xy(const Configuration& q) {
  std::vector<double> v;
  v.reserve(2 * q.size());
  for (const auto& p : q.points) {
    v.push_back(p.x);
    v.push_back(p.y);
  }
  return v;
}

double maxnorm_diff(const std::vector<double>& a, const std::vector<double>& b,
                    double flip) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - flip * b[i]));
  return m;
}

bool same_class(const CCRecord& a, const CCRecord& b, double tol) {
  const auto xa = flat_xy(a.configuration);
  const auto xb = flat_xy(b.configuration);
  const bool coords_match =
      maxnorm_diff(xa, xb, 1.0) < tol || maxnorm_diff(xa, xb, -1.0) < tol;
  if (!coords_match) return false;
  // confirmation: distinct classes this close must still differ in U
  return std::abs(a.U_value - b.U_value) <=
         1e-8 * std::max(std::abs(a.U_value), std::abs(b.U_value));
}

void sort_records(std::vector<CCRecord>& records) {
  std::sort(records.begin(), records.end(), [](const CCRecord& a, const CCRecord& b) {
    if (a.U_value != b.U_value) return a.U_value < b.U_value;
    return flat_xy(a.configuration) < flat_xy(b.configuration);
  });
}

}  // namespace

std::vector<CCRecord> dedupe(std::vector<CCRecord> records, double tol) {
  sort_records(records);
  std::vector<CCRecord> classes;
  for (const CCRecord& rec : records) {
    bool merged = false;
    for (CCRecord& cls : classes) {
      if (same_class(cls, rec, tol)) {
        const int hits = cls.hits + rec.hits;
        if (rec.residual < cls.residual) cls = rec;
        cls.hits = hits;
        merged = true;
        break;
      }
    }
    if (!merged) classes.push_back(rec);
  }
  sort_records(classes);
  for (size_t i = 0; i < classes.size(); ++i) classes[i].class_id = static_cast<int>(i);
  return classes;
}

Configuration random_start_on_level(const std::vector<double>& masses, double c,
                                    Rng& rng, double range) {
  const int n = static_cast<int>(masses.size());
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<ChartPoint> cp(n);
    double coord_max = 0.0;
    for (auto& u : cp) {
      u.theta = rng.uniform(-range, range);
      u.phi = rng.uniform(-range, range);
      coord_max = std::max({coord_max, std::abs(u.theta), std::abs(u.phi)});
    }
    if (coord_max < 1e-8) continue;

    auto inertia_at = [&](double s) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        const double st = std::sinh(s * cp[i].theta);
        const double ct = std::cosh(s * cp[i].theta);
        const double sp = std::sinh(s * cp[i].phi);
        v += masses[i] * (st * st + ct * ct * sp * sp);
      }
      return v;
    };
    const double s_cap = (kChartRangeLimit - 1.0) / coord_max;
    double hi = std::min(1.0, s_cap);
    while (inertia_at(hi) < c && hi < s_cap) hi = std::min(hi * 2.0, s_cap);
    if (inertia_at(hi) < c) continue;
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (inertia_at(mid) < c ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);

    Configuration q;
    q.masses = masses;
    for (int i = 0; i < n; ++i)
      q.points.push_back(chart_to_ambient(ChartPoint{s * cp[i].theta, s * cp[i].phi}));
    if (min_pairwise_distance(q) >= kNearCollisionThreshold) return q;
  }
  throw NoConvergence("random_start_on_level: could not sample a separated start");
}

Configuration collinear_start_on_level(const std::vector<double>& masses, double c,
                                       Rng& rng, double range) {
  const int n = static_cast<int>(masses.size());
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> th(n);
    double coord_max = 0.0;
    for (double& v : th) {
      v = rng.uniform(-range, range);
      coord_max = std::max(coord_max, std::abs(v));
    }
    if (coord_max < 1e-8) continue;

    auto inertia_at = [&](double s) {
      double v = 0.0;
      for (int i = 0; i < n; ++i) {
        const double st = std::sinh(s * th[i]);
        v += masses[i] * st * st;
      }
      return v;
    };
    const double s_cap = (kChartRangeLimit - 1.0) / coord_max;
    double hi = std::min(1.0, s_cap);
    while (inertia_at(hi) < c && hi < s_cap) hi = std::min(hi * 2.0, s_cap);
    if (inertia_at(hi) < c) continue;
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (inertia_at(mid) < c ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);

    Configuration q;
    q.masses = masses;
    for (int i = 0; i < n; ++i)
      q.points.push_back(HPoint{std::sinh(s * th[i]), 0.0, std::cosh(s * th[i])});
    if (min_pairwise_distance(q) >= kNearCollisionThreshold) return q;
  }
  throw NoConvergence("collinear_start_on_level: could not sample a separated start");
}

CensusResult census(const std::vector<double>& masses, double c, const SearchParams& p) {
  CensusResult result;
  std::vector<CCRecord> records;
  result.stats.trials = p.trials;

  for (int t = 0; t < p.trials; ++t) {
    Rng rng = Rng::stream(p.seed, static_cast<std::uint64_t>(t));
    const bool on_line =
        p.collinear_every > 0 && t % p.collinear_every == p.collinear_every - 1;
    try {
      const Configuration start =
          on_line ? collinear_start_on_level(masses, c, rng, p.start_range)
                  : random_start_on_level(masses, c, rng, p.start_range);
      const FlowResult flow = flow_integrate(start, c, p);
      if (flow.status == FlowStatus::StepBudgetExhausted) ++result.stats.budget_exhausted;
      if (flow.residual >= p.newton_basin) {
        if (flow.status == FlowStatus::CollisionApproach) {
          ++result.stats.collision_abandoned;
        } else {
          ++result.stats.outside_basin;
        }
        continue;
      }
      NewtonResult refined;
      try {
        refined = newton_refine(flow.config, c, p);
      } catch (const Error&) {
        ++result.stats.newton_failed;
        continue;
      }
      const double level_err = std::abs(moment_of_inertia(refined.config) - c);
      if (refined.residual >= p.record_residual || refined.lambda >= 0.0 ||
          level_err > 1e-10 * std::max(1.0, c)) {
        ++result.stats.rejected_records;
        continue;
      }
      records.push_back(make_record(refined.config, refined.lambda, refined.residual, t, p));
      ++result.stats.converged;
    } catch (const Error&) {
      ++result.stats.rejected_records;
    }
  }

  result.classes = dedupe(std::move(records), p.dedupe_tol);
  return result;
}

WitnessResult collision_repulsion_witness(const Configuration& q,
                                          const std::vector<std::vector<int>>& clusters) {
  const int n = q.size();
  if (clusters.size() < 2) {
    throw std::invalid_argument("witness: need at least two clusters");
  }
  if (clusters.front().size() < 2) {
    throw std::invalid_argument("witness: the contracting cluster needs >= 2 bodies");
  }
  std::vector<int> seen(n, 0);
  for (const auto& cl : clusters)
    for (int i : cl) {
      if (i < 0 || i >= n || seen[i]++) {
        throw std::invalid_argument("witness: clusters must partition the bodies");
      }
    }

  double s_first = 0.0;
  for (int i : clusters.front()) {
    const HPoint& pt = q.points[i];
    s_first += q.masses[i] * pt.w * pt.w * (pt.x * pt.x + pt.y * pt.y);
  }
  double ax = 0.0, ay = 0.0;
  for (int i : clusters.back()) {
    ax += q.masses[i] * q.points[i].w * q.points[i].x;
    ay += q.masses[i] * q.points[i].w * q.points[i].y;
  }
  const double a2 = ax * ax + ay * ay;
  if (std::sqrt(a2) < 1e-12 * std::max(1.0, s_first)) {
    throw DegenerateCluster("witness: the anchor cluster moment vanishes");
  }
  // minimum-norm v0 with v0 . (ax, ay) = -s_first
  const Eigen::Vector2d v0 = (-s_first / a2) * Eigen::Vector2d{ax, ay};

  WitnessResult out;
  out.v_chart.assign(n, Eigen::Vector2d::Zero());
  for (int i : clusters.front()) {
    const HPoint& pt = q.points[i];
    out.v_chart[i] = pt.w * pt.w * Eigen::Vector2d{pt.x, pt.y};
  }
  for (int i : clusters.back()) out.v_chart[i] = q.points[i].w * v0;

  const auto gu = grad_U(q);
  for (int i = 0; i < n; ++i) {
    const HPoint& pt = q.points[i];
    out.dI_v += 2.0 * q.masses[i] * (pt.x * out.v_chart[i][0] + pt.y * out.v_chart[i][1]);
    const Eigen::Vector3d ambient{
        out.v_chart[i][0], out.v_chart[i][1],
        (pt.x * out.v_chart[i][0] + pt.y * out.v_chart[i][1]) / pt.w};
    out.dU_v += minkowski_dot(gu[i], ambient);
    out.norm += out.v_chart[i].squaredNorm();
  }
  out.norm = std::sqrt(out.norm);
  return out;
}

}  // namespace cch2
