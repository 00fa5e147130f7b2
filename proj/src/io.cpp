#include "cch2/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cch2/errors.hpp"
#include "cch2/geometry.hpp"

namespace cch2 {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Configuration configuration_from_json(const json& j) {
  Configuration q;
  if (!j.contains("masses") || !j["masses"].is_array()) {
    throw std::invalid_argument("configuration: missing \"masses\" array");
  }
  for (const auto& m : j["masses"]) {
    const double v = m.get<double>();
    if (!(v > 0.0)) throw std::invalid_argument("configuration: masses must be positive");
    q.masses.push_back(v);
  }

  if (j.contains("points")) {
    for (const auto& p : j["points"]) {
      const HPoint pt{p.at("x").get<double>(), p.at("y").get<double>(),
                      p.at("w").get<double>()};
      if (pt.w <= 0.0 || std::abs(hyperboloid_defect(pt)) > 1e-9) {
        throw std::invalid_argument(
            "configuration: point is not on the hyperboloid x^2+y^2-w^2 = -1");
      }
      // snap w onto the sheet so downstream identities hold to full precision
      q.points.push_back(lift(GraphPoint{pt.x, pt.y}));
    }
  } else if (j.contains("chart")) {
    for (const auto& p : j["chart"]) {
      q.points.push_back(chart_to_ambient(
          ChartPoint{p.at("theta").get<double>(), p.at("phi").get<double>()}));
    }
  } else {
    throw std::invalid_argument("configuration: need \"points\" or \"chart\"");
  }

  if (q.points.size() != q.masses.size() || q.points.size() < 2) {
    throw std::invalid_argument("configuration: need matching masses and >= 2 bodies");
  }
  return q;
}

Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open configuration file: " + path);
  json j;
  in >> j;
  return configuration_from_json(j);
}

json configuration_to_json(const Configuration& q) {
  json points = json::array();
  for (const auto& p : q.points) points.push_back({{"x", p.x}, {"y", p.y}, {"w", p.w}});
  return json{{"masses", q.masses}, {"points", points}};
}

json spectrum_to_json(const SpectrumReport& s) {
  return json{{"eigenvalues", s.eigenvalues}, {"n_minus", s.n_minus},
              {"n_zero", s.n_zero},           {"n_plus", s.n_plus},
              {"zero_tolerance", s.zero_tolerance}, {"nondegenerate", s.nondegenerate},
              {"marginal", s.marginal}};
}

json record_to_json(const CCRecord& rec) {
  json j{{"class_id", rec.class_id},
         {"is_geodesic", rec.is_geodesic},
         {"lambda", rec.lambda},
         {"U", rec.U_value},
         {"I", rec.I_value},
         {"residual", rec.residual},
         {"index", rec.spectrum.n_minus},
         {"nullity", rec.spectrum.n_zero},
         {"degenerate", rec.degenerate},
         {"near_collision", rec.near_collision},
         {"spectrum", spectrum_to_json(rec.spectrum)},
         {"configuration", configuration_to_json(rec.configuration)},
         {"provenance", json{{"trial", rec.trial}, {"hits", rec.hits}}}};
  if (rec.ordering) {
    std::vector<int> slots;
    for (int s : rec.ordering->slots) slots.push_back(s + 1);  // 1-based for output
    j["ordering"] = slots;
  } else {
    j["ordering"] = nullptr;
  }
  return j;
}

json audit_to_json(const MorseAudit& a) {
  json j{{"M", a.M.coeffs()},
         {"P", a.P.coeffs()},
         {"division_exact", a.division_exact},
         {"R_nonnegative", a.R_nonnegative},
         {"degenerate_classes", a.degenerate_classes},
         {"census_complete_hypothesis", a.census_complete_hypothesis}};
  j["R"] = a.R ? json(a.R->coeffs()) : json(nullptr);
  return j;
}

json census_report_to_json(const CensusReport& rep) {
  json classes = json::array();
  for (const auto& r : rep.classes) classes.push_back(record_to_json(r));
  return json{
      {"classes", classes},
      {"class_count", rep.classes.size()},
      {"geodesic_count", rep.geodesic_count},
      {"non_geodesic_count", rep.non_geodesic_count},
      {"morse", audit_to_json(rep.audit)},
      {"bounds",
       json{{"total", rep.bounds.total},
            {"non_geodesic", rep.bounds.non_geodesic},
            {"geodesic_expected", rep.bounds.geodesic},
            {"total_met", rep.total_met},
            {"non_geodesic_met", rep.non_geodesic_met}}},
      {"trial_stats",
       json{{"trials", rep.stats.trials},
            {"converged", rep.stats.converged},
            {"collision_abandoned", rep.stats.collision_abandoned},
            {"budget_exhausted", rep.stats.budget_exhausted},
            {"outside_basin", rep.stats.outside_basin},
            {"newton_failed", rep.stats.newton_failed},
            {"rejected", rep.stats.rejected_records}}}};
}

std::string records_to_csv(const std::vector<CCRecord>& classes) {
  std::ostringstream out;
  out << "class_id,is_geodesic,ordering,lambda,U,residual,index,nullity";
  const int n = classes.empty() ? 0 : classes.front().configuration.size();
  for (int i = 1; i <= n; ++i)
    out << ",x" << i << ",y" << i << ",w" << i;
  out << "\n";
  for (const auto& r : classes) {
    out << r.class_id << "," << (r.is_geodesic ? 1 : 0) << ",";
    if (r.ordering) {
      for (size_t k = 0; k < r.ordering->slots.size(); ++k) {
        if (k) out << "<";
        out << r.ordering->slots[k] + 1;
      }
    } else {
      out << "-";
    }
    out << "," << format_double(r.lambda) << "," << format_double(r.U_value) << ","
        << format_double(r.residual) << "," << r.spectrum.n_minus << ","
        << r.spectrum.n_zero;
    for (const auto& p : r.configuration.points)
      out << "," << format_double(p.x) << "," << format_double(p.y) << ","
          << format_double(p.w);
    out << "\n";
  }
  return out.str();
}

}  // namespace cch2
