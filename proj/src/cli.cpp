#include "cch2/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cch2/errors.hpp"
#include "cch2/geodesic.hpp"
#include "cch2/io.hpp"
#include "cch2/morse.hpp"
#include "cch2/potential.hpp"
#include "cch2/search.hpp"
#include "cch2/verify.hpp"

namespace cch2 {

using nlohmann::json;

std::vector<double> parse_masses(const std::string& spec) {
  std::vector<double> masses;
  if (spec.rfind("equal:", 0) == 0) {
    const int n = std::stoi(spec.substr(6));
    if (n < 2) throw std::invalid_argument("masses: equal:N needs N >= 2");
    masses.assign(n, 1.0);
    return masses;
  }
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !(v > 0.0)) {
      throw std::invalid_argument("masses: expected positive numbers, got \"" + tok + "\"");
    }
    masses.push_back(v);
  }
  if (masses.size() < 2) throw std::invalid_argument("masses: need at least 2 bodies");
  return masses;
}

namespace {

void emit(const RunOptions& opt, std::ostream& out, const std::string& payload) {
  if (opt.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(opt.out_path);
  if (!f) throw std::invalid_argument("cannot open output file: " + opt.out_path);
  f << payload;
}

std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int cmd_geodesic(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  const int n = static_cast<int>(opt.masses.size());
  std::vector<Ordering> orderings;
  try {
    orderings = enumerate_orderings(n);
  } catch (const std::exception& e) {
    err << "geodesic: " << e.what() << "\n";
    return kExitUsage;
  }

  SearchParams params;
  params.zero_tol_factor = opt.tol_zero;
  json jrecords = json::array();
  std::vector<CCRecord> records;
  bool all_converged = true, inertia_ok = true;

  for (const auto& ord : orderings) {
    json jr;
    {
      std::ostringstream oss;
      for (size_t k = 0; k < ord.slots.size(); ++k)
        oss << (k ? "<" : "") << ord.slots[k] + 1;
      jr["ordering"] = oss.str();
    }
    try {
      const GeodesicCC g = solve_geodesic(opt.masses, ord, opt.c);
      verify_inertia_via_sylvester(g);
      const Configuration q = embed(g);
      CCRecord rec = make_record(q, g.lambda, cc_residual(q), -1, params);
      rec.class_id = static_cast<int>(records.size());
      const bool expected = rec.spectrum.n_minus == n - 2 && rec.spectrum.n_zero == 1 &&
                            rec.spectrum.n_plus == n;
      if (!expected) inertia_ok = false;
      jr["thetas"] = g.thetas;
      jr["converged"] = true;
      jr["iterations"] = g.iterations;
      jr["line_residual"] = g.residual;
      jr["inertia_expected"] = expected;
      jr["record"] = record_to_json(rec);
      records.push_back(std::move(rec));
    } catch (const InertiaMismatch& e) {
      jr["converged"] = true;
      jr["inertia_expected"] = false;
      jr["error"] = e.what();
      inertia_ok = false;
    } catch (const Error& e) {
      jr["converged"] = false;
      jr["error"] = e.what();
      all_converged = false;
    }
    jrecords.push_back(std::move(jr));
  }

  if (opt.format == "json") {
    emit(opt, out,
         json_dump(json{{"schema_version", kSchemaVersion},
                        {"command", "geodesic"},
                        {"masses", opt.masses},
                        {"c", opt.c},
                        {"expected_count", jrecords.size()},
                        {"all_converged", all_converged},
                        {"inertia_ok", inertia_ok},
                        {"solutions", jrecords}}));
  } else if (opt.format == "csv") {
    emit(opt, out, records_to_csv(records));
  } else {
    std::ostringstream oss;
    oss << "geodesic central configurations: " << records.size() << " of "
        << jrecords.size() << " orderings (N = " << n << ", c = " << opt.c << ")\n";
    for (const auto& r : records) {
      oss << "  ";
      for (size_t k = 0; k < r.ordering->slots.size(); ++k)
        oss << (k ? "<" : "") << r.ordering->slots[k] + 1;
      oss << "  lambda = " << format_double(r.lambda)
          << "  residual = " << format_double(r.residual)
          << "  index = " << r.spectrum.n_minus << "  nullity = " << r.spectrum.n_zero
          << "\n";
    }
    emit(opt, out, oss.str());
  }

  if (!all_converged) return kExitNumerical;
  if (!inertia_ok) return kExitInertia;
  return kExitOk;
}

int cmd_census(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  SearchParams params;
  params.trials = opt.trials;
  params.seed = opt.seed;
  params.zero_tol_factor = opt.tol_zero;

  const int n = static_cast<int>(opt.masses.size());
  const CensusResult result = census(opt.masses, opt.c, params);
  const CensusReport report = census_report(result, n);

  if (opt.format == "json") {
    json j = census_report_to_json(report);
    j["schema_version"] = kSchemaVersion;
    j["command"] = "census";
    j["masses"] = opt.masses;
    j["c"] = opt.c;
    j["trials"] = opt.trials;
    j["seed"] = opt.seed;
    emit(opt, out, json_dump(j));
  } else if (opt.format == "csv") {
    emit(opt, out, records_to_csv(report.classes));
  } else {
    std::ostringstream oss;
    oss << "census: " << report.classes.size() << " classes ("
        << report.geodesic_count << " geodesic, " << report.non_geodesic_count
        << " other) from " << opt.trials << " trials\n";
    for (const auto& r : report.classes) {
      oss << "  class " << r.class_id << ": U = " << format_double(r.U_value)
          << "  lambda = " << format_double(r.lambda) << "  index = " << r.spectrum.n_minus
          << "  nullity = " << r.spectrum.n_zero
          << (r.is_geodesic ? "  geodesic" : "") << "  hits = " << r.hits << "\n";
    }
    oss << "  index counts M(t) = " << report.audit.M.str()
        << "; reference P(t) = " << report.audit.P.str() << "\n";
    if (report.audit.R) oss << "  remainder R(t) = " << report.audit.R->str() << "\n";
    oss << "  audit: division " << (report.audit.division_exact ? "exact" : "INEXACT")
        << ", R " << (report.audit.R_nonnegative ? "nonnegative" : "NEGATIVE")
        << ", degenerate classes " << report.audit.degenerate_classes << "\n"
        << "  bounds: total >= " << report.bounds.total << " ("
        << (report.total_met ? "met" : "NOT MET") << "), non-geodesic >= "
        << report.bounds.non_geodesic << " ("
        << (report.non_geodesic_met ? "met" : "NOT MET") << ")\n";
    emit(opt, out, oss.str());
  }

  if (!report.total_met || !report.non_geodesic_met) {
    err << "census: class counts fall short of the lower bounds; more trials may help\n";
    return kExitBounds;
  }
  if (!report.audit.census_complete_hypothesis) {
    err << "census: index counts are inconsistent with a complete census\n";
    return kExitBounds;
  }
  return kExitOk;
}

int cmd_classify(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  Configuration q;
  try {
    q = load_configuration(opt.input_path);
  } catch (const nlohmann::json::exception& e) {
    err << "classify: cannot parse " << opt.input_path << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "classify: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    SearchParams params;
    params.zero_tol_factor = opt.tol_zero;
    const double residual = cc_residual(q);
    CCRecord rec = make_record(q, lambda_value(q), residual, -1, params);
    const bool is_cc = residual < opt.tol_residual;

    double scale = 0.0;
    for (int i = 0; i < q.size(); ++i) scale += q.masses[i] * q.points[i].w * q.points[i].w;

    if (opt.format == "json") {
      json j = record_to_json(rec);
      j["schema_version"] = kSchemaVersion;
      j["command"] = "classify";
      j["is_cc"] = is_cc;
      j["tol_residual"] = opt.tol_residual;
      j["moment_defect"] = moment_relations_check(q);
      j["moment_scale"] = scale;
      emit(opt, out, json_dump(j));
    } else if (opt.format == "csv") {
      emit(opt, out, records_to_csv({rec}));
    } else {
      std::ostringstream oss;
      oss << (is_cc ? "central configuration" : "not a central configuration")
          << " (residual = " << format_double(residual) << ", tolerance = "
          << format_double(opt.tol_residual) << ")\n"
          << "  lambda = " << format_double(rec.lambda)
          << "  U = " << format_double(rec.U_value)
          << "  I = " << format_double(rec.I_value) << "\n"
          << "  index = " << rec.spectrum.n_minus << "  nullity = " << rec.spectrum.n_zero
          << (rec.is_geodesic ? "  geodesic" : "")
          << (rec.near_collision ? "  near-collision" : "") << "\n";
      emit(opt, out, oss.str());
    }
    return is_cc ? kExitOk : kExitNotCC;
  } catch (const Error& e) {
    err << "classify: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int cmd_verify(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.cases == 0) {
    err << "verify: 0 cases requested; every property passes vacuously\n";
  }
  const auto checks = run_property_battery(opt.n, opt.cases, opt.seed);
  bool all_passed = true;

  if (opt.format == "json") {
    json rows = json::array();
    for (const auto& c : checks) {
      rows.push_back(json{{"name", c.name},
                          {"cases", c.cases},
                          {"passed", c.passed},
                          {"worst_margin", c.worst},
                          {"note", c.note}});
      all_passed = all_passed && c.passed;
    }
    emit(opt, out,
         json_dump(json{{"schema_version", kSchemaVersion},
                        {"command", "verify"},
                        {"n", opt.n},
                        {"cases", opt.cases},
                        {"seed", opt.seed},
                        {"all_passed", all_passed},
                        {"checks", rows}}));
  } else {
    std::ostringstream oss;
    oss << std::left;
    for (const auto& c : checks) {
      oss << (c.passed ? "[pass] " : "[FAIL] ") << std::setw(42) << c.name
          << " cases " << std::setw(6) << c.cases << " worst margin "
          << format_double(c.worst) << "\n";
      all_passed = all_passed && c.passed;
    }
    emit(opt, out, oss.str());
  }
  return all_passed ? kExitOk : kExitProperty;
}

int cmd_bounds(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const LowerBounds b = lower_bounds(opt.n);
    const IntPolynomial p = poincare_polynomial(opt.n);
    if (opt.format == "json") {
      emit(opt, out,
           json_dump(json{{"schema_version", kSchemaVersion},
                          {"command", "bounds"},
                          {"n", opt.n},
                          {"total", b.total},
                          {"non_geodesic", b.non_geodesic},
                          {"geodesic", b.geodesic},
                          {"poincare", p.coeffs()},
                          {"poincare_str", p.str()}}));
    } else {
      std::ostringstream oss;
      oss << "N = " << opt.n << "\n"
          << "  geodesic classes:            " << b.geodesic << "\n"
          << "  total lower bound:           " << b.total << "\n"
          << "  non-geodesic lower bound:    " << b.non_geodesic << "\n"
          << "  reference polynomial P(t) =  " << p.str() << "\n";
      emit(opt, out, oss.str());
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "bounds: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace cch2
