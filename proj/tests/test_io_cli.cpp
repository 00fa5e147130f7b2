#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cch2/cli.hpp"
#include "cch2/errors.hpp"
#include "cch2/geodesic.hpp"
#include "cch2/geometry.hpp"
#include "cch2/io.hpp"
#include "cch2/potential.hpp"
#include "cch2/search.hpp"

using namespace cch2;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/cch2_test_" + name;
  std::ofstream f(path);
  f << body;
  return path;
}

}  // namespace

TEST_CASE("configuration parsing: points form, snapping, validation") {
  const json good = {
      {"masses", {1.0, 2.0}},
      {"points",
       {{{"x", 0.6}, {"y", 0.0}, {"w", std::sqrt(1.36)}},
        {{"x", -0.3}, {"y", 0.1}, {"w", std::sqrt(1.10)}}}}};
  const Configuration q = configuration_from_json(good);
  REQUIRE(q.size() == 2);
  CHECK(q.masses[1] == 2.0);
  for (const HPoint& p : q.points)
    CHECK(std::abs(hyperboloid_defect(p)) < 1e-15);  // w snapped onto the sheet

  json bad = good;
  bad["points"][0]["w"] = 2.0;  // defect far beyond 1e-9
  CHECK_THROWS_AS((void)configuration_from_json(bad), std::invalid_argument);

  json neg = good;
  neg["masses"][0] = -1.0;
  CHECK_THROWS_AS((void)configuration_from_json(neg), std::invalid_argument);

  json nomass = good;
  nomass.erase("masses");
  CHECK_THROWS_AS((void)configuration_from_json(nomass), std::invalid_argument);

  json mismatch = good;
  mismatch["masses"] = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)configuration_from_json(mismatch), std::invalid_argument);

  json single = {{"masses", {1.0}},
                 {"points", {{{"x", 0.6}, {"y", 0.0}, {"w", std::sqrt(1.36)}}}}};
  CHECK_THROWS_AS((void)configuration_from_json(single), std::invalid_argument);

  json neither = {{"masses", {1.0, 1.0}}};
  CHECK_THROWS_AS((void)configuration_from_json(neither), std::invalid_argument);
}

TEST_CASE("configuration parsing: chart form matches the chart map") {
  const json j = {{"masses", {1.0, 1.0}},
                  {"chart", {{{"theta", 0.4}, {"phi", -0.2}},
                             {{"theta", -0.7}, {"phi", 0.1}}}}};
  const Configuration q = configuration_from_json(j);
  const HPoint p0 = chart_to_ambient(ChartPoint{0.4, -0.2});
  CHECK(q.points[0].x == p0.x);
  CHECK(q.points[0].y == p0.y);
  CHECK(q.points[0].w == p0.w);
}

TEST_CASE("configuration JSON round trip preserves coordinates bitwise") {
  const Configuration q =
      embed(solve_geodesic({1.0, 1.3, 0.8}, Ordering{{0, 1, 2}}, 1.0));
  const json j = configuration_to_json(q);
  const json reparsed = json::parse(j.dump());
  const Configuration q2 = configuration_from_json(reparsed);
  for (int i = 0; i < q.size(); ++i) {
    CHECK(q2.points[i].x == q.points[i].x);
    CHECK(q2.points[i].y == q.points[i].y);
    // w is re-lifted from (x, y); identical inputs give identical lifts
    CHECK(q2.points[i].w == q.points[i].w);
  }
}

TEST_CASE("record serialization carries the classification") {
  const GeodesicCC g = solve_geodesic({1.0, 1.3, 0.8}, Ordering{{0, 1, 2}}, 1.0);
  CCRecord rec = make_record(embed(g), g.lambda, g.residual, 4);
  rec.class_id = 2;
  const json j = record_to_json(rec);
  CHECK(j["class_id"] == 2);
  CHECK(j["is_geodesic"] == true);
  CHECK(j["index"] == 1);
  CHECK(j["nullity"] == 1);
  CHECK(j["lambda"].get<double>() == rec.lambda);
  CHECK(j["ordering"].is_array());
  CHECK(j["ordering"].size() == 3);
  CHECK(j["provenance"]["trial"] == 4);
  CHECK(j["spectrum"]["n_plus"] == 3);
  CHECK(j["configuration"]["points"].size() == 3);

  CCRecord plain;
  plain.configuration = embed(g);
  const json jp = record_to_json(plain);
  CHECK(jp["ordering"].is_null());
}

TEST_CASE("CSV layout: header, one row per class, 17-digit numbers") {
  const GeodesicCC g = solve_geodesic({1.0, 1.3, 0.8}, Ordering{{0, 1, 2}}, 1.0);
  CCRecord rec = make_record(embed(g), g.lambda, g.residual, 0);
  rec.class_id = 0;
  const std::string csv = records_to_csv({rec});

  std::istringstream lines(csv);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(header ==
        "class_id,is_geodesic,ordering,lambda,U,residual,index,nullity,"
        "x1,y1,w1,x2,y2,w2,x3,y3,w3");
  CHECK(row.rfind("0,1,1<2<3,", 0) == 0);

  // the lambda field reparses to the exact stored double
  std::istringstream fields(row);
  std::string tok;
  for (int k = 0; k < 4; ++k) std::getline(fields, tok, ',');
  CHECK(std::stod(tok) == rec.lambda);
}

TEST_CASE("doubles format with full round-trip precision") {
  for (double v : {1.0 / 3.0, -4.2296348594543005, 1e-300, 0.0, 123456789.123456789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("mass list parsing") {
  CHECK(parse_masses("1,1.3,0.8") == std::vector<double>{1.0, 1.3, 0.8});
  CHECK(parse_masses("equal:4") == std::vector<double>{1.0, 1.0, 1.0, 1.0});
  CHECK_THROWS_AS((void)parse_masses("equal:1"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_masses("1,0,2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_masses("1,-2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_masses("1,abc"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_masses("1.5"), std::invalid_argument);
}

TEST_CASE("bounds command") {
  RunOptions opt;
  opt.n = 4;
  opt.format = "json";
  std::ostringstream out, err;
  CHECK(cmd_bounds(opt, out, err) == kExitOk);
  const json j = json::parse(out.str());
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["total"] == 24);
  CHECK(j["non_geodesic"] == 12);
  CHECK(j["geodesic"] == 12);
  CHECK(j["poincare"] == json::array({1, 5, 6}));

  RunOptions big;
  big.n = 25;
  std::ostringstream out2, err2;
  CHECK(cmd_bounds(big, out2, err2) == kExitUsage);
  CHECK_FALSE(err2.str().empty());
}

TEST_CASE("geodesic command solves every ordering") {
  RunOptions opt;
  opt.masses = {1.0, 1.0};
  opt.format = "json";
  std::ostringstream out, err;
  CHECK(cmd_geodesic(opt, out, err) == kExitOk);
  const json j = json::parse(out.str());
  CHECK(j["command"] == "geodesic");
  CHECK(j["expected_count"] == 1);
  CHECK(j["all_converged"] == true);
  CHECK(j["inertia_ok"] == true);
  REQUIRE(j["solutions"].size() == 1);
  const json& sol = j["solutions"][0];
  CHECK(sol["converged"] == true);
  CHECK(sol["inertia_expected"] == true);
  const double a = std::asinh(std::sqrt(0.5));
  const double lam = sol["record"]["lambda"].get<double>();
  CHECK(lam == doctest::Approx(-1.0 / std::pow(std::sinh(2 * a), 3)).epsilon(1e-10));

  RunOptions text = opt;
  text.format = "text";
  std::ostringstream tout, terr;
  CHECK(cmd_geodesic(text, tout, terr) == kExitOk);
  CHECK(tout.str().find("geodesic central configurations: 1 of 1") != std::string::npos);
}

TEST_CASE("census command: complete run exits 0, starved run exits 4") {
  RunOptions opt;
  opt.masses = {1.0, 1.0};
  opt.trials = 120;
  opt.seed = 5;
  opt.format = "json";
  std::ostringstream out, err;
  CHECK(cmd_census(opt, out, err) == kExitOk);
  const json j = json::parse(out.str());
  CHECK(j["class_count"] == 1);
  CHECK(j["geodesic_count"] == 1);
  CHECK(j["morse"]["census_complete_hypothesis"] == true);
  CHECK(j["bounds"]["total_met"] == true);
  CHECK(j["trial_stats"]["trials"] == 120);

  RunOptions starved;
  starved.masses = {1.0, 1.3, 0.8};
  starved.trials = 1;  // cannot reach five classes with one start
  starved.seed = 1;
  starved.format = "json";
  std::ostringstream out2, err2;
  CHECK(cmd_census(starved, out2, err2) == kExitBounds);
  CHECK(err2.str().find("census:") != std::string::npos);
}

TEST_CASE("classify command: accepts a rest point, rejects others") {
  // exact rest point through the chart form
  const GeodesicCC g = solve_geodesic({1.0, 1.3, 0.8}, Ordering{{0, 1, 2}}, 1.0);
  json chart = json::array();
  for (double t : g.thetas) chart.push_back({{"theta", t}, {"phi", 0.0}});
  const json jcc = {{"masses", {1.0, 1.3, 0.8}}, {"chart", chart}};
  const std::string cc_path = write_temp("cc.json", jcc.dump());

  RunOptions opt;
  opt.input_path = cc_path;
  opt.format = "json";
  std::ostringstream out, err;
  CHECK(cmd_classify(opt, out, err) == kExitOk);
  const json j = json::parse(out.str());
  CHECK(j["is_cc"] == true);
  CHECK(j["is_geodesic"] == true);
  CHECK(j["index"] == 1);
  CHECK(j["moment_defect"].get<double>() < 1e-8);

  // generic non-rest-point
  const json jno = {{"masses", {1.0, 1.0}},
                    {"chart", {{{"theta", 0.3}, {"phi", 0.4}},
                               {{"theta", -0.9}, {"phi", 0.0}}}}};
  RunOptions bad;
  bad.input_path = write_temp("notcc.json", jno.dump());
  bad.format = "json";
  std::ostringstream out2, err2;
  CHECK(cmd_classify(bad, out2, err2) == kExitNotCC);
  CHECK(json::parse(out2.str())["is_cc"] == false);

  // malformed JSON and a vanished file are usage errors
  RunOptions garbled;
  garbled.input_path = write_temp("garbled.json", "{not json");
  std::ostringstream out3, err3;
  CHECK(cmd_classify(garbled, out3, err3) == kExitUsage);
  CHECK_FALSE(err3.str().empty());

  RunOptions missing;
  missing.input_path = "/tmp/cch2_test_does_not_exist.json";
  std::ostringstream out4, err4;
  CHECK(cmd_classify(missing, out4, err4) == kExitUsage);

  // coincident bodies are a numerical-domain failure, not a parse failure
  const json jcol = {{"masses", {1.0, 1.0}},
                     {"chart", {{{"theta", 0.3}, {"phi", 0.1}},
                                {{"theta", 0.3}, {"phi", 0.1}}}}};
  RunOptions collide;
  collide.input_path = write_temp("collide.json", jcol.dump());
  std::ostringstream out5, err5;
  CHECK(cmd_classify(collide, out5, err5) == kExitNumerical);
  CHECK(err5.str().find("classify:") != std::string::npos);
}

TEST_CASE("classify writes to a file when asked") {
  const json jno = {{"masses", {1.0, 1.0}},
                    {"chart", {{{"theta", 0.3}, {"phi", 0.4}},
                               {{"theta", -0.9}, {"phi", 0.0}}}}};
  RunOptions opt;
  opt.input_path = write_temp("outpath_in.json", jno.dump());
  opt.format = "json";
  opt.out_path = "/tmp/cch2_test_outpath_out.json";
  std::ostringstream out, err;
  CHECK(cmd_classify(opt, out, err) == kExitNotCC);
  CHECK(out.str().empty());  // payload went to the file
  std::ifstream f(opt.out_path);
  REQUIRE(f.good());
  json j;
  f >> j;
  CHECK(j["command"] == "classify");
}

TEST_CASE("verify command runs the battery") {
  RunOptions opt;
  opt.n = 3;
  opt.cases = 25;
  opt.seed = 2;
  opt.format = "json";
  std::ostringstream out, err;
  CHECK(cmd_verify(opt, out, err) == kExitOk);
  const json j = json::parse(out.str());
  CHECK(j["all_passed"] == true);
  CHECK(j["checks"].size() > 3);
  for (const auto& row : j["checks"]) CHECK(row["passed"] == true);

  RunOptions zero = opt;
  zero.cases = 0;
  zero.format = "text";
  std::ostringstream out2, err2;
  CHECK(cmd_verify(zero, out2, err2) == kExitOk);
  CHECK(err2.str().find("vacuously") != std::string::npos);
}
