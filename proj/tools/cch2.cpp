// Command-line front end: central configurations of the N-body problem on
// the hyperbolic plane.  Subcommands: geodesic, census, classify, verify,
// bounds.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cch2/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "central configurations of the N-body problem on the hyperbolic plane"};
  app.require_subcommand(1);

  cch2::RunOptions opt;
  std::string masses_spec = "equal:3";

  const auto add_common = [&](CLI::App* sub, bool with_masses) {
    if (with_masses) {
      sub->add_option("--masses", masses_spec,
                      "comma-separated positive masses, e.g. 1,1.3,0.8, or equal:N")
          ->required();
      sub->add_option("--c", opt.c, "moment-of-inertia level (default 1)")
          ->check(CLI::PositiveNumber);
    }
    sub->add_option("--format", opt.format, "output format: text, json, csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", opt.out_path, "write output to this file instead of stdout");
    sub->add_option("--tol-zero", opt.tol_zero,
                    "relative eigenvalue threshold for nullity classification")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* geo = app.add_subcommand(
      "geodesic", "solve every collinear ordering and report index/nullity");
  add_common(geo, true);

  CLI::App* cen = app.add_subcommand(
      "census", "multistart search, classification, and lower-bound audit");
  add_common(cen, true);
  cen->add_option("--trials", opt.trials, "number of random starts")
      ->check(CLI::PositiveNumber);
  cen->add_option("--seed", opt.seed, "RNG seed (census is deterministic per seed)");

  CLI::App* cls = app.add_subcommand(
      "classify", "test a configuration file and report its classification");
  cls->add_option("input", opt.input_path, "JSON configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(cls, false);
  cls->add_option("--tol-residual", opt.tol_residual,
                  "acceptance threshold on the projected-gradient residual")
      ->check(CLI::PositiveNumber);

  CLI::App* ver = app.add_subcommand(
      "verify", "run the randomized property battery and print a report");
  add_common(ver, false);
  ver->add_option("--n", opt.n, "number of bodies")->check(CLI::Range(2, 9));
  ver->add_option("--cases", opt.cases, "random cases per property")
      ->check(CLI::NonNegativeNumber);
  ver->add_option("--seed", opt.seed, "RNG seed");

  CLI::App* bnd = app.add_subcommand(
      "bounds", "print the class-count lower bounds and reference polynomial");
  add_common(bnd, false);
  bnd->add_option("--n", opt.n, "number of bodies")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // fold CLI11's internal exit codes into the documented contract:
    // 0 for --help/--version, 1 for every usage problem
    const int code = app.exit(e);
    return code == 0 ? cch2::kExitOk : cch2::kExitUsage;
  }

  try {
    if (geo->parsed() || cen->parsed()) {
      opt.masses = cch2::parse_masses(masses_spec);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cch2::kExitUsage;
  }

  try {
    if (geo->parsed()) return cch2::cmd_geodesic(opt, std::cout, std::cerr);
    if (cen->parsed()) return cch2::cmd_census(opt, std::cout, std::cerr);
    if (cls->parsed()) return cch2::cmd_classify(opt, std::cout, std::cerr);
    if (ver->parsed()) return cch2::cmd_verify(opt, std::cout, std::cerr);
    if (bnd->parsed()) return cch2::cmd_bounds(opt, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cch2::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cch2::kExitNumerical;
  }
  return cch2::kExitUsage;
}
