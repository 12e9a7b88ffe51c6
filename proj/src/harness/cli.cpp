#include "hobody/harness.hpp"

#include "hobody/catalog.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

namespace hobody {

namespace {

struct Flags {
  std::string suite;
  std::optional<int> n, m;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tol;
  std::optional<std::string> catalog, out, format, config;
};

// Defaults, then HOBODY_SEED, then the config file, then flags.
SuiteConfig resolve(const Flags& f) {
  SuiteConfig cfg;
  apply_env(cfg, std::getenv("HOBODY_SEED"));
  if (f.config) apply_config_file(cfg, *f.config);
  if (f.n) cfg.n = *f.n;
  if (f.m) cfg.m = *f.m;
  if (f.samples) cfg.samples = *f.samples;
  if (f.seed) cfg.seed = *f.seed;
  for (const std::string& t : f.tol) {
    const auto [suite, value] = parse_tolerance(t);
    cfg.tolerance.insert_or_assign(suite, value);
  }
  if (f.catalog) cfg.catalog = *f.catalog;
  if (f.out) cfg.out = *f.out;
  if (f.format) cfg.format = *f.format;
  cfg.validate();
  return cfg;
}

int verify(const Flags& f, std::ostream& out, std::ostream& err) {
  const SuiteConfig cfg = resolve(f);
  const SuiteReport report = run_suite(f.suite, cfg);
  if (cfg.out) emit_report(report, cfg.format, *cfg.out);
  else out << format_report(report, cfg.format);
  for (const std::string& note : report.notes) err << "note: " << note << '\n';
  err << f.suite << ": " << report.rows.size() - report.failures() << "/" << report.rows.size() << " checks passed\n";
  return report.passed() ? 0 : 1;
}

int list_bodies(int n, const std::optional<std::string>& path, std::ostream& out) {
  std::vector<CatalogBody> bodies;
  if (path) {
    try {
      bodies = load_catalog(*path);
    } catch (const CatalogError& e) {
      throw InputError(*path + ":" + std::to_string(e.line()) + ": " + e.what());
    }
  } else {
    if (n < 1 || n > 4) throw UsageError("n must lie in 1..4");
    bodies = builtin_catalog(n);
  }
  out << "name,kind,dim,volume\n";
  for (const CatalogBody& b : bodies) {
    const char* kind = std::holds_alternative<Polytope>(b.body) ? "polytope" : "ellipsoid";
    std::ostringstream vol;
    vol.precision(12);
    vol << volume(b.body);
    out << b.name << ',' << kind << ',' << dim(b.body) << ',' << vol.str() << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-order convex bodies: kernels and verification suites", "hobody"};
  app.require_subcommand(1);

  Flags f;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verification suite and print its report");
  std::vector<std::string> names = suite_names();
  names.emplace_back("all");
  verify_cmd->add_option("suite", f.suite, "Suite name")->required()->check(CLI::IsMember(names));
  verify_cmd->add_option("--n", f.n, "Ambient dimension n");
  verify_cmd->add_option("--m", f.m, "Order m");
  verify_cmd->add_option("--samples", f.samples, "Monte Carlo budget per check");
  verify_cmd->add_option("--seed", f.seed, "Master seed");
  verify_cmd->add_option("--tol", f.tol, "Relative tolerance floor, SUITE=VALUE (repeatable)")->take_all();
  verify_cmd->add_option("--catalog", f.catalog, "JSON body catalog");
  verify_cmd->add_option("--out", f.out, "Write the report here instead of stdout");
  verify_cmd->add_option("--format", f.format, "json or csv");
  verify_cmd->add_option("--config", f.config, "JSON file preloading any flag");

  CLI::App* bodies_cmd = app.add_subcommand("bodies", "Inspect the body catalog");
  CLI::App* list_cmd = bodies_cmd->add_subcommand("list", "List catalog bodies");
  bodies_cmd->require_subcommand(1);
  int list_n = 2;
  std::optional<std::string> list_catalog;
  list_cmd->add_option("--n", list_n, "Dimension of the built-in catalog");
  list_cmd->add_option("--catalog", list_catalog, "JSON body catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (verify_cmd->parsed()) return verify(f, out, err);
    return list_bodies(list_n, list_catalog, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hobody
