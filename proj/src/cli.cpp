#include <qgauge/cli.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <qgauge/expr.hpp>
#include <qgauge/parallel.hpp>
#include <qgauge/report.hpp>
#include <qgauge/rng.hpp>

namespace qgauge::cli {

namespace {

constexpr std::uint64_t kTagBoundaryCli = 0xB1;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    const std::size_t a = item.find_first_not_of(" \t");
    const std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos)
      fail(ErrorKind::UsageError, "empty entry in number list");
    item = item.substr(a, b - a + 1);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
      fail(ErrorKind::UsageError, "cannot parse number '" + item + "'");
    out.push_back(v);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

ComplexPoint parse_point(const std::string& text, int n) {
  const std::vector<double> vals = parse_csv_doubles(text);
  if (static_cast<int>(vals.size()) != 2 * n)
    fail(ErrorKind::UsageError,
         "point needs " + std::to_string(2 * n) +
             " real coordinates (x1,y1,...,xn,yn), got " +
             std::to_string(vals.size()));
  Eigen::VectorXd xy(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    xy[static_cast<Eigen::Index>(i)] = vals[i];
  return ComplexPoint::checked(std::move(xy));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::IoError, "cannot write " + path);
  return f;
}

int cmd_eval(const std::string& domain_file, const std::string& point_csv,
             bool with_grad, std::ostream& out) {
  auto [cfg, dom] = load_config(domain_file);
  const ComplexPoint z = parse_point(point_csv, dom.dim());
  const GaugeResult res = gauge(dom, z);
  nlohmann::json j{{"h", res.h},
                   {"r", res.h - 1.0},
                   {"iterations", res.iterations},
                   {"method", to_string(res.method)},
                   {"residual", res.residual},
                   {"domain", cfg.name}};
  if (with_grad) {
    const Eigen::VectorXd g = gauge_gradient(dom, z);
    j["gradient"] = std::vector<double>(g.data(), g.data() + g.size());
  }
  out << j.dump(2) << "\n";
  return 0;
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {
      "quasi_balanced", "pseudoconvex", "homogeneity", "transversality",
      "psh",            "defining",     "hopf"};
  return names;
}

int cmd_verify(const std::string& domain_file, const std::string& suite_csv,
               int samples, std::int64_t seed_flag, const std::string& out_file,
               std::ostream& out) {
  auto [cfg, dom] = load_config(domain_file);
  if (seed_flag >= 0) cfg.seed = static_cast<std::uint64_t>(seed_flag);
  const std::uint64_t seed = cfg.seed;
  const Thresholds& thr = cfg.thresholds;

  std::vector<std::string> suites;
  {
    std::stringstream ss(suite_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      bool known = false;
      for (const std::string& name : all_suites())
        if (name == item) known = true;
      if (!known)
        fail(ErrorKind::UsageError, "unknown suite '" + item + "'");
      suites.push_back(item);
    }
  }
  if (suites.empty()) suites = all_suites();
  const auto wants = [&](const char* name) {
    for (const std::string& s : suites)
      if (s == name) return true;
    return false;
  };

  VerificationReport report;
  report.domain = cfg;
  if (wants("quasi_balanced"))
    report.checks.push_back(check_quasi_balanced(dom, samples, seed, thr));
  if (wants("pseudoconvex"))
    report.checks.push_back(check_pseudoconvex(dom, samples, seed, thr));
  if (wants("homogeneity"))
    report.checks.push_back(check_homogeneity(dom, samples, seed, thr));
  if (wants("transversality"))
    report.checks.push_back(check_transversality(dom, samples, seed, thr));
  if (wants("psh"))
    report.checks.push_back(
        check_plurisubharmonic_gauge(dom, std::max(1, samples / 2), seed, thr));
  if (wants("defining"))
    report.checks.push_back(check_defining_function(dom, samples, seed, thr));
  if (wants("hopf")) {
    const int mesh = std::clamp(10 * samples, 100, 10000);
    report.hopf = estimate_hopf_constant(dom, samples, mesh, seed, thr);
  }

  bool all_pass = true;
  for (const CheckReport& c : report.checks) all_pass = all_pass && c.pass;
  if (report.hopf) all_pass = all_pass && report.hopf->pass;
  report.overall_pass = all_pass;

  const std::string text = dump_report(report);
  if (!out_file.empty()) {
    std::ofstream f = open_output(out_file);
    f << text;
  } else {
    out << text;
  }
  return report.overall_pass ? 0 : 2;
}

int cmd_boundary(const std::string& domain_file, int samples,
                 const std::string& out_file) {
  auto [cfg, dom] = load_config(domain_file);
  const int n = dom.dim();
  const std::vector<Eigen::VectorXd> structured = structured_directions(n);

  std::vector<std::string> rows(static_cast<std::size_t>(samples));
  parallel_for(samples, [&](std::int64_t i) {
    Eigen::VectorXd dir;
    if (i < static_cast<std::int64_t>(structured.size())) {
      dir = structured[static_cast<std::size_t>(i)];
    } else {
      Rng rng(mix_seed(cfg.seed, kTagBoundaryCli,
                       static_cast<std::uint64_t>(i)));
      dir = rng.unit_vector(2 * n);
    }
    const ComplexPoint xi = boundary_project(dom, ComplexPoint(dir));
    std::string row;
    for (int u = 0; u < xi.real_dim(); ++u) {
      row += format_double(xi.coords()[u]);
      row += ',';
    }
    row += format_double(dom.psi_value(xi));
    rows[static_cast<std::size_t>(i)] = std::move(row);
  });

  std::ofstream f = open_output(out_file);
  for (int j = 1; j <= n; ++j) f << "x" << j << ",y" << j << ",";
  f << "psi_residual\n";
  for (const std::string& row : rows) f << row << "\n";
  return 0;
}

int cmd_sweep(const std::string& domain_file, const std::string& direction_csv,
              double t_min, double t_max, int steps,
              const std::string& out_file) {
  auto [cfg, dom] = load_config(domain_file);
  (void)cfg;
  const ComplexPoint z = parse_point(direction_csv, dom.dim());
  if (z.is_origin()) fail(ErrorKind::UsageError, "direction must be nonzero");
  if (!(t_min > 0.0)) fail(ErrorKind::UsageError, "--t-min must be positive");
  if (!(t_max >= t_min))
    fail(ErrorKind::UsageError, "--t-max must be >= --t-min");
  if (steps < 1) fail(ErrorKind::UsageError, "--steps must be >= 1");

  std::ofstream f = open_output(out_file);
  f << "t,g,dg_dt\n";
  for (int k = 0; k < steps; ++k) {
    const double t =
        steps == 1
            ? t_min
            : t_min + (t_max - t_min) * static_cast<double>(k) /
                          static_cast<double>(steps - 1);
    const RadialProfile prof = radial_value(dom, z, t);
    f << format_double(t) << "," << format_double(prof.g_value) << ","
      << format_double(prof.dg_dt) << "\n";
  }
  return 0;
}

int cmd_domains_list(std::ostream& out) {
  out << std::left << std::setw(16) << "name" << std::setw(16) << "family"
      << std::setw(4) << "n" << std::setw(10) << "weights" << std::setw(15)
      << "quasi_balanced" << std::setw(14) << "pseudoconvex" << std::setw(8)
      << "smooth" << "oracle\n";
  for (const CatalogEntry& e : catalog()) {
    std::string weights;
    for (int j = 0; j < e.domain.weights().size(); ++j)
      weights += (j ? "," : "") + std::to_string(e.domain.weights()[j]);
    out << std::left << std::setw(16) << e.name << std::setw(16) << e.family
        << std::setw(4) << e.domain.dim() << std::setw(10) << weights
        << std::setw(15) << (e.expected.quasi_balanced ? "yes" : "no")
        << std::setw(14) << (e.expected.pseudoconvex ? "yes" : "no")
        << std::setw(8) << (e.expected.smooth_boundary ? "yes" : "no")
        << (e.domain.has_oracle() ? "yes" : "no") << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Minkowski gauge toolkit for quasi-balanced domains"};
  app.name("qgauge");
  app.require_subcommand(1);

  std::string domain_file, point_csv, suite_csv, out_file, direction_csv;
  bool with_grad = false;
  int samples = 1000;
  std::int64_t seed_flag = -1;
  double t_min = 0.5, t_max = 2.0;
  int steps = 50;

  CLI::App* eval = app.add_subcommand("eval", "evaluate the gauge at a point");
  eval->add_option("--domain", domain_file, "domain config JSON")->required();
  eval->add_option("--point", point_csv,
                   "point as x1,y1,...,xn,yn (interleaved real coordinates)")
      ->required();
  eval->add_flag("--grad", with_grad, "also print the gauge gradient");

  CLI::App* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("--domain", domain_file, "domain config JSON")->required();
  verify->add_option("--suite", suite_csv,
                     "comma-separated subset of: quasi_balanced,pseudoconvex,"
                     "homogeneity,transversality,psh,defining,hopf");
  verify->add_option("--samples", samples,
                     "samples per check (default 1000; the psh check uses "
                     "half, the hopf mesh 10x capped at 10000)");
  verify->add_option("--seed", seed_flag, "override the config seed")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--out", out_file, "write the JSON report here");

  CLI::App* boundary =
      app.add_subcommand("boundary", "sample a boundary point cloud (CSV)");
  boundary->add_option("--domain", domain_file, "domain config JSON")
      ->required();
  boundary->add_option("--samples", samples, "number of boundary points")
      ->required();
  boundary->add_option("--out", out_file, "output CSV path")->required();

  CLI::App* sweep =
      app.add_subcommand("sweep", "radial profile g(z,t) along a ray (CSV)");
  sweep->add_option("--domain", domain_file, "domain config JSON")->required();
  sweep->add_option("--direction", direction_csv,
                    "ray direction as x1,y1,...,xn,yn")
      ->required();
  sweep->add_option("--t-min", t_min, "first t value")->required();
  sweep->add_option("--t-max", t_max, "last t value")->required();
  sweep->add_option("--steps", steps, "number of rows")->required();
  sweep->add_option("--out", out_file, "output CSV path")->required();

  CLI::App* domains =
      app.add_subcommand("domains", "builtin domain catalog");
  CLI::App* domains_list =
      domains->add_subcommand("list", "print the catalog with expected flags");
  domains->require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("qgauge");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (eval->parsed()) return cmd_eval(domain_file, point_csv, with_grad, out);
    if (verify->parsed())
      return cmd_verify(domain_file, suite_csv, samples, seed_flag, out_file,
                        out);
    if (boundary->parsed()) return cmd_boundary(domain_file, samples, out_file);
    if (sweep->parsed())
      return cmd_sweep(domain_file, direction_csv, t_min, t_max, steps,
                       out_file);
    if (domains->parsed() && domains_list->parsed()) return cmd_domains_list(out);
    err << "error: no subcommand\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qgauge::cli
