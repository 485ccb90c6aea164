#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridcurve/derived.hpp"
#include "hybridcurve/errors.hpp"
#include "hybridcurve/example.hpp"
#include "hybridcurve/io.hpp"
#include "hybridcurve/reconstruct.hpp"
#include "hybridcurve/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hybridcurve;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct CommonOptions {
  std::string spec;
  std::string example;
  std::string out = ".";
  std::size_t grid = 1001;
  double step = 1e-3;
  double tol = tol::kFrame;
};

void add_common(CLI::App* cmd, CommonOptions* opt, bool with_step) {
  cmd->add_option("--spec", opt->spec, "JSON input file");
  cmd->add_option("--example", opt->example, "built-in example name (paper)");
  cmd->add_option("--out", opt->out, "output directory")->capture_default_str();
  cmd->add_option("--grid", opt->grid, "number of sample points")->capture_default_str();
  if (with_step) {
    cmd->add_option("--step", opt->step, "integration step h")->capture_default_str();
  }
  cmd->add_option("--tol", opt->tol, "frame validation tolerance")
      ->envname("HYBRIDCURVE_TOL")
      ->capture_default_str();
}

/// Usage problems that CLI11 cannot see (bad flag combinations).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FramedCurve load_curve(const CommonOptions& opt) {
  if (!opt.example.empty()) {
    if (opt.example != "paper") throw UsageError("unknown example '" + opt.example + "'");
    return example::curve(FrameValidation{257, opt.tol});
  }
  if (opt.spec.empty()) throw UsageError("either --spec or --example is required");
  return io::build_curve(io::load_curve_spec(opt.spec), FrameValidation{257, opt.tol});
}

fs::path ensure_out_dir(const CommonOptions& opt) {
  fs::path dir(opt.out);
  fs::create_directories(dir);
  return dir;
}

SpatialHybrid parse_point(const std::string& text) {
  std::array<double, 3> v{};
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', start);
    const bool last = (i == 2);
    if (last != (comma == std::string::npos)) {
      throw UsageError("point must be three comma-separated values, got '" + text + "'");
    }
    const std::string part = text.substr(start, last ? std::string::npos : comma - start);
    const Expr e = Expr::parse(part);
    if (e.depends_on_var()) throw UsageError("point components must be constants");
    v[static_cast<std::size_t>(i)] = e.eval(0.0);
    start = comma + 1;
  }
  return {v[0], v[1], v[2]};
}

io::Table curve_table(const SpaceCurve& curve, std::size_t grid) {
  io::Table table;
  table.header = {"t", "b", "c", "d"};
  for (double t : curve.domain().uniform(grid)) {
    const SpatialHybrid p = curve(t);
    table.rows.push_back({t, p.b, p.c, p.d});
  }
  return table;
}

int cmd_derive(const CommonOptions& opt, const std::string& which, const std::string& point,
               double c1, double c2) {
  const FramedCurve fc = load_curve(opt);
  SpaceCurve curve;
  if (which == "evolute") {
    curve = evolute(fc);
  } else if (which == "involute") {
    curve = involute(fc, c1, c2);
  } else if (which == "pedal" || which == "contrapedal") {
    if (point.empty()) throw UsageError(which + " requires --p b,c,d");
    const SpatialHybrid p = parse_point(point);
    curve = (which == "pedal") ? pedal(fc, p) : contrapedal(fc, p);
  } else {
    throw UsageError("unknown construction '" + which + "'");
  }
  const fs::path out = ensure_out_dir(opt) / (which + ".csv");
  io::write_csv(out, curve_table(curve, opt.grid));
  std::cout << out.string() << '\n';
  return kExitOk;
}

int cmd_reconstruct(const CommonOptions& opt, bool step_given) {
  io::CurvatureSpec spec;
  if (!opt.example.empty()) {
    if (opt.example != "paper") throw UsageError("unknown example '" + opt.example + "'");
    spec.l = "sqrt(10)";
    spec.m = "3";
    spec.n = "0";
    spec.alpha = "sin(t)*cos(t)";
    spec.init = example::initial_frame();
    spec.grid = IntegrationGrid{0.0, 2.0 * 3.14159265358979323846, opt.step};
  } else if (!opt.spec.empty()) {
    spec = io::load_curvature_spec(opt.spec);
  } else {
    throw UsageError("either --spec or --example is required");
  }
  if (step_given) spec.grid.h = opt.step;

  const Curvature curv = io::build_curvature(spec);
  const SampledFramedCurve run = integrate(curv, spec.init, spec.grid);

  io::Table table;
  table.header = {"t",     "gamma_b", "gamma_c", "gamma_d", "nu1_b", "nu1_c", "nu1_d",
                  "nu2_b", "nu2_c",   "nu2_d",   "mu_b",    "mu_c",  "mu_d"};
  for (std::size_t i = 0; i < run.size(); ++i) {
    table.rows.push_back({run.t[i], run.gamma[i].b, run.gamma[i].c, run.gamma[i].d,
                          run.nu1[i].b, run.nu1[i].c, run.nu1[i].d, run.nu2[i].b, run.nu2[i].c,
                          run.nu2[i].d, run.mu[i].b, run.mu[i].c, run.mu[i].d});
  }
  const fs::path dir = ensure_out_dir(opt);
  io::write_csv(dir / "reconstruct.csv", table);

  std::ofstream sidecar(dir / "reconstruct_report.json");
  sidecar << "{\n"
          << "  \"eps_gram\": " << format_double(run.eps_gram) << ",\n"
          << "  \"h\": " << format_double(run.h) << ",\n"
          << "  \"nodes\": " << run.size() << ",\n"
          << "  \"delta1\": " << run.delta1 << ",\n"
          << "  \"delta2\": " << run.delta2 << "\n"
          << "}\n";
  std::cout << (dir / "reconstruct.csv").string() << "  eps_gram=" << run.eps_gram << '\n';
  return kExitOk;
}

int cmd_verify(const CommonOptions& opt) {
  verify::SuiteOptions suite;
  suite.grid_points = opt.grid;

  verify::Report report;
  if (!opt.example.empty()) {
    if (opt.example != "paper") throw UsageError("unknown example '" + opt.example + "'");
    report = verify::full_suite(suite);
    verify::CheckResult ok;
    ok.name = "frame/validation";
    ok.pass = true;
    ok.note = "built-in example frame";
    report.checks.insert(report.checks.begin(), ok);
  } else if (!opt.spec.empty()) {
    try {
      const FramedCurve fc =
          io::build_curve(io::load_curve_spec(opt.spec), FrameValidation{257, opt.tol});
      report = verify::full_suite(fc, suite);
      verify::CheckResult ok;
      ok.name = "frame/validation";
      ok.pass = true;
      report.checks.insert(report.checks.begin(), ok);
    } catch (const FrameValidationError& e) {
      verify::CheckResult bad;
      bad.name = "frame/validation";
      bad.pass = false;
      bad.note = e.what();
      report.add(bad);
    }
  } else {
    throw UsageError("either --spec or --example is required");
  }

  verify::print_report(std::cout, report);
  const fs::path out = ensure_out_dir(opt) / "verify_report.json";
  std::ofstream(out) << io::report_json(report) << '\n';
  std::cout << (report.all_pass() ? "all checks passed" : "some checks FAILED") << "  ("
            << out.string() << ")\n";
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_example(const CommonOptions& opt, int figure, const std::string& format) {
  const FramedCurve fc = example::curve();
  const auto ts = fc.domain().uniform(opt.grid);

  std::vector<io::CurveSeries> series;
  series.push_back({"base", "black", {}});
  if (figure == 1) {
    series.push_back({"evolute", "blue", {}});
    series.push_back({"involute", "red", {}});
  } else {
    series.push_back({"pedal", "green", {}});
    series.push_back({"contrapedal", "magenta", {}});
  }

  const SpaceCurve first = (figure == 1) ? evolute(fc) : pedal(fc, SpatialHybrid{});
  const SpaceCurve second = (figure == 1) ? involute(fc) : contrapedal(fc, SpatialHybrid{});
  io::Table table;
  const std::string n1 = series[1].name;
  const std::string n2 = series[2].name;
  table.header = {"t",        "gamma_b", "gamma_c", "gamma_d", n1 + "_b", n1 + "_c", n1 + "_d",
                  n2 + "_b",  n2 + "_c", n2 + "_d"};
  for (double t : ts) {
    const SpatialHybrid g = fc.gamma()(t);
    const SpatialHybrid a = first(t);
    const SpatialHybrid b = second(t);
    series[0].points.push_back(g);
    series[1].points.push_back(a);
    series[2].points.push_back(b);
    table.rows.push_back({t, g.b, g.c, g.d, a.b, a.c, a.d, b.b, b.c, b.d});
  }

  const fs::path dir = ensure_out_dir(opt);
  const std::string stem = "figure" + std::to_string(figure);
  if (format == "csv" || format == "both") {
    io::write_csv(dir / (stem + ".csv"), table);
    std::cout << (dir / (stem + ".csv")).string() << '\n';
  }
  if (format == "svg" || format == "both") {
    io::write_svg(dir / (stem + ".svg"), series);
    std::cout << (dir / (stem + ".svg")).string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framed curves, frame reconstruction and derived curves in the spatial hybrid"
               " number space"};
  app.require_subcommand(1);

  CommonOptions opt;

  auto* derive = app.add_subcommand("derive", "compute a derived curve as CSV");
  std::string which;
  std::string point;
  double c1 = 0.0;
  double c2 = 0.0;
  derive->add_option("which", which, "evolute | involute | pedal | contrapedal")->required();
  add_common(derive, &opt, false);
  derive->add_option("--p", point, "fixed point b,c,d for pedal/contrapedal");
  derive->add_option("--c1", c1, "involute homogeneous constant c1")->capture_default_str();
  derive->add_option("--c2", c2, "involute homogeneous constant c2")->capture_default_str();

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "integrate curvature data");
  add_common(reconstruct_cmd, &opt, true);

  auto* verify_cmd = app.add_subcommand("verify", "run the verification harness");
  add_common(verify_cmd, &opt, false);

  auto* example_cmd = app.add_subcommand("example", "emit the built-in example figures");
  int figure = 1;
  std::string format = "both";
  add_common(example_cmd, &opt, false);
  example_cmd->add_option("--figure", figure, "1 (evolute/involute) or 2 (pedal/contrapedal)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  example_cmd->add_option("--format", format, "csv | svg | both")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (derive->parsed()) return cmd_derive(opt, which, point, c1, c2);
    if (reconstruct_cmd->parsed()) return cmd_reconstruct(opt, reconstruct_cmd->count("--step") > 0);
    if (verify_cmd->parsed()) return cmd_verify(opt);
    if (example_cmd->parsed()) return cmd_example(opt, figure, format);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "expression error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return kExitParse;
  } catch (const StepTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
