#include "hybridcurve/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hybridcurve/errors.hpp"

namespace hybridcurve::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SpecError("input is not valid JSON");
  return j;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

/// A scalar field: a JSON number, or a constant expression string.
double scalar_field(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const Expr e = Expr::parse(j.get<std::string>());
    if (e.depends_on_var()) throw SpecError(where + ": expected a constant, got a function of t");
    return e.eval(0.0);
  }
  throw SpecError(where + ": expected a number or an expression string");
}

std::array<std::string, 3> expr_triple(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SpecError(where + ": expected an array of 3 expressions");
  std::array<std::string, 3> out;
  for (int i = 0; i < 3; ++i) {
    const json& v = j[i];
    if (v.is_string()) {
      out[i] = v.get<std::string>();
    } else if (v.is_number()) {
      out[i] = format_double(v.get<double>());
    } else {
      throw SpecError(where + ": component " + std::to_string(i) + " must be an expression");
    }
  }
  return out;
}

SpatialHybrid spatial_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SpecError(where + ": expected [b, c, d]");
  return {scalar_field(j[0], where), scalar_field(j[1], where), scalar_field(j[2], where)};
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(where + ": missing key \"" + key + "\"");
  return *it;
}

CurveSpec curve_spec_from(const json& j) {
  if (!j.is_object()) throw SpecError("curve spec: expected a JSON object");
  const json& dom = require(j, "domain", "curve spec");
  if (!dom.is_array() || dom.size() != 2) throw SpecError("curve spec: domain must be [t0, t1]");
  CurveSpec spec;
  spec.domain = {scalar_field(dom[0], "domain"), scalar_field(dom[1], "domain")};
  spec.gamma = expr_triple(require(j, "gamma", "curve spec"), "gamma");
  spec.nu1 = expr_triple(require(j, "nu1", "curve spec"), "nu1");
  spec.nu2 = expr_triple(require(j, "nu2", "curve spec"), "nu2");
  return spec;
}

CurvatureSpec curvature_spec_from(const json& j) {
  if (!j.is_object()) throw SpecError("curvature spec: expected a JSON object");
  CurvatureSpec spec;
  const auto text = [&](const char* key) {
    const json& v = require(j, key, "curvature spec");
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return format_double(v.get<double>());
    throw SpecError(std::string("curvature spec: \"") + key + "\" must be an expression");
  };
  spec.l = text("l");
  spec.m = text("m");
  spec.n = text("n");
  spec.alpha = text("alpha");

  const json& init = require(j, "init", "curvature spec");
  spec.init.t0 = scalar_field(require(init, "t0", "init"), "init.t0");
  spec.init.nu1 = spatial_field(require(init, "nu1", "init"), "init.nu1");
  spec.init.nu2 = spatial_field(require(init, "nu2", "init"), "init.nu2");
  spec.init.gamma = spatial_field(require(init, "gamma", "init"), "init.gamma");

  const json& grid = require(j, "grid", "curvature spec");
  spec.grid.t_min = scalar_field(require(grid, "t_min", "grid"), "grid.t_min");
  spec.grid.t_max = scalar_field(require(grid, "t_max", "grid"), "grid.t_max");
  spec.grid.h = scalar_field(require(grid, "h", "grid"), "grid.h");
  if (!(spec.grid.h > 0)) throw SpecError("grid.h must be positive");
  if (!(spec.grid.t_max > spec.grid.t_min)) throw SpecError("grid.t_max must exceed grid.t_min");
  return spec;
}

}  // namespace

CurveSpec parse_curve_spec(const std::string& json_text) {
  return curve_spec_from(parse_json(json_text));
}

CurveSpec load_curve_spec(const std::filesystem::path& path) {
  return curve_spec_from(load_json(path));
}

CurvatureSpec parse_curvature_spec(const std::string& json_text) {
  return curvature_spec_from(parse_json(json_text));
}

CurvatureSpec load_curvature_spec(const std::filesystem::path& path) {
  return curvature_spec_from(load_json(path));
}

FramedCurve build_curve(const CurveSpec& spec, const FrameValidation& cfg) {
  return FramedCurve::make(SpaceCurve::parse(spec.gamma, spec.domain),
                           SpaceCurve::parse(spec.nu1, spec.domain),
                           SpaceCurve::parse(spec.nu2, spec.domain), cfg);
}

Curvature build_curvature(const CurvatureSpec& spec) {
  Curvature curv;
  curv.l = ScalarFn::parse(spec.l);
  curv.m = ScalarFn::parse(spec.m);
  curv.n = ScalarFn::parse(spec.n);
  curv.alpha = ScalarFn::parse(spec.alpha);
  curv.delta1 = spec.init.delta1();
  curv.delta2 = spec.init.delta2();
  return curv;
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) os << ',';
    os << table.header[i];
  }
  os << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_double(row[i]);
    }
    os << "\r\n";
  }
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(out, table);
}

namespace {

struct Panel {
  const char* title;
  int ix;  // component index for the horizontal axis
  int iy;  // component index for the vertical axis
};

constexpr Panel kPanels[] = {{"b-c", 0, 1}, {"b-d", 0, 2}, {"c-d", 1, 2}};
constexpr double kPanelSize = 320.0;
constexpr double kPanelGap = 30.0;
constexpr double kMarginTop = 42.0;
constexpr double kMarginLeft = 20.0;
constexpr double kLegendHeight = 34.0;

}  // namespace

void write_svg(std::ostream& os, const std::vector<CurveSeries>& series) {
  const double width = kMarginLeft * 2 + 3 * kPanelSize + 2 * kPanelGap;
  const double height = kMarginTop + kPanelSize + kLegendHeight + 12.0;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\">\n";

  for (int p = 0; p < 3; ++p) {
    const Panel& panel = kPanels[p];
    const double x0 = kMarginLeft + p * (kPanelSize + kPanelGap);

    double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
    bool first = true;
    for (const auto& s : series) {
      for (const auto& pt : s.points) {
        const double x = pt[panel.ix];
        const double y = pt[panel.iy];
        if (first) {
          lo_x = hi_x = x;
          lo_y = hi_y = y;
          first = false;
        } else {
          lo_x = std::min(lo_x, x);
          hi_x = std::max(hi_x, x);
          lo_y = std::min(lo_y, y);
          hi_y = std::max(hi_y, y);
        }
      }
    }
    const double span_x = std::max(hi_x - lo_x, 1e-9);
    const double span_y = std::max(hi_y - lo_y, 1e-9);
    const double pad_x = 0.05 * span_x;
    const double pad_y = 0.05 * span_y;
    const double sx = kPanelSize / (span_x + 2 * pad_x);
    const double sy = kPanelSize / (span_y + 2 * pad_y);

    os << "  <text x=\"" << (x0 + kPanelSize / 2) << "\" y=\"" << (kMarginTop - 12)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << panel.title << "</text>\n";
    os << "  <svg x=\"" << x0 << "\" y=\"" << kMarginTop << "\" width=\"" << kPanelSize
       << "\" height=\"" << kPanelSize << "\">\n";
    os << "    <rect x=\"0.5\" y=\"0.5\" width=\"" << (kPanelSize - 1) << "\" height=\""
       << (kPanelSize - 1) << "\" fill=\"white\" stroke=\"#b0b0b0\"/>\n";
    for (const auto& s : series) {
      os << "    <polyline fill=\"none\" stroke=\"" << s.color
         << "\" stroke-width=\"1.3\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        const double x = (s.points[i][panel.ix] - lo_x + pad_x) * sx;
        const double y = kPanelSize - (s.points[i][panel.iy] - lo_y + pad_y) * sy;
        if (i) os << ' ';
        os << format_double(x) << ',' << format_double(y);
      }
      os << "\"/>\n";
    }
    os << "  </svg>\n";
  }

  double lx = kMarginLeft;
  const double ly = kMarginTop + kPanelSize + 22.0;
  for (const auto& s : series) {
    os << "  <line x1=\"" << lx << "\" y1=\"" << (ly - 4) << "\" x2=\"" << (lx + 26)
       << "\" y2=\"" << (ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    lx += 32;
    os << "  <text x=\"" << lx << "\" y=\"" << ly
       << "\" font-family=\"sans-serif\" font-size=\"13\">" << s.name << "</text>\n";
    lx += 14.0 + 7.5 * static_cast<double>(s.name.size());
  }
  os << "</svg>\n";
}

void write_svg(const std::filesystem::path& path, const std::vector<CurveSeries>& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_svg(out, series);
}

std::string report_json(const verify::Report& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back(json{{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"skipped", c.skipped},
                          {"note", c.note}});
  }
  return json{{"all_pass", report.all_pass()}, {"checks", checks}}.dump(2);
}

std::string to_json(const SpatialHybrid& x) { return json{x.b, x.c, x.d}.dump(); }

std::string to_json(const Hybrid& x) { return json{x.a, x.b, x.c, x.d}.dump(); }

std::string to_json(const Motion& m) {
  json arr = json::array();
  for (double v : m.matrix().m) arr.push_back(v);
  return json{{"matrix", arr}}.dump();
}

SpatialHybrid spatial_from_json(const std::string& text) {
  const json j = parse_json(text);
  return spatial_field(j, "spatial hybrid");
}

Motion motion_from_json(const std::string& text) {
  const json j = parse_json(text);
  const json& arr = require(j, "matrix", "motion");
  if (!arr.is_array() || arr.size() != 9) throw SpecError("motion: \"matrix\" must have 9 entries");
  Mat3 m;
  for (int i = 0; i < 9; ++i) m.m[static_cast<std::size_t>(i)] = scalar_field(arr[i], "matrix");
  return Motion::from_matrix(m);
}

}  // namespace hybridcurve::io
