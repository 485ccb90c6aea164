#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hybridcurve/framed.hpp"
#include "hybridcurve/motions.hpp"
#include "hybridcurve/reconstruct.hpp"
#include "hybridcurve/verify.hpp"

namespace hybridcurve::io {

/// Curve specification as read from JSON: a domain plus three expression
/// triples in (b, c, d) order.
struct CurveSpec {
  Interval domain;
  std::array<std::string, 3> gamma;
  std::array<std::string, 3> nu1;
  std::array<std::string, 3> nu2;
};

/// Curvature specification: four expressions, initial frame, and step grid.
struct CurvatureSpec {
  std::string l;
  std::string m;
  std::string n;
  std::string alpha;
  InitialFrame init;
  IntegrationGrid grid;
};

/// Parsers throw SpecError on schema problems and SyntaxError inside
/// expressions. Scalar fields accept either JSON numbers or constant
/// expression strings such as "2*pi".
CurveSpec parse_curve_spec(const std::string& json_text);
CurveSpec load_curve_spec(const std::filesystem::path& path);
CurvatureSpec parse_curvature_spec(const std::string& json_text);
CurvatureSpec load_curvature_spec(const std::filesystem::path& path);

FramedCurve build_curve(const CurveSpec& spec, const FrameValidation& cfg = {});
Curvature build_curvature(const CurvatureSpec& spec);

/// Numeric table written as RFC 4180 CSV (header row, CRLF line ends,
/// shortest round-trip number formatting).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& table);
void write_csv(const std::filesystem::path& path, const Table& table);

/// One plotted curve: a name for the legend, a stroke color, and points.
struct CurveSeries {
  std::string name;
  std::string color;
  std::vector<SpatialHybrid> points;
};

/// SVG 1.1 document with three orthographic projections (b-c, b-d, c-d) as
/// side-by-side viewports.
void write_svg(std::ostream& os, const std::vector<CurveSeries>& series);
void write_svg(const std::filesystem::path& path, const std::vector<CurveSeries>& series);

/// Machine-readable form of a verification report.
std::string report_json(const verify::Report& report);

// JSON value encodings of the core types.
std::string to_json(const SpatialHybrid& x);  // [b, c, d]
std::string to_json(const Hybrid& x);         // [a, b, c, d]
std::string to_json(const Motion& m);         // {"matrix": [row-major 9]}
SpatialHybrid spatial_from_json(const std::string& text);
Motion motion_from_json(const std::string& text);

}  // namespace hybridcurve::io
