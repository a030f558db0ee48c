#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

#include "catseye/error.hpp"

namespace catseye::cli {

using json = nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(17) << v;
  return s.str();
}

CsvWriter::CsvWriter(std::ostream& out) : out_(out) {}

void CsvWriter::sep() {
  if (!first_) out_ << ',';
  first_ = false;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (const auto& n : names) cell(n);
  end_row();
}

CsvWriter& CsvWriter::cell(double v) {
  sep();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::cell(std::size_t v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  sep();
  if (v.find_first_of(",\"\r\n") == std::string::npos) {
    out_ << v;
    return *this;
  }
  out_ << '"';
  for (char c : v) {
    if (c == '"') out_ << '"';
    out_ << c;
  }
  out_ << '"';
  return *this;
}

CsvWriter& CsvWriter::empty() {
  sep();
  return *this;
}

void CsvWriter::end_row() {
  out_ << "\r\n";
  first_ = true;
}

SvgWriter::SvgWriter(double x_min, double x_max, double y_min, double y_max, double width,
                     double height)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width), height_(height) {
  if (!(x_max > x_min) || !(y_max > y_min)) throw RangeError("empty SVG extent");
}

double SvgWriter::px(double x) const { return (x - x_min_) / (x_max_ - x_min_) * width_; }
double SvgWriter::py(double y) const { return height_ - (y - y_min_) / (y_max_ - y_min_) * height_; }

void SvgWriter::polyline(const std::vector<Point>& pts, const std::string& stroke, bool dashed,
                         bool closed) {
  if (pts.empty()) return;
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::fixed << std::setprecision(2);
  s << "<" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"" << stroke
    << "\" stroke-width=\"1.2\"";
  if (dashed) s << " stroke-dasharray=\"6 4\"";
  s << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s << ' ';
    s << px(pts[i].x) << ',' << py(pts[i].y);
  }
  s << "\"/>\n";
  body_ += s.str();
}

void SvgWriter::marker(Point p, const std::string& fill) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::fixed << std::setprecision(2) << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
    << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
  body_ += s.str();
}

std::string SvgWriter::str() const {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width_ << ' ' << height_
    << "\" width=\"" << width_ << "\" height=\"" << height_ << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << body_ << "</svg>\n";
  return s.str();
}

std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create output directory '" + dir.string() + "'");
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + path.string() + "'");
  out << text;
  return path;
}

json document(const std::string& schema) {
  return json{{"schema", schema}, {"schema_version", kSchemaVersion}};
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const LaminarFlow& flow) {
  return json{{"s", flow.s},         {"gamma", flow.gamma}, {"h", flow.h},
              {"k", flow.k},         {"kappa", flow.kappa}, {"Rbar", flow.Rbar},
              {"kappa_h", flow.kappa * flow.h}};
}

json to_json(const ResidualReport& r) {
  json history = json::array();
  for (double v : r.history) history.push_back(number(v));
  return json{{"pde_res", number(r.pde_res)},
              {"bern_res", number(r.bern_res)},
              {"dirichlet_res", number(r.dirichlet_res)},
              {"flowforce_var", number(r.flowforce_var)},
              {"nx", r.nx},
              {"ny", r.ny},
              {"x_order", r.x_order},
              {"y_order", r.y_order},
              {"iterations", r.iterations},
              {"history", history},
              {"cond_estimate", number(r.cond_estimate)},
              {"converged", r.converged}};
}

namespace {

json polylines_summary(const std::vector<Polyline>& lines) {
  json out = json::array();
  for (const auto& l : lines) {
    double x0 = l.points.empty() ? 0.0 : l.points.front().x;
    double x1 = l.points.empty() ? 0.0 : l.points.back().x;
    out.push_back({{"points", l.points.size()}, {"closed", l.closed},
                   {"X_start", x0}, {"X_end", x1}});
  }
  return out;
}

}  // namespace

json to_json(const DiagnosticsReport& r) {
  json interior = json::array();
  for (const auto& p : r.interior_stagnation) {
    interior.push_back({{"X", p.X}, {"Y", p.Y}, {"type", to_string(p.type)},
                        {"hessian_det", number(p.hessian_det)}});
  }
  json classes = json::array();
  std::size_t closed = 0, upper = 0;
  for (const auto& c : r.classification) {
    classes.push_back({{"level", c.level}, {"tag", to_string(c.tag)}, {"points", c.points}});
    closed += c.tag == StreamlineTag::Closed;
    upper += c.tag == StreamlineTag::SurfaceDiffeomorphic;
  }
  return json{{"b", r.b},
              {"grid_dx", r.grid_dx},
              {"bottom_stagnation", r.bottom_stagnation},
              {"interior_stagnation", interior},
              {"degenerate_laminar", r.degenerate_laminar},
              {"critical_level", polylines_summary(r.critical_level)},
              {"critical_streamline", polylines_summary(r.critical_streamline)},
              {"crest_level_height", number(r.crest_level_height)},
              {"crest_streamline_height", number(r.crest_streamline_height)},
              {"streamlines", classes},
              {"closed_streamlines", closed},
              {"surface_streamlines", upper},
              {"flowforce_var", number(r.flowforce_var)},
              {"residuals", to_json(r.residuals)},
              {"min_elevation", r.min_elevation},
              {"far_field_depth", r.far_field_depth},
              {"conjugate_depth", r.conjugate_depth},
              {"open_domain", r.open_domain},
              {"flagged_cells", r.flagged_cells}};
}

json to_json(const Certification& cert) {
  json checks = json::array();
  for (const auto& c : cert.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return json{{"passed", cert.passed()}, {"checks", checks}};
}

std::string profile_csv(const std::vector<ProfileSample>& profile,
                        const std::vector<double>& closed_form) {
  const bool with_closed = !closed_form.empty();
  std::ostringstream s;
  CsvWriter csv(s);
  if (with_closed) {
    csv.header({"X", "eta", "eta_closed_form"});
  } else {
    csv.header({"X", "eta"});
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    csv.cell(profile[i].X).cell(profile[i].eta);
    if (with_closed) csv.cell(closed_form.at(i));
    csv.end_row();
  }
  return s.str();
}

std::string field_csv(const WaveField& field, double b) {
  const auto phys = to_physical(field, b);
  std::ostringstream s;
  CsvWriter csv(s);
  csv.header({"i", "j", "X", "Y", "psi"});
  for (std::size_t i = 0; i < phys.nx; ++i) {
    for (std::size_t j = 0; j < phys.rows; ++j) {
      const std::size_t n = i * phys.rows + j;
      csv.cell(i).cell(j).cell(phys.X[i]).cell(phys.Y[n]).cell(phys.psi[n]);
      csv.end_row();
    }
  }
  return s.str();
}

std::string polylines_csv(const DiagnosticsReport& report) {
  std::ostringstream s;
  CsvWriter csv(s);
  csv.header({"curve", "line", "closed", "X", "Y"});
  auto emit = [&](const std::string& name, const std::vector<Polyline>& lines) {
    for (std::size_t l = 0; l < lines.size(); ++l) {
      for (const auto& p : lines[l].points) {
        csv.cell(name).cell(l).cell(std::string(lines[l].closed ? "1" : "0")).cell(p.x).cell(p.y);
        csv.end_row();
      }
    }
  };
  emit("critical_level", report.critical_level);
  emit("critical_streamline", report.critical_streamline);
  return s.str();
}

std::string structure_svg(const WaveField& field, double b, const DiagnosticsReport& report) {
  const auto phys = to_physical(field, b);
  std::vector<Point> surface;
  double top = 0.0;
  for (std::size_t i = 0; i < phys.nx; ++i) {
    surface.push_back({phys.X[i], phys.eta[i]});
    top = std::max(top, phys.eta[i]);
  }
  const double x0 = phys.X.front(), x1 = phys.X.back();
  SvgWriter svg(x0, x1, 0.0, 1.05 * top);
  svg.polyline({{x0, 0.0}, {x1, 0.0}}, "black");
  svg.polyline(surface, "#1f4e9c");
  for (const auto& l : report.critical_level) svg.polyline(l.points, "#888888", true, l.closed);
  for (const auto& l : report.critical_streamline) svg.polyline(l.points, "#c0392b", false, l.closed);
  for (double X : report.bottom_stagnation) svg.marker({X, 0.0}, "#c0392b");
  for (const auto& p : report.interior_stagnation) svg.marker({p.X, p.Y}, "#27ae60");
  return svg.str();
}

}  // namespace catseye::cli
