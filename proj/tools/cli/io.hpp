#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "catseye/diagnostics.hpp"
#include "catseye/field.hpp"
#include "catseye/flattened.hpp"
#include "catseye/laminar.hpp"
#include "catseye/reconstruct.hpp"

namespace catseye::cli {

inline constexpr int kSchemaVersion = 1;

/// RFC-4180 rows, '.' decimal separator, 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out);
  void header(const std::vector<std::string>& names);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::size_t v);
  CsvWriter& cell(const std::string& v);
  CsvWriter& empty();
  void end_row();

 private:
  void sep();
  std::ostream& out_;
  bool first_ = true;
};

std::string format_double(double v);

/// Polylines, dashed polylines and markers in a fixed viewBox. Data
/// coordinates are mapped with independent x and y scales (y up).
class SvgWriter {
 public:
  SvgWriter(double x_min, double x_max, double y_min, double y_max, double width = 960,
            double height = 360);
  void polyline(const std::vector<Point>& pts, const std::string& stroke, bool dashed = false,
                bool closed = false);
  void marker(Point p, const std::string& fill);
  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;
  double x_min_, x_max_, y_min_, y_max_, width_, height_;
  std::string body_;
};

/// Writes `text` to dir/name, creating dir. Returns the path.
std::filesystem::path write_text(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& text);

nlohmann::json document(const std::string& schema);

/// Numbers, with non-finite values as null.
nlohmann::json number(double v);

nlohmann::json to_json(const LaminarFlow& flow);
nlohmann::json to_json(const ResidualReport& report);
nlohmann::json to_json(const DiagnosticsReport& report);
nlohmann::json to_json(const Certification& cert);

std::string profile_csv(const std::vector<ProfileSample>& profile, const std::vector<double>& closed_form);
std::string field_csv(const WaveField& field, double b);
std::string polylines_csv(const DiagnosticsReport& report);
std::string structure_svg(const WaveField& field, double b, const DiagnosticsReport& report);

}  // namespace catseye::cli
