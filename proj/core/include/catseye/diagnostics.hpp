#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catseye/contour.hpp"
#include "catseye/field.hpp"
#include "catseye/flattened.hpp"

namespace catseye {

enum class StagnationType { Center, Saddle, Degenerate };
std::string to_string(StagnationType type);

struct StagnationPoint {
  double X = 0.0;  ///< physical
  double Y = 0.0;
  double x = 0.0;  ///< flattened strip
  double y = 0.0;
  StagnationType type = StagnationType::Degenerate;
  double hessian_det = 0.0;
};

enum class StreamlineTag { Closed, SurfaceDiffeomorphic, Unclassified };
std::string to_string(StreamlineTag tag);

struct StreamlineSample {
  double level = 0.0;
  StreamlineTag tag = StreamlineTag::Unclassified;
  std::size_t points = 0;
};

struct DiagnosticsReport {
  double b = 0.0;
  double grid_dx = 0.0;  ///< physical column step
  std::vector<double> bottom_stagnation;  ///< physical X, increasing
  std::vector<StagnationPoint> interior_stagnation;
  bool degenerate_laminar = false;  ///< x-independent flow: critical level only
  std::vector<Polyline> critical_level;       ///< physical coordinates
  std::vector<Polyline> critical_streamline;  ///< physical coordinates
  std::vector<StreamlineSample> classification;
  double crest_level_height = 0.0;       ///< Y of the critical level on X = 0 (NaN if absent)
  double crest_streamline_height = 0.0;  ///< Y of the critical streamline on X = 0
  std::vector<double> flow_force;  ///< physical S per column
  double flowforce_var = 0.0;
  ResidualReport residuals;
  double min_elevation = 0.0;     ///< min eta (physical)
  /// Periodic grids: the conjugate depth. Open grids: the larger end-column
  /// depth, i.e. the far state of the field itself.
  double far_field_depth = 0.0;
  double conjugate_depth = 0.0;   ///< h(s') / sqrt(b), 0 if unavailable
  bool open_domain = false;
  std::size_t flagged_cells = 0;  ///< plateau cells met while contouring
};

struct StructureOptions {
  std::size_t closed_levels = 12;  ///< levels psi_center k / (K + 1) inside the vortex
  std::size_t upper_levels = 12;   ///< levels m / (M + 1) in (0, 1)
  Discretization disc;
};

/// Bottom and interior stagnation points of a field (physical units via b).
DiagnosticsReport find_stagnation(const WaveField& field, double b, const Discretization& disc = {});

/// Critical level, critical streamline, streamline classification, flow force,
/// residuals and elevation data, appended to a report from find_stagnation.
void trace_structure(const WaveField& field, DiagnosticsReport& report,
                     const StructureOptions& options = {});

DiagnosticsReport diagnose(const WaveField& field, double b, const StructureOptions& options = {});

struct CertificationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Certification {
  std::vector<CertificationCheck> checks;
  bool passed() const;
};

struct CertifyOptions {
  std::size_t min_closed = 10;
  double crest_tolerance_steps = 2.0;  ///< |X_center| bound in grid steps
  double endpoint_tolerance_steps = 2.0;
};

/// Structural assertions for one period of a symmetric wave with crest at X = 0.
Certification certify(const DiagnosticsReport& report, const CertifyOptions& options = {});

}  // namespace catseye
