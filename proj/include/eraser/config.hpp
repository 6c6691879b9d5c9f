#pragma once
// Run configuration for the command-line harness.  The surface speaks the
// experimenter's units and names (full slit width, center-to-center
// separation, nm/um/mm); conversion to the half-width geometry happens here
// and nowhere else.

#include <string>
#include <string_view>
#include <vector>

#include "eraser/eraser_model.hpp"

namespace eraser {

struct ScanRange {
  double x_min_mm = -1.5;
  double x_max_mm = 1.5;
  double step_um = 30.0;
};

struct RunConfig {
  double wavelength_nm = 702.0;
  double filter_width_nm = 10.0;
  // When true, filter_width_nm is a FWHM and is converted to the Gaussian
  // width parameter by 1 / (2 sqrt(2 ln 2)).
  bool filter_width_is_fwhm = false;
  double slit_full_width_um = 80.0;
  double slit_center_separation_um = 250.0;
  double detector_slit_width_um = 50.0;
  double propagation_distance_m = 0.2;
  ScanRange scan;
  MeasurementSetting measurement = MeasurementSetting::p();
  std::string measurement_label = "P";
  std::vector<double> epsilon_I_list{0.25};
  bool oracle_check = false;

  SlitGeometry geometry() const;
  SpectralFilter filter() const;
  EraserConfig eraser(double epsilon_I) const;
  // Scan positions in meters, x ascending; validates that step divides range.
  std::vector<double> scan_positions() const;
};

// Parses the flat key-value config grammar:
//   one `key = value` pair per line, `#` starts a comment, blank lines
//   ignored, lists comma-separated, booleans true/false.
// Unknown keys, malformed numbers, and non-positive lengths raise
// std::invalid_argument naming the key.  Absent keys keep the defaults
// above.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Frozen scan presets named after the standard figure layouts:
//   fig2: P analyzer, epsilon_I in {0, 1/8, 1/4}
//   fig3: P analyzer, epsilon_I = n + 1/4 for n = 0..40
//   fig5: P analyzer, epsilon_I in {7.25, 11.25, 15.25, 19.25}
// Throws std::invalid_argument on unknown names.
RunConfig preset_config(std::string_view name);

}  // namespace eraser
