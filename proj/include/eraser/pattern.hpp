#pragma once
// One detector position of a scanned pattern.

namespace eraser {

struct PatternSample {
  double x = 0.0;            // detector position, meters
  double epsilon_x = 0.0;    // transverse path difference over lambda
  double envelope = 0.0;     // squared diffraction envelope, peak 1
  double coincidence = 0.0;  // unnormalized intensity / coincidence rate
  double normalized = 0.0;   // coincidence / pattern-wide maximum
};

}  // namespace eraser
