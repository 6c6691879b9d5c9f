#pragma once
// Scan execution, CSV emission, and fringe fitting for the command-line
// harness.  Output is deterministic: identical configs produce byte-identical
// CSV.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eraser/config.hpp"

namespace eraser {

struct PatternRecord {
  double epsilon_I = 0.0;
  double x_m = 0.0;
  double epsilon_x = 0.0;
  double envelope = 0.0;
  double coincidence_raw = 0.0;
  double coincidence_normalized = 0.0;
};

// One record per (epsilon_I, x), epsilon_I-major and x ascending; the
// normalized column peaks at 1 within each epsilon_I group.  When
// cfg.oracle_check is set, every 10th point is cross-checked against
// coincidence_oracle (one normalization constant per epsilon_I) and a
// mismatch aborts with std::runtime_error carrying the offending point.
std::vector<PatternRecord> run_scan(const RunConfig& cfg);

// Header "epsilon_I,x_m,epsilon_x,envelope,coincidence_raw,
// coincidence_normalized", one row per record, >= 9 significant digits,
// locale-independent formatting.
void emit_csv(std::span<const PatternRecord> records, std::ostream& out);
void emit_csv(std::span<const PatternRecord> records, const std::string& path);

std::vector<PatternSample> to_samples(std::span<const PatternRecord> group);

struct FringeFit {
  double visibility = 0.0;
  double phase = 0.0;     // radians, in [-pi, pi)
  double residual = 0.0;  // RMS misfit over the peak coincidence
  bool degenerate = false;  // no fringe distinguishable from zero
};

// Least-squares fit of C(x) = A E(x) (1 - v sin(2 pi eps_x + phase)) over
// the central envelope lobe of one epsilon_I group, with the amplitude A
// eliminated analytically and (v, phase) found on a grid refined by
// alternating golden-section descent.  Deterministic.  Requires >= 2 fringe
// periods inside the lobe (throws std::invalid_argument otherwise) and a
// single epsilon_I value across the records.
FringeFit fit_fringes(std::span<const PatternRecord> group);

// Splits records into consecutive equal-epsilon_I groups (as produced by
// run_scan) and returns one (epsilon_I, fit) pair per group.
std::vector<std::pair<double, FringeFit>> fit_groups(std::span<const PatternRecord> records);

}  // namespace eraser
