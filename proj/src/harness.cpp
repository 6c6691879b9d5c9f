#include "eraser/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace eraser {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLobeCut = 0.2;       // central-lobe envelope threshold
constexpr int kOracleStride = 10;      // spot-check cadence in run_scan
constexpr double kOracleRelTol = 1e-5;

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

struct LobeView {
  std::vector<const PatternRecord*> pts;
  double peak_coincidence = 0.0;
};

LobeView central_lobe(std::span<const PatternRecord> group) {
  if (group.empty()) throw std::invalid_argument("empty record group");
  std::size_t peak_idx = 0;
  double env_peak = 0.0;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i].envelope > env_peak) {
      env_peak = group[i].envelope;
      peak_idx = i;
    }
  }
  std::size_t lo = peak_idx;
  while (lo > 0 && group[lo - 1].envelope > kLobeCut * env_peak) --lo;
  std::size_t hi = peak_idx;
  while (hi + 1 < group.size() && group[hi + 1].envelope > kLobeCut * env_peak) ++hi;

  LobeView view;
  for (std::size_t i = lo; i <= hi; ++i) {
    view.pts.push_back(&group[i]);
    view.peak_coincidence = std::max(view.peak_coincidence, group[i].coincidence_raw);
  }
  return view;
}

}  // namespace

std::vector<PatternRecord> run_scan(const RunConfig& cfg) {
  const std::vector<double> xs = cfg.scan_positions();
  std::vector<PatternRecord> records;
  records.reserve(xs.size() * cfg.epsilon_I_list.size());

  for (double eps : cfg.epsilon_I_list) {
    const EraserConfig ec = cfg.eraser(eps);
    const std::size_t group_start = records.size();
    double group_max = 0.0;
    for (double x : xs) {
      PatternRecord r;
      r.epsilon_I = eps;
      r.x_m = x;
      r.epsilon_x = ec.geometry.epsilon_x(x);
      r.envelope = ec.geometry.envelope(x);
      r.coincidence_raw = coincidence(x, cfg.measurement, ec);
      records.push_back(r);
      group_max = std::max(group_max, r.coincidence_raw);
    }
    if (group_max > 0.0) {
      for (std::size_t i = group_start; i < records.size(); ++i) {
        records[i].coincidence_normalized = records[i].coincidence_raw / group_max;
      }
    }

    if (cfg.oracle_check) {
      // One normalization constant per configuration, then per-point check.
      std::vector<std::pair<double, double>> checked;  // (oracle, closed form)
      for (std::size_t i = 0; i < xs.size(); i += kOracleStride) {
        checked.emplace_back(coincidence_oracle(xs[i], cfg.measurement, ec),
                             records[group_start + i].coincidence_raw);
      }
      double num = 0.0, den = 0.0, oracle_max = 0.0;
      for (const auto& [o, c] : checked) {
        num += o * c;
        den += c * c;
        oracle_max = std::max(oracle_max, std::abs(o));
      }
      if (den > 0.0) {
        const double k = num / den;
        for (std::size_t j = 0; j < checked.size(); ++j) {
          const auto& [o, c] = checked[j];
          // Relative tolerance, floored at 1% of the pattern peak so fringe
          // minima stay meaningful.
          const double tol = kOracleRelTol * std::max(std::abs(o), 0.01 * oracle_max);
          if (std::abs(o - k * c) > tol) {
            std::ostringstream msg;
            msg << "oracle cross-check failed at x=" << xs[j * kOracleStride]
                << " m, epsilon_I=" << eps << ": oracle=" << o
                << ", closed form*k=" << k * c;
            throw std::runtime_error(msg.str());
          }
        }
      }
    }
  }
  return records;
}

void emit_csv(std::span<const PatternRecord> records, std::ostream& out) {
  out << "epsilon_I,x_m,epsilon_x,envelope,coincidence_raw,coincidence_normalized\n";
  for (const auto& r : records) {
    out << format_double(r.epsilon_I) << ',' << format_double(r.x_m) << ','
        << format_double(r.epsilon_x) << ',' << format_double(r.envelope) << ','
        << format_double(r.coincidence_raw) << ','
        << format_double(r.coincidence_normalized) << '\n';
  }
}

void emit_csv(std::span<const PatternRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write CSV to " + path);
  emit_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error("write failure on " + path);
}

std::vector<PatternSample> to_samples(std::span<const PatternRecord> group) {
  std::vector<PatternSample> samples;
  samples.reserve(group.size());
  for (const auto& r : group) {
    samples.push_back({r.x_m, r.epsilon_x, r.envelope, r.coincidence_raw,
                       r.coincidence_normalized});
  }
  return samples;
}

FringeFit fit_fringes(std::span<const PatternRecord> group) {
  for (const auto& r : group) {
    if (r.epsilon_I != group.front().epsilon_I) {
      throw std::invalid_argument("fit_fringes expects a single epsilon_I group");
    }
  }
  const LobeView lobe = central_lobe(group);
  const double span =
      std::abs(lobe.pts.back()->epsilon_x - lobe.pts.front()->epsilon_x);
  if (span < 2.0) {
    throw std::invalid_argument("fewer than 2 fringe periods in the central lobe");
  }

  // Sum of squared residuals with the amplitude eliminated analytically.
  const auto sse = [&](double v, double phase) {
    double mm = 0.0, cm = 0.0, cc = 0.0;
    for (const PatternRecord* r : lobe.pts) {
      const double model =
          r->envelope * (1.0 - v * std::sin(2.0 * kPi * r->epsilon_x + phase));
      mm += model * model;
      cm += r->coincidence_raw * model;
      cc += r->coincidence_raw * r->coincidence_raw;
    }
    if (mm <= 0.0) return cc;
    const double amp = cm / mm;
    return cc - 2.0 * amp * cm + amp * amp * mm;
  };

  // Coarse grid, then alternating golden-section refinement.
  double best_v = 0.0, best_phase = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int iv = 0; iv <= 100; ++iv) {
    const double v = iv / 100.0;
    for (int ip = 0; ip < 120; ++ip) {
      const double phase = -kPi + ip * (2.0 * kPi / 120.0);
      const double s = sse(v, phase);
      if (s < best) {
        best = s;
        best_v = v;
        best_phase = phase;
      }
    }
  }
  constexpr double kGolden = 0.61803398874989484820;
  const auto refine = [&](double center, double halfwidth, bool is_v) {
    double lo = center - halfwidth, hi = center + halfwidth;
    if (is_v) lo = std::max(lo, 0.0);
    double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
    double f1 = is_v ? sse(x1, best_phase) : sse(best_v, x1);
    double f2 = is_v ? sse(x2, best_phase) : sse(best_v, x2);
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - kGolden * (hi - lo);
        f1 = is_v ? sse(x1, best_phase) : sse(best_v, x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + kGolden * (hi - lo);
        f2 = is_v ? sse(x2, best_phase) : sse(best_v, x2);
      }
    }
    return 0.5 * (lo + hi);
  };
  for (int round = 0; round < 3; ++round) {
    best_v = refine(best_v, 0.02, true);
    best_phase = refine(best_phase, 2.0 * kPi / 120.0, false);
    best = sse(best_v, best_phase);
  }

  FringeFit fit;
  fit.visibility = best_v;
  fit.phase = std::remainder(best_phase, 2.0 * kPi);
  const double n = static_cast<double>(lobe.pts.size());
  fit.residual = lobe.peak_coincidence > 0.0
                     ? std::sqrt(std::max(best, 0.0) / n) / lobe.peak_coincidence
                     : 0.0;

  // Degenerate when allowing v > 0 buys no meaningful residual improvement.
  const double sse0 = sse(0.0, 0.0);  // phase drops out at v = 0
  const double res0 = lobe.peak_coincidence > 0.0
                          ? std::sqrt(std::max(sse0, 0.0) / n) / lobe.peak_coincidence
                          : 0.0;
  if (res0 - fit.residual < 1e-6) {
    fit.degenerate = true;
    fit.visibility = 0.0;
    fit.phase = 0.0;
  }
  return fit;
}

std::vector<std::pair<double, FringeFit>> fit_groups(
    std::span<const PatternRecord> records) {
  std::vector<std::pair<double, FringeFit>> out;
  std::size_t start = 0;
  while (start < records.size()) {
    std::size_t end = start;
    while (end < records.size() && records[end].epsilon_I == records[start].epsilon_I) {
      ++end;
    }
    out.emplace_back(records[start].epsilon_I,
                     fit_fringes(records.subspan(start, end - start)));
    start = end;
  }
  return out;
}

}  // namespace eraser
