#include "eraser/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eraser {

namespace {

constexpr double kFwhmToGaussianWidth = 0.42466090014400953;  // 1 / (2 sqrt(2 ln 2))

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view key, std::string_view value) {
  const std::string buf(trim(value));
  double out = 0.0;
  const char* end = buf.data() + buf.size();
  const auto [ptr, ec] = std::from_chars(buf.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("malformed number for key '" + std::string(key) + "'");
  }
  return out;
}

double parse_positive(std::string_view key, std::string_view value) {
  const double v = parse_number(key, value);
  if (!(v > 0.0)) {
    throw std::invalid_argument("key '" + std::string(key) + "' must be positive");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string_view v = trim(value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("key '" + std::string(key) + "' expects true or false");
}

std::vector<double> parse_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  std::string_view rest = value;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(key, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

SlitGeometry RunConfig::geometry() const {
  return SlitGeometry(slit_full_width_um * 1e-6 / 2.0,
                      slit_center_separation_um * 1e-6 / 2.0,
                      detector_slit_width_um * 1e-6 / 2.0, propagation_distance_m,
                      wavelength_nm * 1e-9);
}

SpectralFilter RunConfig::filter() const {
  const double width_nm =
      filter_width_is_fwhm ? filter_width_nm * kFwhmToGaussianWidth : filter_width_nm;
  return SpectralFilter(wavelength_nm * 1e-9, width_nm * 1e-9);
}

EraserConfig RunConfig::eraser(double epsilon_I) const {
  const SpectralFilter f = filter();
  return EraserConfig(geometry(), f, MziSetting::from_epsilon(epsilon_I, f));
}

std::vector<double> RunConfig::scan_positions() const {
  if (!(scan.step_um > 0.0)) throw std::invalid_argument("key 'step_um' must be positive");
  const double range_mm = scan.x_max_mm - scan.x_min_mm;
  if (!(range_mm > 0.0)) throw std::invalid_argument("scan range is empty");
  const double steps = range_mm * 1e3 / scan.step_um;
  const long n = std::lround(steps);
  if (n < 1 || std::abs(steps - static_cast<double>(n)) > 1e-9 * steps) {
    throw std::invalid_argument("scan step does not divide the scan range");
  }
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    xs.push_back((scan.x_min_mm + i * scan.step_um * 1e-3) * 1e-3);
  }
  return xs;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  bool explicit_theta = false;
  double theta_deg = 45.0;
  double phi_deg = 0.0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("expected 'key = value', got: " + std::string(line));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "wavelength_nm") cfg.wavelength_nm = parse_positive(key, value);
    else if (key == "filter_width_nm") cfg.filter_width_nm = parse_positive(key, value);
    else if (key == "filter_width_is_fwhm") cfg.filter_width_is_fwhm = parse_bool(key, value);
    else if (key == "slit_full_width_um") cfg.slit_full_width_um = parse_positive(key, value);
    else if (key == "slit_center_separation_um")
      cfg.slit_center_separation_um = parse_positive(key, value);
    else if (key == "detector_slit_width_um")
      cfg.detector_slit_width_um = parse_positive(key, value);
    else if (key == "propagation_distance_m")
      cfg.propagation_distance_m = parse_positive(key, value);
    else if (key == "x_min_mm") cfg.scan.x_min_mm = parse_number(key, value);
    else if (key == "x_max_mm") cfg.scan.x_max_mm = parse_number(key, value);
    else if (key == "step_um") cfg.scan.step_um = parse_positive(key, value);
    else if (key == "basis") {
      cfg.measurement = MeasurementSetting::from_basis_state(trim(value));
      cfg.measurement_label = std::string(trim(value));
    } else if (key == "theta_deg") {
      theta_deg = parse_number(key, value);
      explicit_theta = true;
    } else if (key == "phi_deg") {
      phi_deg = parse_number(key, value);
      explicit_theta = true;
    } else if (key == "epsilon_I_list") {
      cfg.epsilon_I_list = parse_list(key, value);
      if (cfg.epsilon_I_list.empty()) {
        throw std::invalid_argument("key 'epsilon_I_list' must not be empty");
      }
    } else if (key == "oracle_check") {
      cfg.oracle_check = parse_bool(key, value);
    } else {
      throw std::invalid_argument("unknown key '" + std::string(key) + "'");
    }
  }

  if (explicit_theta) {
    constexpr double kDeg = 3.14159265358979323846 / 180.0;
    cfg.measurement = {theta_deg * kDeg, phi_deg * kDeg};
    std::ostringstream label;
    label << "theta" << theta_deg << "_phi" << phi_deg;
    cfg.measurement_label = label.str();
  }
  // Validate the derived objects eagerly so bad geometry fails at parse time.
  (void)cfg.geometry();
  (void)cfg.filter();
  (void)cfg.scan_positions();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RunConfig preset_config(std::string_view name) {
  RunConfig cfg;  // defaults carry the standard geometry and scan
  if (name == "fig2") {
    cfg.epsilon_I_list = {0.0, 0.125, 0.25};
  } else if (name == "fig3") {
    cfg.epsilon_I_list.clear();
    for (int n = 0; n <= 40; ++n) cfg.epsilon_I_list.push_back(n + 0.25);
  } else if (name == "fig5") {
    cfg.epsilon_I_list = {7.25, 11.25, 15.25, 19.25};
  } else {
    throw std::invalid_argument("unknown preset: " + std::string(name));
  }
  return cfg;
}

}  // namespace eraser
