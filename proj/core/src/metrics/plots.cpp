#include "pedeval/metrics/plots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pedeval/error.hpp"
#include "pedeval/trajdata/io.hpp"
#include "pedeval/metrics/metrics.hpp"

namespace pedeval::metrics {
namespace {

std::size_t bin_index(double value, double lo, double hi, std::size_t bins) {
  const double t = (value - lo) / (hi - lo) * static_cast<double>(bins);
  return std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, std::floor(t))));
}

std::string fmt(double v) { return format_real(v); }

double quantile_sorted(const std::vector<double>& v, double p) {
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<double> PolarHistogram::angle_marginal() const {
  std::vector<double> out(angle_bins, 0.0);
  for (std::size_t a = 0; a < angle_bins; ++a)
    for (std::size_t r = 0; r < radius_bins; ++r) out[a] += at(a, r);
  return out;
}

PolarHistogram nn_polar_histogram(const Corpus& corpus, const MetricConfig& config) {
  if (config.polar_angle_bins == 0 || config.polar_radius_bins == 0)
    throw Error(ErrorCode::kValidation, "polar histogram needs at least one bin per axis");
  PolarHistogram h;
  h.angle_bins = config.polar_angle_bins;
  h.radius_bins = config.polar_radius_bins;
  h.max_radius = config.nn_radius_m;
  h.mass.assign(h.angle_bins * h.radius_bins, 0.0);

  constexpr double pi = std::numbers::pi;
  for (const auto& n : nearest_moving_neighbors(corpus, config)) {
    double phi = std::atan2(n.offset.y, n.offset.x) - std::atan2(n.velocity.y, n.velocity.x);
    phi = std::remainder(phi, 2.0 * pi);  // [-pi, pi]
    if (phi >= pi) phi -= 2.0 * pi;
    const std::size_t a = bin_index(phi, -pi, pi, h.angle_bins);
    const std::size_t r = bin_index(norm(n.offset), 0.0, h.max_radius, h.radius_bins);
    h.mass[a * h.radius_bins + r] += 1.0;
    ++h.samples;
  }
  if (h.samples > 0)
    for (auto& m : h.mass) m /= static_cast<double>(h.samples);
  return h;
}

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kValidation, "quartiles of an empty sample");
  std::sort(values.begin(), values.end());
  return {quantile_sorted(values, 0.25), quantile_sorted(values, 0.5), quantile_sorted(values, 0.75)};
}

std::vector<std::optional<FundamentalBin>> fundamental_diagram(const Corpus& corpus, const MetricConfig& config,
                                                               Diagnostics* diag) {
  if (config.fd_bins == 0 || !(config.fd_max_density > 0.0))
    throw Error(ErrorCode::kValidation, "fundamental diagram needs positive bins and range");
  const double width = config.fd_max_density / static_cast<double>(config.fd_bins);
  std::vector<std::vector<double>> speeds(config.fd_bins), flows(config.fd_bins);
  for (const auto& s : density_samples(corpus, config, diag)) {
    if (s.density > config.fd_max_density) {
      if (diag) diag->add("fd_out_of_range");
      continue;
    }
    const std::size_t b = bin_index(s.density, 0.0, config.fd_max_density, config.fd_bins);
    speeds[b].push_back(s.speed);
    flows[b].push_back(s.flow);
  }

  std::vector<std::optional<FundamentalBin>> out(config.fd_bins);
  for (std::size_t b = 0; b < config.fd_bins; ++b) {
    if (speeds[b].empty()) continue;
    out[b] = FundamentalBin{static_cast<double>(b) * width, static_cast<double>(b + 1) * width, speeds[b].size(),
                            quartiles(speeds[b]), quartiles(flows[b])};
  }
  return out;
}

std::string fundamental_diagram_csv(const std::vector<std::optional<FundamentalBin>>& bins) {
  std::ostringstream os;
  os << "bin,density_lo,density_hi,count,speed_median,speed_q1,speed_q3,flow_median,flow_q1,flow_q3\n";
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (!bins[b]) continue;
    const auto& f = *bins[b];
    os << b << ',' << fmt(f.density_lo) << ',' << fmt(f.density_hi) << ',' << f.count << ',' << fmt(f.speed.median)
       << ',' << fmt(f.speed.q1) << ',' << fmt(f.speed.q3) << ',' << fmt(f.flow.median) << ',' << fmt(f.flow.q1)
       << ',' << fmt(f.flow.q3) << '\n';
  }
  return os.str();
}

std::string polar_histogram_csv(const PolarHistogram& h) {
  std::ostringstream os;
  os << "angle_bin,radius_bin,mass\n";
  for (std::size_t a = 0; a < h.angle_bins; ++a)
    for (std::size_t r = 0; r < h.radius_bins; ++r) os << a << ',' << r << ',' << fmt(h.at(a, r)) << '\n';
  return os.str();
}

LevelOfService classify_los(double density) {
  if (!(density >= 0.0)) throw Error(ErrorCode::kValidation, "density must be non-negative and finite");
  if (density < 0.83) return LevelOfService::kA;
  if (density < 1.08) return LevelOfService::kB;
  if (density < 1.79) return LevelOfService::kC;
  if (density < 3.59) return LevelOfService::kD;
  if (density < 5.38) return LevelOfService::kE;
  return LevelOfService::kF;
}

char to_char(LevelOfService los) { return static_cast<char>('A' + static_cast<int>(los)); }

}  // namespace pedeval::metrics
