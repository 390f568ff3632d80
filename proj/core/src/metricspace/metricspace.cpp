#include "pedeval/metricspace/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "pedeval/error.hpp"

namespace pedeval::metricspace {

double emd_1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kValidation, "EMD needs two non-empty samples");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  // CDFs kept as integer counts: F_a = ia/na, F_b = ib/nb.
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double total = 0.0;
  double x = std::min(sa.front(), sb.front());
  while (ia < sa.size() || ib < sb.size()) {
    const double next = ib == sb.size() || (ia < sa.size() && sa[ia] <= sb[ib]) ? sa[ia] : sb[ib];
    if (next > x) {
      const double gap = std::abs(static_cast<double>(ia) * nb - static_cast<double>(ib) * na);
      total += gap * (next - x);
      x = next;
    }
    while (ia < sa.size() && sa[ia] == x) ++ia;
    while (ib < sb.size() && sb[ib] == x) ++ib;
  }
  return total / (na * nb);
}

double dtw(std::span<const Point2> a, std::span<const Point2> b, const DtwOptions& options) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kValidation, "DTW needs two non-empty sequences");
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<double> prev(m, inf), cur(m, inf);
  if (!options.band) {
    // Unconstrained: no band test in the inner loop.
    prev[0] = distance(a[0], b[0]);
    for (std::size_t j = 1; j < m; ++j) prev[j] = prev[j - 1] + distance(a[0], b[j]);
    for (std::size_t i = 1; i < n; ++i) {
      cur[0] = prev[0] + distance(a[i], b[0]);
      for (std::size_t j = 1; j < m; ++j)
        cur[j] = std::min({prev[j], cur[j - 1], prev[j - 1]}) + distance(a[i], b[j]);
      std::swap(prev, cur);
    }
    return prev[m - 1];
  }

  auto in_band = [&](std::size_t i, std::size_t j) {
    const double diag = n == 1 ? 0.0 : static_cast<double>(i) * static_cast<double>(m - 1) / static_cast<double>(n - 1);
    return std::abs(static_cast<double>(j) - diag) <= static_cast<double>(*options.band) + 1e-9;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!in_band(i, j)) {
        cur[j] = inf;
        continue;
      }
      const double c = distance(a[i], b[j]);
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, cur[j - 1]);
        if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      }
      cur[j] = best + c;
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

std::optional<double> knn_radius(Point2 query, std::span<const Point2> others, std::size_t k) {
  if (k == 0 || others.size() < k) return std::nullopt;
  std::vector<double> d(others.size());
  for (std::size_t i = 0; i < others.size(); ++i) d[i] = distance(query, others[i]);
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
  return d[k - 1];
}

std::optional<double> local_density(double radius, std::size_t k) {
  if (!(radius > 0.0)) return std::nullopt;
  return static_cast<double>(k) / (std::numbers::pi * radius * radius);
}

namespace {

double quantile_sorted(const std::vector<double>& s, double q) {
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (pos - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 2) return 0.0;
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  const double sd = std::sqrt(var / static_cast<double>(n - 1));
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = (quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25)) / 1.34;
  double spread = std::min(sd, iqr);
  if (!(spread > 0.0)) spread = std::max(sd, iqr);
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

double kde_mode(std::span<const double> samples, const KdeOptions& options) {
  if (samples.empty()) throw Error(ErrorCode::kValidation, "KDE mode needs samples");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return lo;

  const double h = options.bandwidth.value_or(silverman_bandwidth(samples));
  if (!(h > 0.0)) throw Error(ErrorCode::kValidation, "KDE bandwidth must be positive");
  const std::size_t g = std::max<std::size_t>(options.grid_points, 2);
  const double step = (hi - lo) / static_cast<double>(g - 1);
  const double inv = 1.0 / h;
  // Kernels further than 8h contribute below double precision.
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  double best_x = lo;
  double best_density = -1.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double x = i + 1 == g ? hi : lo + step * static_cast<double>(i);
    auto first = std::lower_bound(sorted.begin(), sorted.end(), x - 8.0 * h);
    auto last = std::upper_bound(first, sorted.end(), x + 8.0 * h);
    double density = 0.0;
    for (auto it = first; it != last; ++it) {
      const double z = (x - *it) * inv;
      density += std::exp(-0.5 * z * z);
    }
    if (density > best_density) {
      best_density = density;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace pedeval::metricspace
