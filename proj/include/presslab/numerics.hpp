#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace presslab {

/// log(sum_i exp(a_i)), stable against overflow. Empty input -> -inf.
/// Sums in sorted order, so equal multisets give bit-identical results
/// regardless of how callers ordered the terms.
inline double log_sum_exp(std::vector<double> terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  std::sort(terms.begin(), terms.end());
  const double m = terms.back();
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

enum class ExtrapolationMethod { LastSample, AffineFit };

inline std::string to_string(ExtrapolationMethod m) {
  return m == ExtrapolationMethod::AffineFit ? "affine_fit" : "last_sample";
}

/// Least-squares fit value(n) = a + b/n over the top half of the samples.
/// Returns (a, method). Falls back to the last sample when the fit is
/// underdetermined.
inline std::pair<double, ExtrapolationMethod> extrapolate_samples(
    const std::vector<std::pair<int, double>>& samples) {
  if (samples.empty())
    throw std::invalid_argument("extrapolate_samples: no samples");
  const std::size_t lo = samples.size() / 2;
  const std::size_t m = samples.size() - lo;
  if (m < 2)
    return {samples.back().second, ExtrapolationMethod::LastSample};
  // regress on x = 1/n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = lo; i < samples.size(); ++i) {
    const double x = 1.0 / samples[i].first;
    const double y = samples[i].second;
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-15)
    return {samples.back().second, ExtrapolationMethod::LastSample};
  const double b = (m * sxy - sx * sy) / det;
  const double a = (sy - b * sx) / m;
  return {a, ExtrapolationMethod::AffineFit};
}

}  // namespace presslab
