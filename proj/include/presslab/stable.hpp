#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cylinder.hpp"
#include "numerics.hpp"
#include "point.hpp"
#include "potential.hpp"
#include "pressure.hpp"
#include "shift_space.hpp"

namespace presslab {

inline int thread_count() {
  if (const char* env = std::getenv("PRESSLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// epsilon-stable set of an anchor point: the set of y whose coordinates
/// i >= pinned_from agree with the anchor. Both W^s_eps(x, T) (pinned_from =
/// min_time - (q-1) two-sided, min_time one-sided, eps = base^{-q}) and the
/// stable cylinders A(x) of period-m anchors fit this shape.
struct StableSet {
  PointRepr anchor;
  int pinned_from = 0;
};

inline StableSet epsilon_stable_set(const ShiftSpace& space, const PointRepr& x,
                                    int q, int min_time = 0) {
  if (q < 1) throw std::invalid_argument("epsilon_stable_set: q must be >= 1");
  if (min_time < 0)
    throw std::invalid_argument("epsilon_stable_set: min_time must be >= 0");
  if ((x.sidedness == Sidedness::TwoSided) != space.two_sided())
    throw std::invalid_argument("epsilon_stable_set: sidedness mismatch");
  const int pinned_from =
      space.two_sided() ? min_time - (q - 1) : min_time;
  return StableSet{x, pinned_from};
}

/// Finite description of a StableSet: the cylinder pinning coordinates
/// [pinned_from, hi) to the anchor. A superset of the stable set that agrees
/// with it on every window contained in [pinned_from, hi); callers pick hi
/// large enough for the windows they evaluate.
inline CylinderSet materialize_stable(const ShiftSpace& space,
                                      const StableSet& S, int hi) {
  if (hi <= S.pinned_from)
    throw std::invalid_argument("materialize_stable: hi <= pinned_from");
  Word w;
  w.reserve(static_cast<std::size_t>(hi - S.pinned_from));
  for (int i = S.pinned_from; i < hi; ++i)
    w.push_back(static_cast<std::uint8_t>(S.anchor.symbol_at(i)));
  if (space.two_sided())
    return CylinderSet{S.pinned_from, hi - S.pinned_from, {std::move(w)}};
  // one-sided windows start at 0: free the coordinates below pinned_from
  std::vector<Word> words{std::move(w)};
  detail::extend_words_left(space, words, S.pinned_from);
  std::sort(words.begin(), words.end());
  return CylinderSet{0, hi, std::move(words)};
}

/// P_s(T, f, x, eps): separated pressure of T^{-n} W^s_eps(x, T),
/// extrapolated in n for each delta = base^{-q} in delta_q_list, reported at
/// the finest delta with the coarser values kept as the resolution trace.
inline PressureEstimate preimage_pressure(const ShiftSpace& space,
                                          const Potential& f,
                                          const PointRepr& x, int q_eps,
                                          const std::vector<int>& delta_q_list,
                                          int n_max, int min_time = 0) {
  if (n_max < 4)
    throw std::invalid_argument("preimage_pressure: n_max must be >= 4");
  if (delta_q_list.empty())
    throw std::invalid_argument("preimage_pressure: empty delta list");
  for (std::size_t i = 1; i < delta_q_list.size(); ++i)
    if (delta_q_list[i] <= delta_q_list[i - 1])
      throw std::invalid_argument(
          "preimage_pressure: delta list must be increasing");
  if (!point_valid(space, x))
    throw std::invalid_argument("preimage_pressure: invalid anchor point");
  StableSet S = epsilon_stable_set(space, x, q_eps, min_time);
  // depth making the finite description exact on the separation and Birkhoff
  // windows of every (n, q) evaluated below
  int depth = 1;
  depth = std::max(depth, delta_q_list.back() - 1);
  depth = std::max(depth, f.offset + f.depth - 1);
  const int hi = std::max(S.pinned_from + 1, depth);
  CylinderSet W = materialize_stable(space, S, hi);
  PressureEstimate out;
  for (int q : delta_q_list) {
    std::vector<std::pair<int, double>> samples;
    for (int n = 1; n <= n_max; ++n) {
      CylinderSet K = preimage_set(space, W, n);
      auto p = separated_pressure(space, f, K, n, q);
      samples.emplace_back(n, *p / n);
    }
    auto [a, method] = extrapolate_samples(samples);
    out.resolution_trace.emplace_back(q, a);
    if (q == delta_q_list.back()) {
      out.samples = std::move(samples);
      out.extrapolated = a;
      out.method = method;
      out.resolution = "delta = base^-" + std::to_string(q);
    }
  }
  for (std::size_t i = 1; i < out.resolution_trace.size(); ++i)
    if (out.resolution_trace[i].second <
        out.resolution_trace[i - 1].second - 1e-9)
      out.monotone_in_resolution = false;
  return out;
}

/// Preimage dispersal rate: preimage_pressure at f = 0.
inline PressureEstimate dispersal_rate(const ShiftSpace& space,
                                       const PointRepr& x, int q_eps,
                                       const std::vector<int>& delta_q_list,
                                       int n_max, int min_time = 0) {
  return preimage_pressure(space, zero_potential(space), x, q_eps,
                           delta_q_list, n_max, min_time);
}

inline std::string point_to_string(const PointRepr& x) {
  std::string s;
  if (x.sidedness == Sidedness::OneSided) {
    s = word_to_string(x.preperiod) + "(" + word_to_string(x.period) + ")^inf";
  } else {
    s = "(" + word_to_string(x.period) + ")^Z @" + std::to_string(x.phase);
  }
  return s;
}

struct PointScanResult {
  struct Entry {
    PointRepr point;
    PressureEstimate estimate;
    double gap = 0.0;
    bool pass = false;
  };
  std::vector<Entry> entries;
  double sup_estimate = 0.0;
  double reference = 0.0;
  double equality_gap = 0.0;
  bool pass = false;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["points"] = nlohmann::json::array();
    for (const auto& e : entries) {
      nlohmann::json je;
      je["point"] = point_to_string(e.point);
      je["estimate"] = e.estimate.to_json();
      je["gap"] = e.gap;
      je["verdict"] = e.pass ? "pass" : "fail";
      j["points"].push_back(std::move(je));
    }
    j["sup_estimate"] = sup_estimate;
    j["reference"] = reference;
    j["equality_gap"] = equality_gap;
    j["verdict"] = pass ? "pass" : "fail";
    return j;
  }
};

/// sup over a scan set of anchor points of P_s(T, f, x, eps), compared to a
/// reference value (the matrix pressure). Parallel over points, bounded by
/// PRESSLAB_THREADS.
inline PointScanResult pressure_point_scan(
    const ShiftSpace& space, const Potential& f,
    const std::vector<PointRepr>& points, int q_eps,
    const std::vector<int>& delta_q_list, int n_max, double reference,
    double tolerance, int min_time = 0) {
  if (points.empty())
    throw std::invalid_argument("pressure_point_scan: no points");
  PointScanResult out;
  out.entries.resize(points.size());
  out.reference = reference;
  std::atomic<std::size_t> next{0};
  const int workers =
      std::min<int>(thread_count(), static_cast<int>(points.size()));
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      auto& e = out.entries[i];
      e.point = points[i];
      e.estimate = preimage_pressure(space, f, points[i], q_eps, delta_q_list,
                                     n_max, min_time);
      e.gap = e.estimate.extrapolated - reference;
      e.pass = std::abs(e.gap) <= tolerance;
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  out.sup_estimate = out.entries.front().estimate.extrapolated;
  for (const auto& e : out.entries)
    out.sup_estimate = std::max(out.sup_estimate, e.estimate.extrapolated);
  out.equality_gap = std::abs(out.sup_estimate - reference);
  out.pass = out.equality_gap <= tolerance;
  return out;
}

// ---------------------------------------------------------------------------
// Stable cylinders of the inverse map (two-sided)

/// A(x) for a two-sided anchor and m >= 2: coordinates i >= 2 - m pinned to
/// x, so diam(A(x)) = base^{-(m-1)} and diam(T^n A(x)) = base^{-(m+n-1)}.
inline StableSet stable_cylinder(const ShiftSpace& space, const PointRepr& x,
                                 int m) {
  if (!space.two_sided())
    throw std::invalid_argument("stable_cylinder: need a two-sided space");
  if (m < 2) throw std::invalid_argument("stable_cylinder: m must be >= 2");
  if (!point_valid(space, x))
    throw std::invalid_argument("stable_cylinder: invalid anchor point");
  return StableSet{x, 2 - m};
}

/// Exact diameter of T^n A for a stable set A: walks left from the pinned
/// boundary until some coordinate admits two predecessors.
inline double stable_image_diameter(const ShiftSpace& space, const StableSet& S,
                                    int n) {
  if (!space.two_sided())
    throw std::invalid_argument("stable_image_diameter: need two-sided space");
  int p = S.pinned_from - n;  // T^n S pins coordinates >= p
  if (p > 0)
    throw std::invalid_argument(
        "stable_image_diameter: pinned window must reach coordinate 0");
  int cur = S.anchor.symbol_at(p + n);
  for (int j = p - 1; j >= p - 1000; --j) {
    std::vector<int> preds;
    for (int a = 0; a < space.alphabet_size; ++a)
      if (space.allows(a, cur)) preds.push_back(a);
    if (preds.empty())
      throw std::logic_error("stable_image_diameter: dead-end symbol");
    if (preds.size() >= 2)
      return std::pow(space.metric_base, static_cast<double>(j));
    cur = preds.front();
  }
  return 0.0;  // effectively a single point at every probed depth
}

namespace detail {

/// Window on which two points must agree to be (n, base^{-q})-close for the
/// inverse map: times T^0, T^{-1}, ..., T^{-(n-1)}.
inline std::pair<int, int> backward_separation_window(int n, int q) {
  return {-(n + q - 2), q};
}

}  // namespace detail

/// log P_n(T^{-1}, f, base^{-q}, K) on a two-sided space: the backward
/// analogue of separated_pressure, with f_n summing f over T^0 .. T^{-(n-1)}.
inline std::optional<double> backward_separated_pressure(
    const ShiftSpace& space, const Potential& f, const CylinderSet& K, int n,
    int q) {
  if (!space.two_sided())
    throw std::invalid_argument(
        "backward_separated_pressure: need a two-sided space");
  if (n < 1)
    throw std::invalid_argument("backward_separated_pressure: n must be >= 1");
  if (K.empty()) return std::nullopt;
  // Birkhoff window of sum_{j=0}^{n-1} f o T^{-j}
  const int blo = f.offset - (n - 1);
  const int bhi = f.offset + f.depth;
  if (q == 0) {
    // delta >= 1: a single class, sup of the backward Birkhoff sum
    int lo = blo, hi = bhi;
    if (K.window_length > 0) {
      lo = std::min(lo, K.window_start);
      hi = std::max(hi, K.window_end());
    }
    CylinderSet mat = rewindow(space, K, lo, hi);
    if (mat.empty()) return std::nullopt;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& w : mat.allowed) {
      double v = 0.0;
      for (int j = 0; j < n; ++j)
        v += f.table[f.encode(w, static_cast<std::size_t>(f.offset - j - lo))];
      best = std::max(best, v);
    }
    return best;
  }
  auto [slo, shi] = detail::backward_separation_window(n, q);
  int lo = std::min(slo, blo);
  int hi = std::max(shi, bhi);
  if (K.window_length > 0) {
    lo = std::min(lo, K.window_start);
    hi = std::max(hi, K.window_end());
  }
  CylinderSet mat = rewindow(space, K, lo, hi);
  if (mat.empty()) return std::nullopt;
  const int off = slo - lo;
  const int len = shi - slo;
  std::vector<double> class_sups;
  const Word* prev = nullptr;
  double cur = 0.0;
  auto same_class = [&](const Word& a, const Word& b) {
    for (int t = 0; t < len; ++t)
      if (a[off + t] != b[off + t]) return false;
    return true;
  };
  for (const auto& w : mat.allowed) {
    double v = 0.0;
    for (int j = 0; j < n; ++j)
      v += f.table[f.encode(w, static_cast<std::size_t>(f.offset - j - lo))];
    if (prev != nullptr && same_class(*prev, w)) {
      cur = std::max(cur, v);
    } else {
      if (prev != nullptr) class_sups.push_back(cur);
      cur = v;
    }
    prev = &w;
  }
  if (prev != nullptr) class_sups.push_back(cur);
  return log_sum_exp(class_sups);
}

struct BackwardStableResult {
  PressureEstimate estimate;
  std::vector<std::pair<int, double>> diameters;  // (n, diam(T^n A))
  int m = 0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["m"] = m;
    j["estimate"] = estimate.to_json();
    j["diameters"] = diameters;
    return j;
  }
};

/// Bowen pressure of the stable cylinder A(x) under the inverse map, with the
/// exact diameters of the forward images T^n A(x) alongside.
inline BackwardStableResult stable_cylinder_pressure_backward(
    const ShiftSpace& space, const Potential& f, const PointRepr& x, int m,
    int n_max, const std::vector<int>& q_list) {
  if (n_max < 4)
    throw std::invalid_argument(
        "stable_cylinder_pressure_backward: n_max must be >= 4");
  if (q_list.empty())
    throw std::invalid_argument(
        "stable_cylinder_pressure_backward: q_list must be non-empty");
  StableSet A = stable_cylinder(space, x, m);
  int hi = std::max(A.pinned_from + 1, q_list.back());
  hi = std::max(hi, f.offset + f.depth);
  CylinderSet K = materialize_stable(space, A, hi);
  BackwardStableResult out;
  out.m = m;
  for (int n = 1; n <= n_max; ++n)
    out.diameters.emplace_back(n, stable_image_diameter(space, A, n));
  for (int q : q_list) {
    std::vector<std::pair<int, double>> samples;
    for (int n = 1; n <= n_max; ++n) {
      auto p = backward_separated_pressure(space, f, K, n, q);
      samples.emplace_back(n, *p / n);
    }
    auto [a, method] = extrapolate_samples(samples);
    out.estimate.resolution_trace.emplace_back(q, a);
    if (q == q_list.back()) {
      out.estimate.samples = std::move(samples);
      out.estimate.extrapolated = a;
      out.estimate.method = method;
      out.estimate.resolution = "delta = base^-" + std::to_string(q);
    }
  }
  for (std::size_t i = 1; i < out.estimate.resolution_trace.size(); ++i)
    if (out.estimate.resolution_trace[i].second <
        out.estimate.resolution_trace[i - 1].second - 1e-9)
      out.estimate.monotone_in_resolution = false;
  return out;
}

}  // namespace presslab
