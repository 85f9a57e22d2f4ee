#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "shift_space.hpp"

namespace presslab {

/// Eventually periodic (one-sided) or periodic (two-sided) point.
///
/// One-sided: the sequence preperiod . period . period . ...
/// Two-sided: the bi-infinite periodic sequence with x_0 = period[phase].
struct PointRepr {
  Word preperiod;  // one-sided only; empty for two-sided
  Word period;     // non-empty
  int phase = 0;   // two-sided only, in [0, period.size())
  Sidedness sidedness = Sidedness::OneSided;

  int symbol_at(long long i) const {
    const long long p = static_cast<long long>(period.size());
    if (sidedness == Sidedness::OneSided) {
      if (i < 0) throw std::out_of_range("one-sided point: negative index");
      const long long pre = static_cast<long long>(preperiod.size());
      if (i < pre) return preperiod[static_cast<std::size_t>(i)];
      return period[static_cast<std::size_t>((i - pre) % p)];
    }
    long long r = (i + phase) % p;
    if (r < 0) r += p;
    return period[static_cast<std::size_t>(r)];
  }

  /// T^k; k < 0 only for two-sided points.
  PointRepr shifted(long long k) const {
    PointRepr out = *this;
    const long long p = static_cast<long long>(period.size());
    if (sidedness == Sidedness::TwoSided) {
      long long ph = (phase + k) % p;
      if (ph < 0) ph += p;
      out.phase = static_cast<int>(ph);
      return out;
    }
    if (k < 0)
      throw std::invalid_argument("one-sided point: T^{-1} not defined");
    for (long long j = 0; j < k; ++j) {
      if (!out.preperiod.empty()) {
        out.preperiod.erase(out.preperiod.begin());
      } else {
        out.period.push_back(out.period.front());
        out.period.erase(out.period.begin());
      }
    }
    return out;
  }
};

inline PointRepr make_point_one_sided(Word preperiod, Word period) {
  if (period.empty())
    throw std::invalid_argument("point: period must be non-empty");
  return PointRepr{std::move(preperiod), std::move(period), 0,
                   Sidedness::OneSided};
}

inline PointRepr make_point_two_sided(Word period, int phase = 0) {
  if (period.empty())
    throw std::invalid_argument("point: period must be non-empty");
  if (phase < 0 || phase >= static_cast<int>(period.size()))
    throw std::invalid_argument("point: phase out of range");
  return PointRepr{Word{}, std::move(period), phase, Sidedness::TwoSided};
}

inline bool point_valid(const ShiftSpace& space, const PointRepr& x) {
  if (x.period.empty()) return false;
  if ((x.sidedness == Sidedness::TwoSided) != space.two_sided()) return false;
  if (x.sidedness == Sidedness::TwoSided && !x.preperiod.empty()) return false;
  if (!space.is_admissible(x.preperiod) || !space.is_admissible(x.period))
    return false;
  if (x.sidedness == Sidedness::OneSided && !x.preperiod.empty() &&
      !space.joinable(x.preperiod, x.period))
    return false;
  // wrap-around of the period
  return space.allows(x.period.back(), x.period.front());
}

namespace detail {

/// Horizon beyond which two eventually periodic sequences that agree so far
/// agree everywhere.
inline long long comparison_horizon(const PointRepr& x, const PointRepr& y) {
  const long long px = static_cast<long long>(x.period.size());
  const long long py = static_cast<long long>(y.period.size());
  const long long l = std::lcm(px, py);
  const long long pre = std::max<long long>(x.preperiod.size(),
                                            y.preperiod.size());
  return pre + l;
}

}  // namespace detail

/// Exact dyadic shift metric. 0 if x = y, else metric_base^{-k} with
/// k = min{ i >= 0 : x_i != y_i } (one-sided) or min{ |i| : x_i != y_i }
/// (two-sided).
inline double metric(const ShiftSpace& space, const PointRepr& x,
                     const PointRepr& y) {
  if (x.sidedness != y.sidedness ||
      (x.sidedness == Sidedness::TwoSided) != space.two_sided())
    throw std::invalid_argument("metric: mismatched sidedness");
  const long long h = detail::comparison_horizon(x, y);
  if (space.two_sided()) {
    for (long long i = 0; i <= h; ++i) {
      if (x.symbol_at(i) != y.symbol_at(i) ||
          x.symbol_at(-i) != y.symbol_at(-i))
        return std::pow(space.metric_base, -static_cast<double>(i));
    }
    return 0.0;
  }
  for (long long i = 0; i < h; ++i)
    if (x.symbol_at(i) != y.symbol_at(i))
      return std::pow(space.metric_base, -static_cast<double>(i));
  return 0.0;
}

/// d_n(x,y) = max_{0 <= i < n} d(T^i x, T^i y).
inline double orbit_metric(const ShiftSpace& space, const PointRepr& x,
                           const PointRepr& y, int n) {
  if (n <= 0) throw std::invalid_argument("orbit_metric: n must be >= 1");
  double best = 0.0;
  PointRepr xs = x, ys = y;
  for (int i = 0; i < n; ++i) {
    best = std::max(best, metric(space, xs, ys));
    if (best >= 1.0) break;
    xs = xs.shifted(1);
    ys = ys.shifted(1);
  }
  return best;
}

}  // namespace presslab
