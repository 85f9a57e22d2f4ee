#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cylinder.hpp"
#include "point.hpp"
#include "shift_space.hpp"

namespace presslab {

enum class Extremum { Sup, Inf };

/// Locally constant potential of finite depth: f(x) depends on coordinates
/// [offset, offset + depth). offset is 0 for freshly built potentials and
/// becomes nonzero under composition with powers of the shift.
struct Potential {
  ShiftSpace space;
  int depth = 1;
  int offset = 0;
  std::vector<double> table;  // dense over k^depth, NaN on inadmissible words

  int k() const { return space.alphabet_size; }

  std::size_t encode(const Word& w, std::size_t pos) const {
    std::size_t idx = 0;
    for (int i = 0; i < depth; ++i) idx = idx * k() + w[pos + i];
    return idx;
  }

  /// Value on the word at coordinates [offset, offset + depth), given as a
  /// slice of a longer word whose coordinate `word_lo` is w[0].
  double value_in(const Word& w, int word_lo) const {
    const int pos = offset - word_lo;
    return table[encode(w, static_cast<std::size_t>(pos))];
  }

  double eval(const PointRepr& x) const {
    std::size_t idx = 0;
    for (int i = 0; i < depth; ++i)
      idx = idx * k() + static_cast<std::size_t>(x.symbol_at(offset + i));
    return table[idx];
  }
};

inline Potential make_potential(const ShiftSpace& space, int depth,
                                const std::map<std::string, double>& values,
                                int offset = 0) {
  if (depth < 1) throw std::invalid_argument("make_potential: depth must be >= 1");
  if (!space.two_sided() && offset < 0)
    throw std::invalid_argument("make_potential: negative offset is one-sided-invalid");
  std::size_t size = 1;
  for (int i = 0; i < depth; ++i) size *= space.alphabet_size;
  Potential f{space, depth, offset,
              std::vector<double>(size, std::numeric_limits<double>::quiet_NaN())};
  std::size_t filled = 0;
  for (const auto& [key, v] : values) {
    Word w = word_from_string(key);
    if (static_cast<int>(w.size()) != depth)
      throw std::invalid_argument("make_potential: word \"" + key +
                                  "\" has wrong length");
    if (!space.is_admissible(w))
      throw std::invalid_argument("make_potential: inadmissible word \"" + key +
                                  "\"");
    f.table[f.encode(w, 0)] = v;
    ++filled;
  }
  if (static_cast<long long>(filled) != word_count(space, depth))
    throw std::invalid_argument("make_potential: missing admissible words");
  return f;
}

inline Potential constant_potential(const ShiftSpace& space, double c) {
  std::map<std::string, double> values;
  for (int a = 0; a < space.alphabet_size; ++a)
    values[word_to_string(Word{static_cast<std::uint8_t>(a)})] = c;
  return make_potential(space, 1, values);
}

inline Potential zero_potential(const ShiftSpace& space) {
  return constant_potential(space, 0.0);
}

/// f o T^m (m may be negative on two-sided spaces): the same table read at a
/// shifted window.
inline Potential shift_potential(const Potential& f, int m) {
  Potential g = f;
  g.offset += m;
  if (!f.space.two_sided() && g.offset < 0)
    throw std::invalid_argument("shift_potential: negative offset on a one-sided space");
  return g;
}

/// Potential from JSON: { "depth": r, "values": { "word": real, ... } }.
inline Potential potential_from_json(const ShiftSpace& space,
                                     const nlohmann::json& j) {
  const int depth = j.at("depth").get<int>();
  std::map<std::string, double> values;
  for (const auto& [key, v] : j.at("values").items())
    values[key] = v.get<double>();
  return make_potential(space, depth, values);
}

/// f_n(x) = sum_{j=0}^{n-1} f(T^j x).
inline double birkhoff_sum(const Potential& f, const PointRepr& x, int n) {
  if (n < 0) throw std::invalid_argument("birkhoff_sum: n must be >= 0");
  double acc = 0.0;
  PointRepr y = x;
  for (int j = 0; j < n; ++j) {
    acc += f.eval(y);
    y = y.shifted(1);
  }
  return acc;
}

/// Coordinate window f_n depends on: [offset, offset + n + depth - 1).
inline std::pair<int, int> birkhoff_window(const Potential& f, int n) {
  return {f.offset, f.offset + n + f.depth - 1};
}

namespace detail {

inline double birkhoff_on_word(const Potential& f, const Word& w, int word_lo,
                               int n) {
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    acc += f.table[f.encode(w, static_cast<std::size_t>(f.offset + j - word_lo))];
  return acc;
}

}  // namespace detail

/// Exact sup/inf of f_n over a CylinderSet, by materializing the set over a
/// window on which f_n is constant per word. nullopt on the empty set.
inline std::optional<double> birkhoff_extremum(const Potential& f,
                                               const CylinderSet& C, int n,
                                               Extremum mode) {
  if (n < 0) throw std::invalid_argument("birkhoff_extremum: n must be >= 0");
  if (C.empty()) return std::nullopt;
  if (n == 0) return 0.0;
  const auto& space = f.space;
  auto [blo, bhi] = birkhoff_window(f, n);
  int lo = blo, hi = bhi;
  if (C.window_length > 0) {
    lo = std::min(lo, C.window_start);
    hi = std::max(hi, C.window_end());
  }
  if (!space.two_sided()) lo = 0;
  CylinderSet mat = rewindow(space, C, lo, hi);
  if (mat.empty()) return std::nullopt;
  double best = mode == Extremum::Sup
                    ? -std::numeric_limits<double>::infinity()
                    : std::numeric_limits<double>::infinity();
  for (const auto& w : mat.allowed) {
    const double v = detail::birkhoff_on_word(f, w, lo, n);
    best = mode == Extremum::Sup ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

/// Per-word sup/inf of f_n over each cylinder of C.
inline std::vector<std::pair<Word, double>> birkhoff_sum_on_cylinder(
    const Potential& f, const CylinderSet& C, int n, Extremum mode) {
  std::vector<std::pair<Word, double>> out;
  for (const auto& w : C.allowed) {
    CylinderSet single{C.window_start, C.window_length, {w}};
    auto v = birkhoff_extremum(f, single, n, mode);
    out.emplace_back(w, *v);
  }
  return out;
}

/// Exponent c with diam(U) = metric_base^{-c} (c = 0 means diam 1).
inline int cover_diameter_exponent(const ShiftSpace& space, const Cover& U) {
  int c_cover = std::numeric_limits<int>::max();
  for (const auto& m : U.members) {
    int c;
    if (m.window_length == 0) {
      c = 0;  // unconstrained member
    } else {
      const int a = m.window_start, b = m.window_end();
      if (space.two_sided())
        c = (a <= 0 && b >= 1) ? std::min(1 - a, b) : 0;
      else
        c = (a == 0) ? b : 0;
      // distinct words inside one member can disagree within the window
      for (std::size_t i = 0; i < m.allowed.size(); ++i)
        for (std::size_t j = i + 1; j < m.allowed.size(); ++j) {
          for (int t = 0; t < m.window_length; ++t)
            if (m.allowed[i][t] != m.allowed[j][t]) {
              int coord = a + t;
              int dist = space.two_sided() ? std::abs(coord) : coord;
              if (coord < 0 && !space.two_sided()) dist = 0;
              c = std::min(c, dist);
              break;
            }
        }
    }
    c_cover = std::min(c_cover, c);
  }
  if (c_cover == std::numeric_limits<int>::max()) c_cover = 0;
  return c_cover;
}

/// tau_U = sup{ |f(x) - f(y)| : d(x,y) <= diam(U) }, exact.
inline double oscillation(const Potential& f, const Cover& U) {
  const auto& space = f.space;
  const int c = cover_diameter_exponent(space, U);
  // d(x,y) <= base^{-c} iff x, y agree on [0, c) (one-sided) or on
  // [-(c-1), c) (two-sided)
  const int lo = space.two_sided() ? -(c - 1) : 0;
  const int hi = c;
  double tau = 0.0;
  if (hi <= lo) {
    // whole-space pairs: global sup - inf
    CylinderSet full = cyl_full();
    auto s = birkhoff_extremum(f, full, 1, Extremum::Sup);
    auto i = birkhoff_extremum(f, full, 1, Extremum::Inf);
    return *s - *i;
  }
  for (const auto& w : words_of_length(space, hi - lo)) {
    CylinderSet cell = space.two_sided()
                           ? CylinderSet{lo, hi - lo, {w}}
                           : CylinderSet{0, hi, {w}};
    auto s = birkhoff_extremum(f, cell, 1, Extremum::Sup);
    auto i = birkhoff_extremum(f, cell, 1, Extremum::Inf);
    if (s && i) tau = std::max(tau, *s - *i);
  }
  return tau;
}

/// f o pi_1 on the natural extension: the same table read two-sided.
inline Potential lift_potential(const Potential& f) {
  if (f.space.two_sided())
    throw std::invalid_argument("lift_potential: potential already two-sided");
  Potential g = f;
  g.space = natural_extension(f.space);
  return g;
}

}  // namespace presslab
