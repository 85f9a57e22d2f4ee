#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "point.hpp"
#include "shift_space.hpp"

namespace presslab {

/// A finite union of cylinders over one coordinate window:
/// { y : y restricted to [window_start, window_start+window_length) is in
/// allowed }. window_length 0 with allowed = {eps} denotes the whole space;
/// allowed empty denotes the empty set.
struct CylinderSet {
  int window_start = 0;
  int window_length = 0;
  std::vector<Word> allowed;  // sorted, unique, admissible

  int window_end() const { return window_start + window_length; }
  bool empty() const { return allowed.empty(); }
};

inline CylinderSet cyl_full() { return CylinderSet{0, 0, {Word{}}}; }

inline CylinderSet cyl_empty() { return CylinderSet{0, 0, {}}; }

inline CylinderSet make_cylinder(const ShiftSpace& space, int window_start,
                                 std::vector<Word> words) {
  if (!space.two_sided() && window_start != 0)
    throw std::invalid_argument(
        "make_cylinder: one-sided windows must start at 0");
  if (words.empty()) return CylinderSet{window_start, 0, {}};
  const int len = static_cast<int>(words.front().size());
  std::vector<Word> kept;
  for (auto& w : words) {
    if (static_cast<int>(w.size()) != len)
      throw std::invalid_argument("make_cylinder: mixed word lengths");
    if (space.is_admissible(w)) kept.push_back(std::move(w));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) return CylinderSet{window_start, 0, {}};
  return CylinderSet{window_start, len, std::move(kept)};
}

namespace detail {

inline void extend_words_right(const ShiftSpace& space,
                               std::vector<Word>& words, int extra) {
  for (int step = 0; step < extra; ++step) {
    std::vector<Word> next;
    for (const auto& w : words) {
      for (int b = 0; b < space.alphabet_size; ++b) {
        if (!w.empty() && !space.allows(w.back(), b)) continue;
        Word nw = w;
        nw.push_back(static_cast<std::uint8_t>(b));
        next.push_back(std::move(nw));
      }
    }
    words = std::move(next);
  }
}

inline void extend_words_left(const ShiftSpace& space,
                              std::vector<Word>& words, int extra) {
  for (int step = 0; step < extra; ++step) {
    std::vector<Word> next;
    for (const auto& w : words) {
      for (int a = 0; a < space.alphabet_size; ++a) {
        if (!w.empty() && !space.allows(a, w.front())) continue;
        Word nw;
        nw.reserve(w.size() + 1);
        nw.push_back(static_cast<std::uint8_t>(a));
        nw.insert(nw.end(), w.begin(), w.end());
        next.push_back(std::move(nw));
      }
    }
    words = std::move(next);
  }
}

}  // namespace detail

/// Re-expresses C on the window [lo, hi): extends by all admissible
/// completions, then restricts. The denoted subset of X is unchanged as long
/// as [lo, hi) contains the constrained window; a narrower target yields the
/// projection (a superset's description).
inline CylinderSet rewindow(const ShiftSpace& space, const CylinderSet& C,
                            int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("rewindow: hi < lo");
  if (!space.two_sided() && lo != 0)
    throw std::invalid_argument("rewindow: one-sided windows must start at 0");
  if (C.empty()) return CylinderSet{lo, 0, {}};
  if (C.window_length == 0) {
    return CylinderSet{lo, hi - lo, words_of_length(space, hi - lo)};
  }
  const int hull_lo = std::min(lo, C.window_start);
  const int hull_hi = std::max(hi, C.window_end());
  std::vector<Word> words = C.allowed;
  detail::extend_words_left(space, words, C.window_start - hull_lo);
  detail::extend_words_right(space, words, hull_hi - C.window_end());
  // restrict to [lo, hi)
  std::vector<Word> out;
  out.reserve(words.size());
  const int off = lo - hull_lo;
  const int len = hi - lo;
  for (const auto& w : words)
    out.emplace_back(w.begin() + off, w.begin() + off + len);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return CylinderSet{lo, len, std::move(out)};
}

namespace detail {

/// Smallest window containing both constrained windows; (0,0) when neither
/// constrains anything.
inline std::pair<int, int> hull_window(const CylinderSet& A,
                                       const CylinderSet& B) {
  const bool a = A.window_length > 0, b = B.window_length > 0;
  if (!a && !b) return {0, 0};
  if (!a) return {B.window_start, B.window_end()};
  if (!b) return {A.window_start, A.window_end()};
  return {std::min(A.window_start, B.window_start),
          std::max(A.window_end(), B.window_end())};
}

}  // namespace detail

inline CylinderSet intersect(const ShiftSpace& space, const CylinderSet& A,
                             const CylinderSet& B) {
  if (A.empty() || B.empty()) return cyl_empty();
  auto [lo, hi] = detail::hull_window(A, B);
  if (!space.two_sided()) lo = 0;
  CylinderSet a = rewindow(space, A, lo, hi);
  CylinderSet b = rewindow(space, B, lo, hi);
  std::vector<Word> out;
  std::set_intersection(a.allowed.begin(), a.allowed.end(), b.allowed.begin(),
                        b.allowed.end(), std::back_inserter(out));
  return CylinderSet{lo, hi - lo, std::move(out)};
}

inline bool set_equal(const ShiftSpace& space, const CylinderSet& A,
                      const CylinderSet& B) {
  auto [lo, hi] = detail::hull_window(A, B);
  if (!space.two_sided()) lo = 0;
  CylinderSet a = rewindow(space, A, lo, hi);
  CylinderSet b = rewindow(space, B, lo, hi);
  return a.allowed == b.allowed;
}

/// True iff B is a subset of A.
inline bool includes(const ShiftSpace& space, const CylinderSet& A,
                     const CylinderSet& B) {
  if (B.empty()) return true;
  auto [lo, hi] = detail::hull_window(A, B);
  if (!space.two_sided()) lo = 0;
  CylinderSet a = rewindow(space, A, lo, hi);
  CylinderSet b = rewindow(space, B, lo, hi);
  return std::includes(a.allowed.begin(), a.allowed.end(), b.allowed.begin(),
                       b.allowed.end());
}

inline bool contains_point(const ShiftSpace& space, const CylinderSet& C,
                           const PointRepr& x) {
  if (C.empty()) return false;
  if (C.window_length == 0) return true;
  Word w;
  w.reserve(C.window_length);
  for (int i = C.window_start; i < C.window_end(); ++i)
    w.push_back(static_cast<std::uint8_t>(x.symbol_at(i)));
  return std::binary_search(C.allowed.begin(), C.allowed.end(), w);
}

/// T^{-n}K. One-sided sets are canonicalized back to a window starting at 0
/// by admissible prefix expansion.
inline CylinderSet preimage_set(const ShiftSpace& space, const CylinderSet& K,
                                int n) {
  if (n < 0) throw std::invalid_argument("preimage_set: n must be >= 0");
  if (n == 0 || K.window_length == 0) return K;
  CylinderSet shifted{K.window_start + n, K.window_length, K.allowed};
  if (space.two_sided()) return shifted;
  // one-sided: materialize the n free prefix coordinates
  std::vector<Word> words = shifted.allowed;
  detail::extend_words_left(space, words, shifted.window_start);
  return CylinderSet{0, shifted.window_start + shifted.window_length,
                     std::move(words)};
}

/// T^m K for two-sided spaces (m may be negative; T^{-|m|} then agrees with
/// preimage_set).
inline CylinderSet forward_image_set(const ShiftSpace& space,
                                     const CylinderSet& K, int m) {
  if (!space.two_sided() && m > 0)
    throw std::invalid_argument("forward_image_set: T^m needs a two-sided space");
  if (m <= 0) return preimage_set(space, K, -m);
  if (K.window_length == 0) return K;
  return CylinderSet{K.window_start - m, K.window_length, K.allowed};
}

// ---------------------------------------------------------------------------
// Covers

struct Cover {
  std::vector<CylinderSet> members;
  bool is_partition = false;
};

/// The partition of X into all admissible q-cylinders on
/// [window_start, window_start + q).
inline Cover cylinder_partition(const ShiftSpace& space, int q,
                                int window_start = 0) {
  if (q < 1) throw std::invalid_argument("cylinder_partition: q must be >= 1");
  if (!space.two_sided() && window_start != 0)
    throw std::invalid_argument(
        "cylinder_partition: one-sided windows must start at 0");
  Cover out;
  out.is_partition = true;
  for (auto& w : words_of_length(space, q))
    out.members.push_back(CylinderSet{window_start, q, {std::move(w)}});
  return out;
}

/// Detects a partition whose members are single q-words on one common window;
/// returns (window_start, q).
inline std::optional<std::pair<int, int>> uniform_partition_info(
    const ShiftSpace& space, const Cover& U) {
  if (!U.is_partition || U.members.empty()) return std::nullopt;
  const int start = U.members.front().window_start;
  const int q = U.members.front().window_length;
  if (q < 1) return std::nullopt;
  for (const auto& m : U.members)
    if (m.window_start != start || m.window_length != q ||
        m.allowed.size() != 1)
      return std::nullopt;
  if (static_cast<long long>(U.members.size()) != word_count(space, q))
    return std::nullopt;
  return std::make_pair(start, q);
}

/// T^m applied to every member (m > 0 needs a two-sided space; m < 0 is
/// T^{-|m|} and is defined for both sidednesses).
inline Cover apply_map_to_cover(const ShiftSpace& space, const Cover& U,
                                int m) {
  Cover out;
  out.is_partition = U.is_partition;
  for (const auto& member : U.members) {
    CylinderSet c = forward_image_set(space, member, m);
    out.members.push_back(std::move(c));
  }
  return out;
}

namespace detail {

inline void dedupe_members(const ShiftSpace& space, Cover& U) {
  if (U.members.size() < 2) return;
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& m : U.members) {
    if (m.window_length == 0) continue;
    if (!any) {
      lo = m.window_start;
      hi = m.window_end();
      any = true;
    } else {
      lo = std::min(lo, m.window_start);
      hi = std::max(hi, m.window_end());
    }
  }
  if (!space.two_sided()) lo = 0;
  std::vector<CylinderSet> canon;
  for (const auto& m : U.members) canon.push_back(rewindow(space, m, lo, hi));
  std::sort(canon.begin(), canon.end(),
            [](const CylinderSet& a, const CylinderSet& b) {
              return a.allowed < b.allowed;
            });
  canon.erase(std::unique(canon.begin(), canon.end(),
                          [](const CylinderSet& a, const CylinderSet& b) {
                            return a.allowed == b.allowed;
                          }),
              canon.end());
  U.members = std::move(canon);
}

}  // namespace detail

/// The join U_0^{n-1} = U v T^{-1}U v ... v T^{-(n-1)}U.
inline Cover join_iterates(const ShiftSpace& space, const Cover& U, int n) {
  if (n < 1) throw std::invalid_argument("join_iterates: n must be >= 1");
  if (n == 1) return U;
  if (auto info = uniform_partition_info(space, U))
    return cylinder_partition(space, info->second + n - 1, info->first);
  Cover result = U;
  for (int i = 1; i < n; ++i) {
    Cover shifted = apply_map_to_cover(space, U, -i);
    Cover next;
    next.is_partition = result.is_partition && shifted.is_partition;
    for (const auto& a : result.members)
      for (const auto& b : shifted.members) {
        CylinderSet c = intersect(space, a, b);
        if (!c.empty()) next.members.push_back(std::move(c));
      }
    if (!next.is_partition) detail::dedupe_members(space, next);
    result = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Inverse limit (natural extension)

/// The natural extension of a one-sided SFT: same alphabet and adjacency,
/// read two-sided. pi_1 truncates a point to its coordinates >= 0.
inline ShiftSpace natural_extension(const ShiftSpace& space) {
  if (space.two_sided())
    throw std::invalid_argument("natural_extension: input already two-sided");
  ShiftSpace out = space;
  out.sidedness = Sidedness::TwoSided;
  return out;
}

/// pi_1 of a two-sided periodic point: the one-sided point reading
/// coordinates 0, 1, 2, ...
inline PointRepr project_point(const PointRepr& x) {
  if (x.sidedness != Sidedness::TwoSided)
    throw std::invalid_argument("project_point: need a two-sided point");
  const int p = static_cast<int>(x.period.size());
  Word rotated(p);
  for (int j = 0; j < p; ++j) rotated[j] = x.period[(j + x.phase) % p];
  return make_point_one_sided(Word{}, std::move(rotated));
}

/// pi_1 image of a two-sided CylinderSet: the one-sided set of truncations.
inline CylinderSet project_set(const ShiftSpace& two_sided_space,
                               const CylinderSet& K) {
  if (!two_sided_space.two_sided())
    throw std::invalid_argument("project_set: need the two-sided space");
  if (K.empty()) return cyl_empty();
  if (K.window_length == 0) return cyl_full();
  const int lo = std::min(K.window_start, 0);
  const int hi = std::max(K.window_end(), 1);
  CylinderSet full = rewindow(two_sided_space, K, lo, hi);
  // drop the negative coordinates
  std::vector<Word> out;
  out.reserve(full.allowed.size());
  for (const auto& w : full.allowed)
    out.emplace_back(w.begin() + (0 - lo), w.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return CylinderSet{0, hi, std::move(out)};
}

/// pi_1^{-1} of a window-[0,L) one-sided CylinderSet: the same description
/// read in the two-sided space.
inline CylinderSet lift_set(const CylinderSet& K) { return K; }

/// pi_1^{-1} of a one-sided cover.
inline Cover lift_cover(const Cover& U) { return U; }

}  // namespace presslab
