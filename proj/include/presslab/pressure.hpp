#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cylinder.hpp"
#include "numerics.hpp"
#include "potential.hpp"
#include "shift_space.hpp"

namespace presslab {

/// Convergence record for one pressure quantity: samples of (1/n) log P_n,
/// the extrapolated limit, and the trace of the outer resolution pass.
struct PressureEstimate {
  std::vector<std::pair<int, double>> samples;  // (n, value)
  double extrapolated = 0.0;
  ExtrapolationMethod method = ExtrapolationMethod::LastSample;
  std::string resolution;  // description of delta / cover used
  std::vector<std::pair<int, double>> resolution_trace;  // (q, extrapolated)
  bool monotone_in_resolution = true;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["samples"] = samples;
    j["extrapolated"] = extrapolated;
    j["method"] = to_string(method);
    j["resolution"] = resolution;
    j["trace"] = resolution_trace;
    j["monotone_in_resolution"] = monotone_in_resolution;
    return j;
  }
};

namespace detail {

/// Window of coordinates on which two points must agree to be
/// (n, base^{-q})-close at every time 0..n-1.
inline std::pair<int, int> separation_window(const ShiftSpace& space, int n,
                                             int q) {
  if (space.two_sided()) return {-(q - 1), n + q - 1};
  return {0, n + q - 1};
}

}  // namespace detail

/// Largest cardinality of an (n, base^{-q})-separated subset of K. With the
/// dyadic metric the d_n-balls partition the space, so this equals the number
/// of distinct restrictions of K to the separation window.
inline long long separated_count(const ShiftSpace& space, const CylinderSet& K,
                                 int n, int q) {
  if (n < 1) throw std::invalid_argument("separated_count: n must be >= 1");
  if (q < 0) throw std::invalid_argument("separated_count: q must be >= 0");
  if (K.empty()) return 0;
  if (q == 0) return 1;  // delta >= 1: no pair is ever separated
  auto [lo, hi] = detail::separation_window(space, n, q);
  CylinderSet classes = rewindow(space, K, lo, hi);
  return static_cast<long long>(classes.allowed.size());
}

/// Smallest cardinality of an (n, base^{-q})-spanning set of K. The spanning
/// classes are the same d_n-balls, so the count coincides with
/// separated_count.
inline long long spanning_count(const ShiftSpace& space, const CylinderSet& K,
                                int n, int q) {
  return separated_count(space, K, n, q);
}

/// log P_n(T, f, base^{-q}, K): log-sum-exp over separation classes of the
/// per-class sup of f_n. nullopt marks the empty set.
inline std::optional<double> separated_pressure(const ShiftSpace& space,
                                                const Potential& f,
                                                const CylinderSet& K, int n,
                                                int q) {
  if (n < 1) throw std::invalid_argument("separated_pressure: n must be >= 1");
  if (K.empty()) return std::nullopt;
  if (q == 0) return birkhoff_extremum(f, K, n, Extremum::Sup);
  auto [slo, shi] = detail::separation_window(space, n, q);
  auto [blo, bhi] = birkhoff_window(f, n);
  int lo = std::min(slo, blo);
  int hi = std::max(shi, bhi);
  if (K.window_length > 0) {
    lo = std::min(lo, K.window_start);
    hi = std::max(hi, K.window_end());
  }
  if (!space.two_sided()) lo = 0;
  CylinderSet mat = rewindow(space, K, lo, hi);
  if (mat.empty()) return std::nullopt;
  // group by the restriction to the separation window; mat.allowed is sorted
  // so equal restrictions are contiguous
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
    const double v = detail::birkhoff_on_word(f, w, lo, n);
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

/// log P_n(T, f, U, K) evaluated at the generated partition U_0^{n-1}
/// (the inf over refinement-respecting covers is attained there for cylinder
/// partitions; cover_pressure_exact is the cross-check on tiny instances).
inline std::optional<double> cover_pressure(const ShiftSpace& space,
                                            const Potential& f, const Cover& U,
                                            const CylinderSet& K, int n) {
  if (n < 1) throw std::invalid_argument("cover_pressure: n must be >= 1");
  if (K.empty()) return std::nullopt;
  Cover V = join_iterates(space, U, n);
  std::vector<double> cell_sups;
  for (const auto& cell : V.members) {
    CylinderSet I = intersect(space, cell, K);
    if (I.empty()) continue;  // empty cells contribute exp(-inf) = 0
    auto s = birkhoff_extremum(f, I, n, Extremum::Sup);
    cell_sups.push_back(*s);
  }
  if (cell_sups.empty()) return std::nullopt;
  return log_sum_exp(cell_sups);
}

/// Q_n: cover_pressure with the per-cell inf in place of the sup.
inline std::optional<double> lower_cover_pressure(const ShiftSpace& space,
                                                  const Potential& f,
                                                  const Cover& U,
                                                  const CylinderSet& K, int n) {
  if (n < 1)
    throw std::invalid_argument("lower_cover_pressure: n must be >= 1");
  if (K.empty()) return std::nullopt;
  Cover V = join_iterates(space, U, n);
  std::vector<double> cell_infs;
  for (const auto& cell : V.members) {
    CylinderSet I = intersect(space, cell, K);
    if (I.empty()) continue;
    auto s = birkhoff_extremum(f, I, n, Extremum::Inf);
    cell_infs.push_back(*s);
  }
  if (cell_infs.empty()) return std::nullopt;
  return log_sum_exp(cell_infs);
}

/// Exact inf over all partitions beta refining U_0^{n-1} whose atoms are
/// unions of atoms of the generated Borel partition. Exponential in the atom
/// count; guarded at 12 atoms.
inline std::optional<double> cover_pressure_exact(const ShiftSpace& space,
                                                  const Potential& f,
                                                  const Cover& U,
                                                  const CylinderSet& K, int n,
                                                  int max_atoms = 12) {
  if (n < 1) throw std::invalid_argument("cover_pressure_exact: n must be >= 1");
  if (K.empty()) return std::nullopt;
  Cover V = join_iterates(space, U, n);
  // hull covering all member windows and the Birkhoff window
  auto [blo, bhi] = birkhoff_window(f, n);
  int lo = blo, hi = bhi;
  for (const auto& m : V.members) {
    if (m.window_length == 0) continue;
    lo = std::min(lo, m.window_start);
    hi = std::max(hi, m.window_end());
  }
  if (K.window_length > 0) {
    lo = std::min(lo, K.window_start);
    hi = std::max(hi, K.window_end());
  }
  if (!space.two_sided()) lo = 0;
  const auto hull_words = words_of_length(space, hi - lo);
  std::vector<CylinderSet> members_mat;
  for (const auto& m : V.members)
    members_mat.push_back(rewindow(space, m, lo, hi));
  CylinderSet K_mat = rewindow(space, K, lo, hi);
  // membership profiles -> atoms of the generated Borel partition
  std::map<std::uint64_t, std::vector<std::size_t>> atom_map;
  if (members_mat.size() > 63)
    throw std::invalid_argument("cover_pressure_exact: too many cover members");
  for (std::size_t wi = 0; wi < hull_words.size(); ++wi) {
    std::uint64_t profile = 0;
    for (std::size_t mi = 0; mi < members_mat.size(); ++mi)
      if (std::binary_search(members_mat[mi].allowed.begin(),
                             members_mat[mi].allowed.end(), hull_words[wi]))
        profile |= (std::uint64_t{1} << mi);
    if (profile == 0)
      throw std::logic_error("cover_pressure_exact: cover does not cover X");
    atom_map[profile].push_back(wi);
  }
  struct Atom {
    std::uint64_t profile;
    double sup_fn = -std::numeric_limits<double>::infinity();
    bool meets_K = false;
  };
  std::vector<Atom> atoms;
  for (auto& [profile, idxs] : atom_map) {
    Atom a;
    a.profile = profile;
    for (auto wi : idxs) {
      if (std::binary_search(K_mat.allowed.begin(), K_mat.allowed.end(),
                             hull_words[wi])) {
        a.meets_K = true;
        a.sup_fn = std::max(
            a.sup_fn, detail::birkhoff_on_word(f, hull_words[wi], lo, n));
      }
    }
    atoms.push_back(a);
  }
  if (static_cast<int>(atoms.size()) > max_atoms)
    throw std::invalid_argument("cover_pressure_exact: atom count " +
                                std::to_string(atoms.size()) +
                                " exceeds the guard");
  // enumerate set partitions; a block is valid iff the profiles of its atoms
  // share a cover member
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> block_profile;
  std::vector<double> block_sup;
  std::vector<bool> block_meets;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == atoms.size()) {
      std::vector<double> terms;
      for (std::size_t b = 0; b < block_sup.size(); ++b)
        if (block_meets[b]) terms.push_back(block_sup[b]);
      best = std::min(best, log_sum_exp(terms));
      return;
    }
    for (std::size_t b = 0; b < block_profile.size(); ++b) {
      const std::uint64_t merged = block_profile[b] & atoms[i].profile;
      if (merged == 0) continue;
      const auto save_p = block_profile[b];
      const auto save_s = block_sup[b];
      const bool save_m = block_meets[b];
      block_profile[b] = merged;
      block_sup[b] = std::max(block_sup[b], atoms[i].sup_fn);
      block_meets[b] = block_meets[b] || atoms[i].meets_K;
      self(self, i + 1);
      block_profile[b] = save_p;
      block_sup[b] = save_s;
      block_meets[b] = save_m;
    }
    block_profile.push_back(atoms[i].profile);
    block_sup.push_back(atoms[i].sup_fn);
    block_meets.push_back(atoms[i].meets_K);
    self(self, i + 1);
    block_profile.pop_back();
    block_sup.pop_back();
    block_meets.pop_back();
  };
  rec(rec, 0);
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

struct CoverEntropyResult {
  std::vector<std::pair<int, double>> samples;  // (n, (1/n) H(U_0^{n-1}, K))
  double estimate = 0.0;                        // inf over the samples
};

/// N(U_0^{n-1}, K) for each n <= n_max, and the inf of (1/n) log N.
inline CoverEntropyResult cover_entropy(const ShiftSpace& space, const Cover& U,
                                        const CylinderSet& K, int n_max) {
  if (n_max < 2) throw std::invalid_argument("cover_entropy: n_max must be >= 2");
  if (K.empty()) throw std::invalid_argument("cover_entropy: empty K");
  CoverEntropyResult out;
  out.estimate = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    Cover V = join_iterates(space, U, n);
    long long N = 0;
    if (V.is_partition) {
      for (const auto& cell : V.members)
        if (!intersect(space, cell, K).empty()) ++N;
    } else {
      // minimal subcover by exhaustive search over member subsets
      if (V.members.size() > 20)
        throw std::invalid_argument("cover_entropy: non-partition cover too large");
      int lo = 0, hi = 1;
      for (const auto& m : V.members) {
        if (m.window_length == 0) continue;
        lo = std::min(lo, m.window_start);
        hi = std::max(hi, m.window_end());
      }
      if (K.window_length > 0) {
        lo = std::min(lo, K.window_start);
        hi = std::max(hi, K.window_end());
      }
      if (!space.two_sided()) lo = 0;
      CylinderSet K_mat = rewindow(space, K, lo, hi);
      std::vector<std::uint64_t> cover_masks(K_mat.allowed.size(), 0);
      for (std::size_t mi = 0; mi < V.members.size(); ++mi) {
        CylinderSet m = rewindow(space, V.members[mi], lo, hi);
        for (std::size_t wi = 0; wi < K_mat.allowed.size(); ++wi)
          if (std::binary_search(m.allowed.begin(), m.allowed.end(),
                                 K_mat.allowed[wi]))
            cover_masks[wi] |= (std::uint64_t{1} << mi);
      }
      N = static_cast<long long>(V.members.size());
      const std::uint64_t limit = std::uint64_t{1} << V.members.size();
      for (std::uint64_t sel = 1; sel < limit; ++sel) {
        const int size = __builtin_popcountll(sel);
        if (size >= N) continue;
        bool covers = true;
        for (auto mask : cover_masks)
          if ((mask & sel) == 0) {
            covers = false;
            break;
          }
        if (covers) N = size;
      }
    }
    const double v = std::log(static_cast<double>(N)) / n;
    out.samples.emplace_back(n, v);
    out.estimate = std::min(out.estimate, v);
  }
  return out;
}

/// Bowen pressure of K: inner n-extrapolation of separated pressure per
/// resolution q, outer trace over q_list; the value at the finest q is
/// reported.
inline PressureEstimate bowen_pressure(const ShiftSpace& space,
                                       const Potential& f, const CylinderSet& K,
                                       int n_max,
                                       const std::vector<int>& q_list) {
  if (n_max < 4) throw std::invalid_argument("bowen_pressure: n_max must be >= 4");
  if (q_list.empty())
    throw std::invalid_argument("bowen_pressure: q_list must be non-empty");
  for (std::size_t i = 1; i < q_list.size(); ++i)
    if (q_list[i] <= q_list[i - 1])
      throw std::invalid_argument("bowen_pressure: q_list must be increasing");
  if (K.empty()) throw std::invalid_argument("bowen_pressure: empty K");
  PressureEstimate out;
  for (int q : q_list) {
    std::vector<std::pair<int, double>> samples;
    for (int n = 1; n <= n_max; ++n) {
      auto p = separated_pressure(space, f, K, n, q);
      samples.emplace_back(n, *p / n);
    }
    auto [a, method] = extrapolate_samples(samples);
    out.resolution_trace.emplace_back(q, a);
    if (q == q_list.back()) {
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

inline PressureEstimate pressure_of_full_space(const ShiftSpace& space,
                                               const Potential& f, int n_max,
                                               const std::vector<int>& q_list) {
  return bowen_pressure(space, f, cyl_full(), n_max, q_list);
}

}  // namespace presslab
