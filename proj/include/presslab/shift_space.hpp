#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace presslab {

enum class Sidedness { OneSided, TwoSided };

/// Finite admissible block of symbols.
using Word = std::vector<std::uint8_t>;

inline std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (auto c : w) s += static_cast<char>(c < 10 ? '0' + c : 'a' + (c - 10));
  return s;
}

inline Word word_from_string(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = 10 + (c - 'a');
    else throw std::invalid_argument("bad symbol in word: " + s);
    w.push_back(static_cast<std::uint8_t>(v));
  }
  return w;
}

/// A one- or two-sided subshift of finite type over {0,...,k-1} with
/// transition constraints given by an adjacency matrix: "ab" is admissible
/// iff adjacency[a][b].
struct ShiftSpace {
  int alphabet_size = 0;
  std::vector<std::vector<bool>> adjacency;
  Sidedness sidedness = Sidedness::OneSided;
  double metric_base = 2.0;

  bool two_sided() const { return sidedness == Sidedness::TwoSided; }

  bool allows(int a, int b) const { return adjacency[a][b]; }

  bool is_admissible(const Word& w) const {
    for (auto c : w)
      if (c >= alphabet_size) return false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (!allows(w[i], w[i + 1])) return false;
    return true;
  }

  /// Admissible continuation of word "uv" across the junction, where u ends
  /// with symbol a and v starts with symbol b.
  bool joinable(const Word& u, const Word& v) const {
    if (u.empty() || v.empty()) return true;
    return allows(u.back(), v.front());
  }
};

inline ShiftSpace build_sft(int alphabet_size,
                            std::vector<std::vector<bool>> adjacency,
                            Sidedness sidedness, double metric_base = 2.0) {
  if (alphabet_size < 1)
    throw std::invalid_argument("build_sft: alphabet_size must be >= 1");
  if (static_cast<int>(adjacency.size()) != alphabet_size)
    throw std::invalid_argument("build_sft: adjacency row count mismatch");
  for (const auto& row : adjacency)
    if (static_cast<int>(row.size()) != alphabet_size)
      throw std::invalid_argument("build_sft: adjacency column count mismatch");
  if (metric_base <= 1.0)
    throw std::invalid_argument("build_sft: metric_base must exceed 1");
  // surjectivity: every symbol has a successor and a predecessor
  for (int a = 0; a < alphabet_size; ++a) {
    bool has_succ = false, has_pred = false;
    for (int b = 0; b < alphabet_size; ++b) {
      has_succ = has_succ || adjacency[a][b];
      has_pred = has_pred || adjacency[b][a];
    }
    if (!has_succ)
      throw std::invalid_argument("build_sft: symbol " + std::to_string(a) +
                                  " has no admissible successor");
    if (!has_pred)
      throw std::invalid_argument("build_sft: symbol " + std::to_string(a) +
                                  " has no admissible predecessor");
  }
  return ShiftSpace{alphabet_size, std::move(adjacency), sidedness,
                    metric_base};
}

inline ShiftSpace full_shift(int alphabet_size, Sidedness sidedness) {
  std::vector<std::vector<bool>> adj(
      alphabet_size, std::vector<bool>(alphabet_size, true));
  return build_sft(alphabet_size, std::move(adj), sidedness);
}

/// Golden-mean shift: word "11" forbidden.
inline ShiftSpace golden_mean_shift(Sidedness sidedness) {
  return build_sft(2, {{true, true}, {true, false}}, sidedness);
}

/// All admissible words of length n, lexicographically ordered.
inline std::vector<Word> words_of_length(const ShiftSpace& space, int n) {
  if (n < 0) throw std::invalid_argument("words_of_length: n must be >= 0");
  std::vector<Word> out;
  if (n == 0) {
    out.push_back(Word{});
    return out;
  }
  Word w;
  w.reserve(n);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      out.push_back(w);
      return;
    }
    for (int b = 0; b < space.alphabet_size; ++b) {
      if (!w.empty() && !space.allows(w.back(), b)) continue;
      w.push_back(static_cast<std::uint8_t>(b));
      self(self, depth + 1);
      w.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Count of admissible n-words via the adjacency recursion 1' A^{n-1} 1.
inline long long word_count(const ShiftSpace& space, int n) {
  if (n < 0) throw std::invalid_argument("word_count: n must be >= 0");
  if (n == 0) return 1;
  std::vector<long long> v(space.alphabet_size, 1);
  for (int step = 1; step < n; ++step) {
    std::vector<long long> nv(space.alphabet_size, 0);
    for (int a = 0; a < space.alphabet_size; ++a)
      for (int b = 0; b < space.alphabet_size; ++b)
        if (space.allows(a, b)) nv[a] += v[b];
    v = std::move(nv);
  }
  long long total = 0;
  for (auto c : v) total += c;
  return total;
}

inline bool is_irreducible(const ShiftSpace& space) {
  const int k = space.alphabet_size;
  auto reach = [&](bool forward) {
    std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
    for (int s = 0; s < k; ++s) {
      std::vector<int> stack{s};
      r[s][s] = true;
      while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b = 0; b < k; ++b) {
          bool edge = forward ? space.allows(a, b) : space.allows(b, a);
          if (edge && !r[s][b]) {
            r[s][b] = true;
            stack.push_back(b);
          }
        }
      }
    }
    return r;
  };
  auto fwd = reach(true);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (!fwd[a][b]) return false;
  return true;
}

/// Loads a space description. Two forms are accepted:
///   { "alphabet": k, "adjacency": [[0/1,...],...], "sidedness": "one"|"two" }
///   { "alphabet": k, "forbidden": ["11",...], "block_length": 2, ... }
inline ShiftSpace space_from_json(const nlohmann::json& j) {
  if (!j.contains("alphabet"))
    throw std::invalid_argument("space json: missing \"alphabet\"");
  const int k = j.at("alphabet").get<int>();
  Sidedness side = Sidedness::OneSided;
  if (j.contains("sidedness")) {
    const std::string s = j.at("sidedness").get<std::string>();
    if (s == "one") side = Sidedness::OneSided;
    else if (s == "two") side = Sidedness::TwoSided;
    else throw std::invalid_argument("space json: bad sidedness \"" + s + "\"");
  }
  std::vector<std::vector<bool>> adj;
  if (j.contains("adjacency")) {
    for (const auto& row : j.at("adjacency")) {
      std::vector<bool> r;
      for (const auto& e : row) r.push_back(e.get<int>() != 0);
      adj.push_back(std::move(r));
    }
  } else if (j.contains("forbidden")) {
    if (j.value("block_length", 2) != 2)
      throw std::invalid_argument(
          "space json: only block_length 2 forbidden words are supported");
    adj.assign(k, std::vector<bool>(k, true));
    for (const auto& f : j.at("forbidden")) {
      Word w = word_from_string(f.get<std::string>());
      if (w.size() != 2 || w[0] >= k || w[1] >= k)
        throw std::invalid_argument("space json: bad forbidden word");
      adj[w[0]][w[1]] = false;
    }
  } else {
    throw std::invalid_argument(
        "space json: need \"adjacency\" or \"forbidden\"");
  }
  double base = j.value("metric_base", 2.0);
  return build_sft(k, std::move(adj), side, base);
}

}  // namespace presslab
