#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "potential.hpp"
#include "shift_space.hpp"

namespace presslab {

namespace detail {

struct PerronPair {
  double lambda = 0.0;
  std::vector<double> vec;  // positive, normalized to sum 1
};

/// Power iteration on a non-negative irreducible matrix, deterministic
/// all-ones start, relative residual 1e-12.
inline PerronPair power_iteration(const std::vector<std::vector<double>>& M,
                                  double tol = 1e-12,
                                  long long max_iter = 1000000) {
  const std::size_t k = M.size();
  std::vector<double> v(k, 1.0 / k);
  double lambda = 0.0;
  for (long long it = 0; it < max_iter; ++it) {
    std::vector<double> w(k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) w[a] += M[a][b] * v[b];
    double norm = 0.0;
    for (double x : w) norm += x;
    if (norm <= 0.0)
      throw std::runtime_error("power_iteration: vector vanished");
    lambda = norm;  // since v sums to 1
    double residual = 0.0;
    for (std::size_t a = 0; a < k; ++a)
      residual = std::max(residual, std::abs(w[a] - lambda * v[a]));
    for (auto& x : w) x /= norm;
    v = std::move(w);
    if (residual <= tol * lambda) return {lambda, v};
  }
  throw std::runtime_error("power_iteration: no convergence within cap");
}

}  // namespace detail

/// Weighted transition matrix M_ab = adjacency(a,b) * exp(f(a)) for a depth-1
/// potential.
inline std::vector<std::vector<double>> transfer_matrix(const ShiftSpace& space,
                                                        const Potential& f) {
  if (f.depth != 1 || f.offset != 0)
    throw std::invalid_argument("transfer_matrix: need a depth-1 potential");
  const int k = space.alphabet_size;
  std::vector<std::vector<double>> M(k, std::vector<double>(k, 0.0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (space.allows(a, b)) M[a][b] = std::exp(f.table[a]);
  return M;
}

/// log of the Perron eigenvalue of the weighted transition matrix. The
/// independent ground truth for P(T, f) on an irreducible SFT.
inline double transfer_pressure(const ShiftSpace& space, const Potential& f) {
  if (!is_irreducible(space))
    throw std::invalid_argument("transfer_pressure: adjacency is reducible");
  return std::log(detail::power_iteration(transfer_matrix(space, f)).lambda);
}

/// Recoding of (space, depth-r potential) to the r-block presentation with a
/// depth-1 potential; used to feed deeper potentials to the matrix oracle.
inline std::pair<ShiftSpace, Potential> block_recode(const ShiftSpace& space,
                                                     const Potential& f) {
  if (f.offset != 0)
    throw std::invalid_argument("block_recode: offset must be 0");
  if (f.depth == 1) return {space, f};
  const int r = f.depth;
  const auto blocks = words_of_length(space, r);
  const int m = static_cast<int>(blocks.size());
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      bool overlap = true;
      for (int t = 0; t + 1 < r; ++t)
        if (blocks[i][t + 1] != blocks[j][t]) {
          overlap = false;
          break;
        }
      adj[i][j] = overlap && space.allows(blocks[i][r - 1], blocks[j][r - 1]);
    }
  ShiftSpace block_space = build_sft(m, std::move(adj), space.sidedness);
  std::map<std::string, double> values;
  for (int i = 0; i < m; ++i)
    values[word_to_string(Word{static_cast<std::uint8_t>(i)})] =
        f.table[f.encode(blocks[i], 0)];
  return {block_space, make_potential(block_space, 1, values)};
}

/// transfer_pressure for depth >= 1 via r-block recoding.
inline double transfer_pressure_general(const ShiftSpace& space,
                                        const Potential& f) {
  auto [bs, bf] = block_recode(space, f);
  return transfer_pressure(bs, bf);
}

/// Stationary Markov measure: row-stochastic transition matrix supported on
/// the adjacency, with its stationary distribution.
struct MarkovMeasure {
  std::vector<std::vector<double>> transition;
  std::vector<double> stationary;
};

inline std::vector<double> stationary_distribution(
    const std::vector<std::vector<double>>& transition) {
  const std::size_t k = transition.size();
  for (const auto& row : transition) {
    if (row.size() != k)
      throw std::invalid_argument("stationary_distribution: non-square matrix");
    double s = 0.0;
    for (double x : row) {
      if (x < 0.0)
        throw std::invalid_argument("stationary_distribution: negative entry");
      s += x;
    }
    if (std::abs(s - 1.0) > 1e-12)
      throw std::invalid_argument("stationary_distribution: rows must sum to 1");
  }
  // irreducibility of the support
  {
    std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) adj[a][b] = transition[a][b] > 0.0;
    ShiftSpace probe{static_cast<int>(k), adj, Sidedness::OneSided, 2.0};
    if (!is_irreducible(probe))
      throw std::invalid_argument("stationary_distribution: reducible chain");
  }
  std::vector<std::vector<double>> Mt(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) Mt[a][b] = transition[b][a];
  auto pair = detail::power_iteration(Mt);
  return pair.vec;
}

inline MarkovMeasure make_markov(const ShiftSpace& space,
                                 std::vector<std::vector<double>> transition) {
  if (static_cast<int>(transition.size()) != space.alphabet_size)
    throw std::invalid_argument("make_markov: size mismatch");
  for (int a = 0; a < space.alphabet_size; ++a)
    for (int b = 0; b < space.alphabet_size; ++b)
      if (transition[a][b] > 0.0 && !space.allows(a, b))
        throw std::invalid_argument(
            "make_markov: support violates the adjacency");
  auto pi = stationary_distribution(transition);
  return MarkovMeasure{std::move(transition), std::move(pi)};
}

inline MarkovMeasure markov_from_json(const ShiftSpace& space,
                                      const nlohmann::json& j) {
  std::vector<std::vector<double>> P;
  for (const auto& row : j.at("transition")) {
    std::vector<double> r;
    for (const auto& e : row) r.push_back(e.get<double>());
    P.push_back(std::move(r));
  }
  return make_markov(space, std::move(P));
}

/// Bernoulli-style measure with identical rows (requires full transitions on
/// the support).
inline MarkovMeasure bernoulli_measure(const ShiftSpace& space,
                                       const std::vector<double>& p) {
  std::vector<std::vector<double>> P(space.alphabet_size, p);
  return make_markov(space, std::move(P));
}

inline double entropy_rate(const MarkovMeasure& mu) {
  double h = 0.0;
  for (std::size_t a = 0; a < mu.transition.size(); ++a)
    for (double p : mu.transition[a])
      if (p > 0.0) h -= mu.stationary[a] * p * std::log(p);
  return h;
}

/// P_mu(T, f) = h_mu(T) + integral of f, for depth-1 or depth-2 potentials.
inline double measure_pressure(const ShiftSpace& space, const MarkovMeasure& mu,
                               const Potential& f) {
  if (f.offset != 0)
    throw std::invalid_argument("measure_pressure: offset must be 0");
  if (f.depth > 2)
    throw std::invalid_argument("measure_pressure: depth must be <= 2");
  double integral = 0.0;
  if (f.depth == 1) {
    for (int a = 0; a < space.alphabet_size; ++a)
      integral += mu.stationary[a] * f.table[a];
  } else {
    for (int a = 0; a < space.alphabet_size; ++a)
      for (int b = 0; b < space.alphabet_size; ++b)
        if (mu.transition[a][b] > 0.0)
          integral += mu.stationary[a] * mu.transition[a][b] *
                      f.table[f.encode(Word{static_cast<std::uint8_t>(a),
                                            static_cast<std::uint8_t>(b)},
                                       0)];
  }
  return entropy_rate(mu) + integral;
}

/// The Markov measure attaining sup_mu P_mu(T, f): RPF normalization
/// P_ab = M_ab v_b / (lambda v_a) of the weighted transition matrix.
inline MarkovMeasure equilibrium_markov(const ShiftSpace& space,
                                        const Potential& f) {
  if (!is_irreducible(space))
    throw std::invalid_argument("equilibrium_markov: adjacency is reducible");
  auto M = transfer_matrix(space, f);
  auto pair = detail::power_iteration(M);
  const int k = space.alphabet_size;
  std::vector<std::vector<double>> P(k, std::vector<double>(k, 0.0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      P[a][b] = M[a][b] * pair.vec[b] / (pair.lambda * pair.vec[a]);
  // clean tiny row-sum drift before validation
  for (auto& row : P) {
    double s = 0.0;
    for (double x : row) s += x;
    for (auto& x : row) x /= s;
  }
  return make_markov(space, std::move(P));
}

/// Deterministic random irreducible Markov measure on the adjacency support.
inline MarkovMeasure random_markov(const ShiftSpace& space, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  const int k = space.alphabet_size;
  std::vector<std::vector<double>> P(k, std::vector<double>(k, 0.0));
  for (int a = 0; a < k; ++a) {
    double s = 0.0;
    for (int b = 0; b < k; ++b)
      if (space.allows(a, b)) {
        P[a][b] = unif(rng);
        s += P[a][b];
      }
    for (int b = 0; b < k; ++b) P[a][b] /= s;
  }
  return make_markov(space, std::move(P));
}

}  // namespace presslab
