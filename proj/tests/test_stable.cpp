#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "oracles.hpp"
#include "presslab/oracle.hpp"
#include "presslab/stable.hpp"

using namespace presslab;

namespace {

Potential beta_pot(const ShiftSpace& space, double beta) {
  std::map<std::string, double> v{{"0", 0.0}, {"1", beta}};
  return make_potential(space, 1, v);
}

}  // namespace

TEST_CASE("epsilon-stable sets: pinned windows") {
  ShiftSpace one = full_shift(2, Sidedness::OneSided);
  ShiftSpace two = full_shift(2, Sidedness::TwoSided);
  PointRepr x1 = make_point_one_sided(Word{}, Word{0, 1});
  PointRepr x2 = make_point_two_sided(Word{0, 1});
  // one-sided: pinned from time 0 (the whole forward orbit is constrained)
  REQUIRE(epsilon_stable_set(one, x1, 2).pinned_from == 0);
  // the n >= 1 variant frees one coordinate
  REQUIRE(epsilon_stable_set(one, x1, 2, 1).pinned_from == 1);
  // two-sided: the metric sees q-1 coordinates to the left of each time
  REQUIRE(epsilon_stable_set(two, x2, 1).pinned_from == 0);
  REQUIRE(epsilon_stable_set(two, x2, 3).pinned_from == -2);
  REQUIRE(epsilon_stable_set(two, x2, 3, 1).pinned_from == -1);
  REQUIRE_THROWS_AS(epsilon_stable_set(one, x1, 0), std::invalid_argument);
}

TEST_CASE("materialized stable sets contain exactly the compatible words") {
  ShiftSpace two = golden_mean_shift(Sidedness::TwoSided);
  PointRepr x = make_point_two_sided(Word{0, 1});
  StableSet S = epsilon_stable_set(two, x, 2);  // pinned from -1
  CylinderSet W = materialize_stable(two, S, 3);
  REQUIRE(W.window_start == -1);
  REQUIRE(W.allowed.size() == 1);
  // anchor coordinates -1..2 of (01)^Z with x_0 = 0: ... 1 0 1 0 ...
  REQUIRE(W.allowed.front() == Word{1, 0, 1, 0});
  REQUIRE(contains_point(two, W, x));
  REQUIRE_FALSE(contains_point(two, W, x.shifted(1)));

  ShiftSpace one = golden_mean_shift(Sidedness::OneSided);
  PointRepr y = make_point_one_sided(Word{}, Word{0, 1});
  StableSet S1 = epsilon_stable_set(one, y, 1, /*min_time=*/1);
  CylinderSet W1 = materialize_stable(one, S1, 3);
  // coordinate 0 is free (but must remain admissible before y_1 = 1)
  REQUIRE(W1.window_start == 0);
  REQUIRE(W1.allowed == std::vector<Word>{Word{0, 1, 0}});
}

TEST_CASE("preimage pressure on the full 2-shift is log 3 at every n") {
  ShiftSpace full2 = full_shift(2, Sidedness::OneSided);
  Potential f = beta_pot(full2, std::log(2.0));
  for (const Word& period : {Word{0}, Word{1}, Word{0, 1, 1}}) {
    PointRepr x = make_point_one_sided(Word{}, period);
    PressureEstimate est =
        preimage_pressure(full2, f, x, 1, std::vector<int>{1, 2, 3}, 10);
    for (const auto& [n, v] : est.samples)
      REQUIRE_THAT(v, Catch::Matchers::WithinAbs(std::log(3.0), 1e-12));
    REQUIRE_THAT(est.extrapolated,
                 Catch::Matchers::WithinAbs(std::log(3.0), 1e-9));
    REQUIRE(est.monotone_in_resolution);
  }
}

TEST_CASE("preimage pressure agrees with the pointwise enumeration") {
  for (const ShiftSpace& space : {full_shift(2, Sidedness::OneSided),
                                  golden_mean_shift(Sidedness::OneSided)}) {
    Potential f = beta_pot(space, 0.6);
    PointRepr x = make_point_one_sided(Word{}, Word{0});
    const int q_eps = 2;
    StableSet S = epsilon_stable_set(space, x, q_eps);
    CylinderSet W = materialize_stable(space, S, 3);
    for (int n = 1; n <= 6; ++n) {
      CylinderSet K = preimage_set(space, W, n);
      for (int q = 1; q <= 3; ++q) {
        REQUIRE(separated_count(space, K, n, q) ==
                testoracle::brute_separated_count(space, K, n, q));
        REQUIRE_THAT(
            *separated_pressure(space, f, K, n, q),
            Catch::Matchers::WithinAbs(
                testoracle::brute_separated_pressure(space, f, K, n, q),
                1e-9));
      }
    }
  }
}

TEST_CASE("dispersal rate of the full shift is the entropy") {
  ShiftSpace full2 = full_shift(2, Sidedness::OneSided);
  PointRepr x = make_point_one_sided(Word{}, Word{1});
  PressureEstimate est =
      dispersal_rate(full2, x, 1, std::vector<int>{1, 2, 3}, 12);
  REQUIRE_THAT(est.extrapolated,
               Catch::Matchers::WithinAbs(std::log(2.0), 1e-9));
}

TEST_CASE("point scan runs across threads and finds the supremum") {
  ShiftSpace full2 = full_shift(2, Sidedness::OneSided);
  Potential f = beta_pot(full2, std::log(2.0));
  std::vector<PointRepr> points;
  for (const auto& w : words_of_length(full2, 3))
    points.push_back(make_point_one_sided(Word{}, w));
  REQUIRE(points.size() == 8);
  const double ref = transfer_pressure(full2, f);
  PointScanResult scan = pressure_point_scan(
      full2, f, points, 1, std::vector<int>{1, 2, 3}, 10, ref, 0.02);
  REQUIRE(scan.pass);
  REQUIRE(scan.equality_gap <= 1e-9);
  for (const auto& e : scan.entries) REQUIRE(e.pass);
  auto j = scan.to_json();
  REQUIRE(j.at("points").size() == 8);
  REQUIRE(j.at("verdict").get<std::string>() == "pass");
}

TEST_CASE("PRESSLAB_THREADS caps the worker count") {
  setenv("PRESSLAB_THREADS", "1", 1);
  REQUIRE(thread_count() == 1);
  setenv("PRESSLAB_THREADS", "7", 1);
  REQUIRE(thread_count() == 7);
  unsetenv("PRESSLAB_THREADS");
  REQUIRE(thread_count() >= 1);
}

TEST_CASE("stable cylinder image diameters") {
  ShiftSpace two = full_shift(2, Sidedness::TwoSided);
  PointRepr x = make_point_two_sided(Word{0, 1});
  for (int m = 2; m <= 4; ++m) {
    StableSet A = stable_cylinder(two, x, m);
    REQUIRE(A.pinned_from == 2 - m);
    for (int n = 1; n <= 8; ++n)
      REQUIRE(stable_image_diameter(two, A, n) ==
              std::pow(2.0, -(m + n - 1)));
  }
  // golden mean: 0 has two predecessors, so the same formula holds for an
  // all-zero anchor
  ShiftSpace golden = golden_mean_shift(Sidedness::TwoSided);
  PointRepr z = make_point_two_sided(Word{0});
  StableSet A = stable_cylinder(golden, z, 3);
  for (int n = 1; n <= 6; ++n)
    REQUIRE(stable_image_diameter(golden, A, n) == std::pow(2.0, -(n + 2)));
}

TEST_CASE("backward separated pressure: closed form on the full shift") {
  ShiftSpace two = full_shift(2, Sidedness::TwoSided);
  Potential f0 = zero_potential(two);
  PointRepr x = make_point_two_sided(Word{0});
  const int m = 3;
  StableSet A = stable_cylinder(two, x, m);
  CylinderSet K = materialize_stable(two, A, 4);
  for (int q = 1; q <= 3; ++q)
    for (int n = m; n <= 8; ++n) {
      // free coordinates of the backward separation window:
      // [-(n+q-2), 2-m), so 2^{n+q-m} classes
      const double expect = (n + q - m) * std::log(2.0);
      REQUIRE_THAT(*backward_separated_pressure(two, f0, K, n, q),
                   Catch::Matchers::WithinAbs(expect, 1e-12));
    }
}

TEST_CASE("backward stable pressure dominates measure pressure") {
  ShiftSpace two = full_shift(2, Sidedness::TwoSided);
  Potential f = beta_pot(two, std::log(2.0));
  PointRepr x = make_point_two_sided(Word{0, 1});
  BackwardStableResult r = stable_cylinder_pressure_backward(
      two, f, x, 3, 12, std::vector<int>{1, 2, 3});
  for (const auto& [n, d] : r.diameters)
    REQUIRE(d == std::pow(2.0, -(3 + n - 1)));
  REQUIRE_THAT(r.estimate.extrapolated,
               Catch::Matchers::WithinAbs(std::log(3.0), 0.02));
  MarkovMeasure eq = equilibrium_markov(two, f);
  REQUIRE(r.estimate.extrapolated >= measure_pressure(two, eq, f) - 0.02);
}
