#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "oradmit/poisson.hpp"

using namespace oradmit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("raw pmf matches closed forms", "[poisson]") {
  REQUIRE_THAT(poisson_pmf_raw(1.0, 0), WithinRel(std::exp(-1.0), 1e-14));
  REQUIRE_THAT(poisson_pmf_raw(1.0, 1), WithinRel(std::exp(-1.0), 1e-14));
  REQUIRE_THAT(poisson_pmf_raw(2.0, 3),
               WithinRel(std::exp(-2.0) * 8.0 / 6.0, 1e-14));
  REQUIRE(poisson_pmf_raw(0.0, 0) == 1.0);
  REQUIRE(poisson_pmf_raw(0.0, 5) == 0.0);
  REQUIRE_THROWS_AS(poisson_pmf_raw(-1.0, 0), std::domain_error);
}

TEST_CASE("support caps keep exactly the probable outcomes", "[poisson]") {
  // Largest count whose raw probability still reaches the threshold.
  struct Case { double rate, threshold; int cap; };
  const Case cases[] = {
      {1.0, 0.005, 4},  {0.5, 0.005, 3},  {0.25, 0.005, 2}, {0.0, 0.005, 0},
      {3.0, 0.005, 8},  {5.0, 0.005, 11}, {2.0, 0.005, 6},  {10.0, 0.005, 18},
      {1.0, 0.001, 5},  {3.0, 0.001, 9},  {5.0, 0.001, 13}};
  for (const auto& c : cases) {
    INFO("rate " << c.rate << " threshold " << c.threshold);
    REQUIRE(support_cap(c.rate, c.threshold) == c.cap);
    if (c.rate > 0.0) {
      REQUIRE(poisson_pmf_raw(c.rate, c.cap) >= c.threshold);
      REQUIRE(poisson_pmf_raw(c.rate, c.cap + 1) < c.threshold);
    }
  }
  REQUIRE_THROWS_AS(support_cap(1.0, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(support_cap(1.0, 1.0), std::domain_error);
}

TEST_CASE("truncated pmf renormalizes over the kept outcomes", "[poisson]") {
  const auto t = truncated_poisson_table(1.0, 4);
  REQUIRE(t.size() == 5);
  const double expected[] = {0.36923076923076925, 0.36923076923076925,
                             0.18461538461538468, 0.061538461538461521,
                             0.015384615384615391};
  for (int k = 0; k <= 4; ++k) {
    REQUIRE_THAT(t[k], WithinRel(expected[k], 1e-14));
    REQUIRE_THAT(truncated_poisson_pmf(1.0, k, 4), WithinRel(expected[k], 1e-14));
  }
  REQUIRE(truncated_poisson_pmf(1.0, 5, 4) == 0.0);
  REQUIRE_THAT(std::accumulate(t.begin(), t.end(), 0.0), WithinAbs(1.0, 1e-12));

  const auto s = truncated_poisson_table(0.25, 2);
  const double expected2[] = {0.78048780487804881, 0.1951219512195122,
                              0.024390243902439036};
  for (int k = 0; k <= 2; ++k) REQUIRE_THAT(s[k], WithinRel(expected2[k], 1e-14));

  REQUIRE_THROWS_AS(truncated_poisson_pmf(1.0, 0, -1), std::domain_error);
}

TEST_CASE("degenerate rate zero concentrates on zero arrivals", "[poisson]") {
  REQUIRE(support_cap(0.0, 0.5) == 0);
  const auto t = truncated_poisson_table(0.0, 0);
  REQUIRE(t.size() == 1);
  REQUIRE(t[0] == 1.0);
}
