#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "oradmit/instances.hpp"
#include "oradmit/layout.hpp"
#include "test_support.hpp"

using namespace oradmit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("type and pair descriptions line up", "[layout]") {
  const Layout layout(testsupport::two_spec_tiny());
  REQUIRE(layout.pair_count() == 3);
  REQUIRE(layout.specialty_count() == 2);
  REQUIRE(layout.type_count() == 5);
  // pairs: (alpha,1) W2, (alpha,2) W1, (beta,1) W2 -> types 2+1+2
  int xi = 0;
  for (int p = 0; p < layout.pair_count(); ++p) {
    const auto& pi = layout.pair(p);
    REQUIRE(pi.first_type == xi);
    for (int w = 1; w <= pi.max_wait; ++w, ++xi) {
      const auto& t = layout.type(xi);
      REQUIRE(t.specialty == pi.specialty);
      REQUIRE(t.group == pi.group);
      REQUIRE(t.week == w);
      REQUIRE(t.max_wait == pi.max_wait);
      REQUIRE(t.due == (w == pi.max_wait));
      REQUIRE(t.ucoeff == pi.ucoeff);
    }
  }
  REQUIRE(xi == layout.type_count());
}

TEST_CASE("priorities multiply importance, urgency and weeks waited", "[layout]") {
  const Layout layout(testsupport::two_spec_tiny());
  // beta (importance 3) group 1 week 2: 3 * 1 * 2
  const auto& t = layout.type(4);
  REQUIRE(t.specialty == 1);
  REQUIRE_THAT(t.priority, WithinRel(6.0, 1e-15));
  // alpha (importance 1) group 2 week 1: 1 * 2 * 1
  REQUIRE_THAT(layout.type(2).priority, WithinRel(2.0, 1e-15));
}

TEST_CASE("derived caps follow the truncation threshold", "[layout]") {
  const Layout layout(small_2spec());
  REQUIRE(layout.pair_count() == 4);
  REQUIRE(layout.pair(0).cap == 4);
  REQUIRE(layout.pair(1).cap == 3);
  REQUIRE(layout.pair(2).cap == 2);
  REQUIRE(layout.pair(3).cap == 2);
  REQUIRE(layout.enumerable());
  REQUIRE(layout.fits_u64());
  REQUIRE(layout.state_count() == 2'430'000);
}

TEST_CASE("explicit caps win over derived ones", "[layout]") {
  auto cfg = small_2spec();
  cfg.specialties[0].urgency[0].arrival_cap = 7;
  const Layout layout(cfg);
  REQUIRE(layout.pair(0).cap == 7);
  REQUIRE(layout.pair(1).cap == 3);
}

TEST_CASE("untruncated arrivals make the space unbounded", "[layout]") {
  auto cfg = testsupport::two_spec_tiny();
  cfg.truncate_arrivals = false;
  for (auto& sp : cfg.specialties)
    for (auto& ug : sp.urgency) ug.arrival_cap = -1;
  const Layout layout(cfg);
  REQUIRE_FALSE(layout.enumerable());
  REQUIRE(layout.pair(0).cap == -1);
}

TEST_CASE("keys round-trip through encode and decode", "[layout]") {
  const Layout layout(testsupport::two_spec_tiny());
  const auto S = layout.state_count();
  REQUIRE(S == 3ull * 3 * 2 * 2 * 2);
  std::vector<std::uint32_t> n(layout.type_count());
  for (std::uint64_t key = 0; key < S; ++key) {
    layout.decode(key, n);
    for (int xi = 0; xi < layout.type_count(); ++xi)
      REQUIRE(n[xi] <= std::uint32_t(layout.type_cap(xi)));
    REQUIRE(layout.encode(n) == key);
  }
}

TEST_CASE("strides step one unit of each type", "[layout]") {
  const Layout layout(testsupport::two_spec_tiny());
  std::vector<std::uint32_t> zero(layout.type_count(), 0);
  for (int xi = 0; xi < layout.type_count(); ++xi) {
    auto n = zero;
    n[xi] = 1;
    REQUIRE(layout.encode(n) == layout.stride(xi));
  }
}

TEST_CASE("pair means match their truncated distributions", "[layout]") {
  const Layout layout(small_2spec());
  for (int p = 0; p < layout.pair_count(); ++p) {
    const auto& pi = layout.pair(p);
    double mean = 0.0;
    for (std::size_t k = 0; k < pi.pmf.size(); ++k) mean += double(k) * pi.pmf[k];
    REQUIRE_THAT(pi.mean_arrivals, WithinAbs(mean, 1e-12));
    REQUIRE(pi.mean_arrivals < pi.rate);  // truncation trims the upper tail
  }
}

TEST_CASE("huge instances report size without overflowing", "[layout]") {
  const Layout layout(multi_9spec());
  REQUIRE(layout.enumerable());
  REQUIRE_FALSE(layout.fits_u64());
  REQUIRE(layout.log10_state_count() > 150.0);
  REQUIRE(layout.type_count() == 167);
}

TEST_CASE("single-week instance collapses to due types only", "[layout]") {
  const Layout layout(testsupport::toy_anchor_config());
  REQUIRE(layout.type_count() == 1);
  REQUIRE(layout.type(0).due);
  REQUIRE(layout.state_count() == 3);
  REQUIRE_THAT(layout.type(0).priority, WithinRel(6.0, 1e-15));  // 2 * 3 * 1
}
