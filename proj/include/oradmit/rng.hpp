#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace oradmit {

// Counter-style random streams. Every consumer derives its own stream from
// (master seed, purpose tag, indices...), so adding a policy or raising the
// scenario count never shifts anybody else's draws, and parallel evaluation
// stays reproducible without locks.
//
// The generator is the splitmix64 chain, which is cheap to seed (unlike the
// mersenne twister, whose table init would dominate when streams are created
// per scenario).

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

// Stream purposes. Values are part of the reproducibility contract: changing
// them changes every seeded experiment.
enum class StreamPurpose : std::uint64_t {
  arrivals = 1,        // weekly arrival vectors, shared across policies
  scenario_costs = 2,  // duration/stay draws for hospital-cost sampling
  learner_actions = 3, // per-candidate-action arrival samples inside trajectories
  instance_gen = 4,    // test-side random instance generation
};

// Mixes the master seed with an arbitrary key tuple into one 64-bit seed.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = master;
  detail::splitmix64(s);
  for (std::uint64_t k : keys) {
    s ^= k + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
    detail::splitmix64(s);
  }
  return s;
}

class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : state_(seed) {}
  RngStream(std::uint64_t master, StreamPurpose purpose,
            std::initializer_list<std::uint64_t> keys)
      : state_(derive_seed(master ^ (static_cast<std::uint64_t>(purpose) << 56),
                           keys)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return detail::splitmix64(state_); }

  std::uint64_t next_u64() { return detail::splitmix64(state_); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; hand-rolled so draws are identical across
  // standard library implementations.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Index into a discrete distribution given its pmf (assumed to sum to 1).
  std::uint32_t next_index(const std::vector<double>& pmf) {
    const double u = next_double();
    double acc = 0.0;
    for (std::uint32_t k = 0; k + 1 < pmf.size(); ++k) {
      acc += pmf[k];
      if (u < acc) return k;
    }
    return pmf.empty() ? 0u : static_cast<std::uint32_t>(pmf.size() - 1);
  }

  // Unbounded Poisson draw (used only when arrival truncation is disabled).
  // Knuth's product method below rate 30, normal approximation above; both
  // depend only on this stream.
  std::uint32_t next_poisson(double rate) {
    if (rate <= 0.0) return 0;
    if (rate < 30.0) {
      const double limit = std::exp(-rate);
      double prod = 1.0;
      std::uint32_t k = 0;
      do {
        prod *= next_double();
        ++k;
      } while (prod > limit);
      return k - 1;
    }
    const double x = rate + std::sqrt(rate) * next_normal();
    return x < 0.0 ? 0u : static_cast<std::uint32_t>(x + 0.5);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace oradmit
