#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oradmit {

// Raw Poisson pmf, computed in log space so large k stays accurate.
inline double poisson_pmf_raw(double rate, int k) {
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw std::domain_error("poisson rate must be finite and non-negative");
  if (k < 0) return 0.0;
  if (rate == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-rate + k * std::log(rate) - std::lgamma(k + 1.0));
}

// Largest count whose raw pmf still reaches the threshold; the truncated
// arrival model keeps counts 0..cap and drops the tail. Rare types (or a
// rate of zero) collapse to cap 0.
inline int support_cap(double rate, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::domain_error("truncation threshold must lie in (0, 1)");
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw std::domain_error("poisson rate must be finite and non-negative");
  if (rate == 0.0) return 0;
  int cap = 0;
  // pmf is unimodal: rises to the mode, then decays. Scan past the mode until
  // the pmf has fallen below threshold.
  const int mode = static_cast<int>(rate);
  for (int k = 0;; ++k) {
    if (poisson_pmf_raw(rate, k) >= threshold) cap = k;
    else if (k > mode) break;
    if (k > mode + 10000) break;  // threshold below representable pmf
  }
  return cap;
}

// Renormalized pmf over the kept support {0..cap}; zero beyond the cap.
inline double truncated_poisson_pmf(double rate, int k, int cap) {
  if (cap < 0) throw std::domain_error("truncation cap must be non-negative");
  if (k < 0 || k > cap) return 0.0;
  double sum = 0.0;
  for (int i = 0; i <= cap; ++i) sum += poisson_pmf_raw(rate, i);
  return poisson_pmf_raw(rate, k) / sum;
}

// Whole renormalized pmf vector at once (the per-k entry point above is for
// spot checks; tables should be built with this).
inline std::vector<double> truncated_poisson_table(double rate, int cap) {
  if (cap < 0) throw std::domain_error("truncation cap must be non-negative");
  std::vector<double> pmf(cap + 1);
  double sum = 0.0;
  for (int k = 0; k <= cap; ++k) sum += (pmf[k] = poisson_pmf_raw(rate, k));
  for (auto& p : pmf) p /= sum;
  return pmf;
}

}  // namespace oradmit
