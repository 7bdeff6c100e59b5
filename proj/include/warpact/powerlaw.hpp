#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include "warpact/errors.hpp"

namespace warpact {

struct PowerLawFit {
  double exponent = 0.0;
  std::size_t kmin = 1;
  double ks = 1.0;  // KS distance between empirical and fitted tail CDFs
  std::size_t tail_size = 0;
};

struct PowerLawOptions {
  // Fixed lower cutoff; when empty the cutoff minimizing the KS distance is used.
  std::optional<std::size_t> kmin;
  std::size_t min_tail = 50;
};

namespace detail {

inline double log_hurwitz_zeta(double s, double q) {
  static const bool quiet = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)quiet;
  gsl_sf_result r;
  if (gsl_sf_hzeta_e(s, q, &r) != GSL_SUCCESS || !(r.val > 0.0)) return -INFINITY;
  return std::log(r.val);
}

struct Tail {
  std::vector<std::pair<std::size_t, std::size_t>> values;  // (k, count), ascending
  std::size_t size = 0;
  double log_sum = 0.0;
};

inline Tail tail_from(const std::map<std::size_t, std::size_t>& counts, std::size_t kmin) {
  Tail t;
  for (auto it = counts.lower_bound(kmin); it != counts.end(); ++it) {
    if (it->second == 0) continue;
    t.values.emplace_back(it->first, it->second);
    t.size += it->second;
    t.log_sum += static_cast<double>(it->second) * std::log(static_cast<double>(it->first));
  }
  return t;
}

// Maximizes the discrete power-law log-likelihood
//   L(g) = -g * sum(ln k) - N * ln zeta(g, kmin).
inline double mle_exponent(const Tail& t, std::size_t kmin) {
  const auto q = static_cast<double>(kmin);
  auto neg_loglik = [&](double g) {
    return g * t.log_sum + static_cast<double>(t.size) * log_hurwitz_zeta(g, q);
  };
  const auto [best, value] = boost::math::tools::brent_find_minima(neg_loglik, 1.0 + 1e-6, 20.0, 48);
  (void)value;
  return best;
}

inline double ks_distance(const Tail& t, std::size_t kmin, double exponent) {
  const double log_norm = log_hurwitz_zeta(exponent, static_cast<double>(kmin));
  auto fitted_cdf = [&](std::size_t k) {  // P(X <= k | X >= kmin)
    return 1.0 - std::exp(log_hurwitz_zeta(exponent, static_cast<double>(k + 1)) - log_norm);
  };
  double worst = 0.0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    const auto [k, c] = t.values[i];
    const double below = static_cast<double>(seen) / static_cast<double>(t.size);
    seen += c;
    const double upto = static_cast<double>(seen) / static_cast<double>(t.size);
    // Just below the jump at k, and at k itself.
    if (k > kmin) worst = std::max(worst, std::abs(below - fitted_cdf(k - 1)));
    worst = std::max(worst, std::abs(upto - fitted_cdf(k)));
  }
  return worst;
}

}  // namespace detail

// Discrete power-law fit p_k ~ k^-g for k >= kmin by maximum likelihood, with
// kmin chosen to minimize the KS distance over candidates leaving at least
// `min_tail` samples. Zero values are ignored.
inline PowerLawFit fit_power_law(const std::map<std::size_t, std::size_t>& counts,
                                 const PowerLawOptions& opt = {}) {
  std::vector<std::size_t> candidates;
  if (opt.kmin) {
    candidates.push_back(std::max<std::size_t>(1, *opt.kmin));
  } else {
    for (const auto& [k, c] : counts)
      if (k >= 1 && c > 0) candidates.push_back(k);
  }
  std::optional<PowerLawFit> best;
  for (std::size_t kmin : candidates) {
    const detail::Tail tail = detail::tail_from(counts, kmin);
    if (tail.size < opt.min_tail || tail.values.size() < 2) continue;
    PowerLawFit fit;
    fit.kmin = kmin;
    fit.tail_size = tail.size;
    fit.exponent = detail::mle_exponent(tail, kmin);
    fit.ks = detail::ks_distance(tail, kmin, fit.exponent);
    if (!best || fit.ks < best->ks) best = fit;
  }
  if (!best)
    throw InsufficientDataError("power-law fit needs at least " + std::to_string(opt.min_tail) +
                                " samples spanning two distinct values above kmin");
  return *best;
}

inline PowerLawFit fit_power_law(const std::vector<std::size_t>& samples, const PowerLawOptions& opt = {}) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t k : samples) ++counts[k];
  return fit_power_law(counts, opt);
}

}  // namespace warpact
