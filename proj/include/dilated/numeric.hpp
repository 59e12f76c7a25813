#pragma once

#include <cstddef>
#include <span>

namespace dilated::numeric {

// Deterministic pairwise tree reduction; the result depends only on the
// order of terms, never on chunking.
double pairwise_sum(std::span<const double> terms);

// Upper incomplete gamma Gamma(s, x) for s > 0, x > 0. Series for x < s+1,
// Lentz continued fraction otherwise. Used for integral-test tail bounds of
// sums k^{-p} (log k)^q.
double upper_incomplete_gamma(double s, double x);

// Closed-form overestimate of sum_{k > n} k^{-p} (log k)^q for p > 1, q >= 0:
// the integral substitution u = log x gives Gamma(q+1, (p-1) log n)/(p-1)^{q+1}.
double tail_power_log(double p, double q, double n);

}  // namespace dilated::numeric
