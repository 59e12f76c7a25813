#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dilated::ntheory {

// Sieve-backed tables for the multiplicative machinery. Immutable after
// construction; queries above limit() throw std::out_of_range instead of
// re-sieving. Practical ceiling is memory-bound (~9 bytes per integer);
// limits up to 10^8 are accepted, >= 10^7 is routinely exercised.
class ArithmeticCache {
public:
    explicit ArithmeticCache(std::int64_t limit);

    std::int64_t limit() const { return limit_; }

    // smallest prime factor, n >= 2
    std::int64_t smallest_prime_factor(std::int64_t n) const;
    bool is_prime(std::int64_t n) const;

    int mobius(std::int64_t n) const;            // mu(n) in {-1,0,1}
    std::int64_t totient(std::int64_t n) const;  // Euler phi

    // distinct (prime, exponent) pairs of n, increasing primes
    std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) const;

private:
    void check(std::int64_t n) const;

    std::int64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int8_t> mobius_;
    std::vector<std::uint32_t> phi_;
};

// divisors of n in increasing order; divisors(1) = {1}
std::vector<std::int64_t> divisors(std::int64_t n, const ArithmeticCache& cache);

std::int64_t divisor_count(std::int64_t n, const ArithmeticCache& cache);

// sigma_alpha(n) = sum over d|n of d^alpha
double sigma_alpha(std::int64_t n, double alpha, const ArithmeticCache& cache);

// generalized Jordan totient J_eps = (. ^ eps) * mu, eps > 0
double jordan_totient(std::int64_t n, double eps, const ArithmeticCache& cache);

// A(n) = P(n)/n = sum over d|n of phi(d)/d, the mean of gcd(1,n)..gcd(n,n)
double pillai_mean(std::int64_t n, const ArithmeticCache& cache);

// Delta(n) = max over x>0 of #{d|n : x < d <= e*x}; the sup is attained with
// the window anchored just below a divisor, so we scan each divisor as the
// left edge of a ratio-e window.
std::int64_t erdos_hooley_delta(std::int64_t n, const ArithmeticCache& cache);

// Riemann zeta for s > 1: partial sum to 10^6 plus Euler-Maclaurin
// correction through the B2 term. The first omitted term is
// s(s+1)(s+2) N^{-s-3}/720 < 1e-18 at N = 10^6, so the result is accurate
// to ~1e-12 even for s close to 1.
double zeta(double s);

}  // namespace dilated::ntheory
