#include "dilated/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace dilated::ntheory {

namespace {
constexpr std::int64_t kMaxLimit = 100'000'000;
}

ArithmeticCache::ArithmeticCache(std::int64_t limit) : limit_(limit) {
    if (limit < 2 || limit > kMaxLimit)
        throw std::invalid_argument("cache limit must be in [2, 1e8], got " +
                                    std::to_string(limit));
    const auto n = static_cast<std::size_t>(limit);
    spf_.assign(n + 1, 0);
    mobius_.assign(n + 1, 0);
    phi_.assign(n + 1, 0);
    mobius_[1] = 1;
    phi_[1] = 1;

    // linear sieve: each composite is struck once by its smallest prime
    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(static_cast<double>(n) / std::log(std::max<double>(n, 4)) * 1.2) + 16);
    for (std::size_t i = 2; i <= n; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            mobius_[i] = -1;
            phi_[i] = static_cast<std::uint32_t>(i - 1);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf_[i] || i * p > n) break;
            const std::size_t ip = i * p;
            spf_[ip] = p;
            if (i % p == 0) {
                mobius_[ip] = 0;
                phi_[ip] = phi_[i] * p;
            } else {
                mobius_[ip] = static_cast<std::int8_t>(-mobius_[i]);
                phi_[ip] = phi_[i] * (p - 1);
            }
        }
    }
}

void ArithmeticCache::check(std::int64_t n) const {
    if (n < 1 || n > limit_)
        throw std::out_of_range("query " + std::to_string(n) + " outside cache range [1, " +
                                std::to_string(limit_) + "]");
}

std::int64_t ArithmeticCache::smallest_prime_factor(std::int64_t n) const {
    check(n);
    if (n == 1) throw std::out_of_range("smallest_prime_factor requires n >= 2");
    return spf_[static_cast<std::size_t>(n)];
}

bool ArithmeticCache::is_prime(std::int64_t n) const {
    check(n);
    return n >= 2 && spf_[static_cast<std::size_t>(n)] == static_cast<std::uint64_t>(n);
}

int ArithmeticCache::mobius(std::int64_t n) const {
    check(n);
    return mobius_[static_cast<std::size_t>(n)];
}

std::int64_t ArithmeticCache::totient(std::int64_t n) const {
    check(n);
    return phi_[static_cast<std::size_t>(n)];
}

std::vector<std::pair<std::int64_t, int>> ArithmeticCache::factorize(std::int64_t n) const {
    check(n);
    std::vector<std::pair<std::int64_t, int>> out;
    while (n > 1) {
        const std::int64_t p = spf_[static_cast<std::size_t>(n)];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n, const ArithmeticCache& cache) {
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : cache.factorize(n)) {
        const std::size_t sz = out.size();
        std::int64_t pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t divisor_count(std::int64_t n, const ArithmeticCache& cache) {
    std::int64_t d = 1;
    for (const auto& [p, e] : cache.factorize(n)) d *= e + 1;
    return d;
}

double sigma_alpha(std::int64_t n, double alpha, const ArithmeticCache& cache) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("sigma_alpha: alpha must be finite");
    double result = 1.0;
    for (const auto& [p, e] : cache.factorize(n)) {
        double term = 1.0;
        double pa = std::pow(static_cast<double>(p), alpha);
        double acc = 1.0;
        for (int i = 1; i <= e; ++i) {
            acc *= pa;
            term += acc;
        }
        result *= term;
    }
    return result;
}

double jordan_totient(std::int64_t n, double eps, const ArithmeticCache& cache) {
    if (!(eps > 0.0)) throw std::domain_error("jordan_totient: eps must be > 0");
    // multiplicative: J_eps(p^e) = p^{e eps} - p^{(e-1) eps}
    double result = 1.0;
    for (const auto& [p, e] : cache.factorize(n)) {
        const double pe = std::pow(static_cast<double>(p), eps);
        double top = 1.0;
        for (int i = 1; i < e; ++i) top *= pe;
        result *= top * (pe - 1.0);
    }
    return result;
}

double pillai_mean(std::int64_t n, const ArithmeticCache& cache) {
    // multiplicative: A(p^e) = 1 + e (p-1)/p
    double result = 1.0;
    for (const auto& [p, e] : cache.factorize(n))
        result *= 1.0 + static_cast<double>(e) * (static_cast<double>(p - 1) / static_cast<double>(p));
    return result;
}

std::int64_t erdos_hooley_delta(std::int64_t n, const ArithmeticCache& cache) {
    const auto divs = divisors(n, cache);
    const double e = std::exp(1.0);
    std::int64_t best = 1;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < divs.size(); ++lo) {
        if (hi < lo) hi = lo;
        const double edge = e * static_cast<double>(divs[lo]);
        while (hi + 1 < divs.size() && static_cast<double>(divs[hi + 1]) <= edge) ++hi;
        best = std::max(best, static_cast<std::int64_t>(hi - lo + 1));
    }
    return best;
}

double zeta(double s) {
    if (!(s > 1.0)) throw std::domain_error("zeta: requires s > 1");
    static std::map<double, double> memo;
    static std::mutex memo_mutex;
    {
        std::scoped_lock lock(memo_mutex);
        if (auto it = memo.find(s); it != memo.end()) return it->second;
    }
    constexpr std::int64_t kCut = 1'000'000;
    double sum = 0.0;
    for (std::int64_t n = kCut; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    const double N = static_cast<double>(kCut);
    // Euler-Maclaurin: tail integral, half the boundary term, B2 correction
    sum += std::pow(N, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(N, -s) +
           s * std::pow(N, -s - 1.0) / 12.0;
    std::scoped_lock lock(memo_mutex);
    memo.emplace(s, sum);
    return sum;
}

}  // namespace dilated::ntheory
