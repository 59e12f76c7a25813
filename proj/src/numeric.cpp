#include "dilated/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dilated::numeric {

double pairwise_sum(std::span<const double> terms) {
    if (terms.size() <= 4) {
        double s = 0.0;
        for (double t : terms) s += t;
        return s;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

namespace {

double gamma_series(double s, double x) {
    // lower incomplete gamma via series, then complement
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    const double lower = sum * std::exp(-x + s * std::log(x));
    return std::tgamma(s) - lower;
}

double gamma_cf(double s, double x) {
    // Lentz continued fraction for the upper incomplete gamma
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x));
}

}  // namespace

double upper_incomplete_gamma(double s, double x) {
    if (!(s > 0.0) || !(x > 0.0))
        throw std::domain_error("upper_incomplete_gamma: requires s > 0, x > 0");
    return x < s + 1.0 ? gamma_series(s, x) : gamma_cf(s, x);
}

double tail_power_log(double p, double q, double n) {
    if (!(p > 1.0)) throw std::domain_error("tail_power_log: requires p > 1");
    if (q < 0.0) throw std::domain_error("tail_power_log: requires q >= 0");
    // integrand must already be decreasing at n for the integral test
    if (!(n >= 2.0 && p * std::log(n) > q))
        throw std::domain_error("tail_power_log: n too small for integral test");
    const double a = (p - 1.0) * std::log(n);
    if (q == 0.0) return std::exp(-a) / (p - 1.0);
    return upper_incomplete_gamma(q + 1.0, a) / std::pow(p - 1.0, q + 1.0);
}

}  // namespace dilated::numeric
