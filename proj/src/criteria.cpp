#include "dilated/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "dilated/numeric.hpp"

namespace dilated::criteria {

namespace {

constexpr double kDivisorBoundConstant = 1.066;  // d(n) <= n^{1.066/lnln n}, n >= 3

// convergence rule and tail overestimates for sums k^{-p} (log k)^q
bool pl_converges(double p, double q) { return p > 1.0 || (p == 1.0 && q < -1.0); }

std::optional<double> pl_tail(double p, double q, double w) {
    try {
        if (p > 1.0) {
            if (q <= 0.0) return std::pow(std::log(w), q) * std::pow(w, 1.0 - p) / (p - 1.0);
            return numeric::tail_power_log(p, q, w);
        }
        if (p == 1.0 && q < -1.0) return std::pow(std::log(w), q + 1.0) / (-q - 1.0);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return std::nullopt;
}

std::int64_t effective_window(const CoeffFamily& c, std::int64_t window) {
    if (window < 1) throw std::invalid_argument("criterion window must be >= 1");
    if (c.kind() == CoeffFamily::Kind::Explicit)
        return std::min<std::int64_t>(window, static_cast<std::int64_t>(c.values().size()));
    return window;
}

template <typename WeightFn>
double weighted_partial(const CoeffFamily& c, std::int64_t w, WeightFn&& weight) {
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(w));
    for (std::int64_t k = 1; k <= w; ++k) {
        const double ck = c.value(k);
        if (ck == 0.0) continue;
        terms.push_back(ck * ck * weight(k));
    }
    return numeric::pairwise_sum(terms);
}

template <typename WeightFn>
std::vector<std::pair<std::int64_t, double>> sample_weights(std::int64_t w, WeightFn&& weight) {
    std::vector<std::pair<std::int64_t, double>> out;
    for (std::int64_t k : {10, 100, 1000})
        if (k <= w) out.emplace_back(k, weight(k));
    return out;
}

// sum_{r > R} (r+1)^m x^r for 0 < x < 1: summed until the geometric
// majorant takes over, then closed off with it
double poly_geom_tail(double m, double x, std::int64_t R) {
    if (!(x > 0.0 && x < 1.0)) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::int64_t r = R + 1; r < R + 4000; ++r) {
        const double term = std::pow(static_cast<double>(r + 1), m) * std::pow(x, static_cast<double>(r));
        const double growth = x * std::pow(1.0 + 1.0 / static_cast<double>(r + 1), m);
        if (growth < 0.9) {
            sum += term / (1.0 - growth);
            return sum;
        }
        sum += term;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "converges";
        case Verdict::Diverges: return "diverges";
        case Verdict::Undecided: return "undecided";
    }
    return "?";
}

double safe_log(double k) { return std::max(1.0, std::log(k)); }

double safe_loglog(double k) { return std::log(std::log(std::max(k, 16.0))); }

double divisor_bound_exponent(double n) {
    if (!(n >= 16.0)) throw std::domain_error("divisor_bound_exponent: requires n >= 16");
    return kDivisorBoundConstant / std::log(std::log(n));
}

CoeffFamily CoeffFamily::power(double a) {
    CoeffFamily f;
    f.kind_ = Kind::Power;
    f.a_ = a;
    return f;
}

CoeffFamily CoeffFamily::power_log(double a, double b) {
    CoeffFamily f;
    f.kind_ = Kind::PowerLog;
    f.a_ = a;
    f.b_ = b;
    return f;
}

CoeffFamily CoeffFamily::explicit_vec(std::vector<double> values) {
    CoeffFamily f;
    f.kind_ = Kind::Explicit;
    f.values_ = std::move(values);
    return f;
}

CoeffFamily CoeffFamily::parse(std::string_view text) {
    const std::string s(text);
    double a = 0.0, b = 0.0;
    int consumed = 0;
    if (std::sscanf(s.c_str(), " power ( %lf ) %n", &a, &consumed) == 1 &&
        consumed == static_cast<int>(s.size()))
        return power(a);
    if (std::sscanf(s.c_str(), " power_log ( %lf , %lf ) %n", &a, &b, &consumed) == 2 &&
        consumed == static_cast<int>(s.size()))
        return power_log(a, b);
    if (s.rfind("list(", 0) == 0 && s.back() == ')') {
        std::vector<double> vals;
        std::stringstream ss(s.substr(5, s.size() - 6));
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            vals.push_back(std::stod(item, &used));
        }
        if (vals.empty()) throw std::invalid_argument("coefficient list is empty");
        return explicit_vec(std::move(vals));
    }
    throw std::invalid_argument("unknown coefficient family '" + s +
                                "' (expected power(a) | power_log(a,b) | list(...))");
}

double CoeffFamily::value(std::int64_t k) const {
    if (k < 1) throw std::invalid_argument("coefficient index must be >= 1");
    const double kd = static_cast<double>(k);
    switch (kind_) {
        case Kind::Power: return std::pow(kd, -a_);
        case Kind::PowerLog: return std::pow(kd, -a_) * std::pow(safe_log(kd), -b_);
        case Kind::Explicit:
            return k <= static_cast<std::int64_t>(values_.size()) ? values_[k - 1] : 0.0;
    }
    return 0.0;
}

std::string CoeffFamily::label() const {
    char buf[64];
    switch (kind_) {
        case Kind::Power:
            std::snprintf(buf, sizeof buf, "power(%g)", a_);
            return buf;
        case Kind::PowerLog:
            std::snprintf(buf, sizeof buf, "power_log(%g;%g)", a_, b_);
            return buf;
        case Kind::Explicit:
            std::snprintf(buf, sizeof buf, "list(n=%zu)", values_.size());
            return buf;
    }
    return "?";
}

CriterionReport rademacher_menshov(const CoeffFamily& c, std::int64_t window) {
    const std::int64_t w = effective_window(c, window);
    auto weight = [](std::int64_t k) {
        const double l = safe_log(static_cast<double>(k));
        return l * l;
    };
    CriterionReport rep;
    rep.criterion = "rademacher_menshov";
    rep.family = c.label();
    rep.window = w;
    rep.partial_sum = weighted_partial(c, w, weight);
    rep.weight_samples = sample_weights(w, weight);
    if (c.analytic()) {
        const double p = 2.0 * c.a(), q = 2.0 - 2.0 * c.b();
        if (pl_converges(p, q)) {
            rep.tail_bound = pl_tail(p, q, static_cast<double>(w));
            rep.verdict = rep.tail_bound ? Verdict::Converges : Verdict::Undecided;
        } else {
            rep.verdict = Verdict::Diverges;
            rep.note = "integral-test minorant";
        }
    }
    return rep;
}

CriterionReport tandori(const CoeffFamily& c, double h, std::int64_t window) {
    if (!(h >= 0.0 && h < 1.0)) throw std::domain_error("tandori: requires 0 <= h < 1");
    const std::int64_t w = effective_window(c, window);
    auto weight = [&](std::int64_t k) {
        const double ck = std::abs(c.value(k));
        if (ck == 0.0) return 0.0;
        const double logc = std::max(0.0, std::log(1.0 / ck));
        return std::pow(logc, 1.0 + h) * std::pow(safe_log(static_cast<double>(k)), 1.0 - h);
    };
    CriterionReport rep;
    rep.criterion = "tandori";
    rep.family = c.label();
    rep.window = w;
    rep.partial_sum = weighted_partial(c, w, weight);
    rep.weight_samples = sample_weights(w, weight);
    if (c.analytic()) {
        // log(1/c_k) <= (a + max(b,0)) log k for k >= 16, so the tail is a
        // constant times the log^2-weight tail
        const double p = 2.0 * c.a(), q = -2.0 * c.b() + 2.0;
        if (pl_converges(p, q)) {
            const double factor = std::pow(c.a() + std::max(c.b(), 0.0), 1.0 + h);
            if (auto t = pl_tail(p, q, static_cast<double>(w))) {
                rep.tail_bound = factor * *t;
                rep.verdict = Verdict::Converges;
            }
        } else {
            rep.verdict = Verdict::Diverges;
            rep.note = "polylog comparison minorant";
        }
    }
    return rep;
}

double PhiPreset::value(std::int64_t k) const {
    const double kd = static_cast<double>(k);
    switch (kind) {
        case Kind::LogLoglog:
            return safe_log(kd) * std::pow(safe_loglog(kd), 1.0 + eps);
        case Kind::SubexpGap: {
            const double alpha = 2.0 * (1.0 - s);
            auto g = [&](double x) {
                return std::pow(safe_log(x), alpha) / safe_loglog(x);
            };
            // running max of g: g rises to k = 16, dips, and recovers only
            // far out; freezing at g(16) keeps the preset nondecreasing
            const double gk = kd <= 16.0 ? g(kd) : std::max(g(16.0), g(kd));
            return std::exp(eps * gk / (2.0 * (1.0 - s)));
        }
        case Kind::One:
            return 1.0;
    }
    return 1.0;
}

std::string PhiPreset::label() const {
    switch (kind) {
        case Kind::LogLoglog: return "logloglog";
        case Kind::SubexpGap: return "subexp_gap";
        case Kind::One: return "one";
    }
    return "?";
}

namespace {

// tail of sum 1/(k phi(k)) for the SubexpGap preset: a doubling ladder in
// u = log x with the step minorant of the exponent on each rung
double subexp_inverse_tail(double eps, double s, double w) {
    const double alpha = 2.0 * (1.0 - s);
    const double scale = eps / (2.0 * (1.0 - s));
    auto g = [&](double u) { return std::pow(u, alpha) / std::log(std::max(u, 2.8)); };
    const double g16 = g(std::log(16.0));
    double u = std::log(w);
    double sum = 0.0;
    for (int i = 0; i < 400; ++i) {
        const double next = 2.0 * u;
        // rung minorant of g on [u, 2u): left-edge numerator over right-edge
        // denominator (g itself is not monotone there)
        const double gmin = std::max(g16, std::pow(u, alpha) / std::log(next));
        const double term = (next - u) * std::exp(-scale * gmin);
        sum += term;
        if (term < 1e-18 * std::max(sum, 1.0) && i > 4) return sum;
        u = next;
        if (!std::isfinite(sum)) break;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

TwoSeriesReport two_series_criterion(const CoeffFamily& c, double s, const PhiPreset& phi,
                                     const ntheory::ArithmeticCache& cache,
                                     std::int64_t window) {
    if (!(s > 0.5 && s <= 1.0))
        throw std::domain_error("two_series_criterion: requires 1/2 < s <= 1");
    const std::int64_t w = std::min(effective_window(c, window), cache.limit());

    // validate positivity and monotonicity of phi on the window
    double prev = phi.value(1);
    if (!(prev > 0.0)) throw std::invalid_argument("phi must be positive");
    for (std::int64_t k = 2; k <= w; ++k) {
        const double v = phi.value(k);
        if (!(v > 0.0) || v < prev * (1.0 - 1e-12))
            throw std::invalid_argument("phi must be positive and nondecreasing on the window");
        prev = v;
    }

    TwoSeriesReport out;
    const double wd = static_cast<double>(w);

    {
        CriterionReport& rep = out.inverse_sum;
        rep.criterion = "two_series/inverse";
        rep.family = phi.label();
        rep.window = w;
        std::vector<double> terms;
        terms.reserve(static_cast<std::size_t>(w));
        for (std::int64_t k = 1; k <= w; ++k)
            terms.push_back(1.0 / (static_cast<double>(k) * phi.value(k)));
        rep.partial_sum = numeric::pairwise_sum(terms);
        switch (phi.kind) {
            case PhiPreset::Kind::LogLoglog:
                rep.tail_bound = std::pow(safe_loglog(wd), -phi.eps) / phi.eps;
                rep.verdict = Verdict::Converges;
                break;
            case PhiPreset::Kind::SubexpGap: {
                const double t = subexp_inverse_tail(phi.eps, phi.s, wd);
                if (std::isfinite(t) && t < 1e6) {
                    rep.tail_bound = t;
                    rep.verdict = Verdict::Converges;
                    rep.note = "ladder tail bound; slack grows as s approaches 1";
                }
                break;
            }
            case PhiPreset::Kind::One:
                rep.verdict = Verdict::Diverges;
                rep.note = "harmonic series";
                break;
        }
    }

    {
        CriterionReport& rep = out.weighted_sum;
        rep.criterion = "two_series/weighted";
        rep.family = c.label();
        rep.window = w;
        auto weight = [&](std::int64_t k) {
            const double l = safe_log(static_cast<double>(k));
            return phi.value(k) * l * l * ntheory::sigma_alpha(k, 1.0 - 2.0 * s, cache);
        };
        rep.partial_sum = weighted_partial(c, w, weight);
        rep.weight_samples = sample_weights(w, weight);
        if (c.analytic()) {
            const double delta = divisor_bound_exponent(wd);
            // phi envelopes in log exponents: upper used with sigma <= d <= k^delta
            double phi_qup = 0.0, phi_qlow = 0.0, phi_pup = 0.0;
            bool decidable = true;
            switch (phi.kind) {
                case PhiPreset::Kind::LogLoglog:
                    phi_qup = 2.0 + phi.eps;  // log k (loglog k)^{1+eps} <= (log k)^{2+eps}
                    phi_qlow = 1.0;
                    break;
                case PhiPreset::Kind::SubexpGap:
                    // (log k)^{2-2s}/loglog k <= log k (log w)^{1-2s}/loglog w for k >= w
                    phi_pup = phi.eps * std::pow(std::log(wd), 1.0 - 2.0 * s) /
                              (2.0 * (1.0 - s) * safe_loglog(wd));
                    phi_qlow = 0.0;
                    break;
                case PhiPreset::Kind::One:
                    break;
                default:
                    decidable = false;
            }
            double phi_const = 1.0;  // max(g16, g) <= g16 + g costs a constant factor
            if (phi.kind == PhiPreset::Kind::SubexpGap) {
                const double alpha = 2.0 * (1.0 - s);
                const double g16 = std::pow(std::log(16.0), alpha) / safe_loglog(16.0);
                phi_const = std::exp(phi.eps * g16 / (2.0 * (1.0 - s)));
            }
            const double p_up = 2.0 * c.a() - delta - phi_pup;
            const double q_up = -2.0 * c.b() + 2.0 + phi_qup;
            const double p_low = 2.0 * c.a();
            const double q_low = -2.0 * c.b() + 2.0 + phi_qlow;
            if (decidable && pl_converges(p_up, q_up)) {
                if (auto t = pl_tail(p_up, q_up, wd)) {
                    rep.tail_bound = phi_const * *t;
                    rep.verdict = Verdict::Converges;
                    rep.note = "divisor-bound tail";
                }
            } else if (decidable && !pl_converges(p_low, q_low)) {
                rep.verdict = Verdict::Diverges;
                rep.note = "sigma >= 1 minorant";
            }
        }
    }

    if (out.inverse_sum.verdict == Verdict::Converges &&
        out.weighted_sum.verdict == Verdict::Converges)
        out.combined = Verdict::Converges;
    else if (out.inverse_sum.verdict == Verdict::Diverges ||
             out.weighted_sum.verdict == Verdict::Diverges)
        out.combined = Verdict::Diverges;
    return out;
}

CriterionReport dyadic_divisor_condition(const CoeffFamily& c,
                                         const ntheory::ArithmeticCache& cache,
                                         std::int64_t window) {
    const std::int64_t w = std::min(effective_window(c, window), cache.limit());
    CriterionReport rep;
    rep.criterion = "dyadic_divisor";
    rep.family = c.label();
    rep.window = w;

    // head term j = 1 (outside every dyadic block), then one term per block
    std::vector<double> block_terms;
    {
        const double c1 = c.value(1);
        block_terms.push_back(c1 * c1);
    }
    for (int r = 0; (std::int64_t{1} << r) < w; ++r) {
        const std::int64_t lo = (std::int64_t{1} << r) + 1;  // block r: (2^r, 2^{r+1}]
        const std::int64_t hi = std::min(w, std::int64_t{1} << (r + 1));
        std::vector<double> inner;
        for (std::int64_t j = lo; j <= hi; ++j) {
            const double cj = c.value(j);
            if (cj == 0.0) continue;
            const double l = safe_log(static_cast<double>(j));
            inner.push_back(cj * cj * static_cast<double>(ntheory::divisor_count(j, cache)) * l *
                            l);
        }
        block_terms.push_back(std::sqrt(numeric::pairwise_sum(inner)));
    }
    rep.partial_sum = numeric::pairwise_sum(block_terms);

    if (c.analytic()) {
        const double a = c.a(), b = c.b();
        const double wd = static_cast<double>(w);
        const double delta = divisor_bound_exponent(wd);
        const double x = std::pow(2.0, (1.0 - 2.0 * a + delta) / 2.0);
        if (x < 1.0) {
            // block r: count 2^r, c^2 <= 2^{-2ar} (log j)^{-2b}, d <= 2^{(r+1)delta},
            // log^2 j <= ((r+1) log 2)^2, and (log j)^{-b} folds into the
            // (r+1)-polynomial with a (log 2)^{-b} constant
            const std::int64_t R =
                static_cast<std::int64_t>(std::floor(std::log2(wd))) - 1;
            const double m = 1.0 + std::max(0.0, -b);
            const double tail = std::log(2.0) * std::pow(2.0, delta / 2.0) *
                                std::pow(std::log(2.0), -b) * poly_geom_tail(m, x, R);
            if (std::isfinite(tail)) {
                rep.tail_bound = tail;
                rep.verdict = Verdict::Converges;
                rep.note = "divisor-bound block tail";
            }
        } else if (a < 0.5 || (a == 0.5 && b <= 2.0)) {
            rep.verdict = Verdict::Diverges;
            rep.note = "block terms bounded below (d >= 2 on each block)";
        }
    }
    return rep;
}

CriterionReport divisor_growth_condition(const CoeffFamily& c, std::int64_t window) {
    const std::int64_t w = effective_window(c, window);
    auto weight = [](std::int64_t k) {
        if (k < 3) return 1.0;
        const double kd = static_cast<double>(k);
        return std::exp(2.0 * std::log(kd) / safe_loglog(kd));
    };
    CriterionReport rep;
    rep.criterion = "divisor_growth";
    rep.family = c.label();
    rep.window = w;
    rep.partial_sum = weighted_partial(c, w, weight);
    rep.weight_samples = sample_weights(w, weight);
    if (c.analytic()) {
        const double wd = static_cast<double>(w);
        const double p = 2.0 * c.a() - 2.0 / safe_loglog(wd);
        const double q = -2.0 * c.b();
        if (pl_converges(p, q)) {
            if (auto t = pl_tail(p, q, wd)) {
                rep.tail_bound = t;
                rep.verdict = Verdict::Converges;
                rep.note = "weight <= k^{2/loglog w} beyond the window";
            }
        } else if (2.0 * c.a() <= 1.0) {
            rep.verdict = Verdict::Diverges;
            rep.note = "weight outgrows every power of log";
        } else {
            rep.note = "window too small for the exponent comparison";
        }
    }
    return rep;
}

std::string_view divisor_mode_name(DivisorMode mode) {
    switch (mode) {
        case DivisorMode::PillaiMean: return "pillai_mean";
        case DivisorMode::DivisorCount: return "divisor_count";
        case DivisorMode::SigmaPower: return "sigma_power";
    }
    return "?";
}

CriterionReport divisor_criterion(const CoeffFamily& c, const seq::IndexSet& K, DivisorMode mode,
                                  double s, const ntheory::ArithmeticCache& cache,
                                  std::int64_t window) {
    if (mode == DivisorMode::SigmaPower && !(s > 0.5))
        throw std::domain_error("divisor_criterion: sigma mode requires s > 1/2");
    std::int64_t w = std::min(effective_window(c, window),
                              static_cast<std::int64_t>(K.size()));
    if (K.k_plus() > cache.limit())
        throw std::out_of_range("divisor_criterion: index exceeds cache limit");

    auto arith_weight = [&](std::int64_t k) {
        switch (mode) {
            case DivisorMode::PillaiMean: return ntheory::pillai_mean(k, cache);
            case DivisorMode::DivisorCount:
                return static_cast<double>(ntheory::divisor_count(k, cache));
            case DivisorMode::SigmaPower: return ntheory::sigma_alpha(k, 1.0 - 2.0 * s, cache);
        }
        return 1.0;
    };

    CriterionReport rep;
    rep.criterion = std::string("divisor/") + std::string(divisor_mode_name(mode));
    rep.family = c.label();
    rep.window = w;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(w));
    for (std::int64_t n = 1; n <= w; ++n) {
        const double cn = c.value(n);
        if (cn == 0.0) continue;
        const double ln = std::log(static_cast<double>(n));  // raw log: the n = 1 term vanishes
        terms.push_back(cn * cn * arith_weight(K.elements()[n - 1]) * ln * ln);
    }
    rep.partial_sum = numeric::pairwise_sum(terms);
    for (std::int64_t n : {10, 100, 1000})
        if (n <= w)
            rep.weight_samples.emplace_back(n, arith_weight(K.elements()[n - 1]));

    const bool identity_window = K.elements().front() == 1 && K.elements()[w - 1] == w;
    if (c.analytic() && identity_window) {
        const double wd = static_cast<double>(w);
        const double delta = divisor_bound_exponent(wd);
        const double p = 2.0 * c.a() - delta, q = -2.0 * c.b() + 2.0;
        if (pl_converges(p, q)) {
            if (auto t = pl_tail(p, q, wd)) {
                rep.tail_bound = t;
                rep.verdict = Verdict::Converges;
                rep.note = "weights <= d(n) <= n^delta";
            }
        } else if (!pl_converges(2.0 * c.a(), -2.0 * c.b() + 2.0)) {
            rep.verdict = Verdict::Diverges;
            rep.note = "weights >= 1 minorant";
        }
    } else if (!identity_window) {
        rep.note = "verdicts attach only to the identity window k_n = n";
    }
    return rep;
}

CriterionReport hooley_condition(const series::FourierProfile& profile,
                                 const ntheory::ArithmeticCache& cache,
                                 std::int64_t window) {
    CriterionReport rep;
    rep.criterion = "hooley";
    rep.family = profile.is_explicit() ? "explicit" : "power_law";
    const auto& coeffs = profile.coefficients();
    std::vector<double> terms;
    std::int64_t w = 0;
    for (const auto& [nu, av] : coeffs) {
        if (nu > window || nu > cache.limit()) break;
        terms.push_back(av * av * static_cast<double>(ntheory::erdos_hooley_delta(nu, cache)));
        w = nu;
    }
    rep.window = w;
    rep.partial_sum = numeric::pairwise_sum(terms);
    if (profile.kind() == series::FourierProfile::Kind::PowerLawSine && w >= 16) {
        const double s2 = 2.0 * profile.exponent();
        const double delta = divisor_bound_exponent(static_cast<double>(w));
        if (s2 - delta > 1.0) {
            rep.tail_bound = pl_tail(s2 - delta, 0.0, static_cast<double>(w));
            rep.verdict = rep.tail_bound ? Verdict::Converges : Verdict::Undecided;
            rep.note = "Delta <= d <= nu^delta tail";
        } else {
            rep.note = "window too small for the divisor-bound comparison";
        }
    } else if (profile.is_explicit()) {
        rep.note = "finite window stand-in; no verdict";
    }
    return rep;
}

CriterionReport hooley_relaxed_condition(const series::FourierProfile& profile, double con,
                                         std::int64_t window) {
    if (!(con > 0.0)) throw std::domain_error("hooley_relaxed_condition: requires c > 0");
    CriterionReport rep;
    rep.criterion = "hooley_relaxed";
    rep.family = profile.is_explicit() ? "explicit" : "power_law";
    auto weight = [&](std::int64_t nu) {
        if (nu < 16) return 1.0;
        const double ll = safe_loglog(static_cast<double>(nu));
        const double lll = std::log(ll);
        return std::exp(con * std::sqrt(ll * std::max(lll, 1e-12)));
    };
    std::vector<double> terms;
    std::int64_t w = 0;
    for (const auto& [nu, av] : profile.coefficients()) {
        if (nu > window) break;
        terms.push_back(av * av * weight(nu));
        w = nu;
    }
    rep.window = w;
    rep.partial_sum = numeric::pairwise_sum(terms);
    if (profile.kind() == series::FourierProfile::Kind::PowerLawSine && w >= 16) {
        const double wd = static_cast<double>(w);
        const double s2 = 2.0 * profile.exponent();
        const double theta =
            con * std::sqrt(safe_loglog(wd) * std::log(safe_loglog(wd))) / std::log(wd);
        if (s2 - theta > 1.0) {
            rep.tail_bound = pl_tail(s2 - theta, 0.0, wd);
            rep.verdict = rep.tail_bound ? Verdict::Converges : Verdict::Undecided;
        }
    }
    return rep;
}

EpsFamily EpsFamily::power(double beta) {
    if (beta < 0.0) throw std::invalid_argument("eps power family must be nonincreasing");
    EpsFamily e;
    e.kind_ = Kind::Power;
    e.beta_ = beta;
    return e;
}

EpsFamily EpsFamily::geometric(double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("eps geometric family requires 0 < rho < 1");
    EpsFamily e;
    e.kind_ = Kind::Geometric;
    e.rho_ = rho;
    return e;
}

EpsFamily EpsFamily::explicit_vec(std::vector<double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::invalid_argument("eps values must be positive");
        if (i > 0 && values[i] > values[i - 1])
            throw std::invalid_argument("eps sequence must be nonincreasing");
    }
    EpsFamily e;
    e.kind_ = Kind::Explicit;
    e.values_ = std::move(values);
    return e;
}

double EpsFamily::value(std::int64_t j) const {
    if (j < 1) throw std::invalid_argument("eps index must be >= 1");
    switch (kind_) {
        case Kind::Power: return std::pow(static_cast<double>(j), -beta_);
        case Kind::Geometric: return std::pow(rho_, static_cast<double>(j));
        case Kind::Explicit:
            return j <= static_cast<std::int64_t>(values_.size()) ? values_[j - 1] : 0.0;
    }
    return 0.0;
}

std::string EpsFamily::label() const {
    char buf[48];
    switch (kind_) {
        case Kind::Power:
            std::snprintf(buf, sizeof buf, "eps_power(%g)", beta_);
            return buf;
        case Kind::Geometric:
            std::snprintf(buf, sizeof buf, "eps_geometric(%g)", rho_);
            return buf;
        case Kind::Explicit:
            std::snprintf(buf, sizeof buf, "eps_list(n=%zu)", values_.size());
            return buf;
    }
    return "?";
}

std::vector<std::int64_t> geometric_markers(double M, int count) {
    if (!(M > 1.0)) throw std::domain_error("geometric_markers: requires M > 1");
    std::vector<std::int64_t> out;
    double v = 1.0;
    for (int r = 0; r < count; ++r) {
        out.push_back(std::max<std::int64_t>(1, std::llround(v)));
        v *= M;
        if (v > 9e17) break;
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProfileSplit split_flat_sharp(const series::FourierProfile& profile, const EpsFamily& eps,
                              const std::vector<std::int64_t>& markers,
                              std::optional<double> marker_growth, std::int64_t window) {
    for (std::size_t i = 1; i < markers.size(); ++i)
        if (markers[i] <= markers[i - 1])
            throw std::invalid_argument("split_flat_sharp: markers must be strictly increasing");

    ProfileSplit out;
    std::vector<double> flat_abs;
    for (const auto& [j, aj] : profile.coefficients()) {
        if (std::abs(aj) > eps.value(j)) {
            out.flat.emplace_back(j, aj);
            flat_abs.push_back(std::abs(aj));
        } else {
            out.sharp.emplace_back(j, aj);
        }
    }
    out.A = numeric::pairwise_sum(flat_abs);

    const bool power_law = profile.kind() == series::FourierProfile::Kind::PowerLawSine;
    if (power_law) {
        const double s = profile.exponent();
        if (eps.kind() == EpsFamily::Kind::Power && eps.beta() > s)
            out.A_finite = s > 1.0;  // |a_j| > eps(j) for every large j
        if (eps.kind() == EpsFamily::Kind::Geometric) out.A_finite = s > 1.0;
    }

    const double wd = static_cast<double>(std::max<std::int64_t>(window, 16));
    // B1 = sum_j eps(j)^2 over all j >= 1
    {
        std::vector<double> terms;
        for (std::int64_t j = 1; j <= window; ++j) {
            const double e = eps.value(j);
            if (e == 0.0) break;  // past the end of an explicit eps window
            terms.push_back(e * e);
        }
        out.B1 = numeric::pairwise_sum(terms);
        switch (eps.kind()) {
            case EpsFamily::Kind::Power:
                if (2.0 * eps.beta() > 1.0) {
                    out.B1_tail = pl_tail(2.0 * eps.beta(), 0.0, wd);
                    out.B1_verdict = Verdict::Converges;
                } else {
                    out.B1_verdict = Verdict::Diverges;
                }
                break;
            case EpsFamily::Kind::Geometric: {
                const double r2 = eps.rho() * eps.rho();
                out.B1_tail = std::pow(r2, static_cast<double>(window)) * r2 / (1.0 - r2);
                out.B1_verdict = Verdict::Converges;
                break;
            }
            case EpsFamily::Kind::Explicit:
                out.B1_verdict = Verdict::Undecided;
                break;
        }
    }

    if (markers.size() >= 2) {
        std::vector<double> terms;
        for (std::size_t r = 0; r + 1 < markers.size(); ++r)
            terms.push_back(std::sqrt(static_cast<double>(markers[r + 1])) *
                            eps.value(markers[r]));
        out.B = numeric::pairwise_sum(terms);

        if (marker_growth && *marker_growth > 1.0) {
            const double M = *marker_growth;
            const double jr = static_cast<double>(markers.back());
            // rounded markers satisfy M^r / 2 <= j_r <= 2 M^r
            if (eps.kind() == EpsFamily::Kind::Power) {
                const double x = std::pow(M, 0.5 - eps.beta());
                if (x < 1.0) {
                    const double first = std::sqrt(2.0 * M) * std::pow(2.0, eps.beta()) *
                                         std::pow(jr * M / 2.0, 0.5 - eps.beta());
                    out.B_tail = first / (1.0 - x);
                    out.B_verdict = Verdict::Converges;
                } else {
                    out.B_verdict = Verdict::Diverges;
                }
            } else if (eps.kind() == EpsFamily::Kind::Geometric) {
                // j_r >= z and j_{r+1} <= 4 M z along the minorant ladder z = (jr/2) M^i
                double tail = 0.0;
                double z = jr * M / 2.0;
                for (int r = 0; r < 400 && z < 9e17; ++r) {
                    const double term = std::sqrt(8.0 * M * z) * std::pow(eps.rho(), z / 2.0);
                    tail += term;
                    if (term < 1e-300) break;
                    z *= M;
                }
                out.B_tail = 2.0 * tail;
                out.B_verdict = Verdict::Converges;
            } else {
                out.B_verdict = Verdict::Undecided;
            }
        }
    }
    return out;
}

RegularityL profile_regularity_L(const series::FourierProfile& profile, double M) {
    if (!(M > 1.0)) throw std::domain_error("profile_regularity_L: requires M > 1");
    RegularityL out;
    const auto& coeffs = profile.coefficients();
    if (coeffs.empty()) return out;

    std::vector<double> boundaries{1.0};
    while (boundaries.back() <= static_cast<double>(coeffs.back().first))
        boundaries.push_back(boundaries.back() * M);

    std::vector<double> terms;
    std::size_t v = 0;
    double sup = 0.0;
    for (const auto& [j, aj] : coeffs) {
        while (static_cast<double>(j) >= boundaries[v + 1]) {
            if (sup > 0.0) terms.push_back(boundaries[v] * sup);
            sup = 0.0;
            ++v;
        }
        sup = std::max(sup, aj * aj);
    }
    if (sup > 0.0) terms.push_back(boundaries[v] * sup);
    out.value = numeric::pairwise_sum(terms);

    if (profile.kind() == series::FourierProfile::Kind::PowerLawSine) {
        // beyond the truncation: sup over [M^v, M^{v+1}) of j^{-2s} <= M^{-2sv}
        const double s2 = 2.0 * profile.exponent();
        const double ratio = std::pow(M, 1.0 - s2);
        const double vstart = static_cast<double>(v + 1);
        out.tail = std::pow(M, (1.0 - s2) * vstart) / (1.0 - ratio);
        out.value += out.tail;
    }
    return out;
}

IrregularExample lip_irregular_example(double alpha, int max_block) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::domain_error("lip_irregular_example: requires 0 < alpha < 1/2");
    if (max_block < 2 || max_block > 20)
        throw std::invalid_argument("lip_irregular_example: max_block in [2, 20]");
    const double gamma = alpha / 2.0;
    auto psi = [&](int r) { return std::pow(2.0, -gamma * static_cast<double>(r)); };

    IrregularExample out;
    std::vector<std::pair<std::int64_t, double>> coeffs;
    const std::int64_t jmax = std::int64_t{1} << (max_block + 1);
    std::vector<double> eps_values(static_cast<std::size_t>(jmax), 0.0);
    double current_eps = psi(0) * 1.0;  // block r = 0 value, j in (1, 2]
    eps_values[0] = current_eps;        // j = 1
    for (int r = 0; r <= max_block; ++r) {
        const double level = psi(r) * std::pow(2.0, -0.5 * static_cast<double>(r));
        const std::int64_t lo = (std::int64_t{1} << r) + 1;
        const std::int64_t hi = std::int64_t{1} << (r + 1);
        if (r % 2 == 0) {
            current_eps = level;
            for (std::int64_t j = lo; j <= hi; ++j) coeffs.emplace_back(j, level);
        }
        for (std::int64_t j = lo; j <= hi; ++j)
            eps_values[static_cast<std::size_t>(j - 1)] = current_eps;

        if (r % 2 == 0) {
            const double mass = static_cast<double>(hi - lo + 1) * level;
            out.block_mass_ratio.push_back(
                mass / std::pow(2.0, static_cast<double>(r) * (0.5 - alpha)));
        }
    }
    out.profile = series::FourierProfile::explicit_profile(std::move(coeffs));
    out.eps = EpsFamily::explicit_vec(std::move(eps_values));
    return out;
}

std::vector<CriterionReport> standard_comparison(const CoeffFamily& c, double s, double h,
                                                 const ntheory::ArithmeticCache& cache,
                                                 std::int64_t window) {
    const std::int64_t w = std::min(window, cache.limit());
    std::vector<CriterionReport> rows;
    rows.push_back(rademacher_menshov(c, w));
    rows.push_back(tandori(c, h, w));
    {
        PhiPreset phi;
        phi.kind = s < 1.0 ? PhiPreset::Kind::SubexpGap : PhiPreset::Kind::LogLoglog;
        phi.s = s;
        TwoSeriesReport two = two_series_criterion(c, s, phi, cache, w);
        CriterionReport rep = two.weighted_sum;
        rep.criterion = "two_series";
        rep.verdict = two.combined;
        rep.note = "inverse sum " + std::string(verdict_name(two.inverse_sum.verdict)) +
                   "; phi=" + phi.label();
        rows.push_back(std::move(rep));
    }
    rows.push_back(dyadic_divisor_condition(c, cache, w));
    rows.push_back(divisor_growth_condition(c, w));
    {
        std::vector<std::int64_t> idn(static_cast<std::size_t>(w));
        std::iota(idn.begin(), idn.end(), 1);
        const seq::IndexSet K = seq::IndexSet::from_elements(std::move(idn), seq::Provenance::Range);
        rows.push_back(divisor_criterion(c, K, DivisorMode::PillaiMean, s, cache, w));
        rows.push_back(divisor_criterion(c, K, DivisorMode::DivisorCount, s, cache, w));
        rows.push_back(divisor_criterion(c, K, DivisorMode::SigmaPower, s, cache, w));
    }
    {
        const std::int64_t trunc = std::min<std::int64_t>(w, 10'000);
        series::FourierProfile profile = series::FourierProfile::explicit_profile({});
        if (c.kind() == CoeffFamily::Kind::Power && c.a() > 0.5) {
            profile = series::FourierProfile::power_law_sine(c.a(), trunc);
        } else {
            std::vector<std::pair<std::int64_t, double>> coeffs;
            for (std::int64_t nu = 1; nu <= trunc; ++nu) coeffs.emplace_back(nu, c.value(nu));
            profile = series::FourierProfile::explicit_profile(std::move(coeffs));
        }
        CriterionReport rep = hooley_condition(profile, cache, w);
        rep.family = c.label();
        rows.push_back(std::move(rep));
    }
    return rows;
}

std::string render_comparison_csv(const std::vector<CriterionReport>& reports) {
    std::string out = "family,criterion,window,weight_k10,weight_k100,weight_k1000,"
                      "partial_sum,tail_bound,verdict,note\n";
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.15g", v);
        return std::string(buf);
    };
    for (const auto& r : reports) {
        out += r.family + "," + r.criterion + "," + std::to_string(r.window) + ",";
        for (std::int64_t k : {10, 100, 1000}) {
            auto it = std::find_if(r.weight_samples.begin(), r.weight_samples.end(),
                                   [&](const auto& p) { return p.first == k; });
            out += (it != r.weight_samples.end() ? fmt(it->second) : "") + ",";
        }
        out += fmt(r.partial_sum) + ",";
        out += (r.tail_bound ? fmt(*r.tail_bound) : "") + ",";
        out += std::string(verdict_name(r.verdict)) + "," + r.note + "\n";
    }
    return out;
}

}  // namespace dilated::criteria
