#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dilated/ntheory.hpp"
#include "dilated/sequences.hpp"
#include "dilated/series.hpp"

namespace dilated::criteria {

// Verdict semantics: converges/diverges are issued only for closed-form
// coefficient families where an integral-test or comparison tail bound is
// attached; raw finite vectors always come back undecided with the partial
// sum. Weight conventions: log k means max(1, log k) and log log terms are
// frozen below k = 16 (the divisor criteria use the raw log of the index n,
// so the n = 1 term vanishes).
enum class Verdict { Converges, Diverges, Undecided };

std::string_view verdict_name(Verdict v);

double safe_log(double k);     // max(1, ln k)
double safe_loglog(double k);  // ln ln max(k, 16)

// Divisor-bound exponent: d(n) <= n^{1.066/ln ln n} for n >= 3
// (Nicolas-Robin); decreasing in n from 16 on, so it yields tail envelopes.
double divisor_bound_exponent(double n);

class CoeffFamily {
public:
    enum class Kind { Power, PowerLog, Explicit };

    static CoeffFamily power(double a);                   // c_k = k^{-a}
    static CoeffFamily power_log(double a, double b);     // c_k = k^{-a} (log k)^{-b}
    static CoeffFamily explicit_vec(std::vector<double> values);
    // "power(a)" | "power_log(a,b)" | "list(v1,...,vn)"
    static CoeffFamily parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool analytic() const { return kind_ != Kind::Explicit; }
    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& values() const { return values_; }
    double value(std::int64_t k) const;
    std::string label() const;

private:
    Kind kind_ = Kind::Power;
    double a_ = 1.0;
    double b_ = 0.0;
    std::vector<double> values_;
};

struct CriterionReport {
    std::string criterion;
    std::string family;
    std::int64_t window = 0;
    double partial_sum = 0.0;
    std::optional<double> tail_bound;  // proven overestimate of the omitted tail
    Verdict verdict = Verdict::Undecided;
    std::vector<std::pair<std::int64_t, double>> weight_samples;
    std::string note;
};

constexpr std::int64_t kDefaultWindow = 100'000;

// sum c_k^2 log^2 k
CriterionReport rademacher_menshov(const CoeffFamily& c, std::int64_t window = kDefaultWindow);

// sum c_k^2 (log 1/|c_k|)^{1+h} (log k)^{1-h}, 0 <= h < 1
CriterionReport tandori(const CoeffFamily& c, double h, std::int64_t window = kDefaultWindow);

// Monotone weight presets for the two-series criterion.
struct PhiPreset {
    enum class Kind {
        LogLoglog,   // log k (log log k)^{1+eps}; the s = 1 closed form
        SubexpGap,   // exp(eps (log k)^{2(1-s)} / (2(1-s) log log k)), s < 1,
                     // made monotone by a running max over the window
        One          // phi = 1 (fails the first series; kept as the contrast case)
    };
    Kind kind = Kind::LogLoglog;
    double eps = 0.1;
    double s = 1.0;  // used by SubexpGap

    double value(std::int64_t k) const;
    std::string label() const;
};

struct TwoSeriesReport {
    CriterionReport inverse_sum;   // sum 1/(k phi(k))
    CriterionReport weighted_sum;  // sum c_k^2 phi(k) log^2 k sigma_{1-2s}(k)
    Verdict combined = Verdict::Undecided;  // criterion satisfied iff both converge
};

// The phi/sigma two-series test, 1/2 < s <= 1; phi must be positive and
// nondecreasing on the window.
TwoSeriesReport two_series_criterion(const CoeffFamily& c, double s, const PhiPreset& phi,
                                     const ntheory::ArithmeticCache& cache,
                                     std::int64_t window = kDefaultWindow);

// sum_r (sum_{2^r < j <= 2^{r+1}} c_j^2 d(j) log^2 j)^{1/2}, plus the j = 1 term
CriterionReport dyadic_divisor_condition(const CoeffFamily& c,
                                         const ntheory::ArithmeticCache& cache,
                                         std::int64_t window = kDefaultWindow);

// sum c_k^2 exp(2 log k / log log k) — the maximal-order shape of the divisor
// function as a weight; weight 1 below k = 3
CriterionReport divisor_growth_condition(const CoeffFamily& c,
                                         std::int64_t window = kDefaultWindow);

enum class DivisorMode { PillaiMean, DivisorCount, SigmaPower };

std::string_view divisor_mode_name(DivisorMode mode);

// sum_n c_n^2 w(k_n) log^2 n with w = A, d, or sigma_{1-2s} (mode SigmaPower
// needs s > 1/2). Verdicts attach only for analytic families on k_n = n.
CriterionReport divisor_criterion(const CoeffFamily& c, const seq::IndexSet& K, DivisorMode mode,
                                  double s, const ntheory::ArithmeticCache& cache,
                                  std::int64_t window = kDefaultWindow);

// sum_nu a_nu^2 Delta(nu) over the profile; power-law profiles get a
// divisor-bound tail from the truncation point.
CriterionReport hooley_condition(const series::FourierProfile& profile,
                                 const ntheory::ArithmeticCache& cache,
                                 std::int64_t window = kDefaultWindow);

// Relaxed variant with weight exp(con sqrt(log log nu log log log nu)); the
// constant is caller-supplied.
CriterionReport hooley_relaxed_condition(const series::FourierProfile& profile, double con,
                                         std::int64_t window = kDefaultWindow);

class EpsFamily {
public:
    enum class Kind { Power, Geometric, Explicit };

    static EpsFamily power(double beta);        // eps(j) = j^{-beta}, beta >= 0
    static EpsFamily geometric(double rho);     // eps(j) = rho^j, 0 < rho < 1
    static EpsFamily explicit_vec(std::vector<double> values);  // validated nonincreasing

    Kind kind() const { return kind_; }
    double beta() const { return beta_; }
    double rho() const { return rho_; }
    double value(std::int64_t j) const;  // 0 beyond an explicit window
    std::string label() const;

private:
    Kind kind_ = Kind::Power;
    double beta_ = 1.0;
    double rho_ = 0.5;
    std::vector<double> values_;
};

struct ProfileSplit {
    std::vector<std::pair<std::int64_t, double>> flat;   // |a_j| > eps(j)
    std::vector<std::pair<std::int64_t, double>> sharp;  // the rest
    double A = 0.0;                      // sum of |a_j| over the flat part
    bool A_finite = true;                // false when a power-law flat part is thick
    std::optional<double> B;             // sum_r j_{r+1}^{1/2} eps(j_r) over the markers
    std::optional<Verdict> B_verdict;    // analytic eps on geometric markers only
    std::optional<double> B_tail;
    double B1 = 0.0;                     // sum_j eps(j)^2 (partial)
    Verdict B1_verdict = Verdict::Undecided;
    std::optional<double> B1_tail;
};

// Flat/sharp split of a profile against a nonincreasing threshold sequence.
// Markers may be empty (then B is not reported). B verdicts attach only when
// marker_growth M is passed and the markers are j_r = round(M^r) (use
// geometric_markers()), with an analytic eps family.
ProfileSplit split_flat_sharp(const series::FourierProfile& profile, const EpsFamily& eps,
                              const std::vector<std::int64_t>& markers,
                              std::optional<double> marker_growth = std::nullopt,
                              std::int64_t window = kDefaultWindow);

std::vector<std::int64_t> geometric_markers(double M, int count);

struct RegularityL {
    double value = 0.0;  // includes the closed-form tail for power-law profiles
    double tail = 0.0;
    bool finite = true;
};

// L = sum_v M^v sup_{M^v <= j < M^{v+1}} a_j^2
RegularityL profile_regularity_L(const series::FourierProfile& profile, double M);

// Block profile with a_j = psi(r) 2^{-r/2} on even dyadic blocks (zero on odd),
// psi(r) = 2^{-alpha r/2}: passes the flat/sharp test with A = 0 and finite
// B1 while its dyadic L1 mass grows relative to the 2^{r(1/2-alpha)}
// Lipschitz envelope.
struct IrregularExample {
    series::FourierProfile profile{series::FourierProfile::explicit_profile({})};
    EpsFamily eps = EpsFamily::power(1.0);
    std::vector<double> block_mass_ratio;  // per even block r: L1 mass / 2^{r(1/2-alpha)}
};

IrregularExample lip_irregular_example(double alpha, int max_block);

// One row per criterion for a coefficient family: log^2, tandori(h),
// two-series (LogLoglog preset at s), dyadic divisor, divisor growth, the
// three divisor modes on the identity window, and the Erdos-Hooley profile
// test (power-law at exponent a when a > 1/2, else an explicit window
// stand-in).
std::vector<CriterionReport> standard_comparison(const CoeffFamily& c, double s, double h,
                                                 const ntheory::ArithmeticCache& cache,
                                                 std::int64_t window = kDefaultWindow);

// Deterministic CSV with 15-significant-digit floats; byte-stable across runs.
std::string render_comparison_csv(const std::vector<CriterionReport>& reports);

}  // namespace dilated::criteria
