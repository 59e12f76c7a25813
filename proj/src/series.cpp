#include "dilated/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>

#include "dilated/ntheory.hpp"
#include "dilated/numeric.hpp"

namespace dilated::series {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

void require_explicit(const FourierProfile& profile, const char* who) {
    if (!profile.is_explicit())
        throw std::invalid_argument(std::string(who) + ": requires an explicit profile "
                                    "(truncate power-law profiles first)");
}

// iterative radix-2 transform, twiddle sign +1, no normalization:
// a[m] <- sum_j a[j] exp(sign 2 pi i j m / n)
void fft(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// f(m/N) for f(x) = sum_j a_j sin(2 pi j x), m = 0..N-1; power-law profiles
// carry their materialized truncation window
std::vector<double> profile_samples(const FourierProfile& profile, std::size_t n) {
    const auto& coeffs = profile.coefficients();
    if (is_pow2(n) && n >= 2 && coeffs.size() > 32) {
        std::vector<std::complex<double>> spec(n, {0.0, 0.0});
        for (const auto& [j, aj] : coeffs)
            spec[static_cast<std::size_t>(j) % n] += aj;
        fft(spec, +1);
        std::vector<double> out(n);
        for (std::size_t m = 0; m < n; ++m) out[m] = spec[m].imag();
        return out;
    }
    std::vector<double> out(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        const double x = static_cast<double>(m) / static_cast<double>(n);
        double v = 0.0;
        for (const auto& [j, aj] : coeffs) v += aj * std::sin(kTwoPi * static_cast<double>(j) * x);
        out[m] = v;
    }
    return out;
}

// nonempty geometric bands [R^v, R^{v+1}) of the profile frequencies
std::vector<std::pair<std::int64_t, std::vector<std::pair<std::int64_t, double>>>>
frequency_bands(const FourierProfile& profile, double ratio) {
    if (!(ratio > 1.0)) throw std::domain_error("band ratio must be > 1");
    const auto& coeffs = profile.coefficients();
    std::vector<std::pair<std::int64_t, std::vector<std::pair<std::int64_t, double>>>> bands;
    if (coeffs.empty()) return bands;
    std::vector<double> boundaries{1.0};
    while (boundaries.back() <= static_cast<double>(coeffs.back().first))
        boundaries.push_back(boundaries.back() * ratio);
    std::size_t v = 0;
    for (const auto& entry : coeffs) {
        while (static_cast<double>(entry.first) >= boundaries[v + 1]) ++v;
        if (bands.empty() || bands.back().first != static_cast<std::int64_t>(v))
            bands.push_back({static_cast<std::int64_t>(v), {}});
        bands.back().second.push_back(entry);
    }
    return bands;
}

double amplitude_energy(const std::map<std::int64_t, double>& amplitudes) {
    std::vector<double> squares;
    squares.reserve(amplitudes.size());
    for (const auto& [nu, amp] : amplitudes) squares.push_back(amp * amp);
    return numeric::pairwise_sum(squares);
}

std::map<std::int64_t, double> amplitudes_of(const seq::IndexSet& K, std::span<const double> c,
                                             std::span<const std::pair<std::int64_t, double>> coeffs) {
    if (c.size() != K.size())
        throw std::invalid_argument("coefficient vector does not match the index set");
    std::map<std::int64_t, double> amp;
    for (std::size_t i = 0; i < K.size(); ++i) {
        const std::int64_t k = K.elements()[i];
        if (c[i] == 0.0) continue;
        for (const auto& [j, aj] : coeffs) amp[k * j] += c[i] * aj;
    }
    return amp;
}

bool constant_sign(std::span<const double> v) {
    bool pos = false, neg = false;
    for (double x : v) {
        pos = pos || x > 0.0;
        neg = neg || x < 0.0;
    }
    return !(pos && neg);
}

}  // namespace

FourierProfile FourierProfile::power_law_sine(double s, std::int64_t truncation) {
    if (!(s > 0.5)) throw std::domain_error("power_law_sine: requires s > 1/2");
    if (truncation < 1 || truncation > 10'000'000)
        throw std::invalid_argument("power_law_sine: truncation must be in [1, 1e7]");
    FourierProfile p;
    p.kind_ = Kind::PowerLawSine;
    p.s_ = s;
    p.truncation_ = truncation;
    p.coeffs_.reserve(static_cast<std::size_t>(truncation));
    for (std::int64_t j = 1; j <= truncation; ++j)
        p.coeffs_.emplace_back(j, std::pow(static_cast<double>(j), -s));
    return p;
}

FourierProfile FourierProfile::explicit_profile(
    std::vector<std::pair<std::int64_t, double>> coeffs) {
    std::map<std::int64_t, double> merged;
    for (const auto& [j, aj] : coeffs) {
        if (j < 1) throw std::invalid_argument("explicit_profile: frequencies must be >= 1");
        if (!std::isfinite(aj)) throw std::invalid_argument("explicit_profile: non-finite coefficient");
        merged[j] += aj;
    }
    FourierProfile p;
    p.kind_ = Kind::Explicit;
    for (const auto& [j, aj] : merged)
        if (aj != 0.0) p.coeffs_.emplace_back(j, aj);
    p.truncation_ = p.coeffs_.empty() ? 0 : p.coeffs_.back().first;
    return p;
}

double FourierProfile::exponent() const {
    if (kind_ != Kind::PowerLawSine)
        throw std::invalid_argument("exponent: profile is not power-law");
    return s_;
}

const std::vector<std::pair<std::int64_t, double>>& FourierProfile::coefficients() const {
    return coeffs_;
}

FourierProfile FourierProfile::truncated() const {
    if (kind_ == Kind::Explicit) return *this;
    return explicit_profile(coeffs_);
}

std::int64_t FourierProfile::max_frequency() const {
    return coeffs_.empty() ? 0 : coeffs_.back().first;
}

bool FourierProfile::constant_sign() const {
    bool pos = false, neg = false;
    for (const auto& [j, aj] : coeffs_) {
        pos = pos || aj > 0.0;
        neg = neg || aj < 0.0;
    }
    return !(pos && neg);
}

double inner_product_powerlaw(std::int64_t k, std::int64_t l, double s) {
    if (!(s > 0.5)) throw std::domain_error("inner_product_powerlaw: requires s > 1/2");
    if (k < 1 || l < 1) throw std::invalid_argument("inner_product_powerlaw: k, l >= 1");
    const double g = static_cast<double>(std::gcd(k, l));
    const double prod = static_cast<double>(k) * static_cast<double>(l);
    return ntheory::zeta(2.0 * s) * std::pow(g * g / prod, s);
}

double norm_sq_powerlaw(const seq::IndexSet& K, std::span<const double> c, double s) {
    if (!(s > 0.5)) throw std::domain_error("norm_sq_powerlaw: requires s > 1/2");
    const spectral::SymMatrix M = spectral::build_gcd_matrix(K, s);
    return ntheory::zeta(2.0 * s) * spectral::quadratic_form(M, c);
}

std::map<std::int64_t, double> collision_amplitudes(const seq::IndexSet& K,
                                                    std::span<const double> c,
                                                    const FourierProfile& profile) {
    require_explicit(profile, "collision_amplitudes");
    return amplitudes_of(K, c, profile.coefficients());
}

double exact_norm_collisions(const seq::IndexSet& K, std::span<const double> c,
                             const FourierProfile& profile) {
    require_explicit(profile, "exact_norm_collisions");
    return amplitude_energy(amplitudes_of(K, c, profile.coefficients()));
}

BlockEnergies block_operator_energies(const seq::IndexSet& K, std::span<const double> c,
                                      const FourierProfile& profile, double band_ratio) {
    require_explicit(profile, "block_operator_energies");
    if (!(band_ratio > 1.0))
        throw std::domain_error("block_operator_energies: requires band ratio M > 1");
    BlockEnergies out;
    std::vector<double> energies;
    for (const auto& [v, coeffs] : frequency_bands(profile, band_ratio)) {
        const double e = amplitude_energy(amplitudes_of(K, c, coeffs));
        out.bands.push_back({v, e});
        energies.push_back(e);
    }
    out.sum_bands = numeric::pairwise_sum(energies);
    out.total = exact_norm_collisions(K, c, profile);
    const double slack = 1e-9 * std::max(1.0, std::max(out.total, out.sum_bands));
    out.upper_ok = out.total <= 3.0 * out.sum_bands + slack;
    out.lower_applicable = profile.constant_sign() && constant_sign(c);
    out.lower_ok = out.lower_applicable && out.sum_bands <= out.total + slack;
    return out;
}

double band_cross_inner_product(const seq::IndexSet& K, std::span<const double> cK,
                                std::int64_t band_v, const seq::IndexSet& L,
                                std::span<const double> cL, std::int64_t band_u,
                                const FourierProfile& profile, double band_ratio) {
    require_explicit(profile, "band_cross_inner_product");
    const auto bands = frequency_bands(profile, band_ratio);
    auto find_band = [&](std::int64_t v) -> std::span<const std::pair<std::int64_t, double>> {
        for (const auto& [idx, coeffs] : bands)
            if (idx == v) return coeffs;
        return {};
    };
    const auto ampK = amplitudes_of(K, cK, find_band(band_v));
    const auto ampL = amplitudes_of(L, cL, find_band(band_u));
    std::vector<double> products;
    for (const auto& [nu, a] : ampK) {
        auto it = ampL.find(nu);
        if (it != ampL.end()) products.push_back(a * it->second);
    }
    return numeric::pairwise_sum(products);
}

SquareAudit square_theorem_audit(const seq::IndexSet& N, std::span<const double> c,
                                 const FourierProfile& profile, double mu) {
    require_explicit(profile, "square_theorem_audit");
    if (c.size() != N.size())
        throw std::invalid_argument("square_theorem_audit: coefficient size mismatch");
    SquareAudit out;
    std::vector<double> csq(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) csq[i] = c[i] * c[i];
    out.c_norm_sq = numeric::pairwise_sum(csq);
    if (out.c_norm_sq == 0.0)
        throw std::invalid_argument("square_theorem_audit: zero coefficient vector");

    const auto blocks = seq::dyadic_blocks(N, mu);
    std::size_t offset = 0;
    std::vector<double> norms;
    for (const auto& blk : blocks) {
        const std::size_t len = blk.block.size();
        const double nsq =
            exact_norm_collisions(blk.block, c.subspan(offset, len), profile);
        out.blocks.push_back({blk.index, nsq});
        norms.push_back(nsq);
        offset += len;
    }
    out.sum_blocks = numeric::pairwise_sum(norms);
    out.c_emp = std::sqrt(out.sum_blocks / out.c_norm_sq);
    out.two_sided = profile.constant_sign() && constant_sign(c);
    return out;
}

std::vector<double> sample_partial_sum(const seq::IndexSet& K, std::span<const double> c,
                                       const FourierProfile& profile, std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("sample_partial_sum: grid_size >= 2");
    if (c.size() != K.size())
        throw std::invalid_argument("sample_partial_sum: coefficient size mismatch");
    const std::vector<double> table = profile_samples(profile, grid_size);
    std::vector<double> out(grid_size, 0.0);
    for (std::size_t i = 0; i < K.size(); ++i) {
        if (c[i] == 0.0) continue;
        const std::size_t k = static_cast<std::size_t>(K.elements()[i]);
        for (std::size_t m = 0; m < grid_size; ++m)
            out[m] += c[i] * table[(k * m) % grid_size];
    }
    return out;
}

namespace {

void check_quadrature_grid(const FourierProfile& profile, std::int64_t max_dilation,
                           std::size_t grid_size) {
    if (!is_pow2(grid_size) || grid_size < 4)
        throw precision_error("quadrature grid must be a power of two >= 4");
    const std::int64_t max_dilated = max_dilation * profile.max_frequency();
    if (profile.is_explicit()) {
        if (static_cast<std::int64_t>(grid_size) < 4 * max_dilated)
            throw precision_error("quadrature grid too coarse: need >= 4x the largest "
                                  "dilated frequency for an explicit profile");
    } else {
        if (static_cast<std::int64_t>(grid_size) <= max_dilated)
            throw precision_error("quadrature grid too coarse: need > max dilation x "
                                  "truncation for a power-law profile");
    }
}

}  // namespace

double quadrature_gram(std::int64_t k, std::int64_t l, const FourierProfile& profile,
                       std::size_t grid_size) {
    if (k < 1 || l < 1) throw std::invalid_argument("quadrature_gram: k, l >= 1");
    check_quadrature_grid(profile, std::max(k, l), grid_size);
    const std::vector<double> table = profile_samples(profile, grid_size);
    std::vector<double> products(grid_size);
    const std::size_t uk = static_cast<std::size_t>(k), ul = static_cast<std::size_t>(l);
    for (std::size_t m = 0; m < grid_size; ++m)
        products[m] = table[(uk * m) % grid_size] * table[(ul * m) % grid_size];
    const double integral =
        numeric::pairwise_sum(products) / static_cast<double>(grid_size);
    return profile.is_explicit() ? integral : 2.0 * integral;
}

double quadrature_norm_sq(const seq::IndexSet& K, std::span<const double> c,
                          const FourierProfile& profile, std::size_t grid_size) {
    check_quadrature_grid(profile, K.k_plus(), grid_size);
    const std::vector<double> samples = sample_partial_sum(K, c, profile, grid_size);
    std::vector<double> squares(grid_size);
    for (std::size_t m = 0; m < grid_size; ++m) squares[m] = samples[m] * samples[m];
    return 2.0 * numeric::pairwise_sum(squares) / static_cast<double>(grid_size);
}

double modulus_of_continuity(const FourierProfile& profile, double h) {
    if (profile.kind() != FourierProfile::Kind::PowerLawSine)
        throw std::invalid_argument("modulus_of_continuity: requires a power-law profile");
    if (!(h > 0.0 && h < 1.0)) throw std::domain_error("modulus_of_continuity: h in (0,1)");
    const double s2 = 2.0 * profile.exponent();
    // 2 sum sin^2(pi m h)/m^{2s} = zeta(2s) - sum cos(2 pi m h)/m^{2s};
    // the cosine tail beyond M is below (M+1)^{-2s}/sin(pi h) (Dirichlet test)
    const double sinpih = std::sin(std::numbers::pi * h);
    constexpr double kTailTol = 1e-10;
    double cut = std::pow(1.0 / (kTailTol * sinpih), 1.0 / s2);
    cut = std::max(cut, 1e5);
    if (cut > 2e8) throw precision_error("modulus_of_continuity: h too extreme for the tail bound");
    const std::size_t M = static_cast<std::size_t>(cut) + 1;
    std::vector<double> terms(M);
    for (std::size_t m = 1; m <= M; ++m)
        terms[m - 1] = std::cos(kTwoPi * static_cast<double>(m) * h) /
                       std::pow(static_cast<double>(m), s2);
    return ntheory::zeta(s2) - numeric::pairwise_sum(terms);
}

ProbeGrid dirichlet_probe(const FourierProfile& profile, std::span<const double> sigma_grid,
                          std::span<const double> t_grid) {
    if (sigma_grid.empty() || t_grid.empty())
        throw std::invalid_argument("dirichlet_probe: empty grid");
    for (double sigma : sigma_grid)
        if (!(sigma > 0.0)) throw std::domain_error("dirichlet_probe: requires sigma > 0");
    const auto& coeffs = profile.coefficients();
    ProbeGrid out;
    out.min_modulus = std::numeric_limits<double>::infinity();
    out.max_modulus = 0.0;
    for (double sigma : sigma_grid) {
        for (double t : t_grid) {
            std::complex<double> sum(0.0, 0.0);
            for (const auto& [n, an] : coeffs) {
                const double ln = std::log(static_cast<double>(n));
                sum += an * std::exp(-sigma * ln) *
                       std::complex<double>(std::cos(t * ln), -std::sin(t * ln));
            }
            const double mod = std::abs(sum);
            out.points.push_back({sigma, t, mod});
            out.min_modulus = std::min(out.min_modulus, mod);
            out.max_modulus = std::max(out.max_modulus, mod);
        }
    }
    if (profile.kind() == FourierProfile::Kind::PowerLawSine) {
        const double s = profile.exponent();
        const double sigma_min = *std::min_element(sigma_grid.begin(), sigma_grid.end());
        if (s + sigma_min > 1.0) {
            const double T = static_cast<double>(profile.truncation());
            out.tail_estimate = std::pow(T, 1.0 - s - sigma_min) / (s + sigma_min - 1.0);
        }
    }
    return out;
}

}  // namespace dilated::series
