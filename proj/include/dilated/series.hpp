#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dilated/sequences.hpp"
#include "dilated/spectral.hpp"

namespace dilated::series {

// Convention. Coefficient-space norms treat the frequency system {e_j, j>=1}
// as orthonormal, so collision counting below is exact Parseval and the
// power-law system has <f_k, f_l> = zeta(2s) gcd(k,l)^{2s}/(kl)^s with no
// stray constant. Sampled realizations use plain sines sin(2 pi j x), whose
// self inner product is 1/2; converting a sampled L2 integral into the
// coefficient convention therefore multiplies by exactly 2. quadrature_gram
// applies that factor for power-law profiles and reports the raw integral
// for explicit profiles; quadrature_norm_sq always reports the coefficient
// convention.

class FourierProfile {
public:
    enum class Kind { PowerLawSine, Explicit };

    // a_j = j^{-s} for 1 <= j <= truncation, s > 1/2
    static FourierProfile power_law_sine(double s, std::int64_t truncation = 10'000);
    // finitely many (frequency >= 1, coefficient) pairs; duplicate
    // frequencies are summed, zero coefficients dropped
    static FourierProfile explicit_profile(std::vector<std::pair<std::int64_t, double>> coeffs);

    Kind kind() const { return kind_; }
    bool is_explicit() const { return kind_ == Kind::Explicit; }
    double exponent() const;        // power-law only
    std::int64_t truncation() const { return truncation_; }

    // sorted (frequency, coefficient) pairs; power-law profiles materialize
    // their truncation window
    const std::vector<std::pair<std::int64_t, double>>& coefficients() const;

    FourierProfile truncated() const;  // explicit view of a power-law profile
    std::int64_t max_frequency() const;
    bool constant_sign() const;

private:
    FourierProfile() = default;

    Kind kind_ = Kind::Explicit;
    double s_ = 0.0;
    std::int64_t truncation_ = 0;
    std::vector<std::pair<std::int64_t, double>> coeffs_;
};

// zeta(2s) gcd(k,l)^{2s} / (kl)^s, s > 1/2
double inner_product_powerlaw(std::int64_t k, std::int64_t l, double s);

// zeta(2s) * y^T M(K,s) y
double norm_sq_powerlaw(const seq::IndexSet& K, std::span<const double> c, double s);

// amplitude(nu) = sum_{k j = nu} c_k a_j over k in K and profile frequencies j
std::map<std::int64_t, double> collision_amplitudes(const seq::IndexSet& K,
                                                    std::span<const double> c,
                                                    const FourierProfile& profile);

// sum_nu amplitude(nu)^2; the exact squared L2 norm of sum_k c_k f(kx)
// for an explicit profile (Parseval)
double exact_norm_collisions(const seq::IndexSet& K, std::span<const double> c,
                             const FourierProfile& profile);

struct BlockEnergies {
    struct Band {
        std::int64_t v = 0;   // profile frequencies j in [M^v, M^{v+1})
        double energy = 0.0;  // ||T_K(v)||^2
    };
    std::vector<Band> bands;   // nonempty bands only
    double sum_bands = 0.0;
    double total = 0.0;        // ||sum_k c_k f_k||^2
    bool upper_ok = false;     // total <= 3 sum_bands
    bool lower_applicable = false;  // both a and c of constant sign
    bool lower_ok = false;     // sum_bands <= total (asserted when applicable)
};

// Band operators T_K(v) = sum_{k in K} c_k sum_{M^v <= j < M^{v+1}} a_j e_{kj}.
BlockEnergies block_operator_energies(const seq::IndexSet& K, std::span<const double> c,
                                      const FourierProfile& profile, double band_ratio);

// <T_K(J), T_L(I)> for profile bands J, I; exact collision accounting.
double band_cross_inner_product(const seq::IndexSet& K, std::span<const double> cK,
                                std::int64_t band_v, const seq::IndexSet& L,
                                std::span<const double> cL, std::int64_t band_u,
                                const FourierProfile& profile, double band_ratio);

struct SquareAudit {
    struct Block {
        std::int64_t j = 0;    // geometric slice [mu^j, mu^{j+1})
        double norm_sq = 0.0;  // ||S_{mu^{j+1}} - S_{mu^j}||^2
    };
    std::vector<Block> blocks;
    double sum_blocks = 0.0;
    double c_norm_sq = 0.0;
    double c_emp = 0.0;        // sqrt(sum_blocks)/||c||
    bool two_sided = false;    // constant signs: lower comparison also meaningful
};

// Geometric-block square function of the partial sums S_t(c); block norms are
// exact collision norms. Callers verify the profile regularity sum (see
// criteria::profile_regularity_L) before relying on the upper comparison.
SquareAudit square_theorem_audit(const seq::IndexSet& N, std::span<const double> c,
                                 const FourierProfile& profile, double mu);

// Samples of sum_k c_k f(k x) at x = m/grid_size, m = 0..grid_size-1,
// with f realized over plain sines.
std::vector<double> sample_partial_sum(const seq::IndexSet& K, std::span<const double> c,
                                       const FourierProfile& profile, std::size_t grid_size);

// Trapezoid integral int_0^1 f(kx) f(lx) dx on a power-of-two grid.
// Explicit profiles: raw integral, grid must be >= 4x the largest dilated
// frequency (else precision_error). Power-law profiles: reported in the
// coefficient convention (factor 2), grid must exceed max(k,l)*truncation;
// accuracy budget is the zeta tail of the truncation plus aliasing mass.
double quadrature_gram(std::int64_t k, std::int64_t l, const FourierProfile& profile,
                       std::size_t grid_size);

// Sampled ||sum_k c_k f_k||^2 in the coefficient convention (factor 2
// applied); the quadrature oracle matching exact_norm_collisions.
double quadrature_norm_sq(const seq::IndexSet& K, std::span<const double> c,
                          const FourierProfile& profile, std::size_t grid_size);

class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// int_0^1 |f(x+h) - f(x)|^2 dx = 2 sum_m sin^2(pi m h)/m^{2s} for the
// power-law profile, evaluated as zeta(2s) minus a cosine sum with a
// Dirichlet-test tail below 1e-10.
double modulus_of_continuity(const FourierProfile& profile, double h);

struct ProbePoint {
    double sigma = 0.0;
    double t = 0.0;
    double modulus = 0.0;
};

struct ProbeGrid {
    std::vector<ProbePoint> points;
    double min_modulus = 0.0;
    double max_modulus = 0.0;
    std::optional<double> tail_estimate;  // power-law truncation tail at min sigma
    bool heuristic = true;                // a finite grid never certifies boundedness
};

// |sum_n a_n n^{-sigma - i t}| over the grid; sigma > 0 required.
ProbeGrid dirichlet_probe(const FourierProfile& profile, std::span<const double> sigma_grid,
                          std::span<const double> t_grid);

}  // namespace dilated::series
