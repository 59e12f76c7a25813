#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dilated/ntheory.hpp"
#include "dilated/sequences.hpp"

namespace dilated::spectral {

// Dense symmetric matrix, upper triangle stored row-major.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t dim, std::string label = {});

    std::size_t dim() const { return dim_; }
    const std::string& label() const { return label_; }

    double operator()(std::size_t i, std::size_t j) const {
        return data_[pack(i, j)];
    }
    void set(std::size_t i, std::size_t j, double value) { data_[pack(i, j)] = value; }

    double trace() const;
    double frobenius_norm() const;
    std::vector<double> dense() const;  // full square, row-major

    void write_csv(std::ostream& os) const;  // full square, row-major

private:
    std::size_t pack(std::size_t i, std::size_t j) const {
        if (i >= dim_ || j >= dim_) throw std::out_of_range("SymMatrix index");
        if (i > j) std::swap(i, j);
        return i * dim_ - i * (i + 1) / 2 + j;
    }

    std::size_t dim_;
    std::string label_;
    std::vector<double> data_;
};

// M(K,s) with entries gcd(k_i,k_j)^{2s} / (k_i k_j)^s; unit diagonal.
SymMatrix build_gcd_matrix(const seq::IndexSet& K, double s);

// Raw entries gcd(k_i,k_j)^{2s}; equals D M D with D = diag(k_i^s).
SymMatrix build_gcd_power_matrix(const seq::IndexSet& K, double s);

// Row-major square matrix A with A[i][j] = sqrt(J_{2s}(x_i)) [x_i | x_j];
// K must be factor closed, and then A^T A reproduces the gcd-power matrix.
std::vector<double> jordan_factor(const seq::IndexSet& K, double s,
                                  const ntheory::ArithmeticCache& cache);

double quadratic_form(const SymMatrix& M, std::span<const double> y);

// sum_i J_{2s}(x_i) (sum_{k : x_i | x_k} y_k / x_k^s)^2 over factor-closed K;
// equal to quadratic_form(build_gcd_matrix(K,s), y).
double jordan_quadratic(const seq::IndexSet& K, double s, std::span<const double> y,
                        const ntheory::ArithmeticCache& cache);

struct EigenSummary {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::vector<double> spectrum;  // ascending, retained for dim <= 2048
    double residual = 0.0;         // max ||Mv - lambda v||_inf over the extreme pairs
    int sweeps = 0;
};

// Cyclic Jacobi with threshold skipping; converges when the off-diagonal
// Frobenius norm falls below 1e-12 ||M||_F. Extreme eigenvectors are
// recovered by inverse iteration on the original matrix to populate the
// residual. Dimension cap 2048.
EigenSummary eigen_extremes(const SymMatrix& M);

struct EigenBoundsRow {
    std::size_t n = 0;
    double s = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::optional<double> lower_bound;  // zeta(2s)/zeta(s)^2, s > 1 only
    std::optional<double> upper_bound;  // zeta(s)^2/zeta(2s), s > 1 only
    bool asserted = false;              // bounds checked (s > 1)
    bool pass = true;
};

// Spectrum of M_n(s) on {1..n} against the zeta bracket. For s > 1 the
// bracket is asserted with slack 1e-9; for 1/2 < s <= 1 the extremes are
// reported without assertion. s <= 1/2 is rejected.
EigenBoundsRow eigen_bounds_audit(std::size_t n, double s);

struct WeightedBound {
    double lhs = 0.0;  // |sum_{i != j} x_i x_j alpha_{ij}|
    double rhs = 0.0;  // (1/2) sum_i x_i^2 sum_{l != i} (|alpha_{il}| + |alpha_{li}|)
};

// alpha is a full square row-major matrix.
WeightedBound offdiag_weighted_bound(std::span<const double> x, std::span<const double> alpha);

struct RowSumBound {
    double row_sum = 0.0;       // sum_{l in K, l != k} gcd(k,l)^{2s}/(kl)^s
    double bound = 0.0;         // s = 1: 2 log(K+/K-) sigma_{-1}(k);
                                // s < 1: 2^s k^{s-1} (int_{K-}^{K+} u^-s du) sigma_{1-2s}(k)
    bool asserted = false;      // the explicit constant is asserted only at s = 1
};

RowSumBound row_sum_bound(const seq::IndexSet& K, std::int64_t k, double s,
                          const ntheory::ArithmeticCache& cache);

struct GalRatio {
    double gal_sum = 0.0;       // sum_{i,j} gcd^2/(k_i k_j), diagonal included
    double value = 0.0;         // gal_sum / (r (log log r)^2) once r >= 16, else gal_sum
    bool enveloped = false;     // envelope applied (r >= 16)
};

GalRatio gal_ratio(const seq::IndexSet& K);

struct RieszCondition {
    double b_value = 0.0;       // max_i sum_{j != i} M(K,s)_{ij}
    bool verdict = false;       // b_value < 1
    bool window_evidence = true;  // finite window can only support, not certify
};

RieszCondition riesz_condition(const seq::IndexSet& K, double s);

}  // namespace dilated::spectral
