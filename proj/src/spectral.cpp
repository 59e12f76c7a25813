#include "dilated/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "dilated/numeric.hpp"

namespace dilated::spectral {

namespace {

class numeric_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

double gcd_entry(std::int64_t a, std::int64_t b, double s) {
    const double g = static_cast<double>(std::gcd(a, b));
    const double prod = static_cast<double>(a) * static_cast<double>(b);
    return std::pow(g * g / prod, s);
}

}  // namespace

SymMatrix::SymMatrix(std::size_t dim, std::string label) : dim_(dim), label_(std::move(label)) {
    if (dim == 0) throw std::invalid_argument("SymMatrix: dimension must be >= 1");
    data_.assign(dim * (dim + 1) / 2, 0.0);
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::frobenius_norm() const {
    double sq = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            const double v = (*this)(i, j);
            sq += v * v;
        }
    return std::sqrt(sq);
}

std::vector<double> SymMatrix::dense() const {
    std::vector<double> out(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] = (*this)(i, j);
    return out;
}

void SymMatrix::write_csv(std::ostream& os) const {
    char buf[40];
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            std::snprintf(buf, sizeof buf, "%.15g", (*this)(i, j));
            os << buf << (j + 1 < dim_ ? "," : "\n");
        }
    }
}

SymMatrix build_gcd_matrix(const seq::IndexSet& K, double s) {
    if (!(s > 0.0)) throw std::domain_error("build_gcd_matrix: requires s > 0");
    const auto& ks = K.elements();
    SymMatrix M(ks.size(), "M(" + std::to_string(ks.size()) + ", s=" + std::to_string(s) + ")");
    for (std::size_t i = 0; i < ks.size(); ++i) {
        M.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < ks.size(); ++j) M.set(i, j, gcd_entry(ks[i], ks[j], s));
    }
    return M;
}

SymMatrix build_gcd_power_matrix(const seq::IndexSet& K, double s) {
    if (!(s > 0.0)) throw std::domain_error("build_gcd_power_matrix: requires s > 0");
    const auto& ks = K.elements();
    SymMatrix G(ks.size(), "G(" + std::to_string(ks.size()) + ", s=" + std::to_string(s) + ")");
    for (std::size_t i = 0; i < ks.size(); ++i)
        for (std::size_t j = i; j < ks.size(); ++j) {
            const double g = static_cast<double>(std::gcd(ks[i], ks[j]));
            G.set(i, j, std::pow(g, 2.0 * s));
        }
    return G;
}

std::vector<double> jordan_factor(const seq::IndexSet& K, double s,
                                  const ntheory::ArithmeticCache& cache) {
    if (!(s > 0.0)) throw std::domain_error("jordan_factor: requires s > 0");
    if (!seq::is_factor_closed(K, cache))
        throw std::invalid_argument("jordan_factor: index set is not factor closed");
    const auto& xs = K.elements();
    const std::size_t n = xs.size();
    std::vector<double> A(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double j2s = ntheory::jordan_totient(xs[i], 2.0 * s, cache);
        if (j2s < 0.0)
            throw numeric_error("jordan_factor: negative Jordan totient J_{2s}(" +
                                std::to_string(xs[i]) + ")");
        const double root = std::sqrt(j2s);
        for (std::size_t j = 0; j < n; ++j)
            if (xs[j] % xs[i] == 0) A[i * n + j] = root;
    }
    return A;
}

double quadratic_form(const SymMatrix& M, std::span<const double> y) {
    if (y.size() != M.dim()) throw std::invalid_argument("quadratic_form: dimension mismatch");
    double diag = 0.0, off = 0.0;
    for (std::size_t i = 0; i < M.dim(); ++i) {
        diag += M(i, i) * y[i] * y[i];
        for (std::size_t j = i + 1; j < M.dim(); ++j) off += M(i, j) * y[i] * y[j];
    }
    return diag + 2.0 * off;
}

double jordan_quadratic(const seq::IndexSet& K, double s, std::span<const double> y,
                        const ntheory::ArithmeticCache& cache) {
    if (!seq::is_factor_closed(K, cache))
        throw std::invalid_argument("jordan_quadratic: index set is not factor closed");
    if (y.size() != K.size()) throw std::invalid_argument("jordan_quadratic: dimension mismatch");
    const auto& xs = K.elements();
    const std::size_t n = xs.size();
    std::vector<double> scaled(n);
    for (std::size_t k = 0; k < n; ++k)
        scaled[k] = y[k] / std::pow(static_cast<double>(xs[k]), s);
    std::vector<double> terms(n);
    for (std::size_t i = 0; i < n; ++i) {
        double inner = 0.0;
        for (std::size_t k = i; k < n; ++k)
            if (xs[k] % xs[i] == 0) inner += scaled[k];
        terms[i] = ntheory::jordan_totient(xs[i], 2.0 * s, cache) * inner * inner;
    }
    return numeric::pairwise_sum(terms);
}

namespace {

// LU solve with partial pivoting, used by the inverse-iteration residual.
bool lu_solve(std::vector<double> a, std::vector<double>& x, std::size_t n) {
    std::vector<std::size_t> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[best * n + col])) best = r;
        if (best != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[best * n + c]);
            std::swap(x[col], x[best]);
        }
        double pivot = a[col * n + col];
        if (pivot == 0.0) pivot = a[col * n + col] = 1e-300;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / pivot;
            if (f == 0.0) continue;
            a[r * n + col] = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            x[r] -= f * x[col];
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        double v = x[ri];
        for (std::size_t c = ri + 1; c < n; ++c) v -= a[ri * n + c] * x[c];
        x[ri] = v / a[ri * n + ri];
    }
    return true;
}

// One inverse-iteration refinement around lambda; returns ||Mv - lambda v||_inf.
double extreme_residual(const SymMatrix& M, double lambda) {
    const std::size_t n = M.dim();
    const std::vector<double> dense = M.dense();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);
    const double shift = lambda * (1.0 + 1e-13) + 1e-300;
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<double> shifted = dense;
        for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] -= shift;
        lu_solve(std::move(shifted), v, n);
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        for (double& c : v) c /= norm;
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double mv = 0.0;
        for (std::size_t j = 0; j < n; ++j) mv += dense[i * n + j] * v[j];
        res = std::max(res, std::abs(mv - lambda * v[i]));
    }
    return res;
}

}  // namespace

namespace {

// A = L L^T, L row-major lower; fails on a pivot too small for a
// confidently positive-definite factorization
bool cholesky_lower(const std::vector<double>& a, std::size_t n, std::vector<double>& L) {
    L.assign(n * n, 0.0);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i * n + i]));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            const double* ri = L.data() + i * n;
            const double* rj = L.data() + j * n;
            for (std::size_t k = 0; k < j; ++k) sum -= ri[k] * rj[k];
            if (i == j) {
                if (!(sum > 1e-10 * scale)) return false;
                L[i * n + i] = std::sqrt(sum);
            } else {
                L[i * n + j] = sum / L[j * n + j];
            }
        }
    }
    return true;
}

// One-sided cyclic Jacobi on the columns of B = L^T (stored contiguously as
// the rows of L): orthogonalizing the columns of B diagonalizes A = B^T B,
// and the final squared column norms are the eigenvalues. Rotations touch
// two contiguous column buffers, so sweeps stream through memory.
bool one_sided_jacobi(std::vector<double>& cols, std::size_t n, double target, int& sweeps,
                      std::vector<double>& eigenvalues) {
    std::vector<double> norms(n);
    auto dot = [&](std::size_t p, std::size_t q) {
        const double* cp = cols.data() + p * n;
        const double* cq = cols.data() + q * n;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += cp[i] * cq[i];
        return s;
    };
    auto offdiag = [&]() {
        double sq = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double v = dot(p, q);
                sq += 2.0 * v * v;
            }
        return std::sqrt(sq);
    };
    for (std::size_t p = 0; p < n; ++p) norms[p] = dot(p, p);

    const double elem_target = target / static_cast<double>(n);
    constexpr int kMaxSweeps = 60;
    for (sweeps = 0; sweeps < kMaxSweeps; ++sweeps) {
        bool rotated = false;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = dot(p, q);
                if (std::abs(apq) <= elem_target) continue;
                rotated = true;
                const double app = norms[p];
                const double aqq = norms[q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                double* cp = cols.data() + p * n;
                double* cq = cols.data() + q * n;
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = cp[i];
                    const double viq = cq[i];
                    cp[i] = c * vip - s * viq;
                    cq[i] = s * vip + c * viq;
                }
                norms[p] = app - t * apq;
                norms[q] = aqq + t * apq;
            }
        }
        if (!rotated && offdiag() <= target) {
            ++sweeps;
            break;
        }
    }
    if (sweeps >= kMaxSweeps) return false;
    for (std::size_t p = 0; p < n; ++p) norms[p] = dot(p, p);
    eigenvalues = norms;
    return true;
}

}  // namespace

EigenSummary eigen_extremes(const SymMatrix& M) {
    const std::size_t n = M.dim();
    if (n > 2048) throw std::invalid_argument("eigen_extremes: dimension cap is 2048");
    std::vector<double> a = M.dense();
    for (double v : a)
        if (!std::isfinite(v)) throw numeric_error("eigen_extremes: non-finite matrix entry");

    const double norm = M.frobenius_norm();
    const double target = 1e-12 * norm;

    // positive-definite inputs take the one-sided route on the Cholesky factor
    if (n > 1) {
        std::vector<double> cols;
        if (cholesky_lower(a, n, cols)) {
            EigenSummary out;
            std::vector<double> eigenvalues;
            if (one_sided_jacobi(cols, n, target, out.sweeps, eigenvalues)) {
                std::sort(eigenvalues.begin(), eigenvalues.end());
                out.lambda_min = eigenvalues.front();
                out.lambda_max = eigenvalues.back();
                out.spectrum = std::move(eigenvalues);
                out.residual = std::max(extreme_residual(M, out.lambda_min),
                                        extreme_residual(M, out.lambda_max));
                return out;
            }
        }
    }

    auto offdiag = [&]() {
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) sq += 2.0 * a[i * n + j] * a[i * n + j];
        return std::sqrt(sq);
    };

    EigenSummary out;
    constexpr int kMaxSweeps = 60;
    int sweep = 0;
    while (n > 1 && offdiag() > target) {
        if (++sweep > kMaxSweeps) throw numeric_error("eigen_extremes: Jacobi did not converge");
        // Rutishauser schedule: early sweeps only touch elements carrying
        // real off-diagonal mass; later sweeps rotate everything and zero
        // entries too small to move any eigenvalue at the target accuracy.
        double mass = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) mass += std::abs(a[p * n + q]);
        const double tresh = sweep <= 3 ? 0.2 * mass / static_cast<double>(n * n) : 0.0;
        const double wipe = 1e-4 * target / static_cast<double>(n);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                if (sweep > 3 && std::abs(apq) < wipe) {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                if (std::abs(apq) <= tresh) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                double* rowp = a.data() + p * n;
                double* rowq = a.data() + q * n;
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = rowp[i];
                    const double viq = rowq[i];
                    rowp[i] = c * vip - s * viq;
                    rowq[i] = s * vip + c * viq;
                }
                for (std::size_t i = 0; i < n; ++i) a[i * n + p] = rowp[i];
                for (std::size_t i = 0; i < n; ++i) a[i * n + q] = rowq[i];
                rowp[p] = app - t * apq;
                rowq[q] = aqq + t * apq;
                rowp[q] = 0.0;
                rowq[p] = 0.0;
            }
        }
    }
    out.sweeps = sweep;

    std::vector<double> spectrum(n);
    for (std::size_t i = 0; i < n; ++i) spectrum[i] = a[i * n + i];
    std::sort(spectrum.begin(), spectrum.end());
    out.lambda_min = spectrum.front();
    out.lambda_max = spectrum.back();
    out.spectrum = std::move(spectrum);

    out.residual = std::max(extreme_residual(M, out.lambda_min),
                            extreme_residual(M, out.lambda_max));
    return out;
}

EigenBoundsRow eigen_bounds_audit(std::size_t n, double s) {
    if (n < 1) throw std::invalid_argument("eigen_bounds_audit: requires n >= 1");
    if (!(s > 0.5))
        throw std::domain_error("eigen_bounds_audit: requires s > 1/2 (definiteness regime)");
    std::vector<std::int64_t> elems(n);
    std::iota(elems.begin(), elems.end(), 1);
    const seq::IndexSet K = seq::IndexSet::from_elements(std::move(elems), seq::Provenance::Range);
    const EigenSummary eig = eigen_extremes(build_gcd_matrix(K, s));

    EigenBoundsRow row;
    row.n = n;
    row.s = s;
    row.lambda_min = eig.lambda_min;
    row.lambda_max = eig.lambda_max;
    if (s > 1.0) {
        const double z2s = ntheory::zeta(2.0 * s);
        const double zs = ntheory::zeta(s);
        row.lower_bound = z2s / (zs * zs);
        row.upper_bound = zs * zs / z2s;
        row.asserted = true;
        constexpr double kSlack = 1e-9;
        row.pass = eig.lambda_min >= *row.lower_bound - kSlack &&
                   eig.lambda_max <= *row.upper_bound + kSlack;
    }
    return row;
}

WeightedBound offdiag_weighted_bound(std::span<const double> x, std::span<const double> alpha) {
    const std::size_t n = x.size();
    if (alpha.size() != n * n)
        throw std::invalid_argument("offdiag_weighted_bound: alpha must be n x n");
    WeightedBound out;
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) lhs += x[i] * x[j] * alpha[i * n + j];
    out.lhs = std::abs(lhs);
    double rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            if (l != i) row += std::abs(alpha[i * n + l]) + std::abs(alpha[l * n + i]);
        rhs += x[i] * x[i] * row;
    }
    out.rhs = 0.5 * rhs;
    return out;
}

RowSumBound row_sum_bound(const seq::IndexSet& K, std::int64_t k, double s,
                          const ntheory::ArithmeticCache& cache) {
    if (!(s > 0.5 && s <= 1.0)) throw std::domain_error("row_sum_bound: requires 1/2 < s <= 1");
    if (!K.contains(k)) throw std::invalid_argument("row_sum_bound: k must belong to K");
    RowSumBound out;
    std::vector<double> terms;
    terms.reserve(K.size());
    for (std::int64_t l : K.elements())
        if (l != k) terms.push_back(gcd_entry(k, l, s));
    out.row_sum = numeric::pairwise_sum(terms);

    const double kp = static_cast<double>(K.k_plus());
    const double km = static_cast<double>(K.k_minus());
    if (s == 1.0) {
        out.bound = 2.0 * std::log(kp / km) * ntheory::sigma_alpha(k, -1.0, cache);
        out.asserted = true;
    } else {
        const double integral = (std::pow(kp, 1.0 - s) - std::pow(km, 1.0 - s)) / (1.0 - s);
        out.bound = std::pow(2.0, s) * std::pow(static_cast<double>(k), s - 1.0) * integral *
                    ntheory::sigma_alpha(k, 1.0 - 2.0 * s, cache);
        out.asserted = false;  // the paper's C_s is unspecified below s = 1
    }
    return out;
}

GalRatio gal_ratio(const seq::IndexSet& K) {
    const std::size_t r = K.size();
    if (r < 3) throw std::invalid_argument("gal_ratio: requires |K| >= 3");
    const auto& ks = K.elements();
    std::vector<double> terms;
    terms.reserve(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) terms.push_back(gcd_entry(ks[i], ks[j], 1.0));
    GalRatio out;
    out.gal_sum = numeric::pairwise_sum(terms);
    if (r >= 16) {
        const double loglog = std::log(std::log(static_cast<double>(r)));
        out.value = out.gal_sum / (static_cast<double>(r) * loglog * loglog);
        out.enveloped = true;
    } else {
        out.value = out.gal_sum;
    }
    return out;
}

RieszCondition riesz_condition(const seq::IndexSet& K, double s) {
    if (!(s > 0.5)) throw std::domain_error("riesz_condition: requires s > 1/2");
    const auto& ks = K.elements();
    RieszCondition out;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        std::vector<double> terms;
        terms.reserve(ks.size());
        for (std::size_t j = 0; j < ks.size(); ++j)
            if (j != i) terms.push_back(gcd_entry(ks[i], ks[j], s));
        out.b_value = std::max(out.b_value, numeric::pairwise_sum(terms));
    }
    out.verdict = out.b_value < 1.0;
    return out;
}

}  // namespace dilated::spectral
