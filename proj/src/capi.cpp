#include "dilated.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <numeric>
#include <span>
#include <string>

#include "dilated/criteria.hpp"
#include "dilated/ntheory.hpp"
#include "dilated/sequences.hpp"
#include "dilated/series.hpp"
#include "dilated/spectral.hpp"

struct ds_cache {
    dilated::ntheory::ArithmeticCache impl;
};
struct ds_indexset {
    dilated::seq::IndexSet impl;
};
struct ds_matrix {
    dilated::spectral::SymMatrix impl;
};
struct ds_eigen {
    dilated::spectral::EigenSummary impl;
};
struct ds_profile {
    dilated::series::FourierProfile impl;
};

namespace {

thread_local std::string g_last_error;

ds_status fail(ds_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
ds_status wrap(Fn&& fn) {
    try {
        fn();
        return DS_OK;
    } catch (const dilated::seq::parse_error& e) {
        return fail(DS_ERR_PARSE, e.what());
    } catch (const dilated::series::precision_error& e) {
        return fail(DS_ERR_PRECISION, e.what());
    } catch (const std::domain_error& e) {
        return fail(DS_ERR_DOMAIN, e.what());
    } catch (const std::out_of_range& e) {
        return fail(DS_ERR_RANGE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(DS_ERR_USAGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(DS_ERR_NOMEM, "out of memory");
    } catch (const std::exception& e) {
        return fail(DS_ERR_NUMERIC, e.what());
    }
}

ds_status require(bool ok, const char* what) {
    return ok ? DS_OK : fail(DS_ERR_USAGE, what);
}

int verdict_code(dilated::criteria::Verdict v) {
    switch (v) {
        case dilated::criteria::Verdict::Converges: return 0;
        case dilated::criteria::Verdict::Diverges: return 1;
        case dilated::criteria::Verdict::Undecided: return 2;
    }
    return 2;
}

dilated::criteria::CriterionReport run_criterion(const std::string& name,
                                                 const dilated::criteria::CoeffFamily& fam,
                                                 double s, double h, std::int64_t window,
                                                 const dilated::ntheory::ArithmeticCache& cache) {
    using namespace dilated::criteria;
    const std::int64_t w = std::min(window, cache.limit());
    if (name == "rademacher_menshov") return rademacher_menshov(fam, w);
    if (name == "tandori") return tandori(fam, h, w);
    if (name == "two_series") {
        PhiPreset phi;
        phi.kind = s < 1.0 ? PhiPreset::Kind::SubexpGap : PhiPreset::Kind::LogLoglog;
        phi.s = s;
        TwoSeriesReport two = two_series_criterion(fam, s, phi, cache, w);
        CriterionReport rep = two.weighted_sum;
        rep.criterion = "two_series";
        rep.verdict = two.combined;
        rep.note = "inverse sum " + std::string(verdict_name(two.inverse_sum.verdict));
        return rep;
    }
    if (name == "dyadic_divisor") return dyadic_divisor_condition(fam, cache, w);
    if (name == "divisor_growth") return divisor_growth_condition(fam, w);
    if (name == "divisor_pillai" || name == "divisor_count" || name == "divisor_sigma") {
        std::vector<std::int64_t> idn(static_cast<std::size_t>(w));
        std::iota(idn.begin(), idn.end(), 1);
        const auto K =
            dilated::seq::IndexSet::from_elements(std::move(idn), dilated::seq::Provenance::Range);
        const DivisorMode mode = name == "divisor_pillai"   ? DivisorMode::PillaiMean
                                 : name == "divisor_count" ? DivisorMode::DivisorCount
                                                           : DivisorMode::SigmaPower;
        return divisor_criterion(fam, K, mode, s, cache, w);
    }
    if (name == "hooley") {
        const std::int64_t trunc = std::min<std::int64_t>(w, 10'000);
        if (fam.kind() == CoeffFamily::Kind::Power && fam.a() > 0.5) {
            return hooley_condition(dilated::series::FourierProfile::power_law_sine(fam.a(), trunc),
                                    cache, w);
        }
        std::vector<std::pair<std::int64_t, double>> coeffs;
        for (std::int64_t nu = 1; nu <= trunc; ++nu) coeffs.emplace_back(nu, fam.value(nu));
        return hooley_condition(dilated::series::FourierProfile::explicit_profile(std::move(coeffs)),
                                cache, w);
    }
    throw std::invalid_argument("unknown criterion '" + name + "'");
}

}  // namespace

extern "C" {

const char* ds_last_error(void) { return g_last_error.c_str(); }

const char* ds_version(void) { return "0.1.0"; }

ds_status ds_cache_create(int64_t limit, ds_cache** out) {
    if (auto rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new ds_cache{dilated::ntheory::ArithmeticCache(limit)}; });
}

void ds_cache_destroy(ds_cache* cache) { delete cache; }

int64_t ds_cache_limit(const ds_cache* cache) { return cache ? cache->impl.limit() : 0; }

ds_status ds_mobius(const ds_cache* cache, int64_t n, int* out) {
    if (auto rc = require(cache && out, "null argument")) return rc;
    return wrap([&] { *out = cache->impl.mobius(n); });
}

ds_status ds_totient(const ds_cache* cache, int64_t n, int64_t* out) {
    if (auto rc = require(cache && out, "null argument")) return rc;
    return wrap([&] { *out = cache->impl.totient(n); });
}

ds_status ds_divisors(const ds_cache* cache, int64_t n, int64_t* buf, size_t cap, size_t* count) {
    if (auto rc = require(cache && count, "null argument")) return rc;
    return wrap([&] {
        const auto divs = dilated::ntheory::divisors(n, cache->impl);
        *count = divs.size();
        if (buf) {
            if (cap < divs.size()) throw std::invalid_argument("divisor buffer too small");
            std::memcpy(buf, divs.data(), divs.size() * sizeof(int64_t));
        }
    });
}

ds_status ds_sigma_alpha(const ds_cache* cache, int64_t n, double alpha, double* out) {
    if (auto rc = require(cache && out, "null argument")) return rc;
    return wrap([&] { *out = dilated::ntheory::sigma_alpha(n, alpha, cache->impl); });
}

ds_status ds_jordan_totient(const ds_cache* cache, int64_t n, double eps, double* out) {
    if (auto rc = require(cache && out, "null argument")) return rc;
    return wrap([&] { *out = dilated::ntheory::jordan_totient(n, eps, cache->impl); });
}

ds_status ds_pillai_mean(const ds_cache* cache, int64_t n, double* out) {
    if (auto rc = require(cache && out, "null argument")) return rc;
    return wrap([&] { *out = dilated::ntheory::pillai_mean(n, cache->impl); });
}

ds_status ds_erdos_hooley_delta(const ds_cache* cache, int64_t n, int64_t* out) {
    if (auto rc = require(cache && out, "null argument")) return rc;
    return wrap([&] { *out = dilated::ntheory::erdos_hooley_delta(n, cache->impl); });
}

ds_status ds_zeta(double s, double* out) {
    if (auto rc = require(out != nullptr, "null argument")) return rc;
    return wrap([&] { *out = dilated::ntheory::zeta(s); });
}

ds_status ds_indexset_parse(const char* spec, const ds_cache* cache, ds_indexset** out) {
    if (auto rc = require(spec && cache && out, "null argument")) return rc;
    return wrap([&] { *out = new ds_indexset{dilated::seq::parse_spec(spec, cache->impl)}; });
}

ds_status ds_indexset_from_array(const int64_t* elems, size_t n, ds_indexset** out) {
    if (auto rc = require(elems && out && n > 0, "null or empty input")) return rc;
    return wrap([&] {
        *out = new ds_indexset{dilated::seq::IndexSet::from_elements(
            std::vector<std::int64_t>(elems, elems + n))};
    });
}

void ds_indexset_destroy(ds_indexset* set) { delete set; }

size_t ds_indexset_size(const ds_indexset* set) { return set ? set->impl.size() : 0; }

ds_status ds_indexset_elements(const ds_indexset* set, int64_t* buf, size_t cap) {
    if (auto rc = require(set && buf, "null argument")) return rc;
    if (auto rc = require(cap >= set->impl.size(), "element buffer too small")) return rc;
    std::memcpy(buf, set->impl.elements().data(), set->impl.size() * sizeof(int64_t));
    return DS_OK;
}

const char* ds_indexset_provenance(const ds_indexset* set) {
    return set ? dilated::seq::provenance_name(set->impl.provenance()).data() : "";
}

ds_status ds_indexset_write(const ds_indexset* set, const char* path) {
    if (auto rc = require(set && path, "null argument")) return rc;
    return wrap([&] {
        std::ofstream os(path);
        if (!os) throw std::invalid_argument(std::string("cannot open ") + path);
        set->impl.write_elements(os);
    });
}

ds_status ds_factor_closure(const ds_indexset* set, const ds_cache* cache, ds_indexset** out) {
    if (auto rc = require(set && cache && out, "null argument")) return rc;
    return wrap(
        [&] { *out = new ds_indexset{dilated::seq::factor_closure(set->impl, cache->impl)}; });
}

ds_status ds_is_factor_closed(const ds_indexset* set, const ds_cache* cache, int* out) {
    if (auto rc = require(set && cache && out, "null argument")) return rc;
    return wrap([&] { *out = dilated::seq::is_factor_closed(set->impl, cache->impl) ? 1 : 0; });
}

ds_status ds_theta(const ds_indexset* set, double* values, double* sup) {
    if (auto rc = require(set && values && sup, "null argument")) return rc;
    return wrap([&] {
        const auto prof = dilated::seq::theta(set->impl);
        std::memcpy(values, prof.values.data(), prof.values.size() * sizeof(double));
        *sup = prof.sup_value;
    });
}

ds_status ds_theta_bound_report(const ds_indexset* set, const ds_cache* cache, double* theta,
                                double* envelope, double* ratio) {
    if (auto rc = require(set && cache && theta && envelope && ratio, "null argument")) return rc;
    return wrap([&] {
        const auto rows = dilated::seq::theta_bound_report(set->impl, cache->impl);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            theta[i] = rows[i].theta;
            envelope[i] = rows[i].envelope;
            ratio[i] = rows[i].ratio;
        }
    });
}

ds_status ds_example_family_check(const ds_indexset* set, double* sup_theta,
                                  double* max_theta_logk, double* proof_envelope,
                                  double* generator_mass) {
    if (auto rc = require(set && sup_theta && max_theta_logk && proof_envelope && generator_mass,
                          "null argument"))
        return rc;
    return wrap([&] {
        const auto check = dilated::seq::example_family_check(set->impl);
        *sup_theta = check.sup_theta;
        *max_theta_logk = check.max_theta_logk.value_or(std::nan(""));
        *proof_envelope = check.proof_envelope.value_or(std::nan(""));
        *generator_mass = check.generator_mass.value_or(std::nan(""));
    });
}

ds_status ds_gcd_matrix(const ds_indexset* set, double s, ds_matrix** out) {
    if (auto rc = require(set && out, "null argument")) return rc;
    return wrap([&] { *out = new ds_matrix{dilated::spectral::build_gcd_matrix(set->impl, s)}; });
}

ds_status ds_gcd_power_matrix(const ds_indexset* set, double s, ds_matrix** out) {
    if (auto rc = require(set && out, "null argument")) return rc;
    return wrap(
        [&] { *out = new ds_matrix{dilated::spectral::build_gcd_power_matrix(set->impl, s)}; });
}

void ds_matrix_destroy(ds_matrix* m) { delete m; }

size_t ds_matrix_dim(const ds_matrix* m) { return m ? m->impl.dim() : 0; }

double ds_matrix_get(const ds_matrix* m, size_t i, size_t j) { return m->impl(i, j); }

ds_status ds_matrix_write_csv(const ds_matrix* m, const char* path) {
    if (auto rc = require(m && path, "null argument")) return rc;
    return wrap([&] {
        std::ofstream os(path);
        if (!os) throw std::invalid_argument(std::string("cannot open ") + path);
        m->impl.write_csv(os);
    });
}

ds_status ds_quadratic_form(const ds_matrix* m, const double* y, size_t n, double* out) {
    if (auto rc = require(m && y && out, "null argument")) return rc;
    return wrap(
        [&] { *out = dilated::spectral::quadratic_form(m->impl, std::span<const double>(y, n)); });
}

ds_status ds_jordan_quadratic(const ds_indexset* set, double s, const double* y, size_t n,
                              const ds_cache* cache, double* out) {
    if (auto rc = require(set && y && cache && out, "null argument")) return rc;
    return wrap([&] {
        *out = dilated::spectral::jordan_quadratic(set->impl, s, std::span<const double>(y, n),
                                                   cache->impl);
    });
}

ds_status ds_jordan_factor(const ds_indexset* set, double s, const ds_cache* cache, double* buf,
                           size_t cap) {
    if (auto rc = require(set && cache && buf, "null argument")) return rc;
    if (auto rc = require(cap >= set->impl.size() * set->impl.size(), "factor buffer too small"))
        return rc;
    return wrap([&] {
        const auto A = dilated::spectral::jordan_factor(set->impl, s, cache->impl);
        std::memcpy(buf, A.data(), A.size() * sizeof(double));
    });
}

ds_status ds_eigen_compute(const ds_matrix* m, ds_eigen** out) {
    if (auto rc = require(m && out, "null argument")) return rc;
    return wrap([&] { *out = new ds_eigen{dilated::spectral::eigen_extremes(m->impl)}; });
}

void ds_eigen_destroy(ds_eigen* e) { delete e; }

double ds_eigen_min(const ds_eigen* e) { return e->impl.lambda_min; }

double ds_eigen_max(const ds_eigen* e) { return e->impl.lambda_max; }

double ds_eigen_residual(const ds_eigen* e) { return e->impl.residual; }

size_t ds_eigen_spectrum_size(const ds_eigen* e) { return e ? e->impl.spectrum.size() : 0; }

ds_status ds_eigen_spectrum(const ds_eigen* e, double* buf, size_t cap) {
    if (auto rc = require(e && buf, "null argument")) return rc;
    if (auto rc = require(cap >= e->impl.spectrum.size(), "spectrum buffer too small")) return rc;
    std::memcpy(buf, e->impl.spectrum.data(), e->impl.spectrum.size() * sizeof(double));
    return DS_OK;
}

ds_status ds_eigen_write_json(const ds_eigen* e, const char* path) {
    if (auto rc = require(e && path, "null argument")) return rc;
    return wrap([&] {
        std::ofstream os(path);
        if (!os) throw std::invalid_argument(std::string("cannot open ") + path);
        char buf[40];
        os << "[";
        for (std::size_t i = 0; i < e->impl.spectrum.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.15g", e->impl.spectrum[i]);
            os << (i ? "," : "") << buf;
        }
        os << "]\n";
    });
}

ds_status ds_eigen_bounds_audit(size_t n, double s, double* lambda_min, double* lambda_max,
                                double* bounds, int* asserted, int* pass) {
    if (auto rc = require(lambda_min && lambda_max && bounds && asserted && pass, "null argument"))
        return rc;
    return wrap([&] {
        const auto row = dilated::spectral::eigen_bounds_audit(n, s);
        *lambda_min = row.lambda_min;
        *lambda_max = row.lambda_max;
        bounds[0] = row.lower_bound.value_or(std::nan(""));
        bounds[1] = row.upper_bound.value_or(std::nan(""));
        *asserted = row.asserted ? 1 : 0;
        *pass = row.pass ? 1 : 0;
    });
}

ds_status ds_row_sum_bound(const ds_indexset* set, int64_t k, double s, const ds_cache* cache,
                           double* row_sum, double* bound, int* asserted) {
    if (auto rc = require(set && cache && row_sum && bound && asserted, "null argument")) return rc;
    return wrap([&] {
        const auto r = dilated::spectral::row_sum_bound(set->impl, k, s, cache->impl);
        *row_sum = r.row_sum;
        *bound = r.bound;
        *asserted = r.asserted ? 1 : 0;
    });
}

ds_status ds_gal_ratio(const ds_indexset* set, double* gal_sum, double* value, int* enveloped) {
    if (auto rc = require(set && gal_sum && value && enveloped, "null argument")) return rc;
    return wrap([&] {
        const auto g = dilated::spectral::gal_ratio(set->impl);
        *gal_sum = g.gal_sum;
        *value = g.value;
        *enveloped = g.enveloped ? 1 : 0;
    });
}

ds_status ds_riesz_condition(const ds_indexset* set, double s, double* b_value, int* verdict) {
    if (auto rc = require(set && b_value && verdict, "null argument")) return rc;
    return wrap([&] {
        const auto r = dilated::spectral::riesz_condition(set->impl, s);
        *b_value = r.b_value;
        *verdict = r.verdict ? 1 : 0;
    });
}

ds_status ds_profile_power_law(double s, int64_t truncation, ds_profile** out) {
    if (auto rc = require(out != nullptr, "null argument")) return rc;
    return wrap([&] {
        *out = new ds_profile{dilated::series::FourierProfile::power_law_sine(s, truncation)};
    });
}

ds_status ds_profile_explicit(const int64_t* freqs, const double* coeffs, size_t n,
                              ds_profile** out) {
    if (auto rc = require(freqs && coeffs && out, "null argument")) return rc;
    return wrap([&] {
        std::vector<std::pair<std::int64_t, double>> pairs;
        pairs.reserve(n);
        for (size_t i = 0; i < n; ++i) pairs.emplace_back(freqs[i], coeffs[i]);
        *out = new ds_profile{dilated::series::FourierProfile::explicit_profile(std::move(pairs))};
    });
}

void ds_profile_destroy(ds_profile* p) { delete p; }

ds_status ds_inner_product_powerlaw(int64_t k, int64_t l, double s, double* out) {
    if (auto rc = require(out != nullptr, "null argument")) return rc;
    return wrap([&] { *out = dilated::series::inner_product_powerlaw(k, l, s); });
}

ds_status ds_norm_sq_powerlaw(const ds_indexset* set, const double* c, size_t n, double s,
                              double* out) {
    if (auto rc = require(set && c && out, "null argument")) return rc;
    return wrap([&] {
        *out = dilated::series::norm_sq_powerlaw(set->impl, std::span<const double>(c, n), s);
    });
}

ds_status ds_norm_collisions(const ds_indexset* set, const double* c, size_t n,
                             const ds_profile* p, double* out) {
    if (auto rc = require(set && c && p && out, "null argument")) return rc;
    return wrap([&] {
        *out = dilated::series::exact_norm_collisions(set->impl, std::span<const double>(c, n),
                                                      p->impl);
    });
}

ds_status ds_quadrature_gram(int64_t k, int64_t l, const ds_profile* p, size_t grid,
                             double* out) {
    if (auto rc = require(p && out, "null argument")) return rc;
    return wrap([&] { *out = dilated::series::quadrature_gram(k, l, p->impl, grid); });
}

ds_status ds_quadrature_norm_sq(const ds_indexset* set, const double* c, size_t n,
                                const ds_profile* p, size_t grid, double* out) {
    if (auto rc = require(set && c && p && out, "null argument")) return rc;
    return wrap([&] {
        *out = dilated::series::quadrature_norm_sq(set->impl, std::span<const double>(c, n),
                                                   p->impl, grid);
    });
}

ds_status ds_sample_partial_sum(const ds_indexset* set, const double* c, size_t n,
                                const ds_profile* p, size_t grid, double* buf) {
    if (auto rc = require(set && c && p && buf, "null argument")) return rc;
    return wrap([&] {
        const auto samples = dilated::series::sample_partial_sum(
            set->impl, std::span<const double>(c, n), p->impl, grid);
        std::memcpy(buf, samples.data(), samples.size() * sizeof(double));
    });
}

ds_status ds_modulus_of_continuity(const ds_profile* p, double h, double* out) {
    if (auto rc = require(p && out, "null argument")) return rc;
    return wrap([&] { *out = dilated::series::modulus_of_continuity(p->impl, h); });
}

ds_status ds_block_energies(const ds_indexset* set, const double* c, size_t n,
                            const ds_profile* p, double band_ratio, int64_t* band_index,
                            double* band_energy, size_t cap, size_t* count, double* total,
                            double* sum_bands, int* upper_ok, int* lower_applicable,
                            int* lower_ok) {
    if (auto rc = require(set && c && p && count && total && sum_bands && upper_ok &&
                              lower_applicable && lower_ok,
                          "null argument"))
        return rc;
    return wrap([&] {
        const auto be = dilated::series::block_operator_energies(
            set->impl, std::span<const double>(c, n), p->impl, band_ratio);
        *count = be.bands.size();
        if (band_index && band_energy) {
            if (cap < be.bands.size()) throw std::invalid_argument("band buffer too small");
            for (std::size_t i = 0; i < be.bands.size(); ++i) {
                band_index[i] = be.bands[i].v;
                band_energy[i] = be.bands[i].energy;
            }
        }
        *total = be.total;
        *sum_bands = be.sum_bands;
        *upper_ok = be.upper_ok ? 1 : 0;
        *lower_applicable = be.lower_applicable ? 1 : 0;
        *lower_ok = be.lower_ok ? 1 : 0;
    });
}

ds_status ds_square_audit(const ds_indexset* set, const double* c, size_t n,
                          const ds_profile* p, double mu, int64_t* block_index,
                          double* block_norm, size_t cap, size_t* count, double* sum_blocks,
                          double* c_norm_sq, double* c_emp, int* two_sided) {
    if (auto rc =
            require(set && c && p && count && sum_blocks && c_norm_sq && c_emp && two_sided,
                    "null argument"))
        return rc;
    return wrap([&] {
        const auto audit = dilated::series::square_theorem_audit(
            set->impl, std::span<const double>(c, n), p->impl, mu);
        *count = audit.blocks.size();
        if (block_index && block_norm) {
            if (cap < audit.blocks.size()) throw std::invalid_argument("block buffer too small");
            for (std::size_t i = 0; i < audit.blocks.size(); ++i) {
                block_index[i] = audit.blocks[i].j;
                block_norm[i] = audit.blocks[i].norm_sq;
            }
        }
        *sum_blocks = audit.sum_blocks;
        *c_norm_sq = audit.c_norm_sq;
        *c_emp = audit.c_emp;
        *two_sided = audit.two_sided ? 1 : 0;
    });
}

ds_status ds_dirichlet_probe(const ds_profile* p, const double* sigmas, size_t n_sigma,
                             const double* ts, size_t n_t, double* moduli, double* min_mod,
                             double* max_mod) {
    if (auto rc = require(p && sigmas && ts && moduli && min_mod && max_mod, "null argument"))
        return rc;
    return wrap([&] {
        const auto grid = dilated::series::dirichlet_probe(
            p->impl, std::span<const double>(sigmas, n_sigma), std::span<const double>(ts, n_t));
        for (std::size_t i = 0; i < grid.points.size(); ++i) moduli[i] = grid.points[i].modulus;
        *min_mod = grid.min_modulus;
        *max_mod = grid.max_modulus;
    });
}

ds_status ds_profile_regularity(const ds_profile* p, double band_ratio, double* value,
                                int* finite) {
    if (auto rc = require(p && value && finite, "null argument")) return rc;
    return wrap([&] {
        const auto L = dilated::criteria::profile_regularity_L(p->impl, band_ratio);
        *value = L.value;
        *finite = L.finite ? 1 : 0;
    });
}

ds_status ds_criterion(const char* criterion, const char* family, double s, double h,
                       int64_t window, const ds_cache* cache, double* partial_sum,
                       double* tail_bound, int* verdict) {
    if (auto rc = require(criterion && family && cache && partial_sum && tail_bound && verdict,
                          "null argument"))
        return rc;
    return wrap([&] {
        const auto fam = dilated::criteria::CoeffFamily::parse(family);
        const auto rep = run_criterion(criterion, fam, s, h, window, cache->impl);
        *partial_sum = rep.partial_sum;
        *tail_bound = rep.tail_bound.value_or(std::nan(""));
        *verdict = verdict_code(rep.verdict);
    });
}

ds_status ds_criteria_table(const char* const* families, size_t n_families, double s, double h,
                            int64_t window, const ds_cache* cache, char** csv_out) {
    if (auto rc = require(families && cache && csv_out && n_families > 0, "null argument"))
        return rc;
    return wrap([&] {
        std::vector<dilated::criteria::CriterionReport> rows;
        for (size_t i = 0; i < n_families; ++i) {
            const auto fam = dilated::criteria::CoeffFamily::parse(families[i]);
            auto batch = dilated::criteria::standard_comparison(fam, s, h, cache->impl, window);
            for (auto& rep : batch) rows.push_back(std::move(rep));
        }
        const std::string csv = dilated::criteria::render_comparison_csv(rows);
        char* buf = static_cast<char*>(std::malloc(csv.size() + 1));
        if (!buf) throw std::bad_alloc();
        std::memcpy(buf, csv.c_str(), csv.size() + 1);
        *csv_out = buf;
    });
}

void ds_string_destroy(char* s) { std::free(s); }

}  // extern "C"
