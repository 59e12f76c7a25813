#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dilated/ntheory.hpp"

namespace dilated::seq {

enum class Provenance { Explicit, Range, Primes, Hadamard, Squarefree, Closure };

std::string_view provenance_name(Provenance p);

// Error of the sequence mini-language parser; position is a byte offset
// into the spec string.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Sorted distinct positive integers with provenance. Hadamard sets remember
// their ratio q, squarefree sets their generator primes; both feed the
// per-family diagnostics.
class IndexSet {
public:
    static IndexSet from_elements(std::vector<std::int64_t> elements,
                                  Provenance provenance = Provenance::Explicit);

    const std::vector<std::int64_t>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::int64_t k_minus() const { return elements_.front(); }
    std::int64_t k_plus() const { return elements_.back(); }
    bool contains(std::int64_t k) const;

    Provenance provenance() const { return provenance_; }
    std::optional<double> hadamard_ratio() const { return hadamard_ratio_; }
    const std::vector<std::int64_t>& generator_primes() const { return generator_primes_; }
    // set when a squarefree family was built with sum 1/p_i >= 1
    bool squarefree_mass_warning() const { return squarefree_mass_warning_; }

    void write_elements(std::ostream& os) const;  // newline-delimited integers
    static IndexSet read_elements(std::istream& is);

private:
    friend struct IndexSetAccess;  // internal builder hook for the parser

    std::vector<std::int64_t> elements_;
    Provenance provenance_ = Provenance::Explicit;
    std::optional<double> hadamard_ratio_;
    std::vector<std::int64_t> generator_primes_;
    bool squarefree_mass_warning_ = false;
};

// Grammar:
//   spec      := range | primes | hadamard | squarefree | list | closure
//   range     := "range[" int "," int "]"
//   primes    := "primes[" int "," int "]"
//   hadamard  := "hadamard(" real "," int "," int ")"
//   squarefree:= "squarefree(" int {"," int} ";" int ")"
//   list      := "list(" int {"," int} ")"
//   closure   := "closure(" spec ")"
// Whitespace is ignored between tokens. Malformed input throws parse_error
// with the offending position.
IndexSet parse_spec(std::string_view text, const ntheory::ArithmeticCache& cache);

bool is_factor_closed(const IndexSet& K, const ntheory::ArithmeticCache& cache);

// smallest factor-closed superset
IndexSet factor_closure(const IndexSet& K, const ntheory::ArithmeticCache& cache);

struct DyadicBlock {
    std::int64_t index = 0;  // j with block = K intersect [mu^j, mu^{j+1})
    IndexSet block;
};

// Nonempty traces of K over the geometric partition {[mu^j, mu^{j+1})}.
std::vector<DyadicBlock> dyadic_blocks(const IndexSet& K, double mu);

struct ThetaProfile {
    std::vector<double> values;  // theta_K(k) per element, in element order
    double sup_value = 0.0;
};

// theta_K(k) = sum over l in K, l != k of gcd(l,k)/max(l,k).
// Integer gcd/max throughout; each term is divided once, then the terms are
// combined with a pairwise tree sum.
ThetaProfile theta(const IndexSet& K);

struct ThetaBoundRow {
    std::int64_t k = 0;
    double theta = 0.0;
    double envelope = 0.0;  // log(e K_+ / k) * A(k)
    double ratio = 0.0;     // theta / envelope; max over rows estimates the constant
};

std::vector<ThetaBoundRow> theta_bound_report(const IndexSet& K,
                                              const ntheory::ArithmeticCache& cache);

struct FamilyCheck {
    Provenance family = Provenance::Explicit;
    double sup_theta = 0.0;
    // primes: max over k of theta_K(k) * log k
    std::optional<double> max_theta_logk;
    // hadamard: geometric-series envelope 2/(q-1)
    std::optional<double> proof_envelope;
    // squarefree: generator mass sum 1/p_i
    std::optional<double> generator_mass;
};

FamilyCheck example_family_check(const IndexSet& K);

}  // namespace dilated::seq
