#include "dilated/sequences.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_set>

#include "dilated/numeric.hpp"

namespace dilated::seq {

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Explicit: return "explicit";
        case Provenance::Range: return "range";
        case Provenance::Primes: return "primes";
        case Provenance::Hadamard: return "hadamard";
        case Provenance::Squarefree: return "squarefree";
        case Provenance::Closure: return "closure";
    }
    return "?";
}

parse_error::parse_error(const std::string& what, std::size_t position)
    : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
      position_(position) {}

IndexSet IndexSet::from_elements(std::vector<std::int64_t> elements, Provenance provenance) {
    if (elements.empty()) throw std::invalid_argument("IndexSet: empty element list");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.front() < 1) throw std::invalid_argument("IndexSet: elements must be >= 1");
    IndexSet out;
    out.elements_ = std::move(elements);
    out.provenance_ = provenance;
    return out;
}

bool IndexSet::contains(std::int64_t k) const {
    return std::binary_search(elements_.begin(), elements_.end(), k);
}

void IndexSet::write_elements(std::ostream& os) const {
    for (std::int64_t k : elements_) os << k << '\n';
}

IndexSet IndexSet::read_elements(std::istream& is) {
    std::vector<std::int64_t> elems;
    std::int64_t v = 0;
    while (is >> v) elems.push_back(v);
    return from_elements(std::move(elems));
}

struct IndexSetAccess {
    static void set_hadamard_ratio(IndexSet& s, double q) { s.hadamard_ratio_ = q; }
    static void set_squarefree(IndexSet& s, std::vector<std::int64_t> primes, bool warn) {
        s.generator_primes_ = std::move(primes);
        s.squarefree_mass_warning_ = warn;
    }
};

namespace {

class SpecParser {
public:
    SpecParser(std::string_view text, const ntheory::ArithmeticCache& cache)
        : text_(text), cache_(cache) {}

    IndexSet parse() {
        IndexSet result = parse_spec_node();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters after spec");
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool try_consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!try_consume(c)) fail(std::string("expected '") + c + "'");
    }

    std::string parse_word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a spec keyword");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t parse_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        std::int64_t value = 0;
        for (std::size_t i = start; i < pos_; ++i) {
            value = value * 10 + (text_[i] - '0');
            if (value > 1'000'000'000'000'000LL) {
                pos_ = start;
                fail("integer too large");
            }
        }
        return value;
    }

    double parse_real() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == 'e' || text_[pos_] == 'E' || text_[pos_] == '+' ||
                text_[pos_] == '-'))
            ++pos_;
        if (pos_ == start) fail("expected a number");
        const std::string token(text_.substr(start, pos_ - start));
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            pos_ = start;
            fail("malformed number");
        }
        if (used != token.size()) {
            pos_ = start;
            fail("malformed number");
        }
        return value;
    }

    IndexSet parse_spec_node() {
        skip_ws();
        const std::size_t word_pos = pos_;
        const std::string word = parse_word();
        if (word == "range") return parse_range();
        if (word == "primes") return parse_primes();
        if (word == "hadamard") return parse_hadamard();
        if (word == "squarefree") return parse_squarefree();
        if (word == "list") return parse_list();
        if (word == "closure") return parse_closure();
        pos_ = word_pos;
        fail("unknown spec keyword '" + word + "'");
    }

    IndexSet parse_range() {
        expect('[');
        const std::int64_t m = parse_int();
        expect(',');
        const std::int64_t n = parse_int();
        expect(']');
        if (m < 1 || n < m) fail("range requires 1 <= m <= n");
        std::vector<std::int64_t> elems;
        elems.reserve(static_cast<std::size_t>(n - m + 1));
        for (std::int64_t k = m; k <= n; ++k) elems.push_back(k);
        return IndexSet::from_elements(std::move(elems), Provenance::Range);
    }

    IndexSet parse_primes() {
        expect('[');
        const std::int64_t m = parse_int();
        expect(',');
        const std::int64_t n = parse_int();
        expect(']');
        if (m < 1 || n < m) fail("primes requires 1 <= m <= n");
        if (n > cache_.limit()) fail("primes upper bound exceeds cache limit");
        std::vector<std::int64_t> elems;
        for (std::int64_t k = std::max<std::int64_t>(2, m); k <= n; ++k)
            if (cache_.is_prime(k)) elems.push_back(k);
        if (elems.empty()) fail("no primes in the requested window");
        return IndexSet::from_elements(std::move(elems), Provenance::Primes);
    }

    IndexSet parse_hadamard() {
        expect('(');
        const double q = parse_real();
        expect(',');
        const std::int64_t count = parse_int();
        expect(',');
        const std::int64_t start = parse_int();
        expect(')');
        if (!(q > 1.0)) fail("hadamard requires ratio q > 1");
        if (count < 1 || start < 1) fail("hadamard requires count >= 1 and start >= 1");
        std::vector<std::int64_t> elems;
        elems.reserve(static_cast<std::size_t>(count));
        std::int64_t value = start;
        for (std::int64_t i = 0; i < count; ++i) {
            elems.push_back(value);
            if (i + 1 < count) {
                const double next = q * static_cast<double>(value);
                if (next > 4.0e18) fail("hadamard sequence overflows");
                value = static_cast<std::int64_t>(std::ceil(next));
            }
        }
        IndexSet out = IndexSet::from_elements(std::move(elems), Provenance::Hadamard);
        IndexSetAccess::set_hadamard_ratio(out, q);
        return out;
    }

    IndexSet parse_squarefree() {
        expect('(');
        std::vector<std::int64_t> primes;
        primes.push_back(parse_int());
        while (try_consume(',')) primes.push_back(parse_int());
        expect(';');
        const std::int64_t limit = parse_int();
        expect(')');
        if (limit > cache_.limit()) fail("squarefree limit exceeds cache limit");
        double mass = 0.0;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (primes[i] > cache_.limit() || !cache_.is_prime(primes[i]))
                fail("squarefree generators must be primes");
            if (i > 0 && primes[i] <= primes[i - 1])
                fail("squarefree generators must be strictly increasing");
            mass += 1.0 / static_cast<double>(primes[i]);
        }
        // breadth-first products of distinct generators, 1 = empty product
        std::set<std::int64_t> family{1};
        std::vector<std::int64_t> frontier{1};
        for (std::int64_t p : primes) {
            std::vector<std::int64_t> next;
            for (std::int64_t v : family)
                if (v <= limit / p) next.push_back(v * p);
            for (std::int64_t v : next)
                if (v <= limit) family.insert(v);
        }
        IndexSet out = IndexSet::from_elements(std::vector<std::int64_t>(family.begin(), family.end()),
                                               Provenance::Squarefree);
        IndexSetAccess::set_squarefree(out, std::move(primes), mass >= 1.0);
        return out;
    }

    IndexSet parse_list() {
        expect('(');
        std::vector<std::int64_t> elems;
        elems.push_back(parse_int());
        while (try_consume(',')) elems.push_back(parse_int());
        expect(')');
        if (std::any_of(elems.begin(), elems.end(), [](std::int64_t v) { return v < 1; }))
            fail("list elements must be >= 1");
        return IndexSet::from_elements(std::move(elems), Provenance::Explicit);
    }

    IndexSet parse_closure() {
        expect('(');
        IndexSet inner = parse_spec_node();
        expect(')');
        IndexSet closed = factor_closure(inner, cache_);
        IndexSet out = IndexSet::from_elements(closed.elements(), Provenance::Closure);
        return out;
    }

    std::string_view text_;
    const ntheory::ArithmeticCache& cache_;
    std::size_t pos_ = 0;
};

}  // namespace

IndexSet parse_spec(std::string_view text, const ntheory::ArithmeticCache& cache) {
    return SpecParser(text, cache).parse();
}

bool is_factor_closed(const IndexSet& K, const ntheory::ArithmeticCache& cache) {
    if (K.k_plus() > cache.limit())
        throw std::out_of_range("is_factor_closed: element exceeds cache limit");
    std::unordered_set<std::int64_t> present(K.elements().begin(), K.elements().end());
    for (std::int64_t k : K.elements())
        for (std::int64_t d : ntheory::divisors(k, cache))
            if (!present.count(d)) return false;
    return true;
}

IndexSet factor_closure(const IndexSet& K, const ntheory::ArithmeticCache& cache) {
    if (K.k_plus() > cache.limit())
        throw std::out_of_range("factor_closure: element exceeds cache limit");
    std::set<std::int64_t> closed;
    for (std::int64_t k : K.elements()) {
        const auto divs = ntheory::divisors(k, cache);
        closed.insert(divs.begin(), divs.end());
    }
    return IndexSet::from_elements(std::vector<std::int64_t>(closed.begin(), closed.end()),
                                   Provenance::Closure);
}

std::vector<DyadicBlock> dyadic_blocks(const IndexSet& K, double mu) {
    if (!(mu > 1.0)) throw std::domain_error("dyadic_blocks: requires mu > 1");
    // grow block boundaries by repeated multiplication; binning stays exact
    // for integer boundaries (e.g. mu = 2) and deterministic otherwise
    std::vector<double> boundaries{1.0};
    while (boundaries.back() <= static_cast<double>(K.k_plus()))
        boundaries.push_back(boundaries.back() * mu);

    std::vector<DyadicBlock> out;
    std::vector<std::int64_t> current;
    std::size_t j = 0;
    for (std::int64_t k : K.elements()) {
        while (static_cast<double>(k) >= boundaries[j + 1]) {
            if (!current.empty()) {
                out.push_back({static_cast<std::int64_t>(j),
                               IndexSet::from_elements(std::move(current), K.provenance())});
                current.clear();
            }
            ++j;
        }
        current.push_back(k);
    }
    if (!current.empty())
        out.push_back({static_cast<std::int64_t>(j),
                       IndexSet::from_elements(std::move(current), K.provenance())});
    return out;
}

ThetaProfile theta(const IndexSet& K) {
    const auto& ks = K.elements();
    const std::size_t n = ks.size();
    ThetaProfile out;
    out.values.assign(n, 0.0);
    std::vector<double> terms;
    terms.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        terms.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::int64_t g = std::gcd(ks[i], ks[j]);
            const std::int64_t m = std::max(ks[i], ks[j]);
            terms.push_back(static_cast<double>(g) / static_cast<double>(m));
        }
        out.values[i] = numeric::pairwise_sum(terms);
    }
    out.sup_value = n ? *std::max_element(out.values.begin(), out.values.end()) : 0.0;
    return out;
}

std::vector<ThetaBoundRow> theta_bound_report(const IndexSet& K,
                                              const ntheory::ArithmeticCache& cache) {
    if (K.k_plus() > cache.limit())
        throw std::out_of_range("theta_bound_report: element exceeds cache limit");
    const ThetaProfile prof = theta(K);
    std::vector<ThetaBoundRow> rows;
    rows.reserve(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) {
        const std::int64_t k = K.elements()[i];
        ThetaBoundRow row;
        row.k = k;
        row.theta = prof.values[i];
        row.envelope = (1.0 + std::log(static_cast<double>(K.k_plus()) / static_cast<double>(k))) *
                       ntheory::pillai_mean(k, cache);
        row.ratio = row.theta / row.envelope;
        rows.push_back(row);
    }
    return rows;
}

FamilyCheck example_family_check(const IndexSet& K) {
    FamilyCheck out;
    out.family = K.provenance();
    const ThetaProfile prof = theta(K);
    out.sup_theta = prof.sup_value;
    switch (K.provenance()) {
        case Provenance::Primes: {
            double best = 0.0;
            for (std::size_t i = 0; i < K.size(); ++i)
                best = std::max(best, prof.values[i] * std::log(static_cast<double>(K.elements()[i])));
            out.max_theta_logk = best;
            break;
        }
        case Provenance::Hadamard: {
            if (!K.hadamard_ratio())
                throw std::invalid_argument("example_family_check: hadamard set lacks its ratio");
            out.proof_envelope = 2.0 / (*K.hadamard_ratio() - 1.0);
            break;
        }
        case Provenance::Squarefree: {
            double mass = 0.0;
            for (std::int64_t p : K.generator_primes()) mass += 1.0 / static_cast<double>(p);
            out.generator_mass = mass;
            break;
        }
        default:
            throw std::invalid_argument(
                "example_family_check: provenance must be primes, hadamard or squarefree");
    }
    return out;
}

}  // namespace dilated::seq
