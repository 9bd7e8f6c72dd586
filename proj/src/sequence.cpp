#include "stanley/sequence.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bitvector.hpp"
#include "stanley/error.hpp"

namespace stanley {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::hash_scan:
            return "hash-scan";
        case Strategy::bitset_scan:
            return "bitset-scan";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "hash-scan") return Strategy::hash_scan;
    if (name == "bitset-scan") return Strategy::bitset_scan;
    throw PreconditionError("unknown strategy '" + std::string(name) +
                            "' (expected hash-scan or bitset-scan)");
}

Seed::Seed(std::vector<Term> elements) : elements_(std::move(elements)) {
    if (elements_.size() < 2) throw SeedError("seed needs at least 2 elements");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] < 0)
            throw SeedError("seed element " + std::to_string(elements_[i]) + " is negative");
        if (elements_[i] > kMaxTerm)
            throw SeedError("seed element " + std::to_string(elements_[i]) + " exceeds 2^62");
        if (i > 0 && elements_[i] <= elements_[i - 1]) {
            throw SeedError("seed is not strictly increasing at pair (" +
                            std::to_string(elements_[i - 1]) + ", " +
                            std::to_string(elements_[i]) + ")");
        }
    }
    if (auto ap = find_ap(elements_)) {
        throw SeedError("seed contains the 3-term AP " + std::to_string(elements_[ap->i]) + ", " +
                        std::to_string(elements_[ap->j]) + ", " +
                        std::to_string(elements_[ap->l]));
    }
}

Sequence::Sequence(Seed seed, std::vector<Term> terms, Strategy strategy)
    : seed_(std::move(seed)), terms_(std::move(terms)), strategy_(strategy) {
    const auto s = seed_.elements();
    if (terms_.size() < s.size() || !std::equal(s.begin(), s.end(), terms_.begin()))
        throw InvariantError("sequence does not start with its seed");
}

Term Sequence::a(std::size_t k) const {
    if (k == 0 || k > terms_.size())
        throw PreconditionError("index k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(terms_.size()) + "]");
    return terms_[k - 1];
}

std::vector<double> Sequence::as_doubles() const {
    return {terms_.begin(), terms_.end()};
}

namespace {

// Enumerates earlier terms b from the largest down. a = 2b - c falls as b
// falls, so the first negative a ends the search.
template <class SeenSet>
bool admissible_descending(Term c, std::span<const Term> terms, const SeenSet& seen) {
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const Term a = 2 * *it - c;
        if (a < 0) return true;
        if (seen.contains(a)) return false;
    }
    return true;
}

struct HashSeen {
    std::unordered_set<Term> values;
    void insert(Term v) { values.insert(v); }
    bool contains(Term v) const { return values.find(v) != values.end(); }
};

void check_bound(Term candidate) {
    if (candidate > kMaxTerm)
        throw Error("generation aborted: next term would exceed 2^62");
}

template <class SeenSet>
Term next_term_serial(std::span<const Term> terms, const SeenSet& seen) {
    for (Term c = terms.back() + 1;; ++c) {
        check_bound(c);
        if (admissible_descending(c, terms, seen)) return c;
    }
}

// Tests a block of consecutive candidates concurrently and keeps the smallest
// admissible one. Every candidate below it was rejected, which is exactly the
// serial scan's outcome.
Term next_term_parallel(std::span<const Term> terms, const detail::BitVector& seen,
                        std::int64_t block) {
    constexpr Term none = std::numeric_limits<Term>::max();
    for (Term base = terms.back() + 1;; base += block) {
        check_bound(base + block - 1);
        Term best = none;
#pragma omp parallel for reduction(min : best) schedule(static)
        for (std::int64_t off = 0; off < block; ++off) {
            const Term c = base + off;
            if (admissible_descending(c, terms, seen)) best = std::min(best, c);
        }
        if (best != none) return best;
    }
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <class SeenSet, class NextTerm>
std::vector<Term> extend(const Seed& seed, std::size_t target_length,
                         const GenerateOptions& options, SeenSet& seen, NextTerm next) {
    std::vector<Term> terms(seed.elements().begin(), seed.elements().end());
    terms.reserve(target_length);
    for (Term t : terms) seen.insert(t);
    while (terms.size() < target_length) {
        const Term c = next(std::span<const Term>(terms), seen);
        terms.push_back(c);
        seen.insert(c);
        if (options.progress && options.progress_interval &&
            terms.size() % options.progress_interval == 0) {
            *options.progress << "generated " << terms.size() << " / " << target_length
                              << " terms (last " << c << ")\n";
        }
    }
    return terms;
}

}  // namespace

Sequence generate(const Seed& seed, std::size_t target_length, const GenerateOptions& options) {
    if (target_length < seed.size())
        throw PreconditionError("target length " + std::to_string(target_length) +
                                " is shorter than the seed (" + std::to_string(seed.size()) + ")");

    std::vector<Term> terms;
    if (options.strategy == Strategy::hash_scan) {
        HashSeen seen;
        terms = extend(seed, target_length, options, seen,
                       [](std::span<const Term> t, const HashSeen& s) { return next_term_serial(t, s); });
    } else {
        detail::BitVector seen;
        if (options.parallel) {
            const std::int64_t block = std::max(64, 32 * max_threads());
            terms = extend(seed, target_length, options, seen,
                           [block](std::span<const Term> t, const detail::BitVector& s) {
                               return next_term_parallel(t, s, block);
                           });
        } else {
            terms = extend(seed, target_length, options, seen,
                           [](std::span<const Term> t, const detail::BitVector& s) {
                               return next_term_serial(t, s);
                           });
        }
    }
    return Sequence(seed, std::move(terms), options.strategy);
}

bool is_admissible(Term candidate, std::span<const Term> terms) {
    if (terms.empty()) throw PreconditionError("is_admissible needs a non-empty sequence");
    if (candidate <= terms.back())
        throw PreconditionError("candidate " + std::to_string(candidate) +
                                " is not above the last term " + std::to_string(terms.back()));
    struct SortedSeen {
        std::span<const Term> t;
        bool contains(Term v) const { return std::binary_search(t.begin(), t.end(), v); }
    };
    return admissible_descending(candidate, terms, SortedSeen{terms});
}

bool is_admissible(Term candidate, const Sequence& current) {
    return is_admissible(candidate, current.terms());
}

namespace {

void require_increasing(std::span<const Term> terms, const char* what) {
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i] <= terms[i - 1]) {
            throw PreconditionError(std::string(what) + ": terms not strictly increasing at index " +
                                    std::to_string(i));
        }
    }
}

}  // namespace

std::optional<ApTriple> find_ap(std::span<const Term> terms) {
    require_increasing(terms, "find_ap");
    std::unordered_map<Term, std::size_t> index;
    index.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) index.emplace(terms[i], i);
    // Every pair of outer terms; the midpoint, if integral and present, is the middle.
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t l = i + 2; l < terms.size(); ++l) {
            const Term sum = terms[i] + terms[l];
            if (sum % 2 != 0) continue;
            if (auto it = index.find(sum / 2); it != index.end()) return ApTriple{i, it->second, l};
        }
    }
    return std::nullopt;
}

bool verify_ap_free(std::span<const Term> terms) { return !find_ap(terms).has_value(); }

std::optional<Term> find_greedy_violation(std::span<const Term> terms, std::size_t seed_size) {
    require_increasing(terms, "find_greedy_violation");
    if (seed_size == 0) throw PreconditionError("find_greedy_violation: empty seed");
    if (terms.size() <= seed_size) return std::nullopt;
    const Term last = terms.back();
    if (last < 0) throw PreconditionError("find_greedy_violation: negative terms");

    // Mark every value 2b - a (a < b) up to the last term. Any skipped integer x
    // must be marked; a mark at or below x can only come from terms below x.
    std::vector<bool> blocked(static_cast<std::size_t>(last) + 1, false);
    for (std::size_t j = 1; j < terms.size(); ++j) {
        for (std::size_t i = j; i-- > 0;) {
            const Term v = 2 * terms[j] - terms[i];
            if (v > last) break;
            blocked[static_cast<std::size_t>(v)] = true;
        }
    }
    for (std::size_t m = seed_size - 1; m + 1 < terms.size(); ++m) {
        for (Term x = terms[m] + 1; x < terms[m + 1]; ++x) {
            if (!blocked[static_cast<std::size_t>(x)]) return x;
        }
    }
    return std::nullopt;
}

}  // namespace stanley
