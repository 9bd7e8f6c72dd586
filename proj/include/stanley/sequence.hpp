#pragma once

// Greedy 3-AP-free (Stanley) sequence generation.
//
// A Stanley sequence extends an AP-free seed by repeatedly appending the
// smallest integer greater than the last term that does not complete a
// 3-term arithmetic progression a + c = 2b with two existing terms.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stanley {

using Term = std::int64_t;

/// Terms may not exceed this bound; 2b - c then never overflows.
inline constexpr Term kMaxTerm = Term{1} << 62;

/// Indices (into the input span) of a 3-term progression t[i] + t[l] = 2 t[j].
struct ApTriple {
    std::size_t i, j, l;
};

enum class Strategy {
    hash_scan,    // hash set of seen values, descending-b scan
    bitset_scan,  // dense bit-vector of seen values, descending-b scan
};

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

/// Validated AP-free starting set.
class Seed {
   public:
    /// Throws SeedError naming the offending pair or triple.
    explicit Seed(std::vector<Term> elements);

    /// The two-element seed {0, n}.
    static Seed two(Term n) { return Seed({0, n}); }

    std::span<const Term> elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    friend bool operator==(const Seed&, const Seed&) = default;

   private:
    std::vector<Term> elements_;
};

/// An immutable generated sequence. Terms are stored 0-based; a(k) is the
/// 1-based accessor used by every exported series.
class Sequence {
   public:
    Sequence(Seed seed, std::vector<Term> terms, Strategy strategy);

    const Seed& seed() const { return seed_; }
    std::span<const Term> terms() const { return terms_; }
    Strategy strategy() const { return strategy_; }
    std::size_t size() const { return terms_.size(); }

    /// 1-based access, k in [1, size()].
    Term a(std::size_t k) const;

    /// Terms as doubles (exact below 2^53), the input to the series kernels.
    std::vector<double> as_doubles() const;

    friend bool operator==(const Sequence&, const Sequence&) = default;

   private:
    Seed seed_;
    std::vector<Term> terms_;
    Strategy strategy_;
};

struct GenerateOptions {
    Strategy strategy = Strategy::bitset_scan;
    /// Evaluate blocks of candidates concurrently (bitset-scan only). The
    /// lowest admissible candidate of a block wins, so output is unchanged.
    bool parallel = false;
    /// Emit a progress line every this many terms; 0 disables.
    std::size_t progress_interval = 1000;
    std::ostream* progress = nullptr;
};

/// Extends `seed` greedily to exactly `target_length` terms.
Sequence generate(const Seed& seed, std::size_t target_length,
                  const GenerateOptions& options = {});

/// True iff appending `candidate` to the sorted `terms` creates no 3-term AP.
/// Throws PreconditionError unless candidate > terms.back().
bool is_admissible(Term candidate, std::span<const Term> terms);
bool is_admissible(Term candidate, const Sequence& current);

/// Exhaustive AP search, independent of the generator's scan order.
/// Throws PreconditionError if `terms` is not strictly increasing.
std::optional<ApTriple> find_ap(std::span<const Term> terms);
bool verify_ap_free(std::span<const Term> terms);

/// First skipped integer (if any) between consecutive terms past the seed
/// that does NOT form an AP with two earlier terms; nullopt when greedy.
std::optional<Term> find_greedy_violation(std::span<const Term> terms,
                                          std::size_t seed_size);

}  // namespace stanley
