#pragma once

// Least-value-first enumeration of orbit sets <F : S> and orbit multisets
// <F : S># below a bound, prefix counting, growth sampling, and the
// equal-slope composition families used for density certificates.

#include "orbits/affine.hpp"
#include "orbits/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace orbits {

enum class Mode { set, multiset };

std::string_view to_string(Mode mode);
/// Accepts "set" or "multiset"; throws ParseError otherwise.
Mode parse_mode(std::string_view text);

/// Finite multiset of non-negative starting values, kept sorted.
class SeedSet {
public:
    explicit SeedSet(std::vector<Rational> seeds);

    std::span<const Rational> values() const { return seeds_; }
    const Rational& min() const { return seeds_.front(); }
    std::size_t size() const { return seeds_.size(); }

private:
    std::vector<Rational> seeds_;
};

/// Throws PreconditionError unless (a_i - 1)*min(S) + b_i > 0 for every map,
/// which makes every orbit strictly increasing along each branch.
void check_seed_growth(const FunctionSystem& system, const SeedSet& seeds);

struct OrbitEntry {
    Rational value;
    BigInt multiplicity;
};

struct OrbitReport {
    Rational bound_x;
    Mode mode = Mode::set;
    std::vector<OrbitEntry> entries;
    std::uint64_t set_count = 0;
    BigInt multiset_count = 0;
    BigInt max_multiplicity = 0;
    /// Largest number of pending values held at once.
    std::size_t frontier_peak = 0;
};

/// Counts gathered by a streaming pass; nothing but the frontier is retained.
struct PrefixStats {
    std::uint64_t set_count = 0;
    BigInt multiset_count = 0;
    BigInt max_multiplicity = 0;
    std::size_t frontier_peak = 0;
    /// True when the machine-integer path was taken.
    bool integer_path = false;
};

struct GrowthRow {
    Rational x;
    std::uint64_t set_count = 0;
    BigInt multiset_count = 0;
};

struct GrowthTable {
    std::vector<GrowthRow> rows;
};

/// Arithmetic path selection. `automatic` takes the machine-integer path
/// whenever all coefficients, seeds and floor(x) allow it; the other two
/// force a path (used to check that both agree bit for bit).
enum class ArithmeticPath { automatic, rational, integer };

using OrbitVisitor = std::function<void(const Rational& value, const BigInt& multiplicity)>;

/// Streams every distinct element <= x in increasing order to `visit`
/// (which may be empty). In set mode every multiplicity is 1.
PrefixStats stream_orbit(const FunctionSystem& system, const SeedSet& seeds, const Rational& x,
                         Mode mode, const OrbitVisitor& visit = {},
                         ArithmeticPath path = ArithmeticPath::automatic);

OrbitReport enumerate_up_to(const FunctionSystem& system, const SeedSet& seeds,
                            const Rational& x, Mode mode,
                            ArithmeticPath path = ArithmeticPath::automatic);

/// |<F:S> ∩ [0,x]| in set mode, |<F:S># ∩ [0,x]| in multiset mode.
BigInt count_prefix(const FunctionSystem& system, const SeedSet& seeds, const Rational& x,
                    Mode mode);

PrefixStats prefix_stats(const FunctionSystem& system, const SeedSet& seeds, const Rational& x,
                         Mode mode, ArithmeticPath path = ArithmeticPath::automatic);

/// Set and multiset counts at every grid point from a single pass up to the
/// last one. The grid must be non-empty, non-negative and ascending.
GrowthTable growth_samples(const FunctionSystem& system, const SeedSet& seeds,
                           std::span<const Rational> grid);

inline constexpr std::uint64_t kDefaultFamilyCap = 10'000'000;

/// Lazily evaluates f_I(s) over every word I holding exactly k_i copies of
/// letter i, in lexicographic word order. All values share the slope
/// prod a_i^{k_i}.
class EqualSlopeFamily {
public:
    EqualSlopeFamily(const FunctionSystem& system, std::vector<std::uint64_t> counts, Rational s,
                     std::uint64_t cap = kDefaultFamilyCap);

    /// Number of words, (sum k_i)! / prod k_i!.
    const BigInt& size() const { return size_; }

    std::optional<Rational> next();

    /// Word that produced the most recent value from next().
    const Word& word() const { return word_; }

private:
    FunctionSystem system_;
    Rational seed_;
    Word word_;
    BigInt size_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<Rational> equal_slope_family(const FunctionSystem& system,
                                         std::span<const std::uint64_t> counts, const Rational& s,
                                         std::uint64_t cap = kDefaultFamilyCap);

}  // namespace orbits
