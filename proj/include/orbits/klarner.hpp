#pragma once

// Offset tuples that make a slope tuple with sum 1/a_i = 1 a free semigroup
// basis. For an ordering (a_1, ..., a_n) and parameters (d1, d2):
//
//   b_i = d1 * a_i * sum_{j<i} 1/a_j + d2 * (a_i - 1)
//
// The inverse maps then cut the interval (-d2 - d1, -d2) into consecutive
// pieces, f_1^{-1} at the right end and proceeding leftwards. Changing
// (d1, d2) conjugates the system by g(x) = x/d1 + d2/d1.

#include "orbits/affine.hpp"
#include "orbits/rational.hpp"

#include <span>
#include <utility>
#include <vector>

namespace orbits {

struct KlarnerParams {
    Rational d1{1};
    Rational d2{0};

    Rational interval_left() const { return -d2 - d1; }
    Rational interval_right() const { return -d2; }

    /// g(x) = x/d1 + d2/d1, which carries these parameters to (1, 0).
    AffineCoeffs normalizing_map() const;

    friend bool operator==(const KlarnerParams&, const KlarnerParams&) = default;
};

struct KlarnerTuple {
    /// Slopes in generation order.
    std::vector<Rational> ordering;
    /// b_i for ordering[i].
    std::vector<Rational> offsets;
    KlarnerParams params;

    /// (slope, offset) pairs sorted by slope, then offset.
    std::vector<std::pair<Rational, Rational>> keyed_by_slope() const;
    /// Offsets listed in ascending-slope order, e.g. (0,3,10) for slopes (2,3,6).
    std::vector<Rational> offsets_by_slope() const;
    /// Maps a_i x + b_i in generation order. Requires every offset >= 0.
    FunctionSystem system() const;
};

/// Throws PreconditionError unless every slope exceeds 1 and sum 1/a_i = 1.
void require_unit_reciprocal_sum(std::span<const Rational> slopes);

KlarnerTuple tuple_from_ordering(std::span<const Rational> ordering, const KlarnerParams& params);

/// d2 = 0 and the least d1 > 0 making every offset an integer with overall
/// gcd 1. Non-integer slopes get the (1, 0) normal form instead.
KlarnerTuple normalize(std::span<const Rational> ordering);

/// Normalized tuples over every distinct ordering of the integer slope
/// multiset, deduplicated by their (slope, offset) multisets and sorted
/// lexicographically by offsets_by_slope().
std::vector<KlarnerTuple> all_tuples(std::span<const Rational> slopes);

}  // namespace orbits
