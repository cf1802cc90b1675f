#pragma once

// Arithmetic progressions a*Z + b as integer affine maps, and systems of
// exact covering congruences (partitions of Z into such progressions).

#include "orbits/affine.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbits {

/// The progression {a*x + b : x in Z}. `offset` is the function offset b,
/// which may lie outside [0, a); residue() is its class.
struct Progression {
    std::int64_t modulus = 1;
    std::int64_t offset = 0;

    std::int64_t residue() const;
    bool contains(std::int64_t n) const;
};

class CongruenceSystem {
public:
    explicit CongruenceSystem(std::vector<Progression> progressions);

    /// Integer system a_i x + b_i viewed as progressions.
    static CongruenceSystem from_functions(const FunctionSystem& system);
    /// Requires every offset >= 0 (shift first if needed).
    FunctionSystem to_function_system() const;

    const std::vector<Progression>& progressions() const { return progressions_; }
    std::size_t size() const { return progressions_.size(); }

    BigInt lcm() const;
    std::int64_t moduli_gcd() const;

    /// Same moduli and residue classes, position by position.
    friend bool operator==(const CongruenceSystem& a, const CongruenceSystem& b);

private:
    std::vector<Progression> progressions_;
};

std::string to_string(const CongruenceSystem& system);

enum class CoverKind { exact, gap, overlap };

std::string_view to_string(CoverKind kind);

struct CoverVerdict {
    CoverKind kind = CoverKind::exact;
    /// Smallest offending residue modulo lcm (meaningless when exact).
    std::uint64_t residue = 0;
    std::uint64_t lcm = 1;
    /// For overlaps, the first two progressions containing `residue`.
    std::size_t first = 0;
    std::size_t second = 0;
};

struct CoverOptions {
    std::uint64_t max_classes = 1'000'000'000;
};

CoverVerdict is_exact_cover(const CongruenceSystem& system, const CoverOptions& options = {});

struct Intersection {
    std::size_t first = 0;
    std::size_t second = 0;
    /// Smallest non-negative common element.
    std::int64_t element = 0;
};

struct Disjointness {
    bool disjoint = true;
    std::optional<Intersection> witness;
};

/// Pairwise test b_i = b_j (mod gcd(a_i, a_j)); reports the first
/// intersecting pair in (i, j) order.
Disjointness progressions_disjoint(const CongruenceSystem& system);

/// Replaces progression `index` (a, b) by a*r*x + (a*c_k + b) for the r
/// given shifts c_k, which must be pairwise distinct mod r.
CongruenceSystem subdivide(const CongruenceSystem& system, std::size_t index, std::int64_t r,
                           std::span<const std::int64_t> residues);

/// Rewrites progression `index` as a*x + b - a*h (same class, new offset).
CongruenceSystem shift_progression(const CongruenceSystem& system, std::size_t index,
                                   std::int64_t h);

/// The 13-progression exact cover with moduli 6, 10, 15 and 30.
CongruenceSystem porubsky_13();

/// True iff two progressions share a modulus. Requires an exact cover with
/// at least two progressions.
bool mirsky_newman_holds(const CongruenceSystem& system);

/// Deterministic chain of subdivisions starting from {(1,0)}; element 0 is
/// the start, each later element subdivides one progression of the previous.
std::vector<CongruenceSystem> random_subdivision_chain(std::uint64_t seed, int depth, int max_r);

}  // namespace orbits
