#pragma once

// Freeness of a finite system of affine maps: exact ping-pong certificates
// (interval tiling by the inverse maps, or pairwise disjoint residue
// classes) and bounded exhaustive search for semigroup relations
// f_{u1}∘...∘f_{up} = f_{v1}∘...∘f_{vq}.

#include "orbits/affine.hpp"
#include "orbits/covering.hpp"
#include "orbits/klarner.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace orbits {

enum class FreenessStatus { free_certified, relation_found, inconclusive };

std::string_view to_string(FreenessStatus status);

/// Inverse images of (-d2-d1, -d2) tile it right to left in `ordering`
/// (0-based map indices).
struct TilingCertificate {
    std::vector<std::size_t> ordering;
    KlarnerParams params;
};

/// The maps' images of Z are pairwise disjoint progressions.
struct ResidueCertificate {
    std::vector<Progression> progressions;
};

using FreenessCertificate = std::variant<std::monostate, TilingCertificate, ResidueCertificate>;

struct Relation {
    Word left;
    Word right;
};

struct FreenessVerdict {
    FreenessStatus status = FreenessStatus::inconclusive;
    FreenessCertificate certificate;
    std::optional<Relation> relation;
    std::size_t search_depth = 0;
};

/// Human-readable one-line summary, e.g. "relation_found: (1,1,2) = (3,1)".
std::string describe(const FunctionSystem& system, const FreenessVerdict& verdict);

/// Requires sum 1/a_i = 1, all a_i > 1 and d1 > 0.
bool verify_interval_tiling(const FunctionSystem& system, std::span<const std::size_t> ordering,
                            const KlarnerParams& params);

/// Requires integer coefficients.
bool residue_disjoint_free(const FunctionSystem& system);

/// Solves the generating formula for (d1, d2) over every ordering and
/// returns the first one that reproduces all offsets and tiles exactly.
/// Empty unless sum 1/a_i = 1 with all a_i > 1.
std::optional<TilingCertificate> find_tiling_certificate(const FunctionSystem& system);

struct SearchOptions {
    /// Total number of words (all lengths) the search may materialize.
    std::uint64_t max_words = 2'000'000;
};

/// Exhaustive search over nonempty words of length <= max_len. Reports the
/// relation found at the smallest depth (length of the longer word); ties
/// go to the lexicographically least pair (left < right). Otherwise
/// inconclusive with search_depth = max_len.
FreenessVerdict relation_search(const FunctionSystem& system, std::size_t max_len,
                                const SearchOptions& options = {});

struct CertifyOptions {
    std::size_t relation_depth = 8;
    SearchOptions search;
};

/// Residue disjointness, then interval tiling, then relation search; the
/// first decisive answer wins.
FreenessVerdict certify_free(const FunctionSystem& system, const CertifyOptions& options = {});

/// Re-checks a verdict from scratch: relations must compose to the same
/// map, certificates must verify.
bool reverify(const FunctionSystem& system, const FreenessVerdict& verdict);

}  // namespace orbits
