#include "orbits/freeness.hpp"

#include "orbits/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace orbits {

std::string_view to_string(FreenessStatus status) {
    switch (status) {
        case FreenessStatus::free_certified: return "free_certified";
        case FreenessStatus::relation_found: return "relation_found";
        case FreenessStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string describe(const FunctionSystem& system, const FreenessVerdict& verdict) {
    std::string out(to_string(verdict.status));
    if (verdict.relation) {
        out += ": " + to_string(verdict.relation->left) + " = " + to_string(verdict.relation->right);
        return out;
    }
    if (const auto* tiling = std::get_if<TilingCertificate>(&verdict.certificate)) {
        out += ": interval tiling ordering=(";
        for (std::size_t i = 0; i < tiling->ordering.size(); ++i) {
            if (i) out += ",";
            out += to_string(system[tiling->ordering[i]].slope());
        }
        out += ") d1=" + to_string(tiling->params.d1) + " d2=" + to_string(tiling->params.d2);
    } else if (const auto* residue = std::get_if<ResidueCertificate>(&verdict.certificate)) {
        out += ": disjoint residues";
        for (const auto& p : residue->progressions) {
            out += " " + std::to_string(p.residue()) + " mod " + std::to_string(p.modulus);
        }
    } else if (verdict.status == FreenessStatus::inconclusive) {
        out += ": no relation up to depth " + std::to_string(verdict.search_depth);
    }
    return out;
}

bool verify_interval_tiling(const FunctionSystem& system, std::span<const std::size_t> ordering,
                            const KlarnerParams& params) {
    const auto slopes = system.slopes();
    require_unit_reciprocal_sum(slopes);
    if (sgn(params.d1) <= 0) throw PreconditionError("verify_interval_tiling requires d1 > 0");
    std::vector<std::size_t> sorted(ordering.begin(), ordering.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted.size() != system.size() || sorted[i] != i) {
            throw PreconditionError("ordering must be a permutation of the map indices");
        }
    }

    const Rational left = params.interval_left();
    const Rational right = params.interval_right();
    Rational cursor = right;
    for (std::size_t index : ordering) {
        const AffineCoeffs back = inverse(system[index].coeffs());
        // Slopes are positive, so the inverse preserves orientation.
        if (back(right) != cursor) return false;
        cursor = back(left);
    }
    return cursor == left;
}

bool residue_disjoint_free(const FunctionSystem& system) {
    if (!system.has_integer_coefficients()) {
        throw PreconditionError("residue_disjoint_free requires integer coefficients");
    }
    return progressions_disjoint(CongruenceSystem::from_functions(system)).disjoint;
}

std::optional<TilingCertificate> find_tiling_certificate(const FunctionSystem& system) {
    constexpr std::size_t kMaxMaps = 9;
    if (!system.is_strict() || system.reciprocal_slope_sum() != 1 || system.size() < 2 ||
        system.size() > kMaxMaps) {
        return std::nullopt;
    }
    std::vector<std::size_t> ordering(system.size());
    std::iota(ordering.begin(), ordering.end(), 0);
    do {
        const AffineMap& first = system[ordering[0]];
        const AffineMap& second = system[ordering[1]];
        // b_first = d2 (a_first - 1); b_second = d1 a_second / a_first + d2 (a_second - 1)
        KlarnerParams params;
        params.d2 = first.offset() / (first.slope() - 1);
        params.d1 = (second.offset() - params.d2 * (second.slope() - 1)) * first.slope() /
                    second.slope();
        if (sgn(params.d1) <= 0) continue;

        std::vector<Rational> slopes;
        for (std::size_t i : ordering) slopes.push_back(system[i].slope());
        const KlarnerTuple generated = tuple_from_ordering(slopes, params);
        bool matches = true;
        for (std::size_t k = 0; k < ordering.size() && matches; ++k) {
            matches = generated.offsets[k] == system[ordering[k]].offset();
        }
        if (matches && verify_interval_tiling(system, ordering, params)) {
            return TilingCertificate{ordering, params};
        }
    } while (std::next_permutation(ordering.begin(), ordering.end()));
    return std::nullopt;
}

namespace {

struct MapKey {
    Rational slope;
    Rational offset;
    friend bool operator==(const MapKey&, const MapKey&) = default;
};

struct MapKeyHash {
    std::size_t operator()(const MapKey& k) const noexcept {
        RationalHash h;
        return h(k.slope) * 1000003u ^ h(k.offset);
    }
};

// A word of the given length identified by its rank in lexicographic order.
struct WordRef {
    std::size_t length = 0;
    std::uint64_t rank = 0;
};

Word materialize(const WordRef& ref, std::size_t alphabet) {
    Word w;
    w.letters.assign(ref.length, 1);
    std::uint64_t rank = ref.rank;
    for (std::size_t i = ref.length; i-- > 0;) {
        w.letters[i] = static_cast<std::size_t>(rank % alphabet) + 1;
        rank /= alphabet;
    }
    return w;
}

}  // namespace

FreenessVerdict relation_search(const FunctionSystem& system, std::size_t max_len,
                                const SearchOptions& options) {
    if (max_len < 1) throw PreconditionError("relation_search requires max_len >= 1");
    const std::size_t n = system.size();

    std::uint64_t total = 0;
    std::uint64_t level_size = 1;
    for (std::size_t len = 1; len <= max_len; ++len) {
        if (__builtin_mul_overflow(level_size, n, &level_size) ||
            __builtin_add_overflow(total, level_size, &total) || total > options.max_words) {
            throw ResourceError("relation_search: " + std::to_string(n) + " maps to depth " +
                                std::to_string(max_len) + " exceeds the budget of " +
                                std::to_string(options.max_words) + " words");
        }
    }

    std::unordered_map<MapKey, WordRef, MapKeyHash> first_seen;
    std::vector<AffineCoeffs> previous{AffineCoeffs{}};
    std::vector<AffineCoeffs> current;

    for (std::size_t len = 1; len <= max_len; ++len) {
        current.clear();
        current.reserve(previous.size() * n);
        // (first word of the class, colliding word) for this depth
        std::vector<std::pair<WordRef, WordRef>> collisions;
        std::uint64_t rank = 0;
        for (const auto& prefix : previous) {
            for (std::size_t letter = 0; letter < n; ++letter, ++rank) {
                AffineCoeffs composed = compose(prefix, system[letter].coeffs());
                const WordRef ref{len, rank};
                auto [it, inserted] =
                    first_seen.try_emplace(MapKey{composed.slope, composed.offset}, ref);
                if (!inserted) collisions.emplace_back(it->second, ref);
                current.push_back(std::move(composed));
            }
        }

        if (!collisions.empty()) {
            // Group colliding words by class and keep the lexicographically
            // least pair across all classes.
            std::map<std::pair<std::size_t, std::uint64_t>, std::vector<Word>> groups;
            for (const auto& [first, other] : collisions) {
                auto& words = groups[{first.length, first.rank}];
                if (words.empty()) words.push_back(materialize(first, n));
                words.push_back(materialize(other, n));
            }
            std::optional<Relation> best;
            for (auto& [key, words] : groups) {
                std::sort(words.begin(), words.end());
                Relation candidate{words[0], words[1]};
                if (!best || std::tie(candidate.left, candidate.right) <
                                 std::tie(best->left, best->right)) {
                    best = std::move(candidate);
                }
            }
            FreenessVerdict verdict;
            verdict.status = FreenessStatus::relation_found;
            verdict.relation = std::move(best);
            verdict.search_depth = len;
            return verdict;
        }
        previous.swap(current);
    }

    FreenessVerdict verdict;
    verdict.search_depth = max_len;
    return verdict;
}

FreenessVerdict certify_free(const FunctionSystem& system, const CertifyOptions& options) {
    bool integral = system.has_integer_coefficients();
    for (const auto& f : system.maps()) {
        integral = integral && f.slope().get_num().fits_slong_p() &&
                   f.offset().get_num().fits_slong_p();
    }
    if (integral && residue_disjoint_free(system)) {
        FreenessVerdict verdict;
        verdict.status = FreenessStatus::free_certified;
        verdict.certificate =
            ResidueCertificate{CongruenceSystem::from_functions(system).progressions()};
        return verdict;
    }
    if (auto tiling = find_tiling_certificate(system)) {
        FreenessVerdict verdict;
        verdict.status = FreenessStatus::free_certified;
        verdict.certificate = std::move(*tiling);
        return verdict;
    }
    try {
        return relation_search(system, options.relation_depth, options.search);
    } catch (const ResourceError&) {
        return FreenessVerdict{};
    }
}

bool reverify(const FunctionSystem& system, const FreenessVerdict& verdict) {
    if (verdict.relation) {
        return verdict.relation->left != verdict.relation->right &&
               compose_word(system, verdict.relation->left) ==
                   compose_word(system, verdict.relation->right);
    }
    if (const auto* tiling = std::get_if<TilingCertificate>(&verdict.certificate)) {
        return verify_interval_tiling(system, tiling->ordering, tiling->params);
    }
    if (const auto* residue = std::get_if<ResidueCertificate>(&verdict.certificate)) {
        const CongruenceSystem cs(residue->progressions);
        return cs == CongruenceSystem::from_functions(system) && progressions_disjoint(cs).disjoint;
    }
    return verdict.status == FreenessStatus::inconclusive;
}

}  // namespace orbits
