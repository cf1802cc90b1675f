#include "orbits/klarner.hpp"

#include "orbits/errors.hpp"

#include <algorithm>

namespace orbits {

AffineCoeffs KlarnerParams::normalizing_map() const {
    if (sgn(d1) <= 0) throw PreconditionError("tuple parameter d1 must be > 0");
    return {1 / d1, d2 / d1};
}

std::vector<std::pair<Rational, Rational>> KlarnerTuple::keyed_by_slope() const {
    std::vector<std::pair<Rational, Rational>> out;
    for (std::size_t i = 0; i < ordering.size(); ++i) out.emplace_back(ordering[i], offsets[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> KlarnerTuple::offsets_by_slope() const {
    std::vector<Rational> out;
    for (auto& [slope, offset] : keyed_by_slope()) out.push_back(offset);
    return out;
}

FunctionSystem KlarnerTuple::system() const {
    std::vector<AffineMap> maps;
    for (std::size_t i = 0; i < ordering.size(); ++i) maps.emplace_back(ordering[i], offsets[i]);
    return FunctionSystem(std::move(maps));
}

void require_unit_reciprocal_sum(std::span<const Rational> slopes) {
    if (slopes.empty()) throw PreconditionError("slope tuple must not be empty");
    Rational sum = 0;
    for (const auto& a : slopes) {
        if (a <= 1) throw PreconditionError("slopes must be > 1, got " + to_string(a));
        sum += 1 / a;
    }
    if (sum != 1) {
        throw PreconditionError("sum of 1/a_i must equal 1, got " + to_string(sum));
    }
}

namespace {

// c_i = a_i * sum_{j<i} 1/a_j
std::vector<Rational> unit_offsets(std::span<const Rational> ordering) {
    std::vector<Rational> out;
    Rational prefix = 0;
    for (const auto& a : ordering) {
        out.push_back(a * prefix);
        prefix += 1 / a;
    }
    return out;
}

}  // namespace

KlarnerTuple tuple_from_ordering(std::span<const Rational> ordering, const KlarnerParams& params) {
    require_unit_reciprocal_sum(ordering);
    if (sgn(params.d1) <= 0) throw PreconditionError("tuple parameter d1 must be > 0");
    KlarnerTuple tuple{{ordering.begin(), ordering.end()}, {}, params};
    const auto c = unit_offsets(ordering);
    for (std::size_t i = 0; i < ordering.size(); ++i) {
        tuple.offsets.push_back(params.d1 * c[i] + params.d2 * (ordering[i] - 1));
    }
    return tuple;
}

KlarnerTuple normalize(std::span<const Rational> ordering) {
    require_unit_reciprocal_sum(ordering);
    const bool integral = std::all_of(ordering.begin(), ordering.end(),
                                      [](const Rational& a) { return is_integer(a); });
    if (!integral) return tuple_from_ordering(ordering, {1, 0});

    // Rational gcd of the nonzero c_i: g = gcd(p_i * L / q_i) / L.
    const auto c = unit_offsets(ordering);
    BigInt lcm_den = 1;
    for (const auto& ci : c) {
        if (sgn(ci) != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), ci.get_den_mpz_t());
    }
    BigInt g = 0;
    for (const auto& ci : c) {
        if (sgn(ci) == 0) continue;
        BigInt scaled = ci.get_num() * (lcm_den / ci.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
    }
    // A single slope cannot satisfy sum 1/a = 1 with a > 1, so some c_i != 0.
    Rational d1(lcm_den, g);
    d1.canonicalize();
    return tuple_from_ordering(ordering, {d1, 0});
}

std::vector<KlarnerTuple> all_tuples(std::span<const Rational> slopes) {
    require_unit_reciprocal_sum(slopes);
    for (const auto& a : slopes) {
        if (!is_integer(a)) {
            throw PreconditionError("all_tuples requires integer slopes, got " + to_string(a));
        }
    }
    std::vector<Rational> ordering(slopes.begin(), slopes.end());
    std::sort(ordering.begin(), ordering.end());

    std::vector<KlarnerTuple> out;
    do {
        KlarnerTuple t = normalize(ordering);
        const auto key = t.keyed_by_slope();
        const bool seen = std::any_of(out.begin(), out.end(), [&](const KlarnerTuple& other) {
            return other.keyed_by_slope() == key;
        });
        if (!seen) out.push_back(std::move(t));
    } while (std::next_permutation(ordering.begin(), ordering.end()));

    std::sort(out.begin(), out.end(), [](const KlarnerTuple& a, const KlarnerTuple& b) {
        return a.offsets_by_slope() < b.offsets_by_slope();
    });
    return out;
}

}  // namespace orbits
