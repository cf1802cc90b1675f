#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "orbits/errors.hpp"
#include "orbits/klarner.hpp"

#include <algorithm>
#include <random>

using namespace orbits;
using testing::Q;

namespace {

std::vector<std::vector<Rational>> offset_lists(const std::vector<KlarnerTuple>& tuples) {
    std::vector<std::vector<Rational>> out;
    for (const auto& t : tuples) out.push_back(t.offsets_by_slope());
    return out;
}

std::vector<std::vector<Rational>> sorted(std::vector<std::vector<Rational>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("tuple_from_ordering examples") {
    const auto a = tuple_from_ordering(testing::rationals({2, 3, 6}), {2, 0});
    CHECK(a.offsets == testing::rationals({0, 3, 10}));

    const auto b = tuple_from_ordering(testing::rationals({2, 6, 3}), {1, 0});
    CHECK(b.offsets == testing::rationals({0, 3, 2}));
    CHECK(b.offsets_by_slope() == testing::rationals({0, 2, 3}));

    const auto c = tuple_from_ordering(testing::rationals({2, 2}), {1, 0});
    CHECK(c.offsets == testing::rationals({0, 1}));

    // d2 shifts every offset by d2 (a_i - 1)
    const auto d = tuple_from_ordering(testing::rationals({2, 3, 6}), {2, 1});
    CHECK(d.offsets == testing::rationals({1, 5, 15}));
}

TEST_CASE("normalize examples") {
    const auto a = normalize(testing::rationals({2, 3, 6}));
    CHECK(a.params.d1 == 2);
    CHECK(a.params.d2 == 0);
    CHECK(a.offsets == testing::rationals({0, 3, 10}));

    const auto b = normalize(testing::rationals({4, 2, 4}));
    CHECK(b.params.d1 == 2);
    CHECK(b.offsets == testing::rationals({0, 1, 6}));
    CHECK(b.offsets_by_slope() == testing::rationals({1, 0, 6}));

    const auto c = normalize(testing::rationals({2, 2}));
    CHECK(c.params.d1 == 1);
    CHECK(c.offsets == testing::rationals({0, 1}));

    const auto r = normalize(std::vector<Rational>{Q("3/2"), 3});
    CHECK(r.params == KlarnerParams{});
    CHECK(r.offsets == std::vector<Rational>{0, 2});
}

TEST_CASE("all_tuples examples") {
    const auto six = all_tuples(testing::rationals({2, 3, 6}));
    CHECK(sorted(offset_lists(six)) ==
          sorted({testing::rationals({0, 3, 10}), testing::rationals({0, 2, 3}),
                  testing::rationals({2, 0, 15}), testing::rationals({1, 0, 2}),
                  testing::rationals({2, 1, 0}), testing::rationals({1, 6, 0})}));
    CHECK(offset_lists(six) == sorted(offset_lists(six)));

    const auto three = all_tuples(testing::rationals({2, 4, 4}));
    CHECK(sorted(offset_lists(three)) ==
          sorted({testing::rationals({0, 2, 3}), testing::rationals({1, 0, 6}),
                  testing::rationals({1, 0, 1})}));

    const auto one = all_tuples(testing::rationals({2, 2}));
    REQUIRE(one.size() == 1);
    CHECK(one[0].offsets_by_slope() == testing::rationals({0, 1}));

    const auto four = all_tuples(testing::rationals({4, 4, 4, 4}));
    REQUIRE(four.size() == 1);
    CHECK(four[0].offsets_by_slope() == testing::rationals({0, 1, 2, 3}));
}

TEST_CASE("tuple errors") {
    CHECK_THROWS_AS(tuple_from_ordering(testing::rationals({2, 3}), {}), PreconditionError);
    CHECK_THROWS_AS(tuple_from_ordering(testing::rationals({1, 2}), {}), PreconditionError);
    CHECK_THROWS_AS(tuple_from_ordering(testing::rationals({2, 2}), {0, 0}), PreconditionError);
    CHECK_THROWS_AS(tuple_from_ordering(testing::rationals({2, 2}), {-1, 0}), PreconditionError);
    CHECK_THROWS_AS(normalize(testing::rationals({2, 3, 7})), PreconditionError);
    CHECK_THROWS_AS(all_tuples(std::vector<Rational>{Q("3/2"), 3}), PreconditionError);
    CHECK_THROWS_AS(all_tuples(std::vector<Rational>{}), PreconditionError);
}

TEST_CASE("normalized tuples are integral with gcd one") {
    for (const auto& slopes : {testing::rationals({2, 3, 6}), testing::rationals({2, 4, 4}),
                               testing::rationals({2, 4, 8, 8}), testing::rationals({3, 3, 3}),
                               testing::rationals({2, 3, 7, 42})}) {
        for (const auto& t : all_tuples(slopes)) {
            BigInt g = 0;
            for (const auto& b : t.offsets) {
                CHECK(is_integer(b));
                CHECK(b >= 0);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b.get_num_mpz_t());
            }
            CHECK(g == 1);
            CHECK(t.params.d2 == 0);
            // idempotent: normalizing the ordering again reproduces the tuple
            const auto again = normalize(t.ordering);
            CHECK(again.offsets == t.offsets);
            CHECK(again.params == t.params);
            CHECK(t.system().size() == slopes.size());
        }
    }
}

TEST_CASE("parameter change is conjugation by the normalizing map") {
    std::mt19937_64 rng(5);
    const std::vector<std::vector<Rational>> orderings = {
        testing::rationals({2, 3, 6}), testing::rationals({6, 2, 3}), testing::rationals({4, 2, 4}),
        testing::rationals({2, 2}), {Q("3/2"), 3}};
    for (int round = 0; round < 100; ++round) {
        const auto& ordering = orderings[round % orderings.size()];
        KlarnerParams params;
        do {
            params.d1 = oracle::random_rational(rng, 20, 7);
        } while (params.d1 <= 0);
        params.d2 = oracle::random_rational(rng, 20, 7) - 1;
        const auto general = tuple_from_ordering(ordering, params);
        const auto unit = tuple_from_ordering(ordering, {});
        const AffineCoeffs g = params.normalizing_map();
        const AffineCoeffs g_inv = inverse(g);
        for (std::size_t i = 0; i < ordering.size(); ++i) {
            const AffineCoeffs f{ordering[i], general.offsets[i]};
            const AffineCoeffs conj = compose(g, compose(f, g_inv));
            CHECK(conj.slope == ordering[i]);
            CHECK(conj.offset == unit.offsets[i]);
        }
        // g carries the interval onto (-1, 0)
        CHECK(g(params.interval_left()) == -1);
        CHECK(g(params.interval_right()) == 0);
    }
}

TEST_CASE("inverse images tile the interval right to left") {
    for (const auto& ordering : {testing::rationals({2, 3, 6}), testing::rationals({3, 6, 2}),
                                 testing::rationals({2, 4, 4})}) {
        const KlarnerParams params{Q("5/2"), Q("-3/4")};
        const auto t = tuple_from_ordering(ordering, params);
        Rational right = params.interval_right();
        for (std::size_t i = 0; i < ordering.size(); ++i) {
            const AffineCoeffs inv = inverse(AffineCoeffs{ordering[i], t.offsets[i]});
            const Rational lo = inv(params.interval_left());
            const Rational hi = inv(params.interval_right());
            CHECK(hi == right);
            right = lo;
        }
        CHECK(right == params.interval_left());
    }
}
