#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

#include "orbits/covering.hpp"
#include "orbits/errors.hpp"
#include "orbits/kernels.hpp"

#include <numeric>
#include <random>

using namespace orbits;
using testing::Q;

namespace {

CongruenceSystem cs(std::initializer_list<Progression> ps) { return CongruenceSystem(ps); }

// Verdict from a direct scan of one period.
CoverVerdict scan_verdict(const CongruenceSystem& sys) {
    const auto L = static_cast<std::int64_t>(sys.lcm().get_si());
    const auto counts = oracle::coverage_counts(sys, L);
    CoverVerdict v;
    v.lcm = static_cast<std::uint64_t>(L);
    for (std::int64_t n = 0; n < L; ++n) {
        if (counts[n] == 1) continue;
        v.kind = counts[n] == 0 ? CoverKind::gap : CoverKind::overlap;
        v.residue = static_cast<std::uint64_t>(n);
        return v;
    }
    return v;
}

Rational density(const CongruenceSystem& sys) {
    Rational sum = 0;
    for (const auto& p : sys.progressions()) sum += Rational(1, p.modulus);
    return sum;
}

CongruenceSystem random_system(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n(1, 5);
    std::uniform_int_distribution<std::int64_t> m(1, 12);
    std::vector<Progression> ps;
    const int count = n(rng);
    for (int i = 0; i < count; ++i) {
        const std::int64_t a = m(rng);
        std::uniform_int_distribution<std::int64_t> b(-2 * a, 2 * a);
        ps.push_back({a, b(rng)});
    }
    return CongruenceSystem(ps);
}

}  // namespace

TEST_CASE("progression basics") {
    const Progression p{4, 6};
    CHECK(p.residue() == 2);
    CHECK(p.contains(2));
    CHECK(p.contains(-2));
    CHECK_FALSE(p.contains(4));
    CHECK(Progression{3, -1}.residue() == 2);
    CHECK_THROWS_AS(cs({{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(CongruenceSystem(std::vector<Progression>{}), PreconditionError);
}

TEST_CASE("is_exact_cover examples") {
    CHECK(is_exact_cover(cs({{2, 1}, {4, 2}, {4, 0}})).kind == CoverKind::exact);
    CHECK(is_exact_cover(cs({{2, 1}, {4, 2}, {4, 4}})).kind == CoverKind::exact);
    CHECK(is_exact_cover(cs({{1, 0}})).kind == CoverKind::exact);
    const auto gap = is_exact_cover(cs({{2, 0}, {3, 2}, {6, 3}}));
    CHECK(gap.kind == CoverKind::gap);
    CHECK(gap.residue == 1);
    CHECK(gap.lcm == 6);
    CHECK(is_exact_cover(porubsky_13()).kind == CoverKind::exact);

    const auto overlap = is_exact_cover(cs({{2, 0}, {2, 1}, {4, 2}, {4, 0}}));
    CHECK(overlap.kind == CoverKind::overlap);
    CHECK(overlap.residue == 0);
    CHECK(overlap.first == 0);
    CHECK(overlap.second == 3);
}

TEST_CASE("is_exact_cover resource limit") {
    CHECK_THROWS_AS(is_exact_cover(cs({{2, 0}, {2, 1}}), {1}), ResourceError);
    CHECK_NOTHROW(is_exact_cover(cs({{2, 0}, {2, 1}}), {2}));
    const auto huge = cs({{1000003, 0}, {999983, 1}, {1000033, 2}, {2, 1}});
    CHECK_THROWS_AS(is_exact_cover(huge), ResourceError);
}

TEST_CASE("is_exact_cover agrees with a direct scan") {
    std::mt19937_64 rng(99);
    int exact = 0;
    for (int round = 0; round < 400; ++round) {
        const auto sys = random_system(rng);
        if (sys.lcm() > 10000) continue;
        const auto v = is_exact_cover(sys);
        const auto w = scan_verdict(sys);
        CHECK(v.kind == w.kind);
        CHECK(v.lcm == w.lcm);
        if (v.kind != CoverKind::exact) CHECK(v.residue == w.residue);
        if (v.kind == CoverKind::overlap) {
            CHECK(v.first < v.second);
            CHECK(sys.progressions()[v.first].contains(std::int64_t(v.residue)));
            CHECK(sys.progressions()[v.second].contains(std::int64_t(v.residue)));
        }
        const bool disjoint = progressions_disjoint(sys).disjoint;
        CHECK((v.kind == CoverKind::exact) == (disjoint && density(sys) == 1));
        exact += v.kind == CoverKind::exact;
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (const auto& sys : random_subdivision_chain(seed, 4, 3)) {
            if (sys.lcm() > 10000) continue;
            CHECK(scan_verdict(sys).kind == CoverKind::exact);
        }
    }
    CHECK(exact > 0);
}

TEST_CASE("progressions_disjoint examples") {
    CHECK(progressions_disjoint(cs({{2, 1}, {4, 0}})).disjoint);
    const auto meet = progressions_disjoint(cs({{2, 0}, {3, 2}}));
    CHECK_FALSE(meet.disjoint);
    REQUIRE(meet.witness);
    CHECK(meet.witness->element == 2);
    CHECK(meet.witness->first == 0);
    CHECK(meet.witness->second == 1);
    CHECK(progressions_disjoint(cs({{2, 0}, {6, 3}})).disjoint);
}

TEST_CASE("disjointness witnesses are least common elements") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 300; ++round) {
        const auto sys = random_system(rng);
        const auto d = progressions_disjoint(sys);
        bool brute_disjoint = true;
        std::size_t bi = 0, bj = 0;
        const auto& ps = sys.progressions();
        for (std::size_t i = 0; i < ps.size() && brute_disjoint; ++i) {
            for (std::size_t j = i + 1; j < ps.size() && brute_disjoint; ++j) {
                const auto g = std::gcd(ps[i].modulus, ps[j].modulus);
                if ((ps[i].residue() - ps[j].residue()) % g == 0) {
                    brute_disjoint = false;
                    bi = i;
                    bj = j;
                }
            }
        }
        CHECK(d.disjoint == brute_disjoint);
        if (!d.disjoint) {
            REQUIRE(d.witness);
            CHECK(d.witness->first == bi);
            CHECK(d.witness->second == bj);
            const auto e = d.witness->element;
            CHECK(e >= 0);
            CHECK(ps[bi].contains(e));
            CHECK(ps[bj].contains(e));
            for (std::int64_t n = 0; n < e; ++n) CHECK_FALSE((ps[bi].contains(n) && ps[bj].contains(n)));
        }
    }
}

TEST_CASE("subdivide examples") {
    const std::vector<std::int64_t> halves{0, 1};
    const auto a = subdivide(cs({{1, 0}}), 0, 2, halves);
    CHECK(a == cs({{2, 0}, {2, 1}}));
    const auto b = subdivide(a, 1, 2, halves);
    CHECK(b == cs({{2, 0}, {4, 1}, {4, 3}}));
    CHECK(is_exact_cover(b).kind == CoverKind::exact);
    CHECK_THROWS_AS(subdivide(a, 0, 2, std::vector<std::int64_t>{0, 2}), PreconditionError);
    CHECK_THROWS_AS(subdivide(a, 2, 2, halves), PreconditionError);
    CHECK_THROWS_AS(subdivide(a, 0, 1, std::vector<std::int64_t>{0}), PreconditionError);
    CHECK_THROWS_AS(subdivide(a, 0, 3, halves), PreconditionError);
    // offsets follow a*c + b
    const auto c = subdivide(cs({{3, 2}}), 0, 2, std::vector<std::int64_t>{5, 0});
    CHECK(c.progressions()[0].modulus == 6);
    CHECK(c.progressions()[0].offset == 17);
    CHECK(c.progressions()[1].offset == 2);
}

TEST_CASE("shift_progression examples") {
    const auto shifted = shift_progression(cs({{4, 6}}), 0, 1);
    CHECK(shifted.progressions()[0].offset == 2);
    CHECK(shifted.progressions()[0].residue() == 2);
    const auto sys = cs({{2, 1}, {4, 2}, {4, 4}});
    const auto same = shift_progression(sys, 1, 0);
    CHECK(same.progressions()[1].offset == 2);
    CHECK(same == sys);
    const auto back = shift_progression(cs({{2, 1}}), 0, -3);
    CHECK(back.progressions()[0].offset == 7);
    CHECK(back.progressions()[0].residue() == 1);
    CHECK_THROWS_AS(shift_progression(sys, 3, 1), PreconditionError);
}

TEST_CASE("13-progression system") {
    const auto p = porubsky_13();
    CHECK(p.size() == 13);
    CHECK(p.lcm() == 30);
    CHECK(density(p) == 1);
    CHECK(progressions_disjoint(p).disjoint);
    int thirty = 0;
    for (const auto& q : p.progressions()) {
        CHECK(std::vector<std::int64_t>{6, 10, 15, 30}.end() !=
              std::find(std::vector<std::int64_t>{6, 10, 15, 30}.begin(),
                        std::vector<std::int64_t>{6, 10, 15, 30}.end(), q.modulus));
        thirty += q.modulus == 30;
    }
    CHECK(thirty == 6);
    CHECK(mirsky_newman_holds(p));
    const auto counts = oracle::coverage_counts(p, 30);
    for (int c : counts) CHECK(c == 1);
}

TEST_CASE("equal moduli examples") {
    CHECK(mirsky_newman_holds(cs({{2, 0}, {2, 1}})));
    CHECK(mirsky_newman_holds(cs({{2, 1}, {4, 2}, {4, 0}})));
    CHECK_THROWS_AS(mirsky_newman_holds(cs({{1, 0}})), PreconditionError);
    CHECK_THROWS_AS(mirsky_newman_holds(cs({{2, 0}, {3, 2}, {6, 3}})), PreconditionError);
}

TEST_CASE("subdivision chains stay exact covers") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto chain = random_subdivision_chain(seed, 6, 4);
        CHECK(chain.size() == 7);
        for (std::size_t i = 1; i < chain.size(); ++i) {
            REQUIRE(is_exact_cover(chain[i]).kind == CoverKind::exact);
            CHECK(density(chain[i]) == 1);
            CHECK(mirsky_newman_holds(chain[i]));
            ++checked;
        }
    }
    CHECK(checked == 3000);
    const auto a = random_subdivision_chain(42, 5, 5);
    const auto b = random_subdivision_chain(42, 5, 5);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("function system round trip") {
    const auto F = testing::system({{2, 1}, {4, 2}, {4, 4}});
    const auto sys = CongruenceSystem::from_functions(F);
    CHECK(sys.progressions()[2].offset == 4);
    const auto G = sys.to_function_system();
    for (std::size_t i = 0; i < F.size(); ++i) {
        CHECK(G[i].slope() == F[i].slope());
        CHECK(G[i].offset() == F[i].offset());
    }
    CHECK_THROWS_AS(cs({{2, -1}}).to_function_system(), PreconditionError);
    CHECK_THROWS_AS(CongruenceSystem::from_functions(FunctionSystem({AffineMap(Q("3/2"), 0)})),
                    PreconditionError);
    CHECK(sys.moduli_gcd() == 2);
}

TEST_CASE("cover verdicts do not depend on the scan kernel") {
    const auto saved = kernels::active_isa();
    std::mt19937_64 rng(3);
    std::vector<CongruenceSystem> systems{porubsky_13(), cs({{2, 0}, {3, 2}, {6, 3}})};
    for (int i = 0; i < 100; ++i) {
        auto s = random_system(rng);
        if (s.lcm() <= 100000) systems.push_back(s);
    }
    for (const auto& chain_seed : {1u, 2u, 3u}) {
        for (const auto& s : random_subdivision_chain(chain_seed, 8, 5)) systems.push_back(s);
    }
    for (const auto& s : systems) {
        kernels::set_active_isa(kernels::Isa::scalar);
        const auto reference = is_exact_cover(s);
        for (auto isa : {kernels::Isa::avx2, kernels::Isa::neon}) {
            if (!kernels::isa_supported(isa)) continue;
            kernels::set_active_isa(isa);
            const auto v = is_exact_cover(s);
            CHECK(v.kind == reference.kind);
            CHECK(v.residue == reference.residue);
            CHECK(v.first == reference.first);
            CHECK(v.second == reference.second);
        }
    }
    kernels::set_active_isa(saved);
}
