#include "orbits/covering.hpp"

#include "orbits/errors.hpp"
#include "orbits/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace orbits {

std::int64_t Progression::residue() const {
    const std::int64_t r = offset % modulus;
    return r < 0 ? r + modulus : r;
}

bool Progression::contains(std::int64_t n) const {
    std::int64_t r = n % modulus;
    if (r < 0) r += modulus;
    return r == residue();
}

CongruenceSystem::CongruenceSystem(std::vector<Progression> progressions)
    : progressions_(std::move(progressions)) {
    if (progressions_.empty()) throw PreconditionError("congruence system must not be empty");
    for (const auto& p : progressions_) {
        if (p.modulus < 1) {
            throw PreconditionError("progression modulus must be >= 1, got " +
                                    std::to_string(p.modulus));
        }
    }
}

CongruenceSystem CongruenceSystem::from_functions(const FunctionSystem& system) {
    std::vector<Progression> out;
    for (const auto& f : system.maps()) {
        if (!is_integer(f.slope()) || !is_integer(f.offset()) ||
            !f.slope().get_num().fits_slong_p() || !f.offset().get_num().fits_slong_p()) {
            throw PreconditionError("progression view needs 64-bit integer coefficients, got " +
                                    to_string(f));
        }
        out.push_back({f.slope().get_num().get_si(), f.offset().get_num().get_si()});
    }
    return CongruenceSystem(std::move(out));
}

FunctionSystem CongruenceSystem::to_function_system() const {
    std::vector<AffineMap> maps;
    for (std::size_t i = 0; i < progressions_.size(); ++i) {
        const auto& p = progressions_[i];
        if (p.offset < 0) {
            throw PreconditionError("progression " + std::to_string(i) + " has negative offset " +
                                    std::to_string(p.offset) + "; shift it before conversion");
        }
        maps.emplace_back(Rational(p.modulus), Rational(p.offset));
    }
    return FunctionSystem(std::move(maps));
}

BigInt CongruenceSystem::lcm() const {
    BigInt l = 1;
    for (const auto& p : progressions_) {
        const BigInt m(static_cast<long>(p.modulus));
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.get_mpz_t());
    }
    return l;
}

std::int64_t CongruenceSystem::moduli_gcd() const {
    std::int64_t g = 0;
    for (const auto& p : progressions_) g = std::gcd(g, p.modulus);
    return g;
}

bool operator==(const CongruenceSystem& a, const CongruenceSystem& b) {
    return std::equal(a.progressions_.begin(), a.progressions_.end(), b.progressions_.begin(),
                      b.progressions_.end(), [](const Progression& p, const Progression& q) {
                          return p.modulus == q.modulus && p.residue() == q.residue();
                      });
}

std::string to_string(const CongruenceSystem& system) {
    std::string out = "{";
    for (std::size_t i = 0; i < system.size(); ++i) {
        const auto& p = system.progressions()[i];
        if (i) out += ", ";
        out += "(" + std::to_string(p.modulus) + "," + std::to_string(p.residue()) + ")";
    }
    return out + "}";
}

std::string_view to_string(CoverKind kind) {
    switch (kind) {
        case CoverKind::exact: return "exact";
        case CoverKind::gap: return "gap";
        case CoverKind::overlap: return "overlap";
    }
    return "unknown";
}

namespace {

CoverVerdict offending(const CongruenceSystem& system, std::uint64_t residue, std::uint64_t lcm) {
    CoverVerdict v;
    v.residue = residue;
    v.lcm = lcm;
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < system.size() && hits.size() < 2; ++i) {
        if (system.progressions()[i].contains(static_cast<std::int64_t>(residue))) hits.push_back(i);
    }
    if (hits.empty()) {
        v.kind = CoverKind::gap;
    } else {
        v.kind = CoverKind::overlap;
        v.first = hits[0];
        v.second = hits[1];
    }
    return v;
}

// Inverse of a modulo m for gcd(a, m) = 1, m > 1.
__int128 mod_inverse(__int128 a, __int128 m) {
    __int128 r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const __int128 q = r0 / r1;
        const __int128 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        const __int128 s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    s0 %= m;
    return s0 < 0 ? s0 + m : s0;
}

std::size_t membership_count(const CongruenceSystem& system, std::int64_t n) {
    std::size_t count = 0;
    for (const auto& p : system.progressions()) count += p.contains(n) ? 1 : 0;
    return count;
}

}  // namespace

CoverVerdict is_exact_cover(const CongruenceSystem& system, const CoverOptions& options) {
    const BigInt big_lcm = system.lcm();
    if (big_lcm > from_uint64(options.max_classes)) {
        throw ResourceError("lcm of moduli is " + to_string(big_lcm) +
                            ", above the residue-class limit " +
                            std::to_string(options.max_classes));
    }
    const std::uint64_t lcm = *to_uint64(big_lcm);

    BigInt density = 0;
    for (const auto& p : system.progressions()) density += big_lcm / p.modulus;

    if (density != big_lcm) {
        // Not exact; the first residue covered != 1 times is the witness.
        for (std::uint64_t r = 0; r < lcm; ++r) {
            if (membership_count(system, static_cast<std::int64_t>(r)) != 1) {
                return offending(system, r, lcm);
            }
        }
    }

    std::vector<std::uint8_t> table;
    try {
        table.assign(lcm, 0);
    } catch (const std::bad_alloc&) {
        throw ResourceError("cannot allocate a residue table of " + std::to_string(lcm) +
                            " classes");
    }
    for (const auto& p : system.progressions()) {
        kernels::mark_stride(table, static_cast<std::size_t>(p.residue()),
                             static_cast<std::size_t>(p.modulus));
    }
    const std::size_t first = kernels::find_first_not_equal(table, 1);
    if (first == table.size()) {
        CoverVerdict v;
        v.lcm = lcm;
        return v;
    }
    return offending(system, first, lcm);
}

Disjointness progressions_disjoint(const CongruenceSystem& system) {
    const auto& ps = system.progressions();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const __int128 m1 = ps[i].modulus;
            const __int128 m2 = ps[j].modulus;
            const __int128 r1 = ps[i].residue();
            const __int128 r2 = ps[j].residue();
            const std::int64_t g = std::gcd(ps[i].modulus, ps[j].modulus);
            if ((r2 - r1) % g != 0) continue;
            // Solve r1 + m1*t = r2 (mod m2): t = ((r2-r1)/g) * inv(m1/g) mod (m2/g).
            const __int128 m2g = m2 / g;
            __int128 t = 0;
            if (m2g > 1) {
                __int128 k = ((r2 - r1) / g) % m2g;
                if (k < 0) k += m2g;
                t = (k * mod_inverse((m1 / g) % m2g, m2g)) % m2g;
            }
            const __int128 l = m1 / g * m2;
            __int128 x = (r1 + m1 * t) % l;
            if (x < 0) x += l;
            return {false, Intersection{i, j, static_cast<std::int64_t>(x)}};
        }
    }
    return {true, std::nullopt};
}

CongruenceSystem subdivide(const CongruenceSystem& system, std::size_t index, std::int64_t r,
                           std::span<const std::int64_t> residues) {
    if (index >= system.size()) {
        throw PreconditionError("subdivide: index " + std::to_string(index) + " out of range");
    }
    if (r < 2) throw PreconditionError("subdivide: r must be >= 2");
    if (residues.size() != static_cast<std::size_t>(r)) {
        throw PreconditionError("subdivide: need exactly r = " + std::to_string(r) + " residues");
    }
    std::vector<bool> used(static_cast<std::size_t>(r), false);
    for (std::int64_t c : residues) {
        std::int64_t k = c % r;
        if (k < 0) k += r;
        if (used[static_cast<std::size_t>(k)]) {
            throw PreconditionError("subdivide: residues are not pairwise distinct mod " +
                                    std::to_string(r));
        }
        used[static_cast<std::size_t>(k)] = true;
    }

    const Progression old = system.progressions()[index];
    std::vector<Progression> out;
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (i != index) {
            out.push_back(system.progressions()[i]);
            continue;
        }
        for (std::int64_t c : residues) {
            // a*(r*y + c) + b
            out.push_back({old.modulus * r, old.modulus * c + old.offset});
        }
    }
    return CongruenceSystem(std::move(out));
}

CongruenceSystem shift_progression(const CongruenceSystem& system, std::size_t index,
                                   std::int64_t h) {
    if (index >= system.size()) {
        throw PreconditionError("shift_progression: index " + std::to_string(index) +
                                " out of range");
    }
    std::vector<Progression> out = system.progressions();
    out[index].offset -= out[index].modulus * h;
    return CongruenceSystem(std::move(out));
}

CongruenceSystem porubsky_13() {
    return CongruenceSystem({{6, 0},
                             {6, 4},
                             {10, 1},
                             {10, 3},
                             {10, 5},
                             {10, 9},
                             {15, 2},
                             {30, 7},
                             {30, 8},
                             {30, 14},
                             {30, 20},
                             {30, 26},
                             {30, 27}});
}

bool mirsky_newman_holds(const CongruenceSystem& system) {
    if (system.size() < 2) {
        throw PreconditionError("mirsky_newman_holds needs at least two progressions");
    }
    if (is_exact_cover(system).kind != CoverKind::exact) {
        throw PreconditionError("mirsky_newman_holds requires an exact cover");
    }
    std::vector<std::int64_t> moduli;
    for (const auto& p : system.progressions()) moduli.push_back(p.modulus);
    std::sort(moduli.begin(), moduli.end());
    return std::adjacent_find(moduli.begin(), moduli.end()) != moduli.end();
}

std::vector<CongruenceSystem> random_subdivision_chain(std::uint64_t seed, int depth, int max_r) {
    if (max_r < 2) throw PreconditionError("random_subdivision_chain: max_r must be >= 2");
    std::mt19937_64 rng(seed);
    std::vector<CongruenceSystem> chain{CongruenceSystem({{1, 0}})};
    for (int step = 0; step < depth; ++step) {
        const auto& current = chain.back();
        std::uniform_int_distribution<std::size_t> pick(0, current.size() - 1);
        std::uniform_int_distribution<std::int64_t> pick_r(2, max_r);
        std::uniform_int_distribution<std::int64_t> lift(0, 2);
        const std::size_t index = pick(rng);
        const std::int64_t r = pick_r(rng);
        std::vector<std::int64_t> residues(static_cast<std::size_t>(r));
        std::iota(residues.begin(), residues.end(), 0);
        std::shuffle(residues.begin(), residues.end(), rng);
        for (auto& c : residues) c += r * lift(rng);
        chain.push_back(subdivide(current, index, r, residues));
    }
    return chain;
}

}  // namespace orbits
