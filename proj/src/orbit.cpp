#include "orbits/orbit.hpp"

#include "orbits/bounds.hpp"
#include "orbits/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <utility>

namespace orbits {

std::string_view to_string(Mode mode) { return mode == Mode::set ? "set" : "multiset"; }

Mode parse_mode(std::string_view text) {
    if (text == "set") return Mode::set;
    if (text == "multiset") return Mode::multiset;
    throw ParseError("unknown mode '" + std::string(text) + "' (expected set or multiset)");
}

SeedSet::SeedSet(std::vector<Rational> seeds) : seeds_(std::move(seeds)) {
    if (seeds_.empty()) throw PreconditionError("seed set must not be empty");
    for (auto& s : seeds_) {
        s.canonicalize();
        if (sgn(s) < 0) throw PreconditionError("seeds must be >= 0, got " + to_string(s));
    }
    std::sort(seeds_.begin(), seeds_.end());
}

void check_seed_growth(const FunctionSystem& system, const SeedSet& seeds) {
    const Rational& s = seeds.min();
    for (std::size_t i = 0; i < system.size(); ++i) {
        const AffineMap& f = system[i];
        if (sgn((f.slope() - 1) * s + f.offset()) <= 0) {
            throw PreconditionError("map " + std::to_string(i + 1) + " (" + to_string(f) +
                                    ") does not strictly increase seed " + to_string(s));
        }
    }
}

namespace {

// Multiplicity placeholder for set mode.
struct Unit {};

struct MultiplicityOverflow {};

template <class V>
struct Generator {
    V slope;
    V offset;
};

inline std::optional<std::uint64_t> apply(const Generator<std::uint64_t>& g, std::uint64_t v,
                                          std::uint64_t bound) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(g.slope, v, &out)) return std::nullopt;
    if (__builtin_add_overflow(out, g.offset, &out)) return std::nullopt;
    if (out > bound) return std::nullopt;
    return out;
}

inline std::optional<Rational> apply(const Generator<Rational>& g, const Rational& v,
                                     const Rational& bound) {
    Rational out = g.slope * v + g.offset;
    if (out > bound) return std::nullopt;
    return out;
}

inline void accumulate(Unit&, const Unit&) {}
inline void accumulate(BigInt& acc, const BigInt& m) { acc += m; }
inline void accumulate(std::uint64_t& acc, std::uint64_t m) {
    if (__builtin_add_overflow(acc, m, &acc)) throw MultiplicityOverflow{};
}

template <class M>
M unit_multiplicity() {
    if constexpr (std::is_same_v<M, Unit>) {
        return Unit{};
    } else {
        return M(1);
    }
}

// k-way merge over one sorted run per map plus the seed run. Every map is
// strictly increasing and values leave in increasing order, so each run
// stays sorted and the smallest pending value is always at some run head.
// Equal heads are merged (multiplicities summed) before expansion.
template <class V, class M, class Emit>
std::size_t merge_enumerate(const std::vector<Generator<V>>& generators,
                            std::vector<std::pair<V, M>> seeds, const V& bound, Emit&& emit) {
    std::vector<std::deque<std::pair<V, M>>> runs(generators.size() + 1);
    std::size_t pending = 0;
    for (auto& seed : seeds) {
        if (seed.first > bound) break;
        runs[0].push_back(std::move(seed));
        ++pending;
    }
    std::size_t peak = pending;

    while (true) {
        const V* least = nullptr;
        for (const auto& run : runs) {
            if (!run.empty() && (least == nullptr || run.front().first < *least)) {
                least = &run.front().first;
            }
        }
        if (least == nullptr) break;

        V value = *least;
        M multiplicity{};
        for (auto& run : runs) {
            if (!run.empty() && run.front().first == value) {
                accumulate(multiplicity, run.front().second);
                run.pop_front();
                --pending;
            }
        }
        emit(value, multiplicity);

        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (auto image = apply(generators[i], value, bound)) {
                runs[i + 1].emplace_back(std::move(*image), multiplicity);
                ++pending;
            }
        }
        peak = std::max(peak, pending);
    }
    return peak;
}

template <class V, class M>
std::vector<std::pair<V, M>> seed_runs(const std::vector<V>& sorted_seeds) {
    std::vector<std::pair<V, M>> out;
    for (const auto& s : sorted_seeds) {
        if (!out.empty() && out.back().first == s) {
            accumulate(out.back().second, unit_multiplicity<M>());
        } else {
            out.emplace_back(s, unit_multiplicity<M>());
        }
    }
    return out;
}

inline BigInt to_big(const BigInt& m) { return m; }
inline BigInt to_big(std::uint64_t m) { return from_uint64(m); }
inline BigInt to_big(const Unit&) { return 1; }

inline Rational to_rational(const Rational& v) { return v; }
inline Rational to_rational(std::uint64_t v) { return Rational(from_uint64(v)); }

// Sink receives (native value, native multiplicity) in increasing order.
// Restartable sinks get machine-word multiplicities first and are reset and
// replayed with big multiplicities if a sum overflows.
template <class Sink>
bool run_engine(const FunctionSystem& system, const SeedSet& seeds, const Rational& x, Mode mode,
                ArithmeticPath path, Sink& sink, std::size_t& peak) {
    check_seed_growth(system, seeds);
    if (sgn(x) < 0) throw PreconditionError("bound x must be >= 0, got " + to_string(x));

    bool integral = system.has_integer_coefficients();
    for (const auto& s : seeds.values()) integral = integral && is_integer(s);
    std::optional<std::uint64_t> bound64 = integral ? to_uint64(floor(x)) : std::nullopt;
    std::vector<Generator<std::uint64_t>> gens64;
    if (bound64) {
        for (const auto& f : system.maps()) {
            auto a = to_uint64(f.slope().get_num());
            auto b = to_uint64(f.offset().get_num());
            if (!a || !b) {
                bound64.reset();
                break;
            }
            gens64.push_back({*a, *b});
        }
    }
    if (path == ArithmeticPath::integer && !bound64) {
        throw PreconditionError("integer path requested for a system that does not fit it");
    }
    const bool use_integer = bound64 && path != ArithmeticPath::rational;

    if (use_integer) {
        std::vector<std::uint64_t> seeds64;
        for (const auto& s : seeds.values()) {
            auto v = to_uint64(s.get_num());
            seeds64.push_back(v ? *v : std::numeric_limits<std::uint64_t>::max());
        }
        if (mode == Mode::set) {
            peak = merge_enumerate(gens64, seed_runs<std::uint64_t, Unit>(seeds64), *bound64,
                                   [&](std::uint64_t v, const Unit& m) { sink(v, m); });
            return true;
        }
        if constexpr (Sink::restartable) {
            try {
                peak = merge_enumerate(
                    gens64, seed_runs<std::uint64_t, std::uint64_t>(seeds64), *bound64,
                    [&](std::uint64_t v, std::uint64_t m) { sink(v, m); });
                return true;
            } catch (const MultiplicityOverflow&) {
                sink.reset();
            }
        }
        peak = merge_enumerate(gens64, seed_runs<std::uint64_t, BigInt>(seeds64), *bound64,
                               [&](std::uint64_t v, const BigInt& m) { sink(v, m); });
        return true;
    }

    std::vector<Generator<Rational>> gens;
    for (const auto& f : system.maps()) gens.push_back({f.slope(), f.offset()});
    std::vector<Rational> seed_values(seeds.values().begin(), seeds.values().end());
    if (mode == Mode::set) {
        peak = merge_enumerate(gens, seed_runs<Rational, Unit>(seed_values), x,
                               [&](const Rational& v, const Unit& m) { sink(v, m); });
    } else {
        peak = merge_enumerate(gens, seed_runs<Rational, BigInt>(seed_values), x,
                               [&](const Rational& v, const BigInt& m) { sink(v, m); });
    }
    return false;
}

struct CountSink {
    static constexpr bool restartable = true;
    std::uint64_t set_count = 0;
    BigInt multiset_count = 0;
    BigInt max_multiplicity = 0;

    void add(const BigInt& m) {
        ++set_count;
        multiset_count += m;
        if (m > max_multiplicity) max_multiplicity = m;
    }
    template <class V>
    void operator()(const V&, const Unit&) {
        ++set_count;
        multiset_count += 1;
        if (max_multiplicity == 0) max_multiplicity = 1;
    }
    template <class V>
    void operator()(const V&, std::uint64_t m) {
        ++set_count;
        mpz_add_ui(multiset_count.get_mpz_t(), multiset_count.get_mpz_t(), m);
        if (mpz_cmp_ui(max_multiplicity.get_mpz_t(), m) < 0) max_multiplicity = to_big(m);
    }
    template <class V>
    void operator()(const V&, const BigInt& m) {
        add(m);
    }
    void reset() { *this = CountSink{}; }
};

struct VisitSink {
    static constexpr bool restartable = false;
    CountSink counts;
    const OrbitVisitor* visit;

    template <class V, class M>
    void operator()(const V& v, const M& m) {
        counts(v, m);
        (*visit)(to_rational(v), to_big(m));
    }
    void reset() {}
};

}  // namespace

PrefixStats stream_orbit(const FunctionSystem& system, const SeedSet& seeds, const Rational& x,
                         Mode mode, const OrbitVisitor& visit, ArithmeticPath path) {
    PrefixStats stats;
    std::size_t peak = 0;
    if (visit) {
        VisitSink sink{{}, &visit};
        stats.integer_path = run_engine(system, seeds, x, mode, path, sink, peak);
        stats.set_count = sink.counts.set_count;
        stats.multiset_count = std::move(sink.counts.multiset_count);
        stats.max_multiplicity = std::move(sink.counts.max_multiplicity);
    } else {
        CountSink sink;
        stats.integer_path = run_engine(system, seeds, x, mode, path, sink, peak);
        stats.set_count = sink.set_count;
        stats.multiset_count = std::move(sink.multiset_count);
        stats.max_multiplicity = std::move(sink.max_multiplicity);
    }
    stats.frontier_peak = peak;
    return stats;
}

OrbitReport enumerate_up_to(const FunctionSystem& system, const SeedSet& seeds,
                            const Rational& x, Mode mode, ArithmeticPath path) {
    OrbitReport report;
    report.bound_x = x;
    report.mode = mode;
    OrbitVisitor collect = [&](const Rational& v, const BigInt& m) {
        report.entries.push_back({v, m});
    };
    PrefixStats stats = stream_orbit(system, seeds, x, mode, collect, path);
    report.set_count = stats.set_count;
    report.multiset_count = std::move(stats.multiset_count);
    report.max_multiplicity = std::move(stats.max_multiplicity);
    report.frontier_peak = stats.frontier_peak;
    return report;
}

BigInt count_prefix(const FunctionSystem& system, const SeedSet& seeds, const Rational& x,
                    Mode mode) {
    PrefixStats stats = prefix_stats(system, seeds, x, mode);
    return mode == Mode::set ? from_uint64(stats.set_count) : stats.multiset_count;
}

PrefixStats prefix_stats(const FunctionSystem& system, const SeedSet& seeds, const Rational& x,
                         Mode mode, ArithmeticPath path) {
    return stream_orbit(system, seeds, x, mode, {}, path);
}

GrowthTable growth_samples(const FunctionSystem& system, const SeedSet& seeds,
                           std::span<const Rational> grid) {
    if (grid.empty()) throw PreconditionError("growth grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (sgn(grid[i]) < 0) throw PreconditionError("growth grid points must be >= 0");
        if (i > 0 && grid[i] < grid[i - 1]) {
            throw PreconditionError("growth grid must be sorted ascending");
        }
    }

    GrowthTable table;
    std::uint64_t set_count = 0;
    BigInt multiset_count = 0;
    std::size_t next = 0;
    auto flush_below = [&](const Rational& v) {
        while (next < grid.size() && v > grid[next]) {
            table.rows.push_back({grid[next], set_count, multiset_count});
            ++next;
        }
    };
    OrbitVisitor visit = [&](const Rational& v, const BigInt& m) {
        flush_below(v);
        ++set_count;
        multiset_count += m;
    };
    // Multiset mode yields both counts: distinct values and their total weight.
    stream_orbit(system, seeds, grid.back(), Mode::multiset, visit);
    while (next < grid.size()) {
        table.rows.push_back({grid[next], set_count, multiset_count});
        ++next;
    }
    return table;
}

EqualSlopeFamily::EqualSlopeFamily(const FunctionSystem& system,
                                   std::vector<std::uint64_t> counts, Rational s,
                                   std::uint64_t cap)
    : system_(system), seed_(std::move(s)) {
    system_.require_strict("equal_slope_family");
    if (counts.size() != system_.size()) {
        throw PreconditionError("equal_slope_family needs one count per map (" +
                                std::to_string(system_.size()) + "), got " +
                                std::to_string(counts.size()));
    }
    if (sgn(seed_) < 0) throw PreconditionError("equal_slope_family requires s >= 0");
    size_ = multinomial(counts);
    if (size_ > from_uint64(cap)) {
        throw ResourceError("equal-slope family has " + to_string(size_) +
                            " words, above the enumeration cap " + std::to_string(cap));
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        word_.letters.insert(word_.letters.end(), counts[i], i + 1);
    }
}

std::optional<Rational> EqualSlopeFamily::next() {
    if (done_) return std::nullopt;
    if (started_ && !std::next_permutation(word_.letters.begin(), word_.letters.end())) {
        done_ = true;
        return std::nullopt;
    }
    started_ = true;
    return evaluate_word(system_, word_, seed_);
}

std::vector<Rational> equal_slope_family(const FunctionSystem& system,
                                         std::span<const std::uint64_t> counts, const Rational& s,
                                         std::uint64_t cap) {
    EqualSlopeFamily family(system, std::vector<std::uint64_t>(counts.begin(), counts.end()), s,
                            cap);
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(family.size().get_ui()));
    while (auto v = family.next()) out.push_back(std::move(*v));
    return out;
}

}  // namespace orbits
