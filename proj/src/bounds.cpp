#include "orbits/bounds.hpp"

#include "orbits/errors.hpp"

#include <cmath>
#include <map>

namespace orbits {

bool lower_bound_holds(double lower, const BigInt& count) {
    return lower * (1.0 - kGuardBand) <= to_double(count);
}

bool upper_bound_holds(const BigInt& count, double upper) {
    return to_double(count) <= upper * (1.0 + kGuardBand);
}

double power_sum(std::span<const Rational> slopes, double sigma) {
    double sum = 0.0;
    for (const auto& a : slopes) sum += std::pow(to_double(a), -sigma);
    return sum;
}

SigmaSolution solve_sigma(std::span<const Rational> slopes) {
    if (slopes.size() < 2) {
        throw PreconditionError("solve_sigma needs at least two slopes for a positive root");
    }
    Rational exact_sum = 0;
    for (const auto& a : slopes) {
        if (a <= 1) throw PreconditionError("solve_sigma requires slopes > 1, got " + to_string(a));
        exact_sum += 1 / a;
    }
    if (exact_sum == 1) return {1.0, std::abs(power_sum(slopes, 1.0) - 1.0), true};

    // power_sum is strictly decreasing from n at 0 toward 0.
    double lo = 0.0;
    double hi = 1.0;
    while (power_sum(slopes, hi) > 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw PreconditionError("solve_sigma failed to bracket the root");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (power_sum(slopes, mid) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double r_lo = std::abs(power_sum(slopes, lo) - 1.0);
    const double r_hi = std::abs(power_sum(slopes, hi) - 1.0);
    SigmaSolution out{r_lo <= r_hi ? lo : hi, std::min(r_lo, r_hi), false};
    if (out.residual > kSigmaTolerance) {
        throw Error("solve_sigma: residual " + std::to_string(out.residual) +
                    " above tolerance");
    }
    return out;
}

UpperBoundResult erdos_lagarias_upper(const FunctionSystem& system, const SeedSet& seeds,
                                      const Rational& x, double sigma) {
    if (x < 1) throw PreconditionError("erdos_lagarias_upper requires x >= 1");
    if (!(sigma > 0)) throw PreconditionError("erdos_lagarias_upper requires sigma > 0");
    const auto slopes = system.slopes();
    const double alpha = power_sum(slopes, sigma);
    if (!(alpha < 1.0)) {
        throw PreconditionError("alpha = sum a_i^-sigma = " + std::to_string(alpha) +
                                " is not < 1; sigma is too small for this system");
    }
    double seed_sum = 0.0;
    for (const auto& s : seeds.values()) {
        if (s > x) break;
        if (sgn(s) == 0) {
            throw PreconditionError("erdos_lagarias_upper requires seeds <= x to be positive");
        }
        seed_sum += std::pow(to_double(s), -sigma);
    }
    return {alpha, seed_sum * std::pow(to_double(x), sigma) / (1.0 - alpha)};
}

double lower_bound_theorem2(const FunctionSystem& system, const SeedSet& seeds,
                            const Rational& x, double sigma) {
    system.require_strict("lower_bound_theorem2");
    if (x < 1) throw PreconditionError("lower_bound_theorem2 requires x >= 1");
    const auto slopes = system.slopes();
    const double residual = std::abs(power_sum(slopes, sigma) - 1.0);
    if (!(residual <= kSigmaTolerance)) {
        throw PreconditionError("lower_bound_theorem2 requires sum a_i^-sigma = 1 (residual " +
                                std::to_string(residual) + ")");
    }
    const Rational d = system.min_slope() - 1;
    const Rational scaled_x = x * d;
    double seed_sum = 0.0;
    for (const auto& s : seeds.values()) {
        const Rational shifted = s * d + system.max_offset();
        if (sgn(shifted) == 0) {
            throw PreconditionError("lower_bound_theorem2: seed 0 with all offsets 0");
        }
        if (scaled_x >= shifted) seed_sum += std::pow(to_double(shifted), -sigma);
    }
    const double ratio = to_double(d) / to_double(system.max_slope());
    return std::pow(ratio, sigma) * seed_sum * std::pow(to_double(x), sigma);
}

namespace {

BigInt count_products(std::span<const Rational> slopes, const Rational& x,
                      std::map<Rational, BigInt>& memo) {
    if (x < 1) return 0;
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    BigInt total = 1;
    for (const auto& a : slopes) total += count_products(slopes, x / a, memo);
    memo.emplace(x, total);
    return total;
}

}  // namespace

BigInt count_bounded_products(std::span<const Rational> slopes, const Rational& x) {
    for (const auto& a : slopes) {
        if (a <= 1) {
            throw PreconditionError("count_bounded_products requires slopes > 1, got " +
                                    to_string(a));
        }
    }
    if (slopes.empty()) return x < 1 ? 0 : 1;
    std::map<Rational, BigInt> memo;
    return count_products(slopes, x, memo);
}

BigInt count_bounded_products(const FunctionSystem& system, const Rational& x) {
    const auto slopes = system.slopes();
    return count_bounded_products(slopes, x);
}

BigInt multinomial(std::span<const std::uint64_t> counts) {
    // Product of binomials C(k_1 + ... + k_i, k_i) keeps intermediates small.
    BigInt result = 1;
    BigInt binom;
    std::uint64_t total = 0;
    for (std::uint64_t k : counts) {
        total += k;
        mpz_bin_uiui(binom.get_mpz_t(), total, k);
        result *= binom;
    }
    return result;
}

Theorem3Plan theorem3_plan(const FunctionSystem& system, const Rational& s, const Rational& x) {
    system.require_strict("theorem3_plan");
    if (system.reciprocal_slope_sum() != 1) {
        throw PreconditionError("theorem3_plan requires sum 1/a_i = 1 exactly, got " +
                                to_string(system.reciprocal_slope_sum()));
    }
    if (sgn(s) < 0) throw PreconditionError("theorem3_plan requires s >= 0");
    if (sgn(x) <= 0) throw PreconditionError("theorem3_plan requires x > 0");

    Theorem3Plan plan;
    plan.C = system.max_offset() / (system.min_slope() - 1) + s;
    if (sgn(plan.C) <= 0) {
        throw PreconditionError("theorem3_plan: C = 0 (s = 0 and all offsets 0)");
    }
    double rate = 0.0;
    for (const auto& f : system.maps()) {
        const double a = to_double(f.slope());
        rate += std::log(a) / a;
    }
    double t = (std::log(to_double(x)) - std::log(to_double(plan.C))) / rate;
    if (!(t > 0)) {
        throw PreconditionError("theorem3_plan: t = " + std::to_string(t) +
                                " <= 0, x is too small relative to C = " + to_string(plan.C));
    }

    while (true) {
        plan.k.clear();
        plan.slope_product = 1;
        for (const auto& f : system.maps()) {
            const double q = std::floor(t / to_double(f.slope()));
            const auto k = static_cast<std::uint64_t>(q < 0 ? 0 : q);
            plan.k.push_back(k);
            Rational power;
            mpz_pow_ui(power.get_num_mpz_t(), f.slope().get_num_mpz_t(), k);
            mpz_pow_ui(power.get_den_mpz_t(), f.slope().get_den_mpz_t(), k);
            plan.slope_product *= power;
        }
        plan.M = plan.C * plan.slope_product;
        if (plan.M <= x) break;
        t -= 1.0;
        if (!(t > 0)) {
            throw PreconditionError("theorem3_plan: no t > 0 with M <= x");
        }
    }
    plan.t = t;
    plan.N = multinomial(plan.k);
    return plan;
}

}  // namespace orbits
