#pragma once

// Growth bounds for orbit multisets: the similarity exponent sigma, the
// geometric-series upper bound, the power-law lower bound, the bounded slope
// product counter N(x), and the sublinear density plan built from
// equal-slope composition families.
//
// Bound values are binary floating point. Comparisons against exact counts
// go through the guard-band helpers below.

#include "orbits/affine.hpp"
#include "orbits/orbit.hpp"
#include "orbits/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace orbits {

/// Relative slack applied when a float bound is compared with an exact count.
inline constexpr double kGuardBand = 1e-9;
/// Maximum |sum a_i^-sigma - 1| accepted as a root.
inline constexpr double kSigmaTolerance = 1e-12;

/// lower <= count, allowing kGuardBand relative slack on the bound.
bool lower_bound_holds(double lower, const BigInt& count);
/// count <= upper, allowing kGuardBand relative slack on the bound.
bool upper_bound_holds(const BigInt& count, double upper);

struct SigmaSolution {
    double sigma = 0.0;
    double residual = 0.0;
    /// Sum of 1/a_i equals 1 in exact arithmetic (then sigma is exactly 1).
    bool exact_one = false;
};

/// sum a_i^-sigma in double precision.
double power_sum(std::span<const Rational> slopes, double sigma);

/// Positive root of sum a_i^-sigma = 1. Every slope must exceed 1 and there
/// must be at least two of them.
SigmaSolution solve_sigma(std::span<const Rational> slopes);

struct UpperBoundResult {
    double alpha = 0.0;
    double bound = 0.0;
};

/// (1/(1-alpha)) * (sum_{s in S, s <= x} s^-sigma) * x^sigma with
/// alpha = sum a_i^-sigma < 1. Seeds <= x must be positive; x >= 1.
UpperBoundResult erdos_lagarias_upper(const FunctionSystem& system, const SeedSet& seeds,
                                      const Rational& x, double sigma);

/// ((delta-1)^sigma/gamma^sigma) * (sum 1/(s(delta-1)+beta)^sigma) * x^sigma,
/// summing only seeds with x(delta-1) >= s(delta-1)+beta. Requires a strict
/// system, sum a_i^-sigma = 1 within kSigmaTolerance, and x >= 1.
double lower_bound_theorem2(const FunctionSystem& system, const SeedSet& seeds,
                            const Rational& x, double sigma);

/// |N(x)|, the number of slope words (i1..ir), r >= 0, with a_{i1}...a_{ir} <= x.
BigInt count_bounded_products(std::span<const Rational> slopes, const Rational& x);
BigInt count_bounded_products(const FunctionSystem& system, const Rational& x);

/// (sum k_i)! / prod k_i!.
BigInt multinomial(std::span<const std::uint64_t> counts);

struct Theorem3Plan {
    double t = 0.0;
    std::vector<std::uint64_t> k;
    /// max b_i / (min a_i - 1) + s
    Rational C;
    Rational slope_product;
    /// C * slope_product; every equal-slope value lies in [0, M].
    Rational M;
    /// Number of words in the equal-slope family.
    BigInt N;
};

/// Chooses t = (log x - log C) / sum(log a_i / a_i), k_i = floor(t / a_i),
/// stepping t down until M <= x holds exactly. Requires a strict system with
/// sum 1/a_i = 1 exactly.
Theorem3Plan theorem3_plan(const FunctionSystem& system, const Rational& s, const Rational& x);

}  // namespace orbits
