#pragma once

// Affine maps x -> a*x + b with exact rational coefficients, their
// composition, and evaluation of composition words over a finite system.

#include "orbits/rational.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace orbits {

/// Unconstrained affine transform x -> slope*x + offset. Used for
/// intermediate compositions (the empty word is the identity) and for
/// conjugations, where negative or fractional coefficients are legitimate.
struct AffineCoeffs {
    Rational slope{1};
    Rational offset{0};

    Rational operator()(const Rational& x) const { return slope * x + offset; }
    friend bool operator==(const AffineCoeffs&, const AffineCoeffs&) = default;
};

/// Returns outer∘inner, i.e. x -> outer(inner(x)).
AffineCoeffs compose(const AffineCoeffs& outer, const AffineCoeffs& inner);

/// Inverse transform; slope must be nonzero.
AffineCoeffs inverse(const AffineCoeffs& f);

/// One generator f(x) = a*x + b of an orbit system: a >= 1, b >= 0 and
/// f is not the identity.
class AffineMap {
public:
    AffineMap(Rational slope, Rational offset);

    const Rational& slope() const { return coeffs_.slope; }
    const Rational& offset() const { return coeffs_.offset; }
    const AffineCoeffs& coeffs() const { return coeffs_; }

    Rational operator()(const Rational& x) const { return coeffs_(x); }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;

private:
    AffineCoeffs coeffs_;
};

AffineMap compose(const AffineMap& outer, const AffineMap& inner);

std::string to_string(const AffineMap& f);

/// Composition word (i1, ..., ir) of 1-based indices. The leftmost index is
/// the outermost map: f_I = f_{i1} ∘ f_{i2} ∘ ... ∘ f_{ir}.
struct Word {
    std::vector<std::size_t> letters;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

/// "(1,1,2)"; the empty word prints as "()".
std::string to_string(const Word& w);

class FunctionSystem {
public:
    explicit FunctionSystem(std::vector<AffineMap> maps);

    std::span<const AffineMap> maps() const { return maps_; }
    std::size_t size() const { return maps_.size(); }
    const AffineMap& operator[](std::size_t i) const { return maps_[i]; }

    /// delta = min slope, beta = max offset, gamma = max slope.
    const Rational& min_slope() const { return min_slope_; }
    const Rational& max_offset() const { return max_offset_; }
    const Rational& max_slope() const { return max_slope_; }

    /// Every slope strictly greater than 1.
    bool is_strict() const { return min_slope_ > 1; }
    /// Throws PreconditionError naming `operation` unless strict.
    void require_strict(const char* operation) const;

    bool has_integer_coefficients() const;
    std::vector<Rational> slopes() const;
    /// Exact sum of 1/a_i.
    Rational reciprocal_slope_sum() const;

    /// Throws PreconditionError unless every index is in [1, size()].
    void validate(const Word& w) const;

private:
    std::vector<AffineMap> maps_;
    Rational min_slope_;
    Rational max_offset_;
    Rational max_slope_;
};

std::string to_string(const FunctionSystem& system);

/// The single map f_I; identity for the empty word.
AffineCoeffs compose_word(const FunctionSystem& system, const Word& word);

/// f_I(s), applying the rightmost letter first.
Rational evaluate_word(const FunctionSystem& system, const Word& word, const Rational& s);

/// ((s(delta-1) + beta)/(delta-1)) * prod a_{i_j}; never below evaluate_word.
/// Requires a strict system.
Rational word_upper_bound(const FunctionSystem& system, const Word& word, const Rational& s);

}  // namespace orbits
