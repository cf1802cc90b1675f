#include "orbits/affine.hpp"

#include "orbits/errors.hpp"

#include <algorithm>

namespace orbits {

AffineCoeffs compose(const AffineCoeffs& outer, const AffineCoeffs& inner) {
    return {outer.slope * inner.slope, outer.slope * inner.offset + outer.offset};
}

AffineCoeffs inverse(const AffineCoeffs& f) {
    if (sgn(f.slope) == 0) throw PreconditionError("inverse of a constant map");
    Rational slope = 1 / f.slope;
    return {slope, -f.offset * slope};
}

AffineMap::AffineMap(Rational slope, Rational offset)
    : coeffs_{std::move(slope), std::move(offset)} {
    coeffs_.slope.canonicalize();
    coeffs_.offset.canonicalize();
    if (coeffs_.slope < 1) {
        throw PreconditionError("slope must be >= 1, got " + orbits::to_string(coeffs_.slope));
    }
    if (sgn(coeffs_.offset) < 0) {
        throw PreconditionError("offset must be >= 0, got " + orbits::to_string(coeffs_.offset));
    }
    if (coeffs_.slope == 1 && sgn(coeffs_.offset) == 0) {
        throw PreconditionError("the identity map x -> x is not a valid generator");
    }
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    const AffineCoeffs c = compose(outer.coeffs(), inner.coeffs());
    return AffineMap(c.slope, c.offset);
}

std::string to_string(const AffineMap& f) {
    std::string out = orbits::to_string(f.slope()) + "x";
    if (sgn(f.offset()) != 0) out += "+" + orbits::to_string(f.offset());
    return out;
}

std::string to_string(const Word& w) {
    std::string out = "(";
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(w.letters[i]);
    }
    return out + ")";
}

FunctionSystem::FunctionSystem(std::vector<AffineMap> maps) : maps_(std::move(maps)) {
    if (maps_.empty()) throw PreconditionError("function system must contain at least one map");
    min_slope_ = maps_.front().slope();
    max_slope_ = maps_.front().slope();
    max_offset_ = maps_.front().offset();
    for (const auto& f : maps_) {
        if (f.slope() < min_slope_) min_slope_ = f.slope();
        if (f.slope() > max_slope_) max_slope_ = f.slope();
        if (f.offset() > max_offset_) max_offset_ = f.offset();
    }
}

void FunctionSystem::require_strict(const char* operation) const {
    if (!is_strict()) {
        throw PreconditionError(std::string(operation) +
                                " requires every slope > 1 (min slope is " +
                                orbits::to_string(min_slope_) + ")");
    }
}

bool FunctionSystem::has_integer_coefficients() const {
    return std::all_of(maps_.begin(), maps_.end(), [](const AffineMap& f) {
        return is_integer(f.slope()) && is_integer(f.offset());
    });
}

std::vector<Rational> FunctionSystem::slopes() const {
    std::vector<Rational> out;
    out.reserve(maps_.size());
    for (const auto& f : maps_) out.push_back(f.slope());
    return out;
}

Rational FunctionSystem::reciprocal_slope_sum() const {
    Rational sum = 0;
    for (const auto& f : maps_) sum += 1 / f.slope();
    return sum;
}

void FunctionSystem::validate(const Word& w) const {
    for (std::size_t letter : w.letters) {
        if (letter < 1 || letter > maps_.size()) {
            throw PreconditionError("word index " + std::to_string(letter) +
                                    " out of range 1.." + std::to_string(maps_.size()));
        }
    }
}

std::string to_string(const FunctionSystem& system) {
    std::string out = "{";
    for (std::size_t i = 0; i < system.size(); ++i) {
        if (i) out += ", ";
        out += to_string(system[i]);
    }
    return out + "}";
}

AffineCoeffs compose_word(const FunctionSystem& system, const Word& word) {
    system.validate(word);
    AffineCoeffs acc;
    for (std::size_t letter : word.letters) acc = compose(acc, system[letter - 1].coeffs());
    return acc;
}

Rational evaluate_word(const FunctionSystem& system, const Word& word, const Rational& s) {
    system.validate(word);
    Rational value = s;
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
        value = system[*it - 1](value);
    }
    return value;
}

Rational word_upper_bound(const FunctionSystem& system, const Word& word, const Rational& s) {
    system.require_strict("word_upper_bound");
    system.validate(word);
    const Rational d = system.min_slope() - 1;
    Rational product = 1;
    for (std::size_t letter : word.letters) product *= system[letter - 1].slope();
    return (s * d + system.max_offset()) / d * product;
}

}  // namespace orbits
