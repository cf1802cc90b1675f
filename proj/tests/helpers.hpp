#pragma once

#include "orbits/affine.hpp"
#include "orbits/rational.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace testing {

inline orbits::Rational Q(const std::string& text) { return orbits::parse_rational(text); }
inline orbits::Rational Q(long n) { return orbits::Rational(n); }

inline orbits::FunctionSystem system(std::initializer_list<std::pair<long, long>> maps) {
    std::vector<orbits::AffineMap> out;
    for (auto [a, b] : maps) out.emplace_back(orbits::Rational(a), orbits::Rational(b));
    return orbits::FunctionSystem(std::move(out));
}

inline orbits::Word word(std::initializer_list<std::size_t> letters) {
    return orbits::Word{std::vector<std::size_t>(letters)};
}

inline std::vector<orbits::Rational> rationals(std::initializer_list<long> values) {
    std::vector<orbits::Rational> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

}  // namespace testing
