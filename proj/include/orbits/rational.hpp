#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace orbits {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses `p` or `p/q` (optional leading sign, q > 0) into canonical form.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: `p` for integers, `p/q` otherwise.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

double to_double(const Rational& value);
double to_double(const BigInt& value);

BigInt floor(const Rational& value);

/// Returns the value as uint64 when it is a non-negative integer that fits.
std::optional<std::uint64_t> to_uint64(const BigInt& value);

BigInt from_uint64(std::uint64_t value);

struct RationalHash {
    std::size_t operator()(const Rational& value) const noexcept;
};

}  // namespace orbits
