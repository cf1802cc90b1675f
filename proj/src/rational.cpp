#include "orbits/rational.hpp"

#include "orbits/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace orbits {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::size_t hash_mpz(mpz_srcptr z) noexcept {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
    const std::size_t limbs = mpz_size(z);
    for (std::size_t i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) +
             0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                           : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw ParseError("malformed rational '" + std::string(text) +
                         "' (expected p or p/q)");
    }
    BigInt p(std::string(num), 10);
    BigInt q(std::string(den), 10);
    if (q == 0) {
        throw ParseError("zero denominator in rational '" + std::string(text) + "'");
    }
    if (negative) p = -p;
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    if (is_integer(value)) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

double to_double(const BigInt& value) { return value.get_d(); }

BigInt floor(const Rational& value) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

std::optional<std::uint64_t> to_uint64(const BigInt& value) {
    if (sgn(value) < 0 || mpz_sizeinbase(value.get_mpz_t(), 2) > 64) return std::nullopt;
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, value.get_mpz_t());
    return out;
}

BigInt from_uint64(std::uint64_t value) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(value), 0, 0, &value);
    return out;
}

std::size_t RationalHash::operator()(const Rational& value) const noexcept {
    return hash_mpz(value.get_num_mpz_t()) * 31 + hash_mpz(value.get_den_mpz_t());
}

}  // namespace orbits
