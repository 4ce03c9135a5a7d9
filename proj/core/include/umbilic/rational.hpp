#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace umbilic {

// Exact rational scalar. All symbolic identities in this library are checked
// with these, never with floating point.
using Rational = mpq_class;

// mpq_class(num, den) does not canonicalize; this does.
inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

// "p/q" or "p". Throws on malformed input.
inline Rational parse_rational(std::string_view text) {
    Rational r;
    if (r.set_str(std::string(text), 10) != 0)
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Exact square root, defined only when numerator and denominator are both
// perfect squares (the value must be >= 0).
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    const mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational root(sn, sd);
    root.canonicalize();
    return root;
}

inline Rational rational_pow(Rational base, unsigned exp) {
    Rational out = 1;
    while (exp) {
        if (exp & 1u) out *= base;
        base *= base;
        exp >>= 1u;
    }
    return out;
}

}  // namespace umbilic
