#pragma once

// Exact arithmetic foundation: arbitrary-precision integers and rationals
// (GMP-backed).  Every geometric decision in this library is made on
// canonical rationals; no floating point is involved anywhere except in
// rendering, where colors are computed from already-final exact data.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace chordgrid {

using Integer = mpz_class;

// Canonical rational: gcd(|num|, den) = 1, den > 0.  mpq_class maintains
// this form through all arithmetic; raw assignments must call canonicalize().
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return mpq_sgn(r.get_mpq_t()); }
inline int sign(const Integer& z) { return mpz_sgn(z.get_mpz_t()); }

inline int compare(const Rational& a, const Rational& b) {
    return mpq_cmp(a.get_mpq_t(), b.get_mpq_t());
}

inline bool is_integer(const Rational& r) {
    return mpz_cmp_ui(r.get_den().get_mpz_t(), 1) == 0;
}

// Largest integer <= r.
inline Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline std::size_t hash_integer(const Integer& z) {
    const mpz_srcptr m = z.get_mpz_t();
    std::size_t h = 1469598103934665603ull;
    h = (h ^ static_cast<std::size_t>(mpz_sgn(m))) * 1099511628211ull;
    const std::size_t n = mpz_size(m);
    for (std::size_t i = 0; i < n; ++i) {
        h = (h ^ static_cast<std::size_t>(mpz_getlimbn(m, i))) * 1099511628211ull;
    }
    return h;
}

inline std::size_t hash_rational(const Rational& r) {
    std::size_t h = hash_integer(r.get_num());
    h ^= hash_integer(r.get_den()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// gmpxx has no long long overloads; counts held as long long go through
// here (long is 64-bit on every platform this builds for).
inline Integer to_integer(long long v) { return Integer(static_cast<long>(v)); }

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Exact division; throws if the divisor does not divide the dividend.
// Used by closed-form evaluators whose intermediate expressions carry
// guaranteed-integral divisions.
Integer exact_div(const Integer& num, long den);

inline Integer exact_div(const Integer& num, long den) {
    Integer d(den);
    if (!mpz_divisible_p(num.get_mpz_t(), d.get_mpz_t())) {
        throw std::domain_error("exact_div: " + num.get_str() + " not divisible by " +
                                std::to_string(den));
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
    return q;
}

}  // namespace chordgrid
