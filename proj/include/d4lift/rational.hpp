#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace d4l {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// floor division and the matching remainder (sign follows the divisor)
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int exact_div(const Int& a, const Int& d) {
    if (!divides(d, a)) throw std::domain_error("exact_div: not divisible");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// the two-argument mpq_class constructor does not reduce; this does
inline Rat rat(long num, long den) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// "p/q" or "p"; rejects anything else
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline long to_long(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("to_long: out of range");
    return v.get_si();
}

}  // namespace d4l
