#ifndef LGORB_RATIONAL_HPP
#define LGORB_RATIONAL_HPP

// Exact rational scalars.  All arithmetic in the library bottoms out in
// GMP's mpq_class, which keeps values in canonical form (reduced fraction,
// positive denominator) after every operation.  Raw num/den construction is
// routed through make_rational so canonical form holds from birth.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>

#include "error.hpp"

namespace lgorb {

using Rational = mpq_class;
using Integer  = mpz_class;

inline Rational make_rational(long num, long den) {
    if (den == 0) fail(ErrorKind::NotInvertible, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) fail(ErrorKind::NotInvertible, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Exact conversion to a machine long; refuses anything lossy.
inline long to_long(const Rational& r) {
    if (!is_integer(r)) fail(ErrorKind::NonIntegralCoefficient,
                             "expected an integer, got " + r.get_str());
    if (!r.get_num().fits_slong_p())
        fail(ErrorKind::InputTooLarge, "integer does not fit a machine word: " + r.get_str());
    return r.get_num().get_si();
}

// Renders "p/q" in lowest terms, or just "p" for integers.
inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

inline long lcm_long_capped(long a, long b, long cap, const char* what) {
    long g = std::gcd(a, b);
    long l = (a / g) * b;  // a,b >= 1 in every call site
    if (l > cap) fail(ErrorKind::InputTooLarge,
                      std::string(what) + ": lcm(" + std::to_string(a) + "," +
                          std::to_string(b) + ") = " + std::to_string(l) +
                          " exceeds cap " + std::to_string(cap));
    return l;
}

// Euler's totient, by trial division; conductors here stay small.
inline long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Floor of x mod m brought into [0, m).
inline long mod_nonneg(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

} // namespace lgorb

#endif // LGORB_RATIONAL_HPP
