#ifndef LGORB_SERIES_HPP
#define LGORB_SERIES_HPP

// Dense truncated power series in one variable t with cyclotomic
// coefficients.  Exponents are nonnegative integers; callers scale
// fractional charge steps by the polynomial degree so that every exponent
// they need becomes integral.  All arithmetic truncates at a fixed
// inclusive bound shared by both operands.

#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace lgorb {

struct TruncSeries {
    long bound = 0;             // inclusive top exponent
    std::vector<Cyclotomic> c;  // c[e] = coefficient of t^e, size bound+1

    TruncSeries() : c(1) {}
    explicit TruncSeries(long b) : bound(b), c(static_cast<std::size_t>(b) + 1) {
        internal_check(b >= 0, "series bound must be nonnegative");
    }

    static TruncSeries one(long b) {
        TruncSeries s(b);
        s.c[0] = Cyclotomic(1);
        return s;
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        internal_check(bound == o.bound, "series bound mismatch");
        for (long e = 0; e <= bound; ++e)
            if (!o.c[e].is_zero()) c[e] += o.c[e];
        return *this;
    }

    // *this += s * o, for a rational scale factor
    void add_scaled(const TruncSeries& o, const Rational& s) {
        internal_check(bound == o.bound, "series bound mismatch");
        if (s == 0) return;
        for (long e = 0; e <= bound; ++e)
            if (!o.c[e].is_zero()) c[e] += o.c[e].scaled(s);
    }

    friend TruncSeries operator*(const TruncSeries& x, const TruncSeries& y) {
        internal_check(x.bound == y.bound, "series bound mismatch");
        TruncSeries r(x.bound);
        for (long i = 0; i <= x.bound; ++i) {
            if (x.c[i].is_zero()) continue;
            for (long j = 0; i + j <= x.bound; ++j) {
                if (y.c[j].is_zero()) continue;
                r.c[i + j] += x.c[i] * y.c[j];
            }
        }
        return r;
    }

    friend bool operator==(const TruncSeries& x, const TruncSeries& y) {
        return x.bound == y.bound && x.c == y.c;
    }
};

// One linear factor of the orbifold product, expanded as a series in t:
//
//   (lambda - t^num) / (1 - lambda t^den)
//     = sum_{k >= 0} lambda^{k+1} t^{k den}  -  sum_{k >= 0} lambda^k t^{num + k den}
//
// num and den are the caller's scaled exponents (num = (1-q)*d, den = q*d
// for a direction of charge q = w/d); den >= 1 always holds because weights
// are positive, which keeps the geometric expansion well defined.
inline TruncSeries factor_series(const RootOfUnity& lambda, long num, long den, long bound) {
    internal_check(den >= 1, "factor series needs a positive denominator step");
    internal_check(num >= 0, "factor series needs a nonnegative numerator step");
    TruncSeries s(bound);
    for (long k = 0; k * den <= bound; ++k) {
        s.c[k * den] += Cyclotomic::from_root(lambda.power(k + 1));
        long e = num + k * den;
        if (e <= bound) s.c[e] -= Cyclotomic::from_root(lambda.power(k));
    }
    return s;
}

} // namespace lgorb

#endif // LGORB_SERIES_HPP
