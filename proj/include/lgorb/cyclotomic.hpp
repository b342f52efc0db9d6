#ifndef LGORB_CYCLOTOMIC_HPP
#define LGORB_CYCLOTOMIC_HPP

// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// A value is a dense coefficient vector over the power basis
// 1, x, ..., x^{phi(n)-1} of Q[x]/(Phi_n(x)), where Phi_n is the n-th
// cyclotomic polynomial and x stands for zeta_n = exp(2*pi*i/n).  Reduction
// modulo Phi_n after every operation keeps the representation canonical, so
// equality of values over a common conductor is equality of vectors.
// Mixed-conductor arithmetic embeds both operands into Q(zeta_lcm); the lcm
// is capped so pathological inputs fail loudly instead of thrashing.
//
// No floating point enters any computation here; to_complex exists solely so
// tests can shadow exact identities numerically.

#include <atomic>
#include <complex>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace lgorb {

// Hard cap on any conductor produced by arithmetic (lcm growth).
inline constexpr long kConductorCap = 10000;

namespace detail {

using Poly = std::vector<Rational>;  // dense, index = exponent

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// Exact division; throws if the remainder is nonzero.
inline Poly poly_div_exact(Poly num, const Poly& den) {
    internal_check(!den.empty() && den.back() != 0, "division by zero polynomial");
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
    for (long i = static_cast<long>(num.size()) - 1;
         i >= static_cast<long>(den.size()) - 1; --i) {
        if (num[i] == 0) continue;
        Rational f = num[i] / den.back();
        long shift = i - (static_cast<long>(den.size()) - 1);
        q[shift] = f;
        for (std::size_t j = 0; j < den.size(); ++j)
            num[shift + j] -= f * den[j];
    }
    poly_trim(num);
    if (!num.empty())
        fail(ErrorKind::NonPolynomialQuotient, "polynomial division left a remainder");
    return q;
}

} // namespace detail

// n-th cyclotomic polynomial Phi_n as a dense monic coefficient vector,
// computed by dividing x^n - 1 by the Phi_d of all proper divisors d | n.
// Memoized; safe for concurrent use (first write serialized by a mutex).
inline const detail::Poly& cyclotomic_polynomial(long n) {
    internal_check(n >= 1, "cyclotomic polynomial needs n >= 1");
    static std::mutex mu;
    static std::map<long, detail::Poly> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    // Iterate divisors in increasing order so dependencies are ready.
    std::vector<long> stack{n};
    while (!stack.empty()) {
        long m = stack.back();
        if (memo.count(m)) { stack.pop_back(); continue; }
        bool ready = true;
        for (long d = 1; d * d <= m; ++d) {
            if (m % d) continue;
            for (long dd : {d, m / d}) {
                if (dd < m && !memo.count(dd)) { stack.push_back(dd); ready = false; }
            }
        }
        if (!ready) continue;
        detail::Poly xn_minus_1(m + 1, Rational(0));
        xn_minus_1[0] = -1;
        xn_minus_1[m] = 1;
        detail::Poly q = xn_minus_1;
        for (long d = 1; d < m; ++d)
            if (m % d == 0) q = detail::poly_div_exact(q, memo.at(d));
        memo[m] = std::move(q);
        stack.pop_back();
    }
    return memo.at(n);
}

// Per-conductor data: the minimal polynomial plus reduction rows giving
// x^e mod Phi_n for e >= phi(n).  Rows are built lazily on first need (a
// conductor near the cap would otherwise cost phi^2 rationals up front) and
// are append-only: readers check the published high-water mark, growers hold
// the mutex, and the deque keeps existing rows stable on append.
struct ConductorContext {
    long n = 1;
    long phi = 1;
    detail::Poly min_poly;                       // Phi_n, monic, degree phi
    mutable std::mutex grow_mu;
    mutable std::deque<detail::Poly> row_store;  // row_store[e-phi] = x^e mod Phi_n
    mutable std::atomic<long> rows_upto{0};      // largest exponent covered

    // Guarantee rows for all exponents in [phi, e].
    void ensure_rows(long e) const {
        if (e < phi || rows_upto.load(std::memory_order_acquire) >= e) return;
        if ((e - phi + 1) > (1L << 25) / std::max<long>(phi, 1))
            fail(ErrorKind::InputTooLarge,
                 "reduction table for conductor " + std::to_string(n) + " would be too large");
        std::lock_guard<std::mutex> lock(grow_mu);
        long have = rows_upto.load(std::memory_order_relaxed);
        if (have < phi) {
            detail::Poly first(phi, Rational(0));
            for (long i = 0; i < phi; ++i) first[i] = -min_poly[i];  // x^phi
            row_store.push_back(std::move(first));
            have = phi;
        }
        while (have < e) {
            row_store.push_back(shift_reduce(row_store.back()));
            ++have;
        }
        rows_upto.store(have, std::memory_order_release);
    }

    const detail::Poly& row(long e) const { return row_store[e - phi]; }

    // x^e mod Phi_n for 0 <= e < n.
    detail::Poly power_of_x(long e) const {
        internal_check(e >= 0 && e < n, "power_of_x exponent out of range");
        if (e < phi) {
            detail::Poly p(phi, Rational(0));
            p[e] = 1;
            return p;
        }
        ensure_rows(e);
        return row(e);
    }

    // p -> x*p mod Phi_n, for p of degree < phi.
    detail::Poly shift_reduce(const detail::Poly& p) const {
        detail::Poly r(phi, Rational(0));
        for (long i = 0; i + 1 < phi; ++i) r[i + 1] = p[i];
        const Rational& top = p[phi - 1];
        if (top != 0)
            for (long i = 0; i < phi; ++i)
                r[i] -= top * min_poly[i];  // x^phi = -(lower part of Phi_n)
        return r;
    }
};

inline std::shared_ptr<const ConductorContext> conductor_context(long n) {
    if (n < 1) fail(ErrorKind::InternalError, "conductor must be >= 1");
    if (n > kConductorCap)
        fail(ErrorKind::InputTooLarge,
             "conductor " + std::to_string(n) + " exceeds cap " + std::to_string(kConductorCap));
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const ConductorContext>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    auto ctx = std::make_shared<ConductorContext>();
    ctx->n = n;
    ctx->min_poly = cyclotomic_polynomial(n);
    ctx->phi = static_cast<long>(ctx->min_poly.size()) - 1;
    memo[n] = ctx;
    return ctx;
}

// A root of unity zeta_order^expo in lowest terms: gcd(expo, order) = 1
// (order is the exact multiplicative order), expo in [0, order), and the
// value 1 is (1, 0).  log() is the angle as a fraction of a full turn.
struct RootOfUnity {
    long order = 1;
    long expo = 0;

    static RootOfUnity make(long m, long k) {
        internal_check(m >= 1, "root of unity with order < 1");
        k = mod_nonneg(k, m);
        if (k == 0) return {1, 0};
        long g = gcd_long(k, m);
        return {m / g, k / g};
    }

    bool is_one() const { return order == 1; }
    Rational log() const { return make_rational(expo, order); }
    RootOfUnity inverse() const { return make(order, order - expo); }
    RootOfUnity power(long e) const {
        // order stays bounded: (zeta^expo)^e has order order/gcd.
        long r = mod_nonneg(static_cast<long>((static_cast<long long>(expo) * mod_nonneg(e, order)) % order), order);
        return make(order, r);
    }

    friend bool operator==(const RootOfUnity& a, const RootOfUnity& b) {
        return a.order == b.order && a.expo == b.expo;
    }
    friend bool operator<(const RootOfUnity& a, const RootOfUnity& b) {
        // compare expo_a/order_a < expo_b/order_b without overflow risk
        return static_cast<long long>(a.expo) * b.order <
               static_cast<long long>(b.expo) * a.order;
    }
};

class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_(1, Rational(0)) {}
    Cyclotomic(long value) : n_(1), c_(1, Rational(value)) {}            // NOLINT
    Cyclotomic(const Rational& value) : n_(1), c_(1, value) {}           // NOLINT

    // zeta_n^k, reduced to the canonical basis representation.
    static Cyclotomic zeta(long n, long k = 1) {
        internal_check(n >= 1, "zeta with order < 1");
        k = mod_nonneg(k, n);
        auto ctx = conductor_context(n);
        Cyclotomic z;
        z.n_ = n;
        z.c_ = ctx->power_of_x(k);
        z.c_.resize(ctx->phi, Rational(0));
        z.collapse();
        return z;
    }

    static Cyclotomic from_root(const RootOfUnity& r) { return zeta(r.order, r.expo); }

    long conductor() const { return n_; }

    bool is_zero() const {
        for (const auto& c : c_) if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t k = 1; k < c_.size(); ++k) if (c_[k] != 0) return false;
        return true;
    }

    // The value as a rational; precondition: is_rational().
    const Rational& rational_value() const {
        internal_check(is_rational(), "rational_value on a non-rational element");
        return c_[0];
    }

    bool is_one() const { return is_rational() && c_[0] == 1; }

    const std::vector<Rational>& coefficients() const { return c_; }

    // --- ring operations -------------------------------------------------

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = aligned(a, b);
        for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] += y.c_[k];
        x.collapse();
        return x;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = aligned(a, b);
        for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] -= y.c_[k];
        x.collapse();
        return x;
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        // scalar fast paths keep group matrices (mostly 0/1 entries) cheap
        if (a.n_ == 1) return b.scaled(a.c_[0]);
        if (b.n_ == 1) return a.scaled(b.c_[0]);
        auto [x, y] = aligned(a, b);
        auto ctx = conductor_context(x.n_);
        long phi = ctx->phi;
        std::vector<Rational> conv(2 * phi - 1, Rational(0));
        for (long i = 0; i < phi; ++i) {
            if (x.c_[i] == 0) continue;
            for (long j = 0; j < phi; ++j) {
                if (y.c_[j] == 0) continue;
                conv[i + j] += x.c_[i] * y.c_[j];
            }
        }
        Cyclotomic r;
        r.n_ = x.n_;
        r.c_.assign(conv.begin(), conv.begin() + phi);
        ctx->ensure_rows(2 * phi - 2);
        for (long e = phi; e < 2 * phi - 1; ++e) {
            if (conv[e] == 0) continue;
            const auto& row = ctx->row(e);
            for (long i = 0; i < phi; ++i) r.c_[i] += conv[e] * row[i];
        }
        r.collapse();
        return r;
    }

    Cyclotomic scaled(const Rational& s) const {
        if (s == 0) return Cyclotomic();
        Cyclotomic r = *this;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { *this = *this + o; return *this; }
    Cyclotomic& operator-=(const Cyclotomic& o) { *this = *this - o; return *this; }
    Cyclotomic& operator*=(const Cyclotomic& o) { *this = *this * o; return *this; }

    // Multiplicative inverse via the extended Euclidean algorithm against
    // Phi_n (irreducible, so any nonzero element is a unit).
    Cyclotomic inverse() const {
        if (is_zero()) fail(ErrorKind::NotInvertible, "inverse of zero");
        if (n_ == 1) {
            Cyclotomic r;
            r.c_[0] = Rational(1) / c_[0];
            return r;
        }
        auto ctx = conductor_context(n_);
        detail::Poly r0 = ctx->min_poly, r1 = c_;
        detail::poly_trim(r1);
        detail::Poly s0{}, s1{Rational(1)};  // coefficients of *this in the Bezout combo
        while (true) {
            internal_check(!r1.empty(), "gcd(element, Phi_n) degenerate");
            if (r1.size() == 1) break;  // nonzero constant: done
            // r0 = q*r1 + rem
            detail::Poly rem = r0;
            detail::Poly q(rem.size() - r1.size() + 1, Rational(0));
            for (long i = static_cast<long>(rem.size()) - 1;
                 i >= static_cast<long>(r1.size()) - 1; --i) {
                if (rem[i] == 0) continue;
                Rational f = rem[i] / r1.back();
                long shift = i - (static_cast<long>(r1.size()) - 1);
                q[shift] = f;
                for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= f * r1[j];
            }
            detail::poly_trim(rem);
            detail::Poly qs = detail::poly_mul(q, s1);
            detail::Poly s2 = s0;
            if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            detail::poly_trim(s2);
            r0 = std::move(r1); r1 = std::move(rem);
            s0 = std::move(s1); s1 = std::move(s2);
        }
        // *this * s1 == r1[0] (mod Phi_n)  =>  inverse = s1 / r1[0]
        Cyclotomic inv;
        inv.n_ = n_;
        inv.c_ = s1;
        inv.c_.resize(ctx->phi, Rational(0));
        Cyclotomic result = inv.scaled(Rational(1) / r1[0]);
        result.n_ = n_;
        result.collapse();
        return result;
    }

    Cyclotomic pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclotomic base = *this, acc(1);
        while (e > 0) {
            if (e & 1) acc *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return acc;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        auto [x, y] = aligned(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // --- conductor handling ----------------------------------------------

    // Rewrites the element over conductor m (m must be a multiple of n).
    Cyclotomic embedded(long m) const {
        internal_check(m % n_ == 0, "embedding target is not a multiple of the conductor");
        if (m == n_) return *this;
        auto ctx = conductor_context(m);
        long stretch = m / n_;
        Cyclotomic r;
        r.n_ = m;
        r.c_.assign(ctx->phi, Rational(0));
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            detail::Poly p = ctx->power_of_x(static_cast<long>(k) * stretch);
            for (std::size_t i = 0; i < p.size(); ++i) r.c_[i] += c_[k] * p[i];
        }
        return r;  // no collapse: callers want the fixed-conductor form
    }

    // Canonical byte string over an explicit conductor; equal values give
    // equal strings, which makes this usable as a hash/sort key.
    std::string key_string(long m) const {
        Cyclotomic e = embedded(m);
        std::string s;
        s.reserve(e.c_.size() * 4);
        for (const auto& c : e.c_) {
            s += c.get_str();
            s += ',';
        }
        return s;
    }

    // --- roots of unity ---------------------------------------------------

    // If the value is a root of unity, returns it in lowest terms.  The
    // torsion units of Q(zeta_n) are exactly the lcm(2,n)-th roots of unity,
    // so a bounded scan decides membership exactly.
    std::optional<RootOfUnity> as_root_of_unity() const {
        if (is_zero()) return std::nullopt;
        if (n_ == 1) {
            if (c_[0] == 1) return RootOfUnity{1, 0};
            if (c_[0] == -1) return RootOfUnity{2, 1};
            return std::nullopt;
        }
        long m = (n_ % 2 == 0) ? n_ : 2 * n_;
        Cyclotomic self = embedded(m);
        auto ctx = conductor_context(m);
        detail::Poly p(ctx->phi, Rational(0));
        p[0] = 1;  // x^0
        for (long k = 0; k < m; ++k) {
            if (p == self.c_) return RootOfUnity::make(m, k);
            p = ctx->shift_reduce(p);
        }
        return std::nullopt;
    }

    // --- rendering / shadowing --------------------------------------------

    // Text form in the same syntax parse_scalar accepts: E(n) = zeta_n.
    std::string to_string() const {
        if (is_rational()) return c_[0].get_str();
        std::ostringstream out;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            Rational mag = c_[k] < 0 ? Rational(-c_[k]) : c_[k];
            if (first) {
                if (c_[k] < 0) out << "-";
                first = false;
            } else {
                out << (c_[k] < 0 ? " - " : " + ");
            }
            if (k == 0) { out << mag.get_str(); continue; }
            if (mag != 1) out << mag.get_str() << "*";
            out << "E(" << n_ << ")";
            if (k > 1) out << "^" << k;
        }
        return out.str();
    }

    // Numerical shadow for tests only; the library itself never consumes it.
    std::complex<double> to_complex() const {
        static const double tau = 6.283185307179586476925286766559;
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            double angle = tau * static_cast<double>(k) / static_cast<double>(n_);
            acc += c_[k].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        return acc;
    }

private:
    long n_;                    // conductor
    std::vector<Rational> c_;   // phi(n_) coefficients over the power basis

    // Rational values are re-homed to conductor 1 so that zeros/ones (the
    // bulk of matrix entries) stay cheap regardless of the ambient field.
    void collapse() {
        if (n_ > 1 && is_rational()) {
            Rational v = c_[0];
            n_ = 1;
            c_.assign(1, v);
        }
    }

    static std::pair<Cyclotomic, Cyclotomic> aligned(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.n_ == b.n_) return {a, b};
        long m = lcm_long_capped(a.n_, b.n_, kConductorCap, "cyclotomic arithmetic");
        return {a.embedded(m), b.embedded(m)};
    }
};

// --- scalar expression parser ---------------------------------------------
//
// Grammar (whitespace-insensitive):
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | primary ('^' ['-'] integer)?
//   primary := integer | 'E' '(' integer ')' | '(' expr ')'
// Examples: "E(8)^3", "(E(8)+E(8)^7)/2", "-2/3", "1+E(4)".

namespace detail {

class ScalarParser {
public:
    ScalarParser(const std::string& text, std::size_t base_offset = 0)
        : s_(text), pos_(0), base_(base_offset) {}

    Cyclotomic parse() {
        Cyclotomic v = expr();
        skip_ws();
        if (pos_ != s_.size()) err("unexpected trailing input");
        return v;
    }

private:
    const std::string& s_;
    std::size_t pos_, base_;

    [[noreturn]] void err(const std::string& what) {
        fail(ErrorKind::ParseError,
             what + " at offset " + std::to_string(base_ + pos_) + " in scalar expression");
    }
    void skip_ws() { while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_; }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) err("expected an integer");
        try {
            return std::stol(s_.substr(start, pos_ - start));
        } catch (const std::out_of_range&) {
            fail(ErrorKind::InputTooLarge, "integer literal too large in scalar expression");
        }
    }

    Cyclotomic expr() {
        Cyclotomic v = term();
        while (true) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    Cyclotomic term() {
        Cyclotomic v = factor();
        while (true) {
            if (eat('*')) v *= factor();
            else if (eat('/')) {
                Cyclotomic d = factor();
                if (d.is_zero()) err("division by zero");
                v *= d.inverse();
            } else return v;
        }
    }

    Cyclotomic factor() {
        if (eat('-')) return -factor();
        Cyclotomic v = primary();
        if (eat('^')) {
            bool neg = eat('-');
            long e = integer();
            v = v.pow(neg ? -e : e);
        }
        return v;
    }

    Cyclotomic primary() {
        char c = peek();
        if (c == 'E') {
            ++pos_;
            if (!eat('(')) err("expected '(' after E");
            long n = integer();
            if (n < 1) err("E(n) needs n >= 1");
            if (n > kConductorCap) fail(ErrorKind::InputTooLarge, "E(n) order exceeds conductor cap");
            if (!eat(')')) err("expected ')' after E(n)");
            return Cyclotomic::zeta(n);
        }
        if (c == '(') {
            ++pos_;
            Cyclotomic v = expr();
            if (!eat(')')) err("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Cyclotomic(Rational(integer()));
        err("expected a number, E(n), or '('");
    }
};

} // namespace detail

inline Cyclotomic parse_scalar(const std::string& text, std::size_t base_offset = 0) {
    return detail::ScalarParser(text, base_offset).parse();
}

} // namespace lgorb

#endif // LGORB_CYCLOTOMIC_HPP
