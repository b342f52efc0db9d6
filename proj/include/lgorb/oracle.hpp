#ifndef LGORB_ORACLE_HPP
#define LGORB_ORACLE_HPP

// An independent slow path for the special case where everything can be
// counted by hand: W a sum of pure powers (one per variable) and G diagonal.
//
// Everything here is redone from scratch in integer phase arithmetic:
// a diagonal symmetry is the vector of phase numerators c_i with
// lambda_i = zeta_L^{c_i} for a common modulus L, the group is closed by
// vector addition mod L, and each sector's states are enumerated explicitly
// as monomial basis vectors of the fixed-part Milnor algebra, keeping those
// whose twisted character is trivial for every generator.  None of the
// series, bucketing, or class machinery of the main path is used, so
// agreement between the two is a meaningful check.
//
// Also here: the Milnor-algebra Hilbert series by exact polynomial division
// (any weight system), and the closed-form single-variable tables used as
// textbook fixtures.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "poincare.hpp"
#include "qhpoly.hpp"
#include "rational.hpp"

namespace lgorb {

// ---- the counting oracle ----------------------------------------------------

struct OracleProblem {
    long n = 0;                               // variables
    std::vector<long> exps;                   // a_i with W = sum x_i^{a_i}
    long modulus = 1;                         // L; every phase lives in Z/L
    std::vector<std::vector<long>> gens;      // generator phase vectors
    std::vector<std::vector<long>> elements;  // the closed group, sorted
};

// Validate the restricted shape and translate matrices to phase vectors.
// The group is re-closed here by plain vector addition.
inline OracleProblem oracle_prepare(const QHPoly& w, const std::vector<Mat>& gens,
                                    long cap = 200000) {
    OracleProblem pr;
    pr.n = w.vars();
    pr.exps.assign(static_cast<std::size_t>(pr.n), 0);
    for (const auto& m : w.monomials()) {
        long var = -1;
        for (long i = 0; i < pr.n; ++i) {
            if (m.exps[static_cast<std::size_t>(i)] == 0) continue;
            if (var >= 0)
                fail(ErrorKind::NotFermat, "a monomial involves more than one variable");
            var = i;
        }
        if (var < 0) fail(ErrorKind::NotFermat, "constant monomial");
        long a = m.exps[static_cast<std::size_t>(var)];
        if (a < 2)
            fail(ErrorKind::NotFermat,
                 "variable " + std::to_string(var + 1) + " appears with exponent " +
                     std::to_string(a) + "; need a pure power of at least 2");
        if (pr.exps[static_cast<std::size_t>(var)] != 0)
            fail(ErrorKind::NotFermat,
                 "variable " + std::to_string(var + 1) + " appears in two monomials");
        pr.exps[static_cast<std::size_t>(var)] = a;
    }
    for (long i = 0; i < pr.n; ++i)
        if (pr.exps[static_cast<std::size_t>(i)] == 0)
            fail(ErrorKind::NotFermat,
                 "variable " + std::to_string(i + 1) + " has no monomial");

    // Collect phases; first pass fixes the common modulus.
    std::vector<std::vector<RootOfUnity>> roots;
    for (const auto& g : gens) {
        if (g.n != pr.n)
            fail(ErrorKind::BadGroupInput, "generator size differs from the variable count");
        if (!g.is_diagonal())
            fail(ErrorKind::NotDiagonal, "the oracle handles diagonal symmetry groups only");
        std::vector<RootOfUnity> row;
        for (long i = 0; i < pr.n; ++i) {
            auto r = g.at(i, i).as_root_of_unity();
            if (!r.has_value())
                fail(ErrorKind::BadGroupInput,
                     "diagonal entry " + std::to_string(i + 1) + " is not a root of unity");
            pr.modulus = lcm_long_capped(pr.modulus, r->order, 2 * kConductorCap,
                                         "oracle phase modulus");
            row.push_back(*r);
        }
        roots.push_back(std::move(row));
    }
    for (const auto& row : roots) {
        std::vector<long> phases;
        for (long i = 0; i < pr.n; ++i) {
            long c = row[static_cast<std::size_t>(i)].expo *
                     (pr.modulus / row[static_cast<std::size_t>(i)].order);
            if (mod_nonneg(c * pr.exps[static_cast<std::size_t>(i)], pr.modulus) != 0)
                fail(ErrorKind::BadGroupInput,
                     "generator does not preserve x" + std::to_string(i + 1) + "^" +
                         std::to_string(pr.exps[static_cast<std::size_t>(i)]));
            phases.push_back(c);
        }
        pr.gens.push_back(std::move(phases));
    }

    // Breadth-first closure under addition mod L.
    std::set<std::vector<long>> seen;
    std::vector<std::vector<long>> queue;
    std::vector<long> id(static_cast<std::size_t>(pr.n), 0);
    seen.insert(id);
    queue.push_back(id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::vector<long> cur = queue[head];
        for (const auto& g : pr.gens) {
            std::vector<long> nxt(static_cast<std::size_t>(pr.n));
            for (long i = 0; i < pr.n; ++i)
                nxt[static_cast<std::size_t>(i)] =
                    mod_nonneg(cur[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(i)],
                               pr.modulus);
            if (seen.insert(nxt).second) {
                if (static_cast<long>(seen.size()) > cap)
                    fail(ErrorKind::GroupCapExceeded,
                         "oracle group closure exceeds cap " + std::to_string(cap));
                queue.push_back(std::move(nxt));
            }
        }
    }
    pr.elements.assign(seen.begin(), seen.end());
    return pr;
}

// Count invariant Milnor-basis states sector by sector.  A state in the
// sector of the phase vector c is a tuple e over the fixed variables
// (c_i = 0) with 0 <= e_i <= a_i - 2; a generator with phases c' acts on it
// by zeta_L to the power sum over fixed i of (e_i + 1) c'_i, and the state
// survives exactly when that power vanishes mod L for every generator.
inline BigradedTable oracle_orbifold(const OracleProblem& pr, long budget = 10000000) {
    BigradedTable table;
    long spent = 0;
    for (const auto& c : pr.elements) {
        std::vector<long> fixed;
        Rational age(0), age_inv(0), moved(0);
        for (long i = 0; i < pr.n; ++i) {
            long ci = c[static_cast<std::size_t>(i)];
            if (ci == 0) {
                fixed.push_back(i);
            } else {
                age += make_rational(ci, pr.modulus);
                age_inv += make_rational(pr.modulus - ci, pr.modulus);
                moved += make_rational(1, pr.exps[static_cast<std::size_t>(i)]);
            }
        }
        long states = 1;
        for (long i : fixed) {
            states *= pr.exps[static_cast<std::size_t>(i)] - 1;
            if (states > budget) break;
        }
        spent += states;
        if (spent > budget)
            fail(ErrorKind::EnumerationTooLarge,
                 "oracle state enumeration exceeds budget " + std::to_string(budget));

        std::vector<long> e(fixed.size(), 0);
        while (true) {
            bool invariant = true;
            for (const auto& g : pr.gens) {
                long phase = 0;
                for (std::size_t k = 0; k < fixed.size(); ++k)
                    phase = mod_nonneg(
                        phase + (e[k] + 1) * g[static_cast<std::size_t>(fixed[k])], pr.modulus);
                if (phase != 0) {
                    invariant = false;
                    break;
                }
            }
            if (invariant) {
                Rational charge(0);
                for (std::size_t k = 0; k < fixed.size(); ++k)
                    charge += make_rational(e[k], pr.exps[static_cast<std::size_t>(fixed[k])]);
                table.add(charge + age - moved, charge + age_inv - moved, 1);
            }
            std::size_t pos = 0;
            while (pos < e.size()) {
                if (++e[pos] <= pr.exps[static_cast<std::size_t>(fixed[pos])] - 2) break;
                e[pos] = 0;
                ++pos;
            }
            if (pos == e.size()) break;
        }
    }
    return table;
}

// ---- Milnor-algebra Hilbert series -------------------------------------------

// Coefficients (over t^{1/d}) of prod_i (t^{d-w_i} - 1)/(t^{w_i} - 1), by
// exact ascending-power polynomial division.  Fails with
// NonPolynomialQuotient when the quotient is not a polynomial.
inline std::vector<long> milnor_hilbert_series(const std::vector<long>& weights, long degree) {
    if (weights.empty()) return {1};
    auto poly_mul = [](const std::vector<long>& a, const std::vector<long>& b) {
        std::vector<long> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    };
    std::vector<long> num{1}, den{1};
    for (long w : weights) {
        if (w <= 0 || w >= degree)
            fail(ErrorKind::NonPolynomialQuotient,
                 "weight " + std::to_string(w) + " outside (0, " + std::to_string(degree) + ")");
        std::vector<long> fn(static_cast<std::size_t>(degree - w) + 1, 0);
        fn[0] = -1;
        fn.back() = 1;
        std::vector<long> fd(static_cast<std::size_t>(w) + 1, 0);
        fd[0] = -1;
        fd.back() = 1;
        num = poly_mul(num, fn);
        den = poly_mul(den, fd);
    }
    // Ascending division: den[0] = (-1)^n, so every step stays integral.
    internal_check(den[0] == 1 || den[0] == -1, "denominator unit coefficient");
    std::vector<long> q(num.size() - den.size() + 1, 0);
    std::vector<long> rem = num;
    for (std::size_t k = 0; k < q.size(); ++k) {
        q[k] = rem[k] / den[0];
        for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= q[k] * den[j];
    }
    for (long r : rem)
        if (r != 0)
            fail(ErrorKind::NonPolynomialQuotient,
                 "the weight system does not give a polynomial Hilbert series");
    while (q.size() > 1 && q.back() == 0) q.pop_back();
    return q;
}

// ---- closed-form single-variable tables --------------------------------------

// The bigraded table of W = x^n orbifolded by the subgroup of scalings
// generated by zeta_n^l (a group of order n/l), written in closed form:
// a diagonal family from the untwisted sector and an antidiagonal family
// with one state from each nontrivial twisted sector.
inline BigradedTable an_closed_form(long n, long l) {
    if (n < 2) fail(ErrorKind::InvalidDivisor, "need an exponent n >= 2");
    if (l < 1 || n % l != 0)
        fail(ErrorKind::InvalidDivisor,
             std::to_string(l) + " does not divide " + std::to_string(n));
    BigradedTable t;
    for (long i = 1; i < l; ++i) {
        Rational p = Rational(1) - make_rational(1, n) - make_rational(i, l);
        t.add(p, p, 1);
    }
    for (long i = 1; i < n / l; ++i)
        t.add(make_rational(l * i - 1, n), make_rational(n - l * i - 1, n), 1);
    return t;
}

} // namespace lgorb

#endif // LGORB_ORACLE_HPP
