#ifndef LGORB_POINCARE_HPP
#define LGORB_POINCARE_HPP

// The computational heart: evaluate the orbifold sum
//
//   P(u,v) = sum over classes [g] of
//            (1/#C(g)) u^{age g} v^{age g^{-1}} (uv)^{-moved charge}
//            * sum_{h in C(g)} prod over fixed directions i of
//              (lambda_i^{h,g} - (uv)^{1-q_i}) / (1 - lambda_i^{h,g} (uv)^{q_i})
//
// with exact truncated series in t = uv, then assemble the bigraded table
// h^{p,q} and provide the symmetry / duality / shape / index / E-polynomial
// operations on it.
//
// Series exponents are scaled integers: the only exponents that occur in
// series arithmetic are multiples of 1/d, so everything is held over t^{1/d}
// and the exact rational prefactor exponents are added when a sector's
// polynomial is poured into the table.  Each sector's series is truncated at
// the top degree of the Milnor algebra of the fixed-part polynomial,
// sum over fixed i of (d - 2 w_i); a spot check against the untruncated
// rational function at random roots of unity guards the bound.
//
// The per-h products inside one class depend only on the multiset of
// (eigenvalue, charge) pairs of h restricted to V^g, so centralizer elements
// are bucketed by that data and each distinct product is expanded once.

#include <atomic>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "matgroup.hpp"
#include "qhpoly.hpp"
#include "rational.hpp"
#include "sectors.hpp"
#include "series.hpp"

namespace lgorb {

// ---- bigraded tables -------------------------------------------------------

struct BigradedTable {
    // (p,q) -> coefficient; zero entries are never stored.  Coefficients are
    // nonnegative dimensions for Hodge tables, possibly negative for
    // E-polynomials.
    std::map<std::pair<Rational, Rational>, long> entries;

    void add(const Rational& p, const Rational& q, long v) {
        if (v == 0) return;
        auto key = std::make_pair(p, q);
        auto it = entries.find(key);
        if (it == entries.end()) {
            entries.emplace(std::move(key), v);
        } else {
            it->second += v;
            if (it->second == 0) entries.erase(it);
        }
    }

    void add_table(const BigradedTable& o, long sign = 1) {
        for (const auto& [pq, v] : o.entries) add(pq.first, pq.second, sign * v);
    }

    long value_at(const Rational& p, const Rational& q) const {
        auto it = entries.find(std::make_pair(p, q));
        return it == entries.end() ? 0 : it->second;
    }

    long total_dimension() const {
        long t = 0;
        for (const auto& [pq, v] : entries) t += v;
        return t;
    }

    friend bool operator==(const BigradedTable& a, const BigradedTable& b) {
        return a.entries == b.entries;
    }
    friend bool operator!=(const BigradedTable& a, const BigradedTable& b) {
        return !(a == b);
    }
};

// ---- per-sector and whole-run results --------------------------------------

struct SectorResult {
    long class_index = 0;
    long rep = 0;         // element index of the representative
    long rep_order = 0;
    long class_size = 0;
    long centralizer_size = 0;
    long n_fixed = 0;
    Rational age_g;
    Rational age_ginv;
    Rational moved;
    std::vector<long> poly;  // centralizer-averaged series coefficients over t^{1/d}
    BigradedTable table;     // this sector's bigraded contribution
};

struct OrbifoldData {
    long n_vars = 0;
    long degree = 0;
    std::vector<long> weights;
    Rational charge_sum;
    Rational c_hat;
    bool sl = false;
    bool cy = false;
    bool gcy = false;
    long group_order = 0;
    std::vector<SectorResult> sectors;  // in class order
    BigradedTable total;
};

struct ComputeOptions {
    long workers = 1;
    bool require_certified = false;  // reject anything but certified-nondegenerate shapes
};

// ---- sector evaluation ------------------------------------------------------

namespace detail {

struct FactorKey {
    long order, expo, num, den, bound;
    friend bool operator<(const FactorKey& a, const FactorKey& b) {
        if (a.order != b.order) return a.order < b.order;
        if (a.expo != b.expo) return a.expo < b.expo;
        if (a.num != b.num) return a.num < b.num;
        if (a.den != b.den) return a.den < b.den;
        return a.bound < b.bound;
    }
};
using FactorCache = std::map<FactorKey, TruncSeries>;

inline const TruncSeries& cached_factor(const EigLine& line, long degree, long bound,
                                        FactorCache& cache) {
    FactorKey key{line.root.order, line.root.expo, degree - line.weight, line.weight, bound};
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, factor_series(line.root, key.num, key.den, bound)).first;
    return it->second;
}

} // namespace detail

// Scaled truncation bound for one sector: the top Milnor-algebra degree of
// the fixed-part weight system, clamped at zero.
inline long sector_bound(const QHPoly& w, const Sector& s) {
    long bound = 0;
    for (const auto& b : s.fixed.blocks)
        bound += static_cast<long>(b.basis.size()) * (w.degree() - 2 * b.weight);
    return bound < 0 ? 0 : bound;
}

// Centralizer elements grouped by the eigenvalue data of their restriction
// to V^g; deterministic (key-sorted) order.
inline std::map<std::string, std::pair<long, EigData>>
sector_buckets(const MatGroup& g, const Sector& s, const SpectraCache& spectra) {
    const ConjClass& cls = g.classes()[s.class_index];
    std::map<std::string, std::pair<long, EigData>> buckets;
    for (long h : cls.centralizer) {
        EigData eig = restricted_eigenvalues(g, s, h, spectra);
        std::string key = eig_key(eig);
        auto it = buckets.find(key);
        if (it == buckets.end())
            buckets.emplace(std::move(key), std::make_pair(1L, std::move(eig)));
        else
            ++it->second.first;
    }
    return buckets;
}

// The centralizer-averaged sector series: nonnegative integer coefficients
// over t^{1/d}, truncated at sector_bound.
inline std::vector<long> sector_polynomial(const QHPoly& w, const MatGroup& g,
                                           const Sector& s, const SpectraCache& spectra,
                                           detail::FactorCache& cache) {
    const ConjClass& cls = g.classes()[s.class_index];
    long bound = sector_bound(w, s);
    TruncSeries total(bound);
    for (const auto& [key, entry] : sector_buckets(g, s, spectra)) {
        TruncSeries prod = TruncSeries::one(bound);
        for (const auto& line : entry.second) {
            const TruncSeries& f = detail::cached_factor(line, w.degree(), bound, cache);
            for (long m = 0; m < line.mult; ++m) prod = prod * f;
        }
        total.add_scaled(prod, Rational(entry.first));
    }
    long csize = static_cast<long>(cls.centralizer.size());
    std::vector<long> out(static_cast<std::size_t>(bound) + 1, 0);
    for (long e = 0; e <= bound; ++e) {
        const Cyclotomic& c = total.c[e];
        if (c.is_zero()) continue;
        if (!c.is_rational())
            fail(ErrorKind::NonIntegralCoefficient,
                 "sector " + std::to_string(s.class_index) + ": coefficient of t^" +
                     std::to_string(e) + "/" + std::to_string(w.degree()) +
                     " is not rational after averaging");
        Rational v = c.rational_value() / csize;
        if (!is_integer(v) || v < 0)
            fail(ErrorKind::NonIntegralCoefficient,
                 "sector " + std::to_string(s.class_index) + ": coefficient of t^" +
                     std::to_string(e) + "/" + std::to_string(w.degree()) + " is " +
                     rational_str(v) + ", not a nonnegative integer");
        out[e] = to_long(v);
    }
    return out;
}

inline SectorResult compute_sector(const QHPoly& w, const MatGroup& g, long class_index,
                                   const SpectraCache& spectra, detail::FactorCache& cache) {
    Sector s = build_sector(w, g, class_index);
    SectorResult r;
    r.class_index = s.class_index;
    r.rep = s.rep;
    r.rep_order = s.rep_order;
    r.class_size = s.class_size;
    r.centralizer_size = static_cast<long>(g.classes()[class_index].centralizer.size());
    r.n_fixed = s.n_fixed;
    r.age_g = s.age_g;
    r.age_ginv = s.age_ginv;
    r.moved = s.moved;
    r.poly = sector_polynomial(w, g, s, spectra, cache);
    Rational base_p = s.age_g - s.moved;
    Rational base_q = s.age_ginv - s.moved;
    for (std::size_t e = 0; e < r.poly.size(); ++e) {
        if (r.poly[e] == 0) continue;
        Rational c = make_rational(static_cast<long>(e), w.degree());
        r.table.add(base_p + c, base_q + c, r.poly[e]);
    }
    return r;
}

// ---- the full pipeline ------------------------------------------------------

inline OrbifoldData compute_orbifold(const QHPoly& w, const MatGroup& g,
                                     const ComputeOptions& opts = {}) {
    if (g.dim() != w.vars())
        fail(ErrorKind::BadGroupInput, "group dimension " + std::to_string(g.dim()) +
                                           " differs from the variable count " +
                                           std::to_string(w.vars()));
    for (long gi : g.generator_indices()) {
        auto v = w.symmetry_violation(g.element(gi).mat);
        if (v) fail(ErrorKind::BadGroupInput, "generator is not a symmetry: " + *v);
    }
    if (w.nondegeneracy_status() == NondegStatus::Suspect)
        fail(ErrorKind::DegeneratePolynomial,
             "variable " + std::to_string(*w.nondegeneracy_gap() + 1) +
                 " has no monomial of the form x^a or x^a y; the polynomial is degenerate");
    if (opts.require_certified && w.nondegeneracy_status() != NondegStatus::Certified)
        fail(ErrorKind::DegeneratePolynomial,
             "nondegeneracy is assumed, not certified, and certification was required");

    OrbifoldData out;
    out.n_vars = w.vars();
    out.degree = w.degree();
    out.weights = w.weights();
    out.charge_sum = w.charge_sum();
    out.c_hat = w.central_charge();
    out.sl = g.is_sl();
    out.cy = w.is_calabi_yau();
    out.gcy = w.is_generalized_calabi_yau();
    out.group_order = g.size();

    SpectraCache spectra = SpectraCache::build(g);
    long n_classes = static_cast<long>(g.classes().size());
    out.sectors.resize(static_cast<std::size_t>(n_classes));

    long workers = opts.workers;
    if (workers < 1) workers = 1;
    if (workers > n_classes) workers = n_classes;

    if (workers <= 1) {
        detail::FactorCache cache;
        for (long ci = 0; ci < n_classes; ++ci)
            out.sectors[ci] = compute_sector(w, g, ci, spectra, cache);
    } else {
        std::atomic<long> next{0};
        std::vector<std::pair<long, std::exception_ptr>> errors(
            static_cast<std::size_t>(workers), {n_classes, nullptr});
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (long t = 0; t < workers; ++t)
            pool.emplace_back([&, t]() {
                detail::FactorCache cache;
                while (true) {
                    long ci = next.fetch_add(1);
                    if (ci >= n_classes) break;
                    try {
                        out.sectors[ci] = compute_sector(w, g, ci, spectra, cache);
                    } catch (...) {
                        if (ci < errors[t].first) errors[t] = {ci, std::current_exception()};
                        break;
                    }
                }
            });
        for (auto& th : pool) th.join();
        std::pair<long, std::exception_ptr> first{n_classes, nullptr};
        for (const auto& e : errors)
            if (e.second && e.first < first.first) first = e;
        if (first.second) std::rethrow_exception(first.second);
    }

    for (const auto& s : out.sectors) out.total.add_table(s.table);
    return out;
}

// ---- structural checks ------------------------------------------------------

namespace detail {
inline std::string bidegree_str(const Rational& p, const Rational& q) {
    return "(" + rational_str(p) + "," + rational_str(q) + ")";
}
} // namespace detail

// h^{p,q} = h^{q,p}
inline std::optional<std::string> hodge_symmetry_violation(const BigradedTable& t) {
    for (const auto& [pq, v] : t.entries) {
        long w = t.value_at(pq.second, pq.first);
        if (w != v)
            return "h" + detail::bidegree_str(pq.first, pq.second) + " = " + std::to_string(v) +
                   " but h" + detail::bidegree_str(pq.second, pq.first) + " = " +
                   std::to_string(w);
    }
    return std::nullopt;
}

// h^{p,q} = h^{c-p, c-q}
inline std::optional<std::string> serre_duality_violation(const BigradedTable& t,
                                                          const Rational& c_hat) {
    for (const auto& [pq, v] : t.entries) {
        long w = t.value_at(c_hat - pq.first, c_hat - pq.second);
        if (w != v)
            return "h" + detail::bidegree_str(pq.first, pq.second) + " = " + std::to_string(v) +
                   " but h" + detail::bidegree_str(c_hat - pq.first, c_hat - pq.second) +
                   " = " + std::to_string(w);
    }
    return std::nullopt;
}

// Support on the two lines {p = q} and {p + q = c-hat} with integer
// bidegrees, and all four corners equal to 1.  Meaningful for groups inside
// SL with an integer central charge; callers gate on that.
inline std::optional<std::string> diamond_shape_violation(const BigradedTable& t,
                                                          const Rational& c_hat) {
    if (!is_integer(c_hat) || c_hat < 0) return "central charge is not a nonnegative integer";
    for (const auto& [pq, v] : t.entries) {
        const auto& [p, q] = pq;
        if (!is_integer(p) || !is_integer(q))
            return "support at non-integral bidegree " + detail::bidegree_str(p, q);
        if (p < 0 || q < 0 || p > c_hat || q > c_hat)
            return "support outside the diamond at " + detail::bidegree_str(p, q);
        if (p != q && p + q != c_hat)
            return "support off the two diamond lines at " + detail::bidegree_str(p, q);
    }
    Rational zero(0);
    for (const auto& [p, q] : {std::make_pair(zero, zero), std::make_pair(c_hat, c_hat),
                               std::make_pair(zero, c_hat), std::make_pair(c_hat, zero)})
        if (t.value_at(p, q) != 1)
            return "corner h" + detail::bidegree_str(p, q) + " = " +
                   std::to_string(t.value_at(p, q)) + ", expected 1";
    return std::nullopt;
}

// age(g) + age(g^-1) = n - n_g for every sector (restates the invariant
// enforced during sector construction, from the stored data).
inline std::optional<std::string> age_relation_violation(const OrbifoldData& d) {
    for (const auto& s : d.sectors)
        if (s.age_g + s.age_ginv != d.n_vars - s.n_fixed)
            return "sector " + std::to_string(s.class_index) + ": age " +
                   rational_str(s.age_g) + " + " + rational_str(s.age_ginv) +
                   " != " + std::to_string(d.n_vars - s.n_fixed);
    return std::nullopt;
}

// Witten index P(-1,-1) = sum (-1)^{p-q} h^{p,q}; defined only when every
// supported bidegree has p - q integral.
inline long witten_index(const BigradedTable& t) {
    long acc = 0;
    for (const auto& [pq, v] : t.entries) {
        Rational delta = pq.first - pq.second;
        if (!is_integer(delta))
            fail(ErrorKind::IllDefinedIndex,
                 "h" + detail::bidegree_str(pq.first, pq.second) +
                     " is nonzero with p - q not an integer");
        acc += (mod_nonneg(to_long(delta), 2) == 0) ? v : -v;
    }
    return acc;
}

// E(u,v) = P(-u,-v) = sum (-1)^{p-q} h^{p,q} u^p v^q; same gate as the index.
inline BigradedTable e_polynomial_pq(const BigradedTable& t) {
    BigradedTable e;
    for (const auto& [pq, v] : t.entries) {
        Rational delta = pq.first - pq.second;
        if (!is_integer(delta))
            fail(ErrorKind::IllDefinedIndex,
                 "h" + detail::bidegree_str(pq.first, pq.second) +
                     " is nonzero with p - q not an integer");
        e.add(pq.first, pq.second, (mod_nonneg(to_long(delta), 2) == 0) ? v : -v);
    }
    return e;
}

// E(u,v) = sum over sectors of (-1)^{n - n_g} times the sector table;
// defined unconditionally.
inline BigradedTable e_polynomial_z2(const OrbifoldData& d) {
    BigradedTable e;
    for (const auto& s : d.sectors)
        e.add_table(s.table, (d.n_vars - s.n_fixed) % 2 == 0 ? 1 : -1);
    return e;
}

// h^{p,q}(A) = h^{c-p, q}(B): the mirror pairing.  Checks both directions.
inline std::optional<std::string> mirror_relation_violation(const BigradedTable& a,
                                                            const BigradedTable& b,
                                                            const Rational& c_hat) {
    for (const auto& [pq, v] : a.entries)
        if (b.value_at(c_hat - pq.first, pq.second) != v)
            return "left table has h" + detail::bidegree_str(pq.first, pq.second) + " = " +
                   std::to_string(v) + " but right table has h" +
                   detail::bidegree_str(c_hat - pq.first, pq.second) + " = " +
                   std::to_string(b.value_at(c_hat - pq.first, pq.second));
    for (const auto& [pq, v] : b.entries)
        if (a.value_at(c_hat - pq.first, pq.second) != v)
            return "right table has h" + detail::bidegree_str(pq.first, pq.second) + " = " +
                   std::to_string(v) + " but left table has h" +
                   detail::bidegree_str(c_hat - pq.first, pq.second) + " = " +
                   std::to_string(a.value_at(c_hat - pq.first, pq.second));
    return std::nullopt;
}

// ---- truncation guard -------------------------------------------------------

namespace detail {

// Exact value of the un-truncated sector sum at t = s0 (before averaging),
// or nullopt when s0 hits a pole of some factor.
inline std::optional<Cyclotomic> sector_sum_at(
    const std::map<std::string, std::pair<long, EigData>>& buckets, long degree,
    const RootOfUnity& s0) {
    Cyclotomic acc(0);
    for (const auto& [key, entry] : buckets) {
        Cyclotomic prod(entry.first);
        for (const auto& line : entry.second) {
            Cyclotomic lam = Cyclotomic::from_root(line.root);
            Cyclotomic den =
                Cyclotomic(1) - lam * Cyclotomic::from_root(s0.power(line.weight));
            if (den.is_zero()) return std::nullopt;
            Cyclotomic num = lam - Cyclotomic::from_root(s0.power(degree - line.weight));
            Cyclotomic f = (num * den.inverse()).pow(line.mult);
            prod *= f;
        }
        acc += prod;
    }
    return acc;
}

} // namespace detail

// Spot check of the series truncation: for the identity class plus up to
// sample_classes randomly chosen others, evaluate the closed rational
// function of the sector sum at `points` random roots of unity and compare
// with the truncated polynomial, exactly.  Points hitting a pole are
// redrawn.  Returns a description of the first mismatch.
inline std::optional<std::string> truncation_spot_check(const QHPoly& w, const MatGroup& g,
                                                        const OrbifoldData& data,
                                                        unsigned long seed,
                                                        long sample_classes = 8,
                                                        int points = 3) {
    long n_classes = static_cast<long>(g.classes().size());
    std::mt19937_64 rng(seed);
    std::vector<long> chosen{0};  // the identity class is always index 0
    if (n_classes > 1) {
        std::vector<long> rest;
        for (long ci = 1; ci < n_classes; ++ci) rest.push_back(ci);
        for (long k = 0; k < sample_classes && !rest.empty(); ++k) {
            std::uniform_int_distribution<std::size_t> pick(0, rest.size() - 1);
            std::size_t at = pick(rng);
            chosen.push_back(rest[at]);
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(at));
        }
    }
    SpectraCache spectra = SpectraCache::build(g);
    for (long ci : chosen) {
        const SectorResult& r = data.sectors[static_cast<std::size_t>(ci)];
        Sector s = build_sector(w, g, ci);
        auto buckets = sector_buckets(g, s, spectra);
        long m = lcm_long_capped(w.degree(), 8, kConductorCap, "spot-check point order");
        int found = 0, tries = 0;
        while (found < points) {
            if (++tries > 200) {
                m = lcm_long_capped(m, 2 * m, kConductorCap, "spot-check point order");
                tries = 0;
            }
            std::uniform_int_distribution<long> pick(1, m - 1);
            RootOfUnity s0 = RootOfUnity::make(m, pick(rng));
            auto rf = detail::sector_sum_at(buckets, w.degree(), s0);
            if (!rf.has_value()) continue;  // pole; redraw
            ++found;
            Cyclotomic poly_val(0);
            for (std::size_t e = 0; e < r.poly.size(); ++e)
                if (r.poly[e] != 0)
                    poly_val += Cyclotomic::from_root(s0.power(static_cast<long>(e)))
                                    .scaled(Rational(r.poly[e]));
            if (poly_val.scaled(Rational(r.centralizer_size)) != *rf)
                return "sector " + std::to_string(ci) +
                       ": truncated polynomial disagrees with the rational function at "
                       "zeta_" + std::to_string(s0.order) + "^" + std::to_string(s0.expo);
        }
    }
    return std::nullopt;
}

} // namespace lgorb

#endif // LGORB_POINCARE_HPP
