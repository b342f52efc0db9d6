#ifndef LGORB_QHPOLY_HPP
#define LGORB_QHPOLY_HPP

// Quasihomogeneous polynomials: integer weight systems, fractional charges,
// the grading operator, invertibility structure (Fermat / chain / loop
// atoms), and symmetry verification for candidate group generators.
//
// A polynomial W in n variables is quasihomogeneous when there are positive
// integer weights w_i and a degree d with sum_i e_i w_i = d for every
// monomial x^e of W.  Charges are q_i = w_i / d; the central charge is
// c = sum_i (1 - 2 q_i).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace lgorb {

struct Monomial {
    Cyclotomic coeff;
    std::vector<long> exps;
};

// One building block of an invertible polynomial.
//   Fermat(a):            x^a                      (vars = {i})
//   Chain(a_1,...,a_k):   x_1^{a_1} x_2 + ... + x_k^{a_k}
//   Loop(a_1,...,a_k):    x_1^{a_1} x_2 + ... + x_k^{a_k} x_1
struct Atom {
    enum class Kind { Fermat, Chain, Loop };
    Kind kind;
    std::vector<long> vars;  // variable indices in atom order
    std::vector<long> exps;  // matching head exponents a_i

    std::string to_string() const {
        std::string s = kind == Kind::Fermat ? "Fermat(" : kind == Kind::Chain ? "Chain(" : "Loop(";
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(exps[i]);
        }
        return s + ")";
    }
};

enum class NondegStatus {
    Certified,      // invertible, all atoms pass the closed classification
    NecessaryOnly,  // necessary condition holds; full nondegeneracy assumed
    Suspect,        // necessary condition failed for some variable
};

namespace detail {

// Sparse multivariate polynomial, used only for symmetry verification.
using MPoly = std::map<std::vector<long>, Cyclotomic>;

inline void mpoly_add_term(MPoly& p, const std::vector<long>& e, const Cyclotomic& c) {
    auto it = p.find(e);
    if (it == p.end()) {
        if (!c.is_zero()) p.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

inline MPoly mpoly_mul(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<long> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            mpoly_add_term(r, e, ca * cb);
        }
    return r;
}

} // namespace detail

class QHPoly {
public:
    // Builds the polynomial and solves for its unique weight system.
    explicit QHPoly(std::vector<Monomial> monomials) : mono_(std::move(monomials)) {
        if (mono_.empty()) fail(ErrorKind::NoUniqueWeights, "polynomial has no monomials");
        n_ = static_cast<long>(mono_.front().exps.size());
        if (n_ == 0) fail(ErrorKind::NoUniqueWeights, "polynomial has zero variables");
        for (const auto& m : mono_) {
            if (static_cast<long>(m.exps.size()) != n_)
                fail(ErrorKind::ParseError, "monomials with inconsistent variable counts");
            if (m.coeff.is_zero())
                fail(ErrorKind::ParseError, "monomial with zero coefficient");
            for (long e : m.exps)
                if (e < 0) fail(ErrorKind::ParseError, "negative exponent");
        }
        for (std::size_t i = 0; i < mono_.size(); ++i)
            for (std::size_t j = i + 1; j < mono_.size(); ++j)
                if (mono_[i].exps == mono_[j].exps)
                    fail(ErrorKind::ParseError, "duplicate monomial exponent vector");
        solve_weights();
        classify_nondegeneracy();
    }

    long vars() const { return n_; }
    const std::vector<Monomial>& monomials() const { return mono_; }
    const std::vector<long>& weights() const { return w_; }
    long degree() const { return d_; }
    const std::vector<Rational>& charges() const { return q_; }

    Rational charge_sum() const {
        Rational s(0);
        for (const auto& q : q_) s += q;
        return s;
    }
    Rational central_charge() const {
        Rational c(0);
        for (const auto& q : q_) c += 1 - 2 * q;
        return c;
    }
    bool is_calabi_yau() const { return charge_sum() == 1; }
    bool is_generalized_calabi_yau() const {
        Rational s = charge_sum();
        return is_integer(s) && s >= 0;
    }

    // Variables whose charge exceeds 1/2.  Possible only in the presence of
    // an x_i x_j monomial; reported, never rejected.
    std::vector<long> charges_above_half() const {
        std::vector<long> out;
        for (long i = 0; i < n_; ++i)
            if (q_[i] > make_rational(1, 2)) out.push_back(i);
        return out;
    }

    // Diagonal of the grading operator J = diag(zeta_d^{w_i}); <J> is the
    // smallest symmetry group every orbifold construction must admit.
    std::vector<Cyclotomic> grading_diagonal() const {
        std::vector<Cyclotomic> diag;
        diag.reserve(n_);
        for (long i = 0; i < n_; ++i) diag.push_back(Cyclotomic::zeta(d_, w_[i]));
        return diag;
    }
    Mat grading_operator() const { return Mat::diagonal(grading_diagonal()); }

    NondegStatus nondegeneracy_status() const { return status_; }
    // First variable failing the necessary condition, if any: every i needs
    // a monomial x_i^a (a >= 2) or x_i^a x_j (a >= 1, j != i).
    std::optional<long> nondegeneracy_gap() const { return gap_; }
    const std::vector<Atom>& atoms() const { return atoms_; }  // empty unless Certified

    bool is_invertible_shape() const { return status_ == NondegStatus::Certified; }

    // Decomposition into Fermat/chain/loop atoms; throws NotInvertible when
    // the polynomial is not of invertible shape.
    std::vector<Atom> decompose_invertible() const {
        if (static_cast<long>(mono_.size()) != n_)
            fail(ErrorKind::NotInvertible,
                 "invertible polynomials have exactly one monomial per variable");
        if (atoms_.empty())
            fail(ErrorKind::NotInvertible, "monomials do not form loop/chain/Fermat atoms");
        return atoms_;
    }

    // Verifies g is a symmetry: (row i of g) gives the image of x_i, the
    // substituted polynomial must equal W, and g must respect the weight
    // grading (g_ij = 0 whenever w_i != w_j).  Returns a violation
    // description, or nullopt when g is a symmetry.
    std::optional<std::string> symmetry_violation(const Mat& g) const {
        if (g.n != n_) return "matrix size differs from the variable count";
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j)
                if (w_[i] != w_[j] && !g.at(i, j).is_zero())
                    return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") mixes variables of different weight";
        // images[i] = g . x_i as a linear polynomial
        std::vector<detail::MPoly> images(n_);
        for (long i = 0; i < n_; ++i)
            for (long j = 0; j < n_; ++j) {
                if (g.at(i, j).is_zero()) continue;
                std::vector<long> e(n_, 0);
                e[j] = 1;
                images[i].emplace(std::move(e), g.at(i, j));
            }
        detail::MPoly transformed;
        for (const auto& m : mono_) {
            detail::MPoly term;
            term.emplace(std::vector<long>(n_, 0), m.coeff);
            for (long i = 0; i < n_; ++i)
                for (long rep = 0; rep < m.exps[i]; ++rep)
                    term = detail::mpoly_mul(term, images[i]);
            for (const auto& [e, c] : term) detail::mpoly_add_term(transformed, e, c);
        }
        detail::MPoly original;
        for (const auto& m : mono_) detail::mpoly_add_term(original, m.exps, m.coeff);
        if (transformed != original) return "substituted polynomial differs from W";
        return std::nullopt;
    }

    bool is_symmetry(const Mat& g) const { return !symmetry_violation(g).has_value(); }

private:
    long n_ = 0;
    std::vector<Monomial> mono_;
    std::vector<long> w_;
    long d_ = 0;
    std::vector<Rational> q_;
    NondegStatus status_ = NondegStatus::Suspect;
    std::optional<long> gap_;
    std::vector<Atom> atoms_;

    // Exact kernel of the monomial equations sum_j e_j w_j - d = 0 over the
    // unknowns (w_1..w_n, d); a 1-dimensional positive kernel is required.
    void solve_weights() {
        long cols = n_ + 1;
        std::vector<std::vector<Rational>> m;
        for (const auto& mono : mono_) {
            std::vector<Rational> row(cols);
            for (long j = 0; j < n_; ++j) row[j] = Rational(mono.exps[j]);
            row[n_] = Rational(-1);
            m.push_back(std::move(row));
        }
        // row-reduce
        long rank = 0;
        std::vector<long> pivot_cols;
        for (long col = 0; col < cols && rank < static_cast<long>(m.size()); ++col) {
            long pivot = -1;
            for (long r = rank; r < static_cast<long>(m.size()); ++r)
                if (m[r][col] != 0) { pivot = r; break; }
            if (pivot < 0) continue;
            std::swap(m[pivot], m[rank]);
            Rational s = m[rank][col];
            for (long j = 0; j < cols; ++j) m[rank][j] /= s;
            for (long r = 0; r < static_cast<long>(m.size()); ++r) {
                if (r == rank || m[r][col] == 0) continue;
                Rational f = m[r][col];
                for (long j = 0; j < cols; ++j) m[r][j] -= f * m[rank][j];
            }
            pivot_cols.push_back(col);
            ++rank;
        }
        if (cols - rank != 1)
            fail(ErrorKind::NoUniqueWeights,
                 "weight system is not unique (solution space has dimension " +
                     std::to_string(cols - rank) + ")");
        // The single free column parameterizes the solution ray.
        std::vector<bool> is_pivot(cols, false);
        for (long c : pivot_cols) is_pivot[c] = true;
        long free_col = 0;
        while (is_pivot[free_col]) ++free_col;
        std::vector<Rational> v(cols);
        v[free_col] = 1;
        for (long r = 0; r < rank; ++r) v[pivot_cols[r]] = -m[r][free_col];
        // positivity and integrality normalization
        Integer denom_lcm = 1;
        for (const auto& x : v) {
            if (x <= 0) fail(ErrorKind::NoUniqueWeights, "weight system is not positive");
            mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), x.get_den().get_mpz_t());
        }
        std::vector<Integer> ints;
        for (const auto& x : v) ints.push_back(Integer(x * denom_lcm));
        Integer g = 0;
        for (long i = 0; i < n_; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
        w_.clear();
        for (long i = 0; i < n_; ++i) {
            Integer wi = ints[i] / g;
            if (!wi.fits_slong_p()) fail(ErrorKind::InputTooLarge, "weights overflow");
            w_.push_back(wi.get_si());
        }
        Integer dd = ints[n_] / g;
        internal_check(dd * g == ints[n_], "degree not integral after weight normalization");
        if (!dd.fits_slong_p()) fail(ErrorKind::InputTooLarge, "degree overflows");
        d_ = dd.get_si();
        for (long i = 0; i < n_; ++i) q_.push_back(make_rational(w_[i], d_));
        for (const auto& mono : mono_) {
            long acc = 0;
            for (long j = 0; j < n_; ++j) acc += mono.exps[j] * w_[j];
            internal_check(acc == d_, "monomial escapes the solved weight system");
        }
    }

    // Shape of one monomial in invertible normal form.
    struct HeadTail {
        long head = -1, tail = -1;  // tail = -1 marks a pure power
        long exp = 0;
        bool ambiguous = false;     // x_i x_j: either variable may be the head
        long alt_head = -1, alt_tail = -1;
    };

    void classify_nondegeneracy() {
        // necessary condition first
        gap_.reset();
        for (long i = 0; i < n_ && !gap_; ++i) {
            bool ok = false;
            for (const auto& m : mono_) {
                long support = 0, other = -1;
                for (long j = 0; j < n_; ++j)
                    if (m.exps[j] > 0) {
                        ++support;
                        if (j != i) other = j;
                    }
                if (m.exps[i] >= 2 && support == 1) { ok = true; break; }
                if (m.exps[i] >= 1 && support == 2 && m.exps[other] == 1) { ok = true; break; }
            }
            if (!ok) gap_ = i;
        }
        if (gap_) { status_ = NondegStatus::Suspect; return; }
        status_ = NondegStatus::NecessaryOnly;
        if (static_cast<long>(mono_.size()) != n_) return;
        try_atoms();
        if (!atoms_.empty()) status_ = NondegStatus::Certified;
    }

    // Attempts the loop/chain/Fermat decomposition; leaves atoms_ empty on
    // failure.  Each variable must head exactly one monomial and tail at
    // most one; x_i x_j monomials may serve either way, so those few get a
    // backtracking assignment.
    void try_atoms() {
        std::vector<HeadTail> shapes;
        for (const auto& m : mono_) {
            HeadTail h;
            std::vector<long> support;
            for (long j = 0; j < n_; ++j)
                if (m.exps[j] > 0) support.push_back(j);
            if (support.size() == 1) {
                long i = support[0];
                if (m.exps[i] < 2) return;  // a bare linear term certifies nothing
                h.head = i;
                h.exp = m.exps[i];
            } else if (support.size() == 2) {
                long i = support[0], j = support[1];
                if (m.exps[i] == 1 && m.exps[j] == 1) {
                    h.head = i; h.tail = j; h.exp = 1;
                    h.ambiguous = true;
                    h.alt_head = j; h.alt_tail = i;
                } else if (m.exps[j] == 1) {
                    h.head = i; h.tail = j; h.exp = m.exps[i];
                } else if (m.exps[i] == 1) {
                    h.head = j; h.tail = i; h.exp = m.exps[j];
                } else {
                    return;
                }
            } else {
                return;
            }
            shapes.push_back(h);
        }
        std::vector<long> tail_of(n_, -2);  // -2 unset, -1 pure power
        std::vector<long> head_exp(n_, 0);
        if (!assign(shapes, 0, tail_of, head_exp)) return;
        // walk the functional graph: every node has one outgoing edge
        // (tail_of), in-degree <= 1 enforced during assignment.
        std::vector<long> in_deg(n_, 0);
        for (long i = 0; i < n_; ++i)
            if (tail_of[i] >= 0) ++in_deg[tail_of[i]];
        std::vector<bool> used(n_, false);
        std::vector<Atom> atoms;
        // chains start at in-degree-0 nodes
        for (long s = 0; s < n_; ++s) {
            if (used[s] || in_deg[s] != 0) continue;
            Atom atom;
            long cur = s;
            while (true) {
                atom.vars.push_back(cur);
                atom.exps.push_back(head_exp[cur]);
                used[cur] = true;
                if (tail_of[cur] < 0) break;
                cur = tail_of[cur];
                internal_check(!used[cur], "chain walked into a used variable");
            }
            atom.kind = atom.vars.size() == 1 ? Atom::Kind::Fermat : Atom::Kind::Chain;
            atoms.push_back(std::move(atom));
        }
        // remaining nodes sit on loops
        for (long s = 0; s < n_; ++s) {
            if (used[s]) continue;
            Atom atom;
            atom.kind = Atom::Kind::Loop;
            long cur = s;
            while (!used[cur]) {
                atom.vars.push_back(cur);
                atom.exps.push_back(head_exp[cur]);
                used[cur] = true;
                cur = tail_of[cur];
            }
            if (cur != s) return;  // rho-shaped: not a clean loop
            atoms.push_back(std::move(atom));
        }
        // certification: Fermat needs exponent >= 2 (checked above); chain
        // and loop heads need exponent >= 1, which the parse guarantees.
        atoms_ = std::move(atoms);
    }

    bool assign(const std::vector<HeadTail>& shapes, std::size_t k,
                std::vector<long>& tail_of, std::vector<long>& head_exp) const {
        if (k == shapes.size()) {
            for (long i = 0; i < n_; ++i)
                if (tail_of[i] == -2) return false;  // variable heads nothing
            std::vector<long> in_deg(n_, 0);
            for (long i = 0; i < n_; ++i)
                if (tail_of[i] >= 0 && ++in_deg[tail_of[i]] > 1) return false;
            return true;
        }
        const HeadTail& h = shapes[k];
        auto place = [&](long head, long tail, long exp) {
            if (tail_of[head] != -2) return false;
            tail_of[head] = tail;
            head_exp[head] = exp;
            if (assign(shapes, k + 1, tail_of, head_exp)) return true;
            tail_of[head] = -2;
            head_exp[head] = 0;
            return false;
        };
        if (place(h.head, h.tail, h.exp)) return true;
        if (h.ambiguous && place(h.alt_head, h.alt_tail, h.exp)) return true;
        return false;
    }
};

} // namespace lgorb

#endif // LGORB_QHPOLY_HPP
