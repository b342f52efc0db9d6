#ifndef LGORB_MATGROUP_HPP
#define LGORB_MATGROUP_HPP

// Finite matrix groups over cyclotomic fields.
//
// A group is materialized as an explicit list of elements found by
// breadth-first closure from its generators; products of generator entries
// stay inside Q(zeta_N) for N = lcm of the generator conductors, so that N
// is fixed as the group's ambient conductor and every element gets a
// canonical byte key over it.  Closure order (FIFO from the identity,
// generators in input order) is deterministic, hence so are element indices,
// conjugacy classes, and representatives, independent of thread counts.
//
// Alongside the combinatorial layer live the exact spectral helpers the
// orbifold formula needs: eigenvalue multiplicities of finite-order
// matrices (diagonal read-off, or a discrete-Fourier average of traces),
// ages, and fixed subspaces split by weight.

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace lgorb {

inline constexpr long kDefaultGroupCap = 200000;

struct GroupElement {
    Mat mat;
    std::string key;
    long order = 0;
    long inverse = -1;  // element index of the inverse
};

struct ConjClass {
    long rep = 0;                    // index of the representative
    std::vector<long> members;       // ascending element indices
    std::vector<long> centralizer;   // ascending element indices
};

class MatGroup {
public:
    // Breadth-first closure of the generated group, capped.
    static MatGroup closure(const std::vector<Mat>& gens, long cap = kDefaultGroupCap) {
        if (gens.empty()) fail(ErrorKind::BadGroupInput, "no generators");
        long n = gens.front().n;
        MatGroup g;
        g.dim_ = n;
        long ambient = 1;
        for (const auto& m : gens) {
            if (m.n != n) fail(ErrorKind::BadGroupInput, "generators of mixed sizes");
            if (det(m).is_zero()) fail(ErrorKind::NotInvertible, "singular generator");
            for (const auto& e : m.a)
                ambient = lcm_long_capped(ambient, e.conductor(), kConductorCap,
                                          "group ambient conductor");
        }
        g.ambient_ = ambient;
        g.push_element(Mat::identity(n));
        for (std::size_t i = 0; i < g.elems_.size(); ++i) {
            for (const auto& s : gens) {
                Mat prod = g.elems_[i].mat * s;
                if (g.index_.count(prod.key_string(ambient))) continue;
                if (static_cast<long>(g.elems_.size()) >= cap)
                    fail(ErrorKind::GroupCapExceeded,
                         "group closure exceeded cap " + std::to_string(cap) +
                             " (is some generator of infinite order?)");
                g.push_element(std::move(prod));
            }
        }
        g.gens_.clear();
        for (const auto& s : gens) g.gens_.push_back(g.index_at(s.key_string(ambient)));
        g.finish();
        return g;
    }

    // Builds <G', J> for a central J with <J> and G' intersecting trivially,
    // without re-running closure or conjugacy searches: elements are the
    // cosets J^i G', classes are J^i (class of G'), centralizers are
    // <J> x (centralizer in G').
    static MatGroup coset_lift(const MatGroup& gp, const Mat& j, long cap = kDefaultGroupCap) {
        if (j.n != gp.dim_) fail(ErrorKind::BadGroupInput, "central element size mismatch");
        long ambient = gp.ambient_;
        for (const auto& e : j.a)
            ambient = lcm_long_capped(ambient, e.conductor(), kConductorCap,
                                      "group ambient conductor");
        // order of J, with the cap as a loop guard
        std::vector<Mat> jpow{Mat::identity(j.n)};
        while (!(jpow.back() * j).is_identity()) {
            jpow.push_back(jpow.back() * j);
            if (static_cast<long>(jpow.size()) > cap)
                fail(ErrorKind::GroupCapExceeded, "central element order exceeds cap");
        }
        long k = static_cast<long>(jpow.size());
        for (long gi : gp.gens_) {
            const Mat& s = gp.elems_[gi].mat;
            if (j * s != s * j)
                fail(ErrorKind::BadGroupInput, "central element does not commute with the group");
        }
        {
            // trivial-intersection check over the joint conductor
            std::unordered_map<std::string, bool> base_keys;
            for (const auto& e : gp.elems_) base_keys.emplace(e.mat.key_string(ambient), true);
            for (long i = 1; i < k; ++i)
                if (base_keys.count(jpow[i].key_string(ambient)))
                    fail(ErrorKind::BadGroupInput,
                         "<J> meets the base group nontrivially; coset lift needs a trivial overlap");
        }
        if (k * gp.size() > cap)
            fail(ErrorKind::GroupCapExceeded, "lifted group would exceed cap");

        MatGroup g;
        g.dim_ = gp.dim_;
        g.ambient_ = ambient;
        for (long i = 0; i < k; ++i)
            for (long e = 0; e < gp.size(); ++e)
                g.push_element(i == 0 ? gp.elems_[e].mat : jpow[i] * gp.elems_[e].mat);
        internal_check(static_cast<long>(g.elems_.size()) == k * gp.size(),
                       "coset lift produced colliding elements");
        for (long gi : gp.gens_) g.gens_.push_back(gi);
        g.gens_.push_back(g.index_at(j.key_string(ambient)));
        // orders and inverses come from the direct-product-like structure
        for (long i = 0; i < k; ++i)
            for (long e = 0; e < gp.size(); ++e) {
                long idx = i * gp.size() + e;
                long oj = i == 0 ? 1 : k / gcd_long(k, i);
                long og = gp.elems_[e].order;
                g.elems_[idx].order = oj / gcd_long(oj, og) * og;
                long inv_i = i == 0 ? 0 : k - i;
                g.elems_[idx].inverse = inv_i * gp.size() + gp.elems_[e].inverse;
            }
        g.abelian_ = gp.abelian_;
        g.sl_ = true;
        for (long gi : g.gens_)
            if (det(g.elems_[gi].mat) != Cyclotomic(1)) { g.sl_ = false; break; }
        for (const auto& c : gp.classes_)
            for (long i = 0; i < k; ++i) {
                ConjClass lifted;
                for (long m : c.members) lifted.members.push_back(i * gp.size() + m);
                lifted.rep = g.min_key_member(lifted.members);
                // C_G(J^i g) = <J> x C_{G'}(g), where g is the base part of
                // the chosen representative (centralizers of distinct class
                // members are conjugate, not equal, so the rep's own base
                // centralizer is the one to lift).
                long base_rep = lifted.rep % gp.size();
                std::vector<long> base_centralizer;
                if (gp.abelian_ || c.members.size() == 1) {
                    base_centralizer = c.centralizer;
                } else {
                    const Mat& brm = gp.elems_[base_rep].mat;
                    for (long h = 0; h < gp.size(); ++h)
                        if (gp.elems_[h].mat * brm == brm * gp.elems_[h].mat)
                            base_centralizer.push_back(h);
                }
                for (long ji = 0; ji < k; ++ji)
                    for (long z : base_centralizer)
                        lifted.centralizer.push_back(ji * gp.size() + z);
                std::sort(lifted.centralizer.begin(), lifted.centralizer.end());
                g.classes_.push_back(std::move(lifted));
            }
        return g;
    }

    long size() const { return static_cast<long>(elems_.size()); }
    long dim() const { return dim_; }
    long ambient_conductor() const { return ambient_; }
    bool is_abelian() const { return abelian_; }
    bool is_sl() const { return sl_; }
    const GroupElement& element(long i) const { return elems_[i]; }
    const std::vector<long>& generator_indices() const { return gens_; }
    const std::vector<ConjClass>& classes() const { return classes_; }

    long index_of(const Mat& m) const {  // -1 when absent
        auto it = index_.find(m.key_string(ambient_));
        return it == index_.end() ? -1 : it->second;
    }

    // |class| * |centralizer| = |G| for every class, and the class sizes
    // partition the group.  Returns a violation description or nullopt.
    std::optional<std::string> class_equation_violation() const {
        long total = 0;
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            total += static_cast<long>(classes_[c].members.size());
            long prod = static_cast<long>(classes_[c].members.size()) *
                        static_cast<long>(classes_[c].centralizer.size());
            if (prod != size())
                return "class " + std::to_string(c) + ": |class|*|centralizer| = " +
                       std::to_string(prod) + " != " + std::to_string(size());
        }
        if (total != size())
            return "classes cover " + std::to_string(total) + " of " +
                   std::to_string(size()) + " elements";
        return std::nullopt;
    }

private:
    long dim_ = 0;
    long ambient_ = 1;
    std::vector<GroupElement> elems_;
    std::unordered_map<std::string, long> index_;
    std::vector<long> gens_;
    std::vector<ConjClass> classes_;
    bool abelian_ = true;
    bool sl_ = true;

    void push_element(Mat m) {
        GroupElement e;
        e.key = m.key_string(ambient_);
        e.mat = std::move(m);
        index_.emplace(e.key, static_cast<long>(elems_.size()));
        elems_.push_back(std::move(e));
    }

    long index_at(const std::string& key) const {
        auto it = index_.find(key);
        internal_check(it != index_.end(), "element key unexpectedly missing");
        return it->second;
    }

    long min_key_member(const std::vector<long>& members) const {
        long best = members.front();
        for (long m : members)
            if (elems_[m].key < elems_[best].key) best = m;
        return best;
    }

    // orders, inverses, flags, conjugacy classes (direct construction path)
    void finish() {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                if (elems_[gens_[i]].mat * elems_[gens_[j]].mat !=
                    elems_[gens_[j]].mat * elems_[gens_[i]].mat) {
                    abelian_ = false;
                    break;
                }
        for (long gi : gens_)
            if (det(elems_[gi].mat) != Cyclotomic(1)) { sl_ = false; break; }

        // order(x) by divisor refinement of the group exponent bound |G|
        std::vector<long> primes;
        long m = size();
        for (long p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                primes.push_back(p);
                while (m % p == 0) m /= p;
            }
        if (m > 1) primes.push_back(m);
        for (auto& e : elems_) {
            long ord = size();
            for (long p : primes)
                while (ord % p == 0 && e.mat.pow(ord / p).is_identity()) ord /= p;
            e.order = ord;
            internal_check(e.mat.pow(ord).is_identity(), "order computation failed");
        }
        for (auto& e : elems_) {
            Mat inv = e.order == 1 ? e.mat : e.mat.pow(e.order - 1);
            e.inverse = index_at(inv.key_string(ambient_));
        }

        if (abelian_) {
            for (long i = 0; i < size(); ++i) {
                ConjClass c;
                c.rep = i;
                c.members = {i};
                c.centralizer.resize(size());
                for (long h = 0; h < size(); ++h) c.centralizer[h] = h;
                classes_.push_back(std::move(c));
            }
            return;
        }
        // orbits of the conjugation action, discovered in index order
        std::vector<long> cls(size(), -1);
        for (long start = 0; start < size(); ++start) {
            if (cls[start] >= 0) continue;
            long id = static_cast<long>(classes_.size());
            std::vector<long> orbit{start};
            cls[start] = id;
            for (std::size_t q = 0; q < orbit.size(); ++q)
                for (long gi : gens_) {
                    const Mat& s = elems_[gi].mat;
                    Mat conj = inverse(s) * elems_[orbit[q]].mat * s;
                    long idx = index_at(conj.key_string(ambient_));
                    if (cls[idx] < 0) {
                        cls[idx] = id;
                        orbit.push_back(idx);
                    }
                }
            std::sort(orbit.begin(), orbit.end());
            ConjClass c;
            c.members = std::move(orbit);
            c.rep = min_key_member(c.members);
            classes_.push_back(std::move(c));
        }
        for (auto& c : classes_) {
            const Mat& g = elems_[c.rep].mat;
            for (long h = 0; h < size(); ++h)
                if (elems_[h].mat * g == g * elems_[h].mat) c.centralizer.push_back(h);
        }
    }
};

// --- spectral helpers -------------------------------------------------------

// Eigenvalue multiplicities of a finite-order matrix m with m^order = 1.
// Diagonal matrices are read off directly; otherwise multiplicities come
// from averaging traces against characters:
//   mult(zeta^k) = (1/order) * sum_j trace(m^j) zeta^{-kj}.
// Both paths are exact; non-integer multiplicities signal a wrong order and
// fail loudly.
inline std::map<RootOfUnity, long> eigen_multiplicities(const Mat& m, long order) {
    internal_check(order >= 1, "eigen_multiplicities needs a positive order");
    std::map<RootOfUnity, long> mult;
    if (m.is_diagonal()) {
        for (long i = 0; i < m.n; ++i) {
            auto r = m.at(i, i).as_root_of_unity();
            internal_check(r.has_value(), "diagonal entry of a finite-order matrix "
                                          "must be a root of unity");
            ++mult[*r];
        }
        return mult;
    }
    std::vector<Cyclotomic> traces;
    traces.reserve(order);
    Mat p = Mat::identity(m.n);
    for (long j = 0; j < order; ++j) {
        traces.push_back(p.trace());
        if (j + 1 < order) p = p * m;
    }
    internal_check((p * m).is_identity(), "matrix order mismatch in eigenvalue average");
    std::vector<Cyclotomic> zpow(order);
    for (long t = 0; t < order; ++t) zpow[t] = Cyclotomic::zeta(order, t);
    long total = 0;
    for (long k = 0; k < order; ++k) {
        Cyclotomic acc(0);
        for (long j = 0; j < order; ++j)
            acc += traces[j] * zpow[mod_nonneg(-k * j, order)];
        internal_check(acc.is_rational(), "eigenvalue multiplicity is not rational");
        Rational v = acc.rational_value() / order;
        long cnt = to_long(v);
        internal_check(cnt >= 0, "negative eigenvalue multiplicity");
        if (cnt > 0) mult[RootOfUnity::make(order, k)] += cnt;
        total += cnt;
    }
    internal_check(total == m.n, "eigenvalue multiplicities do not sum to the size");
    return mult;
}

// age(g) = sum of the logs (in [0,1)) of the eigenvalues of g.
inline Rational age_of(const Mat& m, long order) {
    Rational acc(0);
    for (const auto& [root, k] : eigen_multiplicities(m, order))
        acc += root.log() * k;
    return acc;
}

// Fixed subspace of a symmetry, split along the weight grading.  Because a
// symmetry never mixes variables of different weights, Ker(1 - g) decomposes
// per weight value; kernels are computed per block and re-embedded as
// full-length vectors.  Basis vectors carry the block's charge.
struct ChargeBlock {
    Rational q;                                    // charge of every vector here
    long weight = 0;
    std::vector<long> vars;                        // global variable indices
    std::vector<std::vector<Cyclotomic>> basis;    // full-length kernel vectors
    std::vector<long> free_vars;                   // global index of each basis
                                                   // vector's defining 1-entry
    bool coordinate = false;                       // basis vectors are coordinate
                                                   // axes (true for diagonal g)
};

struct FixedSubspace {
    long n_fixed = 0;
    std::vector<ChargeBlock> blocks;  // only blocks with nonzero fixed part
};

inline FixedSubspace fixed_subspace(const Mat& g, const std::vector<long>& weights,
                                    long degree) {
    internal_check(g.n == static_cast<long>(weights.size()), "weights/matrix size mismatch");
    std::map<long, std::vector<long>> by_weight;
    for (long i = 0; i < g.n; ++i) by_weight[weights[i]].push_back(i);
    for (long i = 0; i < g.n; ++i)
        for (long j = 0; j < g.n; ++j)
            internal_check(weights[i] == weights[j] || g.at(i, j).is_zero(),
                           "matrix mixes weight blocks");
    FixedSubspace out;
    for (const auto& [w, vars] : by_weight) {
        long b = static_cast<long>(vars.size());
        Mat sub(b);
        for (long i = 0; i < b; ++i)
            for (long j = 0; j < b; ++j) {
                sub.at(i, j) = g.at(vars[i], vars[j]);
                if (i == j) sub.at(i, j) -= Cyclotomic(1);
            }
        KernelBasis ker = kernel(sub);
        if (ker.vectors.empty()) continue;
        ChargeBlock block;
        block.q = make_rational(w, degree);
        block.weight = w;
        block.vars = vars;
        block.coordinate = true;
        for (std::size_t v = 0; v < ker.vectors.size(); ++v) {
            std::vector<Cyclotomic> full(g.n);
            for (long i = 0; i < b; ++i) full[vars[i]] = ker.vectors[v][i];
            for (long t = 0; t < g.n && block.coordinate; ++t)
                if (t == vars[ker.free_cols[v]] ? !full[t].is_one() : !full[t].is_zero())
                    block.coordinate = false;
            block.basis.push_back(std::move(full));
            block.free_vars.push_back(vars[ker.free_cols[v]]);
        }
        out.n_fixed += static_cast<long>(block.basis.size());
        out.blocks.push_back(std::move(block));
    }
    return out;
}

// Matrix of h restricted to one charge block of a fixed subspace, in the
// kernel basis (coordinates read off the free positions).  The exact
// residual check catches any caller that passes an h not normalizing V^g.
inline Mat restricted_matrix(const Mat& h, const ChargeBlock& block) {
    long f = static_cast<long>(block.basis.size());
    Mat r(f);
    for (long j = 0; j < f; ++j) {
        std::vector<Cyclotomic> img = h.apply(block.basis[j]);
        for (long i = 0; i < f; ++i) r.at(i, j) = img[block.free_vars[i]];
        // img must equal sum_i r(i,j) * basis_i exactly
        std::vector<Cyclotomic> recon(h.n);
        for (long i = 0; i < f; ++i)
            for (long t = 0; t < h.n; ++t)
                if (!block.basis[i][t].is_zero())
                    recon[t] += r.at(i, j) * block.basis[i][t];
        for (long t = 0; t < h.n; ++t)
            internal_check(recon[t] == img[t],
                           "element does not preserve the fixed subspace block");
    }
    return r;
}

} // namespace lgorb

#endif // LGORB_MATGROUP_HPP
