#ifndef LGORB_SECTORS_HPP
#define LGORB_SECTORS_HPP

// Twisted sectors: one per conjugacy class of the symmetry group.  A sector
// packages the exact spectral data of its representative g that the
// orbifold sum consumes: the ages of g and g^{-1}, the total charge of the
// moved directions, and the fixed subspace split into charge blocks.
//
// The second half of this header computes the eigenvalues of a centralizer
// element restricted to the fixed subspace, block by block.  Three exact
// paths, fastest first: read the entry off a coordinate block of a diagonal
// element; read the diagonal of the restricted matrix; or find the
// restriction's multiplicative order and count each candidate eigenvalue
// zeta^k as dim - rank(R - zeta^k I).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "matgroup.hpp"
#include "matrix.hpp"
#include "qhpoly.hpp"
#include "rational.hpp"

namespace lgorb {

struct Sector {
    long class_index = 0;
    long rep = 0;        // element index of the class representative
    long rep_order = 0;
    long class_size = 0;
    long n_fixed = 0;
    Rational age_g;      // age of the representative
    Rational age_ginv;   // age of its inverse
    Rational moved;      // total charge of the moved directions
    FixedSubspace fixed;
};

inline Sector build_sector(const QHPoly& w, const MatGroup& g, long class_index) {
    const ConjClass& cls = g.classes()[class_index];
    const GroupElement& rep = g.element(cls.rep);
    Sector s;
    s.class_index = class_index;
    s.rep = cls.rep;
    s.rep_order = rep.order;
    s.class_size = static_cast<long>(cls.members.size());
    s.fixed = fixed_subspace(rep.mat, w.weights(), w.degree());
    s.n_fixed = s.fixed.n_fixed;
    s.age_g = age_of(rep.mat, rep.order);
    const GroupElement& repinv = g.element(rep.inverse);
    s.age_ginv = age_of(repinv.mat, repinv.order);
    s.moved = w.charge_sum();
    for (const auto& b : s.fixed.blocks)
        s.moved -= b.q * static_cast<long>(b.basis.size());
    // ages of g and g^{-1} pair the nontrivial eigenvalues, one full turn
    // per moved direction
    internal_check(s.age_g + s.age_ginv == g.dim() - s.n_fixed,
                   "age(g) + age(g^-1) != number of moved directions");
    return s;
}

// Diagonal entries of every diagonal group element, precomputed once as
// roots of unity.  Lets the sector sum skip all matrix work for diagonal
// elements acting on coordinate blocks.
struct SpectraCache {
    std::vector<std::optional<std::vector<RootOfUnity>>> diag;

    static SpectraCache build(const MatGroup& g) {
        SpectraCache c;
        c.diag.resize(static_cast<std::size_t>(g.size()));
        for (long i = 0; i < g.size(); ++i) {
            const Mat& m = g.element(i).mat;
            if (!m.is_diagonal()) continue;
            std::vector<RootOfUnity> roots;
            roots.reserve(static_cast<std::size_t>(m.n));
            for (long t = 0; t < m.n; ++t) {
                auto r = m.at(t, t).as_root_of_unity();
                internal_check(r.has_value(),
                               "diagonal entry of a group element must be a root of unity");
                roots.push_back(*r);
            }
            c.diag[i] = std::move(roots);
        }
        return c;
    }
};

// Smallest divisor ord of bound_order with r^ord = I.
inline long matrix_order_dividing(const Mat& r, long bound_order) {
    internal_check(bound_order >= 1 && r.pow(bound_order).is_identity(),
                   "matrix order bound does not annihilate the matrix");
    std::vector<long> primes;
    long m = bound_order;
    for (long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    if (m > 1) primes.push_back(m);
    long ord = bound_order;
    for (long p : primes)
        while (ord % p == 0 && r.pow(ord / p).is_identity()) ord /= p;
    return ord;
}

// One group of equal eigenvalues of h restricted to one charge block.
struct EigLine {
    RootOfUnity root;
    long weight = 0;  // weight of the block (charge = weight / degree)
    long mult = 0;
};
using EigData = std::vector<EigLine>;

// Canonical eigenvalue data of h on the fixed subspace of the sector's
// representative: blocks in ascending weight order, roots ascending within
// a block.  Equal data <=> equal multiset of (eigenvalue, charge) pairs.
inline EigData restricted_eigenvalues(const MatGroup& g, const Sector& s, long h,
                                      const SpectraCache& spectra) {
    const GroupElement& he = g.element(h);
    EigData out;
    for (const auto& block : s.fixed.blocks) {
        std::map<RootOfUnity, long> mult;
        if (block.coordinate && spectra.diag[h]) {
            for (long v : block.free_vars) ++mult[(*spectra.diag[h])[v]];
        } else {
            Mat r = restricted_matrix(he.mat, block);
            if (r.is_diagonal()) {
                for (long i = 0; i < r.n; ++i) {
                    auto root = r.at(i, i).as_root_of_unity();
                    internal_check(root.has_value(),
                                   "restricted diagonal entry must be a root of unity");
                    ++mult[*root];
                }
            } else {
                long ord = matrix_order_dividing(r, he.order);
                long found = 0;
                for (long k = 0; k < ord && found < r.n; ++k) {
                    Mat b = r;
                    Cyclotomic z = Cyclotomic::zeta(ord, k);
                    for (long i = 0; i < r.n; ++i) b.at(i, i) -= z;
                    long cnt = r.n - rank(std::move(b));
                    if (cnt > 0) {
                        mult[RootOfUnity::make(ord, k)] += cnt;
                        found += cnt;
                    }
                }
                internal_check(found == r.n, "restricted eigenvalues do not fill the block");
            }
        }
        for (const auto& [root, m] : mult)
            out.push_back(EigLine{root, block.weight, m});
    }
    return out;
}

inline std::string eig_key(const EigData& e) {
    std::string s;
    for (const auto& line : e) {
        s += std::to_string(line.root.order);
        s += ',';
        s += std::to_string(line.root.expo);
        s += ',';
        s += std::to_string(line.weight);
        s += ',';
        s += std::to_string(line.mult);
        s += ';';
    }
    return s;
}

} // namespace lgorb

#endif // LGORB_SECTORS_HPP
