// Weight systems, charges, invertible-shape decomposition, and symmetry
// verification.  Expected weights/charges below were solved by hand from the
// defining linear systems before implementation.

#include <catch2/catch_amalgamated.hpp>

#include "lgorb/qhpoly.hpp"

using lgorb::Atom;
using lgorb::Cyclotomic;
using lgorb::Mat;
using lgorb::Monomial;
using lgorb::NondegStatus;
using lgorb::QHPoly;
using lgorb::make_rational;

namespace {

Monomial mono(std::vector<long> e, Cyclotomic c = Cyclotomic(1)) {
    return Monomial{std::move(c), std::move(e)};
}

QHPoly fermat(std::vector<long> exps) {
    std::vector<Monomial> ms;
    long n = static_cast<long>(exps.size());
    for (long i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = exps[i];
        ms.push_back(mono(e));
    }
    return QHPoly(ms);
}

} // namespace

TEST_CASE("Fermat quintic weight system") {
    QHPoly W = fermat({5, 5, 5, 5, 5});
    CHECK(W.weights() == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(W.degree() == 5);
    CHECK(W.central_charge() == 3);
    CHECK(W.is_calabi_yau());
    CHECK(W.nondegeneracy_status() == NondegStatus::Certified);
    auto atoms = W.decompose_invertible();
    REQUIRE(atoms.size() == 5);
    for (const auto& a : atoms) {
        CHECK(a.kind == Atom::Kind::Fermat);
        CHECK(a.exps == std::vector<long>{5});
    }
    // grading operator J = diag(zeta_5, ..., zeta_5)
    auto diag = W.grading_diagonal();
    for (const auto& z : diag) CHECK(z == Cyclotomic::zeta(5));
    CHECK(W.is_symmetry(W.grading_operator()));
}

TEST_CASE("single-variable power") {
    for (long n = 2; n <= 12; ++n) {
        QHPoly W = fermat({n});
        CHECK(W.weights() == std::vector<long>{1});
        CHECK(W.degree() == n);
        CHECK(W.central_charge() == make_rational(n - 2, n));
    }
}

TEST_CASE("mixed-weight octic") {
    QHPoly W = fermat({8, 8, 4, 4, 4});
    CHECK(W.weights() == std::vector<long>{1, 1, 2, 2, 2});
    CHECK(W.degree() == 8);
    CHECK(W.is_calabi_yau());
    CHECK(W.central_charge() == 3);
    // block condition: swapping variables of different weight is rejected
    Mat perm13 = Mat::permutation({2, 1, 0, 3, 4});
    auto why = W.symmetry_violation(perm13);
    REQUIRE(why.has_value());
    CHECK(why->find("weight") != std::string::npos);
    // swapping equal-weight Fermat variables is a symmetry
    CHECK(W.is_symmetry(Mat::permutation({1, 0, 2, 3, 4})));
    CHECK(W.is_symmetry(Mat::permutation({0, 1, 3, 4, 2})));
}

TEST_CASE("loop plus Fermat tails") {
    // x1^4 x2 + x2^4 x3 + x3^4 x1 + x4^5 + x5^5
    std::vector<Monomial> ms = {
        mono({4, 1, 0, 0, 0}), mono({0, 4, 1, 0, 0}), mono({1, 0, 4, 0, 0}),
        mono({0, 0, 0, 5, 0}), mono({0, 0, 0, 0, 5})};
    QHPoly W(ms);
    CHECK(W.weights() == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(W.degree() == 5);
    auto atoms = W.decompose_invertible();
    REQUIRE(atoms.size() == 3);
    CHECK(atoms[0].kind == Atom::Kind::Fermat);
    CHECK(atoms[1].kind == Atom::Kind::Fermat);
    CHECK(atoms[2].kind == Atom::Kind::Loop);
    CHECK(atoms[2].exps == std::vector<long>{4, 4, 4});
}

TEST_CASE("chains, including head exponent 1") {
    // x1 x2 + x2^3: w = (2,1), d = 3, q_1 = 2/3 > 1/2
    QHPoly W({mono({1, 1}), mono({0, 3})});
    CHECK(W.weights() == std::vector<long>{2, 1});
    CHECK(W.degree() == 3);
    CHECK(W.charges_above_half() == std::vector<long>{0});
    CHECK(W.central_charge() == 0);
    auto atoms = W.decompose_invertible();
    REQUIRE(atoms.size() == 1);
    CHECK(atoms[0].kind == Atom::Kind::Chain);
    CHECK(atoms[0].exps == std::vector<long>{1, 3});
    CHECK(atoms[0].vars == std::vector<long>{0, 1});
}

TEST_CASE("two-cycle loop with ambiguous-looking heads") {
    // x1^2 x2 + x1 x2^2 = Loop(2,2)
    QHPoly W({mono({2, 1}), mono({1, 2})});
    auto atoms = W.decompose_invertible();
    REQUIRE(atoms.size() == 1);
    CHECK(atoms[0].kind == Atom::Kind::Loop);
    CHECK(atoms[0].exps == std::vector<long>{2, 2});
}

TEST_CASE("weight failures are loud") {
    CHECK_THROWS_AS(QHPoly({mono({2, 2})}), lgorb::Error);            // ambiguous ray
    CHECK_THROWS_AS(QHPoly({mono({3, 0}), mono({3, 0})}), lgorb::Error);  // duplicate
    CHECK_THROWS_AS(QHPoly({}), lgorb::Error);
}

TEST_CASE("necessary condition failure is reported, not fatal") {
    // x1^3 + x1^2 x2: unique weights (1,1), d=3, but x2 has no allowed shape
    QHPoly W({mono({3, 0}), mono({2, 1})});
    CHECK(W.weights() == std::vector<long>{1, 1});
    CHECK(W.nondegeneracy_status() == NondegStatus::Suspect);
    REQUIRE(W.nondegeneracy_gap().has_value());
    CHECK(*W.nondegeneracy_gap() == 1);
    CHECK_THROWS_AS(W.decompose_invertible(), lgorb::Error);
}

TEST_CASE("non-invertible but plausible polynomial stays NecessaryOnly") {
    // homogeneous cubic with an extra mixed monomial (4 monomials, 3 vars)
    QHPoly W({mono({3, 0, 0}), mono({0, 3, 0}), mono({0, 0, 3}), mono({1, 1, 1})});
    CHECK(W.nondegeneracy_status() == NondegStatus::NecessaryOnly);
    CHECK(!W.nondegeneracy_gap().has_value());
    CHECK_THROWS_AS(W.decompose_invertible(), lgorb::Error);
    // and the diagonal scaling by distinct cube roots that fixes x1x2x3
    Mat g = Mat::diagonal({Cyclotomic::zeta(3), Cyclotomic::zeta(3, 2), Cyclotomic(1)});
    CHECK(W.is_symmetry(g));
}

TEST_CASE("binary-quartic-block quintic and its order-8 symmetry") {
    // ((x1^4+x2^4) + c x1^2x2^2) x3 + (-(x1^4+x2^4) + c x1^2x2^2) x4
    //   + x3^4 x4 + x4^4 x3 + x5^5,  c = 2 + 4 zeta_3^2
    Cyclotomic c = Cyclotomic(2) + Cyclotomic::zeta(3, 2).scaled(4);
    std::vector<Monomial> ms = {
        mono({4, 0, 1, 0, 0}),              mono({0, 4, 1, 0, 0}),
        mono({2, 2, 1, 0, 0}, c),           mono({4, 0, 0, 1, 0}, Cyclotomic(-1)),
        mono({0, 4, 0, 1, 0}, Cyclotomic(-1)), mono({2, 2, 0, 1, 0}, c),
        mono({0, 0, 4, 1, 0}),              mono({0, 0, 1, 4, 0}),
        mono({0, 0, 0, 0, 5})};
    QHPoly W(ms);
    CHECK(W.weights() == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(W.degree() == 5);
    CHECK(W.nondegeneracy_status() == NondegStatus::NecessaryOnly);
    // diag(zeta_8^3, zeta_8) on x1,x2  (+)  swap(x3,x4)  (+)  1 on x5
    Mat g(5);
    g.at(0, 0) = Cyclotomic::zeta(8, 3);
    g.at(1, 1) = Cyclotomic::zeta(8);
    g.at(2, 3) = Cyclotomic(1);
    g.at(3, 2) = Cyclotomic(1);
    g.at(4, 4) = Cyclotomic(1);
    CHECK(W.is_symmetry(g));
    CHECK(lgorb::det(g) == Cyclotomic(1));
    // but the plain Fermat-style diagonal zeta_5 scaling of x1 is not
    Mat h = Mat::diagonal({Cyclotomic::zeta(5), Cyclotomic(1), Cyclotomic(1),
                           Cyclotomic(1), Cyclotomic(1)});
    CHECK(!W.is_symmetry(h));
}

TEST_CASE("exact matrix algebra") {
    Mat m(2);
    m.at(0, 0) = Cyclotomic(0); m.at(0, 1) = Cyclotomic(1);
    m.at(1, 0) = Cyclotomic(-1); m.at(1, 1) = Cyclotomic(0);
    CHECK(lgorb::det(m) == Cyclotomic(1));
    CHECK(lgorb::inverse(m) * m == Mat::identity(2));
    CHECK(m.pow(4).is_identity());
    CHECK(!m.pow(2).is_identity());
    Mat singular(2);
    singular.at(0, 0) = Cyclotomic(1); singular.at(0, 1) = Cyclotomic(2);
    singular.at(1, 0) = Cyclotomic(2); singular.at(1, 1) = Cyclotomic(4);
    CHECK(lgorb::det(singular).is_zero());
    CHECK_THROWS_AS(lgorb::inverse(singular), lgorb::Error);
    auto ker = lgorb::kernel(singular);
    REQUIRE(ker.vectors.size() == 1);
    CHECK(ker.free_cols == std::vector<long>{1});
    // kernel vector (-2, 1)
    CHECK(ker.vectors[0][0] == Cyclotomic(-2));
    CHECK(ker.vectors[0][1] == Cyclotomic(1));
}
