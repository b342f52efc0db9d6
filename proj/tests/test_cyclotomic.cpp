// Unit tests for exact cyclotomic arithmetic.  Expected values here were
// fixed up front from pencil-and-paper algebra (cyclotomic polynomial
// tables, classical root-of-unity identities) before the implementation
// existed; the complex-double shadow then cross-checks entire expression
// trees numerically at 1e-9 without ever feeding back into exact results.

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "lgorb/cyclotomic.hpp"

using lgorb::Cyclotomic;
using lgorb::Rational;
using lgorb::RootOfUnity;
using lgorb::parse_scalar;

namespace {

// polynomial as exponent->coefficient (trailing zeros trimmed), for Phi_n checks
std::vector<long> phi_coeffs(long n) {
    const auto& p = lgorb::cyclotomic_polynomial(n);
    std::vector<long> out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(lgorb::to_long(c));
    return out;
}

double dist(const std::complex<double>& a, const std::complex<double>& b) {
    return std::abs(a - b);
}

} // namespace

TEST_CASE("cyclotomic polynomials match classical tables") {
    CHECK(phi_coeffs(1) == std::vector<long>{-1, 1});
    CHECK(phi_coeffs(2) == std::vector<long>{1, 1});
    CHECK(phi_coeffs(3) == std::vector<long>{1, 1, 1});
    CHECK(phi_coeffs(4) == std::vector<long>{1, 0, 1});
    CHECK(phi_coeffs(5) == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(phi_coeffs(6) == std::vector<long>{1, -1, 1});
    CHECK(phi_coeffs(8) == std::vector<long>{1, 0, 0, 0, 1});
    CHECK(phi_coeffs(9) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
    CHECK(phi_coeffs(12) == std::vector<long>{1, 0, -1, 0, 1});
    // first index where a coefficient other than 0,+-1 appears
    CHECK(phi_coeffs(105)[7] == -2);
}

TEST_CASE("root-of-unity identities hold exactly") {
    // zeta_3 + zeta_3^2 = -1
    Cyclotomic z3 = Cyclotomic::zeta(3);
    CHECK(z3 + z3.pow(2) == Cyclotomic(-1));
    // (zeta_8 + zeta_8^7)^2 = 2, i.e. zeta_8 + conj is sqrt(2)
    Cyclotomic z8 = Cyclotomic::zeta(8);
    Cyclotomic sqrt2 = z8 + z8.pow(7);
    CHECK(sqrt2 * sqrt2 == Cyclotomic(2));
    // zeta_4^2 = -1, and zeta_8^2 = zeta_4 across conductors
    CHECK(Cyclotomic::zeta(4).pow(2) == Cyclotomic(-1));
    CHECK(Cyclotomic::zeta(8).pow(2) == Cyclotomic::zeta(4));
    // full sum of n-th roots vanishes
    for (long n : {2L, 3L, 4L, 5L, 6L, 7L, 8L, 9L, 12L}) {
        Cyclotomic acc(0);
        for (long k = 0; k < n; ++k) acc += Cyclotomic::zeta(n, k);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("mixed-conductor arithmetic embeds into the lcm") {
    Cyclotomic a = Cyclotomic::zeta(3);
    Cyclotomic b = Cyclotomic::zeta(4);
    Cyclotomic p = a * b;
    CHECK(p == Cyclotomic::zeta(12, 7));  // zeta_3 * zeta_4 = zeta_12^{4+3}
    CHECK(p.conductor() == 12);
    // conductor cap trips loudly
    CHECK_THROWS_AS(Cyclotomic::zeta(9973) * Cyclotomic::zeta(9967), lgorb::Error);
}

TEST_CASE("rational values collapse to conductor 1") {
    Cyclotomic z6 = Cyclotomic::zeta(6);
    Cyclotomic v = z6 + z6.pow(5);  // 2*cos(pi/3) = 1
    CHECK(v.is_rational());
    CHECK(v.conductor() == 1);
    CHECK(v.rational_value() == 1);
}

TEST_CASE("inverse and division") {
    Cyclotomic z5 = Cyclotomic::zeta(5);
    Cyclotomic a = Cyclotomic(1) + z5 + z5.pow(3).scaled(lgorb::make_rational(2, 7));
    CHECK(a * a.inverse() == Cyclotomic(1));
    CHECK_THROWS_AS(Cyclotomic(0).inverse(), lgorb::Error);
    // inverse of a root of unity is its conjugate power
    CHECK(z5.inverse() == z5.pow(4));
}

TEST_CASE("as_root_of_unity recognizes exactly the torsion units") {
    CHECK(Cyclotomic(1).as_root_of_unity() == RootOfUnity{1, 0});
    CHECK(Cyclotomic(-1).as_root_of_unity() == RootOfUnity{2, 1});
    CHECK(Cyclotomic::zeta(8, 2).as_root_of_unity() == RootOfUnity{4, 1});
    CHECK(Cyclotomic::zeta(12, 8).as_root_of_unity() == RootOfUnity{3, 2});
    // -zeta_3 lives in Q(zeta_3) but has order 6
    auto r = (-Cyclotomic::zeta(3)).as_root_of_unity();
    REQUIRE(r.has_value());
    CHECK(r->order == 6);
    CHECK(r->expo == 5);  // -zeta_3 = zeta_6^5
    CHECK(!Cyclotomic(2).as_root_of_unity().has_value());
    CHECK(!(Cyclotomic::zeta(5) + Cyclotomic(1)).as_root_of_unity().has_value());
    CHECK(!Cyclotomic(0).as_root_of_unity().has_value());
}

TEST_CASE("RootOfUnity canonical form and ordering") {
    CHECK(RootOfUnity::make(8, 6) == RootOfUnity{4, 3});
    CHECK(RootOfUnity::make(8, 0) == RootOfUnity{1, 0});
    CHECK(RootOfUnity::make(8, -2) == RootOfUnity{4, 3});
    CHECK(RootOfUnity::make(6, 2).log() == lgorb::make_rational(1, 3));
    CHECK(RootOfUnity::make(8, 3).inverse() == RootOfUnity::make(8, 5));
    CHECK(RootOfUnity::make(8, 3).power(2) == RootOfUnity::make(4, 3));
    CHECK(RootOfUnity::make(3, 1) < RootOfUnity::make(2, 1));  // 1/3 < 1/2
}

TEST_CASE("ring axioms on random elements, with numeric shadow") {
    std::mt19937_64 rng(12345);
    auto random_elem = [&](long n) {
        Cyclotomic acc(0);
        for (int t = 0; t < 3; ++t) {
            long num = static_cast<long>(rng() % 19) - 9;
            long den = 1 + static_cast<long>(rng() % 7);
            acc += Cyclotomic::zeta(n, static_cast<long>(rng() % n))
                       .scaled(lgorb::make_rational(num, den));
        }
        return acc;
    };
    const long conductors[] = {3, 4, 5, 8, 12, 9};
    for (int iter = 0; iter < 60; ++iter) {
        long na = conductors[rng() % 6], nb = conductors[rng() % 6];
        Cyclotomic a = random_elem(na), b = random_elem(nb), c = random_elem(nb);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) CHECK(b * b.inverse() == Cyclotomic(1));
        // numeric shadow at 1e-9
        CHECK(dist((a * b).to_complex(), a.to_complex() * b.to_complex()) < 1e-9);
        CHECK(dist((a + b).to_complex(), a.to_complex() + b.to_complex()) < 1e-9);
    }
}

TEST_CASE("key strings separate distinct values and merge equal ones") {
    Cyclotomic x = Cyclotomic::zeta(8, 2);
    Cyclotomic y = Cyclotomic::zeta(4);
    CHECK(x.key_string(8) == y.key_string(8));
    CHECK(x.key_string(8) != (-y).key_string(8));
}

TEST_CASE("scalar expression parser") {
    CHECK(parse_scalar("3") == Cyclotomic(3));
    CHECK(parse_scalar("-7/2") == Cyclotomic(lgorb::make_rational(-7, 2)));
    CHECK(parse_scalar("E(4)") == Cyclotomic::zeta(4));
    CHECK(parse_scalar("E(8)^7") == Cyclotomic::zeta(8, 7));
    CHECK(parse_scalar("E(8)^-1") == Cyclotomic::zeta(8, 7));
    CHECK(parse_scalar("(E(8)+E(8)^7)/2") * parse_scalar("(E(8)+E(8)^7)") == Cyclotomic(1));
    CHECK(parse_scalar("2 + 4*E(3)^2") == Cyclotomic(2) + Cyclotomic::zeta(3, 2).scaled(4));
    CHECK(parse_scalar(" 1 - E(5) * E(5) ") == Cyclotomic(1) - Cyclotomic::zeta(5, 2));
    CHECK(parse_scalar("((2))^3") == Cyclotomic(8));
    CHECK_THROWS_AS(parse_scalar("E(0)"), lgorb::Error);
    CHECK_THROWS_AS(parse_scalar("1/(E(3)+E(3)^2+1)"), lgorb::Error);  // division by zero
    CHECK_THROWS_AS(parse_scalar("2 +"), lgorb::Error);
    CHECK_THROWS_AS(parse_scalar("E(4"), lgorb::Error);
    CHECK_THROWS_AS(parse_scalar("1 2"), lgorb::Error);
    // round trip through to_string
    Cyclotomic v = parse_scalar("1/2 - 3*E(12)^5 + E(12)");
    CHECK(parse_scalar(v.to_string()) == v);
}
