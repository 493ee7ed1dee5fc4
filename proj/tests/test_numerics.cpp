#include <doctest.h>

#include "helpers.hpp"
#include "logmatch/models.hpp"

using namespace logmatch;
using testing::num;

TEST_SUITE("numerics") {

TEST_CASE("precision below 30 digits is refused") {
    CHECK_THROWS_AS(PrecisionContext(29), Error);
    CHECK(PrecisionContext(30).digits() == 30);
    CHECK(PrecisionContext(100).bits() > PrecisionContext(60).bits());
}

TEST_CASE("parse_real") {
    PrecisionContext c50(50), c30(30);
    Real tenth = num("0.1", c50);
    CHECK(abs(tenth * 10L - 1L) < Real::pow10(-49, c50));
    CHECK(num("1e-3", c30) == Real(1, c30) / 1000L);
    CHECK(format_real(num("-0.5925040566", c50), 10) == "-0.5925040566");
    CHECK(num("+2.5E+1", c30) == 25L);

    for (const char* bad : {"", "1..2", "abc", "1e", "--1", "1.5x", " 1"}) {
        try {
            parse_real(bad, c30);
            FAIL("accepted " << bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
        }
    }
    try {
        parse_real("12x4", c30);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
}

TEST_CASE("format_real rounds half to even") {
    PrecisionContext c(40);
    // ties that binary represents exactly
    CHECK(format_real(num("0.125", c), 2) == "0.12");
    CHECK(format_real(num("0.375", c), 2) == "0.38");
    CHECK(format_real(num("-2.5", c), 1) == "-2");
    CHECK(format_real(num("1.2500", c), 2) == "1.2");
    CHECK(format_real(num("0.12346", c), 4) == "0.1235");
    CHECK(format_real(num("0.5462468341396717", c), 10) == "0.5462468341");
    CHECK(format_real(Real(c), 10) == "0");
    CHECK(format_real(num("1e-12", c), 3) == "1.00e-12");
    CHECK(format_real(num("-3.711514163", c), 10) == "-3.711514163");
}

TEST_CASE("Dual arithmetic follows the chain rule") {
    PrecisionContext c(40);
    Dual x = Dual::variable(Real(3, c), 0);
    Dual sq = x * x;
    CHECK(sq.value() == 9L);
    CHECK(sq.d(0) == 6L);
    CHECK(sq.d(1).is_zero());

    Dual y = Dual::variable(Real(2, c), 1);
    Dual f = sin(x * y) / (y + 1L);  // ∂x = y cos(xy)/(y+1), ∂y = [x cos(xy)(y+1) − sin(xy)]/(y+1)²
    Real xy = Real(6, c);
    CHECK(abs(f.d(0) - Real(2, c) * cos(xy) / 3L) < Real::pow10(-38, c));
    CHECK(abs(f.d(1) - (Real(3, c) * cos(xy) * 3L - sin(xy)) / 9L) < Real::pow10(-38, c));
}

TEST_CASE("refine_root_1d examples") {
    PrecisionContext c(60);
    auto f = [](const Real& x) { return x * x - 2L; };
    Real r = refine_root_1d(f, Real(1, c), Real(2, c), Real::pow10(-40, c));
    CHECK(abs(r - sqrt(Real(2, c))) < Real::pow10(-40, c));

    auto cube = [](const Real& x) { return x * x * x; };
    Real z = refine_root_1d(cube, Real(-1, c), Real(2, c), Real::pow10(-30, c));
    CHECK(abs(z) < Real::pow10(-30, c));

    PotentialModel well = SymmetricFiniteWell{Real(1, c)};
    auto l = [&](const Real& E) { return closed_logderiv(well, Side::Right, E); };
    Real e0 = refine_root_1d(l, num("0.4", c), num("0.7", c), Real::pow10(-50, c));
    CHECK(format_real(e0, 10) == "0.5462468341");

    Root1D b = refine_root_1d_bracket(f, Real(1, c), Real(2, c), Real::pow10(-30, c));
    CHECK(b.lo <= b.root);
    CHECK(b.root <= b.hi);
    CHECK(b.hi - b.lo <= Real::pow10(-30, c));
    CHECK(f(b.lo).sign() != f(b.hi).sign());
}

TEST_CASE("refine_root_1d result does not depend on acceleration") {
    PrecisionContext c(50);
    auto f = [](const Real& x) { return exp(x) - x * 3L; };
    Real tol = Real::pow10(-35, c);
    Real fast = refine_root_1d(f, Real(0, c), Real(1, c), tol, {true, 20000});
    Real slow = refine_root_1d(f, Real(0, c), Real(1, c), tol, {false, 20000});
    CHECK(abs(fast - slow) <= tol * 2L);
}

TEST_CASE("refine_root_1d errors") {
    PrecisionContext c(30);
    auto f = [](const Real& x) { return x * x + 1L; };
    try {
        refine_root_1d(f, Real(-1, c), Real(1, c), Real::pow10(-20, c));
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Bracket);
    }
    auto g = [](const Real& x) { return log(x); };  // NaN below zero
    try {
        refine_root_1d(g, Real(-1, c), Real(2, c), Real::pow10(-20, c));
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("refine_root_2d examples") {
    PrecisionContext c(50);
    auto circle = [](const Dual& x, const Dual& y) { return DualPair{x * x + y * y - 1L, x - y}; };
    Root2D r = refine_root_2d(circle, num("0.7", c), num("0.7", c), Real::pow10(-40, c), 50);
    Real half_root2 = sqrt(Real(2, c)) / 2L;
    CHECK(abs(r.x - half_root2) < Real::pow10(-40, c));
    CHECK(abs(r.y - half_root2) < Real::pow10(-40, c));

    auto affine = [](const Dual& x, const Dual& y) { return DualPair{x - 3L, y + 4L}; };
    Root2D a = refine_root_2d(affine, Real(0, c), Real(0, c), Real::pow10(-40, c), 5);
    CHECK(a.x == 3L);
    CHECK(a.y == -4L);
    CHECK(a.iterations <= 2);

    auto rank = [](const Dual& x, const Dual& y) { return DualPair{x + y - 1L, (x + y) * 2L - 3L}; };
    try {
        refine_root_2d(rank, Real(0, c), Real(0, c), Real::pow10(-40, c), 10);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Rank);
    }
    auto slow = [](const Dual& x, const Dual& y) { return DualPair{x * x - 2L, y}; };
    try {
        refine_root_2d(slow, Real(1000, c), Real(0, c), Real::pow10(-40, c), 3);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonConvergence);
    }
}

TEST_CASE("complex principal square root") {
    PrecisionContext c(40);
    ComplexReal z{Real(-4, c), Real(c)};
    ComplexReal s = sqrt(z);
    CHECK(abs(s.re) < Real::pow10(-38, c));
    CHECK(abs(s.im - 2L) < Real::pow10(-38, c));
    ComplexReal w{Real(3, c), Real(4, c)};
    ComplexReal t = sqrt(w);
    CHECK(abs(t.re - 2L) < Real::pow10(-38, c));
    CHECK(abs(t.im - 1L) < Real::pow10(-38, c));
    ComplexReal big{Real::pow10(400, c), Real::pow10(400, c)};
    CHECK(abs(big).is_finite());
}

}
