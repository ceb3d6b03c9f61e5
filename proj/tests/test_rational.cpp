#include <catch2/catch_amalgamated.hpp>

#include "cwm/laurent.hpp"
#include "cwm/rational.hpp"

using namespace cwm;

TEST_CASE("rational arithmetic stays normalized") {
    Rational a(2, 4), b(1, 3);
    CHECK(a == Rational(1, 2));
    CHECK(a + b == Rational(5, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK((a - a).is_zero());
    CHECK(Rational(-4, -6) == Rational(2, 3));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("laurent polynomials drop zero terms and multiply") {
    LaurentPoly p = LaurentPoly::monomial(Rational(1), 3);
    p.add(Rational(-1), 3);
    CHECK(p.is_zero());

    LaurentPoly q = LaurentPoly::monomial(Rational(2), -1);
    q.add(Rational(1, 2), 2);
    LaurentPoly r = q * q;
    CHECK(r.terms().at(-2) == Rational(4));
    CHECK(r.terms().at(1) == Rational(2));
    CHECK(r.terms().at(4) == Rational(1, 4));
    CHECK(r.str() == "1/4*N^4 + 2*N^1 + 4*N^-2");
}
