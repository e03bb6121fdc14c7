#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torusnls/parse.hpp"
#include "torusnls/poly.hpp"

using namespace torusnls;

namespace {
ComplexPolynomial4 mono(int a, int b, int ab, int bb, GaussianRational c = GaussianRational(1)) {
    return ComplexPolynomial4::monomial({a, b, ab, bb}, c);
}
}  // namespace

TEST_CASE("variables and products") {
    CHECK(parse_nonlinearity("u") == mono(1, 0, 0, 0));
    CHECK(parse_nonlinearity("ux") == mono(0, 1, 0, 0));
    CHECK(parse_nonlinearity("uc") == mono(0, 0, 1, 0));
    CHECK(parse_nonlinearity("uxc") == mono(0, 0, 0, 1));
    CHECK(parse_nonlinearity("u*uc*ux") == mono(1, 1, 1, 0));
}

TEST_CASE("rational and imaginary literals") {
    CHECK(parse_nonlinearity("2") == ComplexPolynomial4(GaussianRational(2)));
    CHECK(parse_nonlinearity("3/2") == ComplexPolynomial4(GaussianRational(Rational(3, 2))));
    CHECK(parse_nonlinearity("i") == ComplexPolynomial4(GaussianRational::i()));
    CHECK(parse_nonlinearity("2i") ==
          ComplexPolynomial4(GaussianRational(Rational(0), Rational(2))));
    CHECK(parse_nonlinearity("3/2i") ==
          ComplexPolynomial4(GaussianRational(Rational(0), Rational(3, 2))));
}

TEST_CASE("canonical nonlinearity strings") {
    ComplexPolynomial4 F = parse_nonlinearity("i*(2*u*uc*ux + u^2*uxc)");
    ComplexPolynomial4 expect =
        GaussianRational::i() * (mono(1, 1, 1, 0, GaussianRational(2)) + mono(2, 0, 0, 1));
    CHECK(F == expect);

    CHECK(parse_nonlinearity("u^3") == mono(3, 0, 0, 0));
    CHECK(parse_nonlinearity("ux^2 - uxc^2") ==
          mono(0, 2, 0, 0) + mono(0, 0, 0, 2, GaussianRational(-1)));
    CHECK(parse_nonlinearity("-u") == mono(1, 0, 0, 0, GaussianRational(-1)));
}

TEST_CASE("precedence: power binds tighter than product, product than sum") {
    CHECK(parse_nonlinearity("2*u^2") == mono(2, 0, 0, 0, GaussianRational(2)));
    CHECK(parse_nonlinearity("u + ux*uc") == mono(1, 0, 0, 0) + mono(0, 1, 1, 0));
    CHECK(parse_nonlinearity("(u + ux)*uc") == mono(1, 0, 1, 0) + mono(0, 1, 1, 0));
}

TEST_CASE("parse round trip through to_string") {
    ComplexPolynomial4 F = parse_nonlinearity("i*u^2*uc + 1/2*ux - uxc^2");
    CHECK(parse_nonlinearity(to_string(F)) == F);
}

TEST_CASE("errors carry the offending token index") {
    CHECK_THROWS_AS(parse_nonlinearity("u + + ux"), ParseError);
    try {
        parse_nonlinearity("u + + ux");
    } catch (const ParseError& e) {
        CHECK(e.token_index == 3);
    }

    CHECK_THROWS_AS(parse_nonlinearity("u *"), ParseError);
    CHECK_THROWS_AS(parse_nonlinearity("(u + ux"), ParseError);
    CHECK_THROWS_AS(parse_nonlinearity("v"), ParseError);
    CHECK_THROWS_AS(parse_nonlinearity("u^ux"), ParseError);
    CHECK_THROWS_AS(parse_nonlinearity(""), ParseError);
}
