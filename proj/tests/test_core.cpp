#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fano/core.hpp"

using namespace fano;

TEST_CASE("rational canonical form") {
    Rational half = make_rational(2, 4);
    CHECK(half.get_num() == 1);
    CHECK(half.get_den() == 2);

    Rational negative = make_rational(3, -6);
    CHECK(negative.get_num() == -1);
    CHECK(negative.get_den() == 2);

    CHECK(make_rational(1, 3) + make_rational(1, 6) == make_rational(1, 2));
}

TEST_CASE("normalization is idempotent over random rationals") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        long num = static_cast<long>(rng() % 2001) - 1000;
        long den = static_cast<long>(rng() % 999) + 1;
        if (rng() & 1) den = -den;
        Rational r = make_rational(num, den);
        Integer g;
        mpz_gcd(g.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
        CHECK(r.get_den() > 0);
        CHECK((r.get_num() == 0 ? g == r.get_den() : g == 1));
        CHECK(make_rational(r.get_num(), r.get_den()) == r);
    }
}

TEST_CASE("division by zero is a distinct error") {
    CHECK_THROWS_AS(make_rational(1, 0), DivisionByZero);
    CHECK_THROWS_AS(div_checked(Rational(1), Rational(0)), DivisionByZero);
}

TEST_CASE("gcd of the dimension-one operator coefficients") {
    Integer g = 0;
    for (long v : {4L, 1L, 4L}) {
        Integer z(v);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    CHECK(g == 1);
}

TEST_CASE("integer power uses 0^0 = 1") {
    CHECK(int_pow(0, 0) == 1);
    CHECK(int_pow(0, 3) == 0);
    CHECK(int_pow(-2, 3) == -8);
    CHECK(int_pow(7, 0) == 1);
}

TEST_CASE("rational parsing") {
    CHECK(rational_from_string("-3/6") == make_rational(-1, 2));
    CHECK(rational_from_string("42") == Rational(42));
    CHECK_THROWS_AS(rational_from_string("1/0"), DivisionByZero);
}

TEST_CASE("operator invariants") {
    DOperator op;
    op.terms = {{4, 1, 2}, {-1, 1, 0}, {4, 0, 2}};
    CHECK_NOTHROW(op.validate());
    CHECK(op.order() == 1);

    DOperator repeated;
    repeated.terms = {{1, 1, 0}, {2, 1, 0}};
    CHECK_THROWS_AS(repeated.validate(), std::invalid_argument);

    DOperator constant_only;
    constant_only.terms = {{1, 0, 0}};
    CHECK_THROWS_AS(constant_only.validate(), std::invalid_argument);
}

TEST_CASE("list formatting canons") {
    PeriodSequence seq = PeriodSequence::from_integers({1, 0, 2, 0, 6});
    CHECK(format_period(seq, true) == "[1, 0, 2, 0, 6]");
    CHECK(format_period(seq, false) == "[1,0,2,0,6]");

    DOperator op;
    op.terms = {{4, 1, 2}, {-1, 1, 0}, {4, 0, 2}};
    CHECK(format_coefficient_list(op, true) == "[4, -1, 4]");
    CHECK(format_exponent_pairs(op, true) == "[[1, 2], [1, 0], [0, 2]]");
    CHECK(format_exponent_pairs(op, false) == "[[1,2],[1,0],[0,2]]");
}

TEST_CASE("laurent term bookkeeping") {
    LaurentPolynomial f(1);
    f.add_term({1}, 1);
    f.add_term({-1}, 1);
    f.add_term({1}, -1);  // cancels the first term
    CHECK(f.terms.size() == 1);
    CHECK_THROWS_AS(f.add_term({0, 0}, 1), std::invalid_argument);
}
