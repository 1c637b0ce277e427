#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fano/laurent.hpp"
#include "fano/recurrence.hpp"

using namespace fano;

namespace {

LaurentPolynomial p1_mirror() {
    LaurentPolynomial f(1);
    f.add_term({1}, 1);
    f.add_term({-1}, 1);
    return f;
}

LaurentPolynomial p2_mirror() {
    LaurentPolynomial f(2);
    f.add_term({1, 0}, 1);
    f.add_term({0, 1}, 1);
    f.add_term({-1, -1}, 1);
    return f;
}

// brute force oracle: expand f^d by multinomial enumeration over term choices
Rational brute_constant_term(const LaurentPolynomial& f, int power) {
    std::vector<std::pair<std::vector<std::int64_t>, Rational>> terms(f.terms.begin(),
                                                                      f.terms.end());
    Rational total = 0;
    std::vector<int> pick(power, 0);
    while (true) {
        std::vector<std::int64_t> exps(f.dims, 0);
        Rational coeff = 1;
        for (int slot = 0; slot < power; ++slot) {
            coeff *= terms[pick[slot]].second;
            for (int i = 0; i < f.dims; ++i) exps[i] += terms[pick[slot]].first[i];
        }
        if (std::all_of(exps.begin(), exps.end(), [](std::int64_t e) { return e == 0; }))
            total += coeff;
        int slot = power - 1;
        while (slot >= 0 && pick[slot] == static_cast<int>(terms.size()) - 1) --slot;
        if (slot < 0) break;
        ++pick[slot];
        for (int j = slot + 1; j < power; ++j) pick[j] = 0;
    }
    return total;
}

LaurentPolynomial random_laurent(std::mt19937_64& rng, int dims, int max_terms) {
    LaurentPolynomial f(dims);
    int count = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < count; ++i) {
        std::vector<std::int64_t> exps(dims);
        for (auto& e : exps) e = static_cast<std::int64_t>(rng() % 5) - 2;
        long num = static_cast<long>(rng() % 9) - 4;
        if (num == 0) num = 1;
        f.add_term(exps, Rational(num));
    }
    if (f.terms.empty()) f.add_term(std::vector<std::int64_t>(dims, 1), 1);
    return f;
}

}  // namespace

TEST_CASE("the one-variable mirror reproduces the central binomials") {
    auto seq = constant_term_powers(p1_mirror(), 6);
    CHECK(seq == PeriodSequence::from_integers({1, 0, 2, 0, 6, 0, 20}));
}

TEST_CASE("the standard two-variable mirror matches the multinomial oracle") {
    auto seq = constant_term_powers(p2_mirror(), 6);
    CHECK(seq == PeriodSequence::from_integers({1, 0, 0, 6, 0, 0, 90}));
    for (int d = 0; d <= 6; ++d) CHECK(seq.coeffs[d] == brute_constant_term(p2_mirror(), d));
}

TEST_CASE("powers of the constant polynomial") {
    LaurentPolynomial one(1);
    one.add_term({0}, 1);
    CHECK(constant_term_powers(one, 3) == PeriodSequence::from_integers({1, 1, 1, 1}));
}

TEST_CASE("disjoint sums pad exponents into fresh variables") {
    LaurentPolynomial g(1);
    g.add_term({1}, 1);
    g.add_term({-1}, 1);
    auto sum = disjoint_sum(p1_mirror(), g);
    CHECK(sum.dims == 2);
    CHECK(sum.terms.size() == 4);
    CHECK(sum.terms.count({1, 0}) == 1);
    CHECK(sum.terms.count({0, -1}) == 1);

    LaurentPolynomial empty(2);
    auto padded = disjoint_sum(p1_mirror(), empty);
    CHECK(padded.dims == 3);
    CHECK(padded.terms.size() == 2);

    // constant terms collide and add
    LaurentPolynomial c1(1), c2(1);
    c1.add_term({0}, 2);
    c2.add_term({0}, 3);
    auto merged = disjoint_sum(c1, c2);
    CHECK(merged.terms.size() == 1);
    CHECK(merged.terms.at({0, 0}) == 5);
}

TEST_CASE("product law: constant terms of a disjoint sum convolve binomially") {
    auto f = p1_mirror();
    LaurentPolynomial g = p1_mirror();
    auto sum = disjoint_sum(f, g);
    auto lhs = constant_term_powers(sum, 8);
    auto fs = constant_term_powers(f, 8);
    auto gs = constant_term_powers(g, 8);
    auto rhs = product_period(fs, gs, 8);
    CHECK(lhs == rhs);
    for (int d = 0; d <= 8; ++d) CHECK(lhs.coeffs[d] == brute_constant_term(sum, d));
}

TEST_CASE("box pruning never changes the output") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        auto f = random_laurent(rng, 1 + static_cast<int>(rng() % 2), 5);
        auto unpruned = constant_term_powers(f, 10, SupportPruning::none);
        auto pruned = constant_term_powers(f, 10, SupportPruning::box);
        CHECK(unpruned == pruned);
    }
}

TEST_CASE("constant term sequences are invariant under exponent sign flips") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 20; ++i) {
        auto f = random_laurent(rng, 2, 4);
        LaurentPolynomial flipped(f.dims);
        for (const auto& [exps, coeff] : f.terms) {
            std::vector<std::int64_t> neg(exps.size());
            for (std::size_t j = 0; j < exps.size(); ++j) neg[j] = -exps[j];
            flipped.add_term(neg, coeff);
        }
        CHECK(constant_term_powers(f, 8) == constant_term_powers(flipped, 8));
    }
}

TEST_CASE("laurent grammar round trip") {
    auto f = parse_laurent("x1 + x1^-1");
    CHECK(f == p1_mirror());

    auto g = parse_laurent("x1 + x2 + x1^-1*x2^-1");
    CHECK(g == p2_mirror());

    auto h = parse_laurent("2*x1^3*x2^-1 - x1 + 1/2");
    CHECK(h.dims == 2);
    CHECK(h.terms.at({3, -1}) == 2);
    CHECK(h.terms.at({1, 0}) == -1);
    CHECK(h.terms.at({0, 0}) == make_rational(1, 2));

    CHECK(parse_laurent(format_laurent(h)) == h);
    CHECK_THROWS_AS(parse_laurent(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_laurent("x1 +"), std::invalid_argument);
    CHECK_THROWS_AS(parse_laurent("y2"), std::invalid_argument);
}

TEST_CASE("ct of the zeroth power is always one") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 10; ++i) {
        auto f = random_laurent(rng, 1 + static_cast<int>(rng() % 3), 4);
        CHECK(constant_term_powers(f, 0).coeffs[0] == 1);
    }
}
