#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fano/recurrence.hpp"

using namespace fano;

namespace {

DOperator p1_operator() {
    DOperator op;
    op.terms = {{4, 1, 2}, {-1, 1, 0}, {4, 0, 2}};
    return op;
}

// independent closed form: the even coefficients are central binomials
PeriodSequence p1_closed_form(long count) {
    std::vector<Rational> c(count + 1, Rational(0));
    for (long d = 0; 2 * d <= count; ++d)
        c[2 * d] = Rational(factorial(2 * d)) / (Rational(factorial(d)) * Rational(factorial(d)));
    return PeriodSequence(std::move(c));
}

}  // namespace

TEST_CASE("relation terms at exponent 2") {
    auto relation = recurrence_relation(p1_operator(), 2);
    REQUIRE(relation.size() == 2);
    CHECK(relation[0].index == 0);
    CHECK(relation[0].weight == 4);
    CHECK(relation[1].index == 2);
    CHECK(relation[1].weight == -2);
}

TEST_CASE("relation at exponent 0 leaves the seed unconstrained") {
    auto relation = recurrence_relation(p1_operator(), 0);
    REQUIRE(relation.size() == 1);
    CHECK(relation[0].index == 0);
    CHECK(relation[0].weight == 0);
}

TEST_CASE("relation at exponent 6 forces the next central binomial") {
    auto relation = recurrence_relation(p1_operator(), 6);
    REQUIRE(relation.size() == 2);
    CHECK(relation[0].index == 4);
    CHECK(relation[0].weight == 4 * 4 + 4);
    CHECK(relation[1].index == 6);
    CHECK(relation[1].weight == -6);
    // 20*c_4 - 6*c_6 = 0 with c_4 = 6 gives c_6 = 20
    CHECK(Rational(20 * 6) / 6 == 20);
}

TEST_CASE("expansion reproduces the closed form") {
    auto seq = expand(p1_operator(), PeriodSequence::from_integers({1, 0}), 8);
    CHECK(seq == PeriodSequence::from_integers({1, 0, 2, 0, 6, 0, 20, 0, 70}));
}

TEST_CASE("expansion rejects a target inside the seed range") {
    CHECK_THROWS_AS(expand(p1_operator(), PeriodSequence::from_integers({1, 0}), 1),
                    std::invalid_argument);
}

TEST_CASE("expansion is linear in the seeds") {
    auto seq = expand(p1_operator(), PeriodSequence::from_integers({5, 0}), 4);
    CHECK(seq == PeriodSequence::from_integers({5, 0, 10, 0, 30}));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        long alpha_num = static_cast<long>(rng() % 19) - 9;
        Rational alpha = make_rational(alpha_num, static_cast<long>(rng() % 5) + 1);
        PeriodSequence seeds(std::vector<Rational>{alpha, Rational(0)});
        auto scaled = expand(p1_operator(), seeds, 10);
        auto base = expand(p1_operator(), PeriodSequence::from_integers({1, 0}), 10);
        for (std::size_t j = 0; j < scaled.coeffs.size(); ++j)
            CHECK(scaled.coeffs[j] == alpha * base.coeffs[j]);
    }
}

TEST_CASE("underdetermined and obstructed expansions are distinguished") {
    // D(D-2): the exponent-2 coefficient is free
    DOperator gap;
    gap.terms = {{1, 2, 0}, {-2, 1, 0}};
    CHECK_THROWS_AS(expand(gap, PeriodSequence::from_integers({1}), 4), UnderdeterminedExpansion);

    // D(D-2) + t: the exponent-2 relation becomes inconsistent
    DOperator blocked;
    blocked.terms = {{1, 2, 0}, {-2, 1, 0}, {1, 0, 1}};
    try {
        expand(blocked, PeriodSequence::from_integers({1}), 4);
        FAIL("expected ObstructedExpansion");
    } catch (const ObstructedExpansion& err) {
        CHECK(err.index == 2);
    }
}

TEST_CASE("strict integrality flags rational coefficients") {
    // 2D - t: c_e = c_{e-1} / (2e)
    DOperator halver;
    halver.terms = {{2, 1, 0}, {-1, 0, 1}};
    ExpandOptions strict;
    strict.strict_integral = true;
    CHECK_THROWS_AS(expand(halver, PeriodSequence::from_integers({1}), 3, strict),
                    NonIntegralCoefficient);
    auto loose = expand(halver, PeriodSequence::from_integers({1}), 2);
    CHECK(loose.coeffs[1] == make_rational(1, 2));
}

TEST_CASE("annihilation over the golden pair") {
    auto check = annihilates(p1_operator(), PeriodSequence::from_integers({1, 0, 2, 0, 6, 0, 20}));
    CHECK(check.verified_range == 6);
    CHECK(check.residuals.empty());
}

TEST_CASE("annihilation pinpoints a corrupted coefficient") {
    auto check = annihilates(p1_operator(), PeriodSequence::from_integers({1, 0, 3}));
    CHECK(check.verified_range == 2);
    REQUIRE(check.residuals.size() == 1);
    CHECK(check.residuals[0].first == 2);
    CHECK(check.residuals[0].second == -2);
}

TEST_CASE("annihilation of a length-one truncation") {
    auto check = annihilates(p1_operator(), PeriodSequence::from_integers({1}));
    CHECK(check.verified_range == 1);
    CHECK(check.residuals.empty());
}

TEST_CASE("normalization clears content and fixes the sign") {
    std::vector<RationalTerm> doubled = {{Rational(8), 1, 2}, {Rational(-2), 1, 0},
                                         {Rational(8), 0, 2}};
    CHECK(normalize(doubled) == p1_operator());

    CHECK(normalize(p1_operator()) == p1_operator());
    CHECK(is_normalized(p1_operator()));

    std::vector<RationalTerm> flipped = {{Rational(-4), 1, 2}, {Rational(1), 1, 0},
                                         {Rational(-4), 0, 2}};
    DOperator fixed = normalize(flipped);
    CHECK(fixed == p1_operator());
    // oracle: both sign choices annihilate the same sequence
    DOperator raw;
    raw.terms = {{-4, 1, 2}, {1, 1, 0}, {-4, 0, 2}};
    auto seq = PeriodSequence::from_integers({1, 0, 2, 0, 6});
    CHECK(annihilates(raw, seq).clean());
    CHECK(annihilates(fixed, seq).clean());
}

TEST_CASE("normalization handles rational input and merges duplicates") {
    std::vector<RationalTerm> fractions = {{make_rational(2, 3), 1, 2},
                                           {make_rational(-1, 6), 1, 0},
                                           {make_rational(1, 3), 0, 2},
                                           {make_rational(1, 3), 0, 2}};
    DOperator op = normalize(fractions);
    CHECK(op == p1_operator());
}

TEST_CASE("normalization idempotence over random operators") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        std::vector<RationalTerm> terms;
        int count = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < count; ++k) {
            long num = static_cast<long>(rng() % 41) - 20;
            if (num == 0) num = 3;
            terms.push_back({make_rational(num, static_cast<long>(rng() % 7) + 1),
                             static_cast<unsigned>(rng() % 4), static_cast<unsigned>(rng() % 5)});
        }
        bool has_positive_order = false;
        for (auto& t : terms) has_positive_order |= t.d_power > 0;
        if (!has_positive_order) terms.push_back({Rational(1), 1, 0});
        DOperator once = normalize(terms);
        CHECK(normalize(once) == once);
        Integer content = 0;
        for (const auto& t : once.terms)
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.coeff.get_mpz_t());
        CHECK(content == 1);
    }
}

TEST_CASE("product periods convolve with binomial weights") {
    auto p1 = expand(p1_operator(), PeriodSequence::from_integers({1, 0}), 8);
    auto square = product_period(p1, p1, 6);
    CHECK(square == PeriodSequence::from_integers({1, 0, 4, 0, 36, 0, 400}));

    auto forced = product_period(p1, PeriodSequence::from_integers({1, 0}), 1);
    CHECK(forced == PeriodSequence::from_integers({1, 0}));

    CHECK(product_period(square, p1, 6) == product_period(p1, square, 6));
    CHECK_THROWS_AS(product_period(p1, PeriodSequence::from_integers({1, 0}), 2),
                    std::invalid_argument);
}

TEST_CASE("the one-point period is the product unit") {
    auto p1 = expand(p1_operator(), PeriodSequence::from_integers({1, 0}), 8);
    PeriodSequence unit(std::vector<Rational>(9, Rational(0)));
    unit.coeffs[0] = 1;
    CHECK(product_period(p1, unit, 8) == p1);
}

TEST_CASE("long expansion against the closed form") {
    auto seq = expand(p1_operator(), PeriodSequence::from_integers({1, 0}), 100);
    CHECK(seq == p1_closed_form(100));
}
