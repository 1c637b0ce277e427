#pragma once

#include "fano/core.hpp"

namespace fano {

enum class SupportPruning {
    none,  // keep the full support of every power
    box,   // drop monomials that cannot return to exponent zero in the
           // remaining multiplications (coordinatewise Newton-polytope bound)
};

/// Constant terms of successive powers: [ct(f^0), ct(f^1), ..., ct(f^count)].
/// Both pruning modes produce identical output; the box mode only discards
/// monomials that provably cannot contribute to any remaining constant term.
PeriodSequence constant_term_powers(const LaurentPolynomial& f, long count,
                                    SupportPruning pruning = SupportPruning::none);

/// Places f and g in disjoint variable blocks and adds them: f's exponent
/// vectors are padded with zeros on the right, g's on the left. Only the
/// constant monomials of the two inputs can collide.
LaurentPolynomial disjoint_sum(const LaurentPolynomial& f, const LaurentPolynomial& g);

/// Exact product of two Laurent polynomials in the same variables.
LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g);

/// Parses the plain-text grammar documented in FORMAT.md: terms like
/// `2*x1^3*x2^-1` joined by `+`/`-`, variables named x1..xk. The number of
/// variables is the largest index used unless dims forces a wider space.
LaurentPolynomial parse_laurent(const std::string& text, int dims = 0);

std::string format_laurent(const LaurentPolynomial& f);

}  // namespace fano
