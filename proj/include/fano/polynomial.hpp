#pragma once

#include "fano/core.hpp"

namespace fano {

/// Dense univariate polynomial over the rationals. Coefficients are stored
/// from degree 0 upward with no trailing zeros; the zero polynomial has an
/// empty coefficient vector and degree -1.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, std::size_t degree);

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(std::size_t i) const;
    const Rational& leading() const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Rational& s) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    Rational eval(const Rational& x) const;
    Polynomial derivative() const;

    /// Composition with x + a (Taylor shift).
    Polynomial shifted(const Rational& a) const;

    /// Coefficients reversed: x^deg * p(1/x).
    Polynomial reversed() const;

    Polynomial monic() const;

    /// Order of vanishing at 0 (degree+1 convention avoided: zero poly -> -1).
    long valuation() const;

    std::string str(const std::string& var = "t") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);
Polynomial gcd(const Polynomial& a, const Polynomial& b);  // monic

/// Scales a rational polynomial to a primitive integer coefficient vector
/// with positive leading coefficient (degree 0 upward, trailing zeros
/// removed). The rational multiplier is discarded.
std::vector<Integer> primitive_integer_coeffs(const Polynomial& p);

struct IrreducibleFactor {
    Polynomial poly;  // primitive integer coefficients, positive leading coeff
    int multiplicity = 0;
};

/// Irreducible factorization over Q of a nonzero polynomial; the constant
/// multiplier is dropped. Factors are sorted by (degree, coefficients).
/// Classical Zassenhaus: squarefree split, factorization modulo a good small
/// prime, Hensel lifting past the coefficient bound, subset recombination.
std::vector<IrreducibleFactor> factor_rational(const Polynomial& p);

/// Roots of p in Q, with multiplicities (derived from the linear factors).
std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& p);

}  // namespace fano
