#pragma once

#include "fano/polynomial.hpp"

#include <memory>

namespace fano {

/// Q[x]/(modulus) for a monic irreducible modulus. Elements are polynomials
/// of degree below deg(modulus) in the class of x.
struct NumberField {
    Polynomial modulus;  // monic, irreducible over Q

    explicit NumberField(Polynomial mod) : modulus(std::move(mod)) {
        if (modulus.degree() < 1) throw std::invalid_argument("modulus must be non-constant");
    }
    long degree() const { return modulus.degree(); }
};

class NFElem {
  public:
    NFElem() = default;
    NFElem(std::shared_ptr<const NumberField> field, Polynomial rep);

    /// The class of x, i.e. the generator.
    static NFElem generator(const std::shared_ptr<const NumberField>& field);
    static NFElem from_rational(const std::shared_ptr<const NumberField>& field,
                                const Rational& value);

    bool is_zero() const { return rep_.is_zero(); }
    const Polynomial& rep() const { return rep_; }
    const std::shared_ptr<const NumberField>& field() const { return field_; }

    /// Rational content when the element lies in Q, otherwise nullopt.
    std::optional<Rational> as_rational() const;

    NFElem operator+(const NFElem& o) const;
    NFElem operator-(const NFElem& o) const;
    NFElem operator*(const NFElem& o) const;
    NFElem operator-() const;
    NFElem inverse() const;  // throws DivisionByZero on zero
    bool operator==(const NFElem& o) const { return rep_ == o.rep_; }
    bool operator!=(const NFElem& o) const { return !(*this == o); }

    std::string str() const { return rep_.str("x"); }

  private:
    void require_same_field(const NFElem& o) const;
    std::shared_ptr<const NumberField> field_;
    Polynomial rep_;
};

}  // namespace fano
