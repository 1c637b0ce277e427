#include "fano/numberfield.hpp"

namespace fano {

NFElem::NFElem(std::shared_ptr<const NumberField> field, Polynomial rep)
    : field_(std::move(field)), rep_(std::move(rep)) {
    if (rep_.degree() >= field_->degree()) rep_ = divmod(rep_, field_->modulus).second;
}

NFElem NFElem::generator(const std::shared_ptr<const NumberField>& field) {
    return NFElem(field, Polynomial::monomial(1, 1));
}

NFElem NFElem::from_rational(const std::shared_ptr<const NumberField>& field,
                             const Rational& value) {
    return NFElem(field, Polynomial::constant(value));
}

std::optional<Rational> NFElem::as_rational() const {
    if (rep_.degree() > 0) return std::nullopt;
    return rep_.is_zero() ? Rational(0) : rep_.coeff(0);
}

void NFElem::require_same_field(const NFElem& o) const {
    if (!field_ || !o.field_ || field_->modulus != o.field_->modulus)
        throw std::invalid_argument("number field mismatch");
}

NFElem NFElem::operator+(const NFElem& o) const {
    require_same_field(o);
    return NFElem(field_, rep_ + o.rep_);
}

NFElem NFElem::operator-(const NFElem& o) const {
    require_same_field(o);
    return NFElem(field_, rep_ - o.rep_);
}

NFElem NFElem::operator-() const { return NFElem(field_, -rep_); }

NFElem NFElem::operator*(const NFElem& o) const {
    require_same_field(o);
    return NFElem(field_, divmod(rep_ * o.rep_, field_->modulus).second);
}

NFElem NFElem::inverse() const {
    if (is_zero()) throw DivisionByZero();
    // extended Euclid in Q[x]: u*rep + v*modulus = gcd = 1
    Polynomial r0 = field_->modulus, r1 = rep_;
    Polynomial u0, u1 = Polynomial::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Polynomial u2 = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // r0 is a nonzero constant (modulus irreducible, rep nonzero)
    if (r0.degree() != 0) throw std::logic_error("modulus is not irreducible");
    return NFElem(field_, u0 * div_checked(Rational(1), r0.coeff(0)));
}

}  // namespace fano
