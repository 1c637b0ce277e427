#include "fano/core.hpp"

#include <algorithm>
#include <sstream>

namespace fano {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero();
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational div_checked(const Rational& a, const Rational& b) {
    if (b == 0) throw DivisionByZero();
    return a / b;
}

Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        Integer n(text);
        return Rational(n);
    }
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    return make_rational(num, den);
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_str();
}

Integer int_pow(const Integer& base, unsigned long exp) {
    if (exp == 0) return 1;  // includes 0^0 = 1
    Integer result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exp);
    return result;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

Integer factorial(unsigned long n) {
    Integer result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return result;
}

bool is_integral(const Rational& r) { return r.get_den() == 1; }

PeriodSequence PeriodSequence::from_integers(const std::vector<long>& values) {
    std::vector<Rational> c;
    c.reserve(values.size());
    for (long v : values) c.emplace_back(v);
    return PeriodSequence(std::move(c));
}

bool PeriodSequence::is_integral() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const Rational& r) { return fano::is_integral(r); });
}

unsigned DOperator::order() const {
    unsigned r = 0;
    for (const auto& t : terms) r = std::max(r, t.d_power);
    return r;
}

void DOperator::validate() const {
    if (terms.empty()) throw std::invalid_argument("operator has no terms");
    for (const auto& t : terms)
        if (t.coeff == 0) throw std::invalid_argument("operator term with zero coefficient");
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j)
            if (terms[i].d_power == terms[j].d_power && terms[i].t_power == terms[j].t_power)
                throw std::invalid_argument("operator has repeated exponent pair");
    if (order() < 1) throw std::invalid_argument("operator order must be at least 1");
}

void LaurentPolynomial::add_term(const std::vector<std::int64_t>& exponents, const Rational& c) {
    if (static_cast<int>(exponents.size()) != dims)
        throw std::invalid_argument("exponent vector length does not match dims");
    if (c == 0) return;
    auto it = terms.find(exponents);
    if (it == terms.end()) {
        terms.emplace(exponents, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

namespace {

template <typename Iter, typename Fn>
std::string join_list(Iter begin, Iter end, bool spaced, Fn&& render) {
    std::string sep = spaced ? ", " : ",";
    std::string out = "[";
    for (Iter it = begin; it != end; ++it) {
        if (it != begin) out += sep;
        out += render(*it);
    }
    out += "]";
    return out;
}

}  // namespace

std::string format_integer_list(const std::vector<Integer>& values, bool spaced) {
    return join_list(values.begin(), values.end(), spaced,
                     [](const Integer& v) { return v.get_str(); });
}

std::string format_period(const PeriodSequence& seq, bool spaced) {
    return join_list(seq.coeffs.begin(), seq.coeffs.end(), spaced,
                     [](const Rational& v) { return to_string(v); });
}

std::string format_exponent_pairs(const DOperator& op, bool spaced) {
    return join_list(op.terms.begin(), op.terms.end(), spaced, [&](const OperatorTerm& t) {
        std::string sep = spaced ? ", " : ",";
        return "[" + std::to_string(t.d_power) + sep + std::to_string(t.t_power) + "]";
    });
}

std::string format_coefficient_list(const DOperator& op, bool spaced) {
    return join_list(op.terms.begin(), op.terms.end(), spaced,
                     [](const OperatorTerm& t) { return t.coeff.get_str(); });
}

}  // namespace fano
