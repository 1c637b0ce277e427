#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when a rational operation would divide by zero.
struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("rational division by zero") {}
};

/// Canonical rational p/q: lowest terms, positive denominator.
/// Throws DivisionByZero when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Exact division; throws DivisionByZero instead of trapping in GMP.
Rational div_checked(const Rational& a, const Rational& b);

/// Parses "p" or "p/q" (optional sign, arbitrary precision).
Rational rational_from_string(const std::string& text);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// base^exp with the convention 0^0 = 1.
Integer int_pow(const Integer& base, unsigned long exp);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

bool is_integral(const Rational& r);

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Truncated coefficient list c_0..c_M of a regularized quantum period.
///
/// The series these sequences truncate has no linear term, so the index-1
/// coefficient is zero even when the stored truncation ends at index 0.
/// Database records additionally store non-negative integers only; that is
/// enforced at parse time, not here, because intermediate computations
/// (expansion, scaled seeds) legitimately produce other rationals.
struct PeriodSequence {
    std::vector<Rational> coeffs;

    PeriodSequence() = default;
    explicit PeriodSequence(std::vector<Rational> c) : coeffs(std::move(c)) {}

    static PeriodSequence from_integers(const std::vector<long>& values);

    /// Largest stored index M (-1 when empty).
    long max_index() const { return static_cast<long>(coeffs.size()) - 1; }

    bool is_integral() const;

    bool operator==(const PeriodSequence& other) const { return coeffs == other.coeffs; }
    bool operator!=(const PeriodSequence& other) const { return !(*this == other); }
};

/// One monomial l * t^a * D^b of a differential operator in D-form,
/// where D = t d/dt.
struct OperatorTerm {
    Integer coeff;     // nonzero
    unsigned d_power;  // exponent of D
    unsigned t_power;  // exponent of t

    bool operator==(const OperatorTerm& other) const {
        return coeff == other.coeff && d_power == other.d_power && t_power == other.t_power;
    }
};

/// Differential operator in D-form with integer coefficients.
///
/// Terms carry distinct (d_power, t_power) pairs and the order (max d_power)
/// is at least 1. Term order is preserved as constructed; the canonical
/// (normalized) form sorts terms by descending (d_power, t_power), clears the
/// coefficient content, and makes the lexicographically maximal term positive
/// (see normalize() in recurrence.hpp).
struct DOperator {
    std::vector<OperatorTerm> terms;

    unsigned order() const;

    /// Checks structural invariants; throws std::invalid_argument on failure.
    void validate() const;

    bool operator==(const DOperator& other) const { return terms == other.terms; }
    bool operator!=(const DOperator& other) const { return !(*this == other); }
};

/// One database entry: a period sequence with naming and operator metadata.
struct FanoRecord {
    long id = 0;                       // positive
    std::vector<std::string> names;    // non-empty
    PeriodSequence period;
    std::optional<DOperator> op;
    std::optional<bool> pf_proven;     // present iff op present
    std::optional<std::string> notes;
    std::optional<long> duplicate;     // id of another entry in the same database

    bool operator==(const FanoRecord& other) const = default;
};

/// Finitely supported map from integer exponent vectors to nonzero rationals.
struct LaurentPolynomial {
    int dims = 0;
    std::map<std::vector<std::int64_t>, Rational> terms;

    explicit LaurentPolynomial(int d = 0) : dims(d) {}

    /// Adds c * x^exponents, merging with an existing term and dropping zeros.
    void add_term(const std::vector<std::int64_t>& exponents, const Rational& c);

    bool operator==(const LaurentPolynomial& other) const {
        return dims == other.dims && terms == other.terms;
    }
};

// ---------------------------------------------------------------------------
// Shared rendering helpers (database canon uses ", ", compact canon uses ",")
// ---------------------------------------------------------------------------

std::string format_integer_list(const std::vector<Integer>& values, bool spaced);
std::string format_period(const PeriodSequence& seq, bool spaced);
std::string format_exponent_pairs(const DOperator& op, bool spaced);
std::string format_coefficient_list(const DOperator& op, bool spaced);

}  // namespace fano
