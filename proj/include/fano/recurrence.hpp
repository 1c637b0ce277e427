#pragma once

#include "fano/core.hpp"

namespace fano {

/// The linear relation collected at t^e: sum of weight * c_index over the
/// returned pairs equals zero for any sequence annihilated by the operator.
struct RelationTerm {
    long index;
    Rational weight;
};

/// Thrown by expand() when some coefficient weight vanishes and the relation
/// is inconsistent with the values computed so far.
struct ObstructedExpansion : std::runtime_error {
    long index;
    explicit ObstructedExpansion(long e)
        : std::runtime_error("expansion obstructed at index " + std::to_string(e)), index(e) {}
};

/// Thrown by expand() when some coefficient is unconstrained by the operator
/// and must be supplied as an additional seed.
struct UnderdeterminedExpansion : std::runtime_error {
    long index;
    explicit UnderdeterminedExpansion(long e)
        : std::runtime_error("coefficient " + std::to_string(e) + " requires a seed"), index(e) {}
};

/// Thrown by expand() in strict-integrality mode when a computed coefficient
/// is not an integer.
struct NonIntegralCoefficient : std::runtime_error {
    long index;
    explicit NonIntegralCoefficient(long e)
        : std::runtime_error("coefficient " + std::to_string(e) + " is not an integer"), index(e) {}
};

/// Expands the operator's action on a formal series at exponent e: each term
/// l t^a D^b contributes weight l * (e - a)^b at index e - a. Negative
/// indices are dropped (those coefficients are identically zero) and 0^0 = 1.
/// Pairs are aggregated per index and returned in increasing index order; an
/// aggregated zero weight is kept so the caller can see unconstrained slots.
std::vector<RelationTerm> recurrence_relation(const DOperator& op, long e);

struct ExpandOptions {
    bool strict_integral = false;  // flag non-integer coefficients as errors
};

/// Extends seeds c_0..c_s to c_0..c_count using the operator's recurrence.
/// Preconditions: seeds non-empty, count > s.
PeriodSequence expand(const DOperator& op, const PeriodSequence& seeds, long count,
                      const ExpandOptions& options = {});

struct AnnihilationCheck {
    long verified_range = -1;                      // largest exponent checked
    std::vector<std::pair<long, Rational>> residuals;  // violated exponents

    bool clean() const { return residuals.empty(); }
};

/// Checks the recurrence at every exponent whose referenced coefficients lie
/// within the stored truncation. Index 1 is implicitly zero beyond the
/// truncation (the series has no linear term). Violations are reported as
/// data, never thrown.
AnnihilationCheck annihilates(const DOperator& op, const PeriodSequence& seq);

/// A raw operator term before normalization; coefficients may be rational.
struct RationalTerm {
    Rational coeff;
    unsigned d_power;
    unsigned t_power;
};

/// Canonical form: integer coefficients with unit content, the term with
/// lexicographically maximal (d_power, t_power) positive, terms sorted by
/// descending (d_power, t_power). Duplicated exponent pairs are merged and
/// zero terms dropped; an operator with no terms left is rejected.
DOperator normalize(const std::vector<RationalTerm>& terms);
DOperator normalize(const DOperator& op);

bool is_normalized(const DOperator& op);

/// Coefficientwise product rule for periods of products: the degree-d output
/// coefficient is sum over i+j=d of binomial(d,i) a_i b_j.
/// Precondition: count <= min(max_index(a), max_index(b)).
PeriodSequence product_period(const PeriodSequence& a, const PeriodSequence& b, long count);

}  // namespace fano
