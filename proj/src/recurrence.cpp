#include "fano/recurrence.hpp"

#include <algorithm>
#include <map>

namespace fano {

std::vector<RelationTerm> recurrence_relation(const DOperator& op, long e) {
    if (e < 0) throw std::invalid_argument("exponent must be non-negative");
    std::map<long, Rational> weights;
    for (const auto& term : op.terms) {
        long index = e - static_cast<long>(term.t_power);
        if (index < 0) continue;
        weights[index] += Rational(term.coeff * int_pow(Integer(index), term.d_power));
    }
    std::vector<RelationTerm> out;
    out.reserve(weights.size());
    for (auto& [index, weight] : weights) out.push_back({index, weight});
    return out;
}

namespace {

unsigned min_t_power(const DOperator& op) {
    unsigned n = op.terms.front().t_power;
    for (const auto& t : op.terms) n = std::min(n, t.t_power);
    return n;
}

unsigned max_t_power(const DOperator& op) {
    unsigned n = op.terms.front().t_power;
    for (const auto& t : op.terms) n = std::max(n, t.t_power);
    return n;
}

// Coefficient of c_e in the relation collected at t^(e + shift), where shift
// is the minimal t-power: the indicial weight that pins c_e during expansion.
Rational leading_weight(const DOperator& op, unsigned shift, long e) {
    Rational w = 0;
    for (const auto& t : op.terms)
        if (t.t_power == shift) w += Rational(t.coeff * int_pow(Integer(e), t.d_power));
    return w;
}

}  // namespace

PeriodSequence expand(const DOperator& op, const PeriodSequence& seeds, long count,
                      const ExpandOptions& options) {
    op.validate();
    if (seeds.coeffs.empty()) throw std::invalid_argument("expand requires at least one seed");
    long s = seeds.max_index();
    if (count <= s) throw std::invalid_argument("expand target must exceed the seed range");

    unsigned shift = min_t_power(op);
    std::vector<Rational> c = seeds.coeffs;
    c.reserve(static_cast<std::size_t>(count) + 1);

    for (long e = s + 1; e <= count; ++e) {
        // Relation collected at t^(e + shift); all other referenced indices
        // are strictly below e.
        long collected = e + static_cast<long>(shift);
        Rational rest = 0;
        for (const auto& term : op.terms) {
            if (term.t_power == shift) continue;
            long index = collected - static_cast<long>(term.t_power);
            if (index < 0) continue;
            rest += Rational(term.coeff * int_pow(Integer(index), term.d_power)) * c[index];
        }
        Rational head = leading_weight(op, shift, e);
        if (head == 0) {
            if (rest == 0) throw UnderdeterminedExpansion(e);
            throw ObstructedExpansion(e);
        }
        Rational value = div_checked(-rest, head);
        if (options.strict_integral && !is_integral(value)) throw NonIntegralCoefficient(e);
        c.push_back(value);
    }
    return PeriodSequence(std::move(c));
}

AnnihilationCheck annihilates(const DOperator& op, const PeriodSequence& seq) {
    op.validate();
    AnnihilationCheck result;
    long m = seq.max_index();
    long limit = m + static_cast<long>(max_t_power(op)) + 2;

    for (long e = 0; e <= limit; ++e) {
        auto relation = recurrence_relation(op, e);
        bool checkable = true;
        Rational value = 0;
        for (const auto& term : relation) {
            if (term.index <= m) {
                value += term.weight * seq.coeffs[term.index];
            } else if (term.index == 1) {
                // c_1 = 0 by the shape of the series, even when not stored.
            } else {
                checkable = false;
                break;
            }
        }
        if (!checkable) break;
        result.verified_range = e;
        if (value != 0) result.residuals.emplace_back(e, value);
    }
    return result;
}

DOperator normalize(const std::vector<RationalTerm>& terms) {
    // Merge duplicated exponent pairs, dropping anything that cancels.
    std::map<std::pair<unsigned, unsigned>, Rational> merged;
    for (const auto& t : terms) merged[{t.d_power, t.t_power}] += t.coeff;
    for (auto it = merged.begin(); it != merged.end();)
        it = (it->second == 0) ? merged.erase(it) : std::next(it);
    if (merged.empty()) throw std::invalid_argument("normalize: operator has no terms");

    Integer denominator_lcm = 1;
    for (const auto& [key, coeff] : merged)
        mpz_lcm(denominator_lcm.get_mpz_t(), denominator_lcm.get_mpz_t(),
                coeff.get_den().get_mpz_t());

    Integer content = 0;
    std::map<std::pair<unsigned, unsigned>, Integer> scaled;
    for (const auto& [key, coeff] : merged) {
        Integer l = coeff.get_num() * (denominator_lcm / coeff.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), l.get_mpz_t());
        scaled.emplace(key, std::move(l));
    }

    // Sign: the lexicographically maximal (d_power, t_power) term is positive.
    const Integer& lead = scaled.rbegin()->second;
    Integer divisor = (lead < 0) ? Integer(-content) : content;

    DOperator op;
    for (auto it = scaled.rbegin(); it != scaled.rend(); ++it)
        op.terms.push_back({it->second / divisor, it->first.first, it->first.second});
    op.validate();
    return op;
}

DOperator normalize(const DOperator& op) {
    std::vector<RationalTerm> terms;
    terms.reserve(op.terms.size());
    for (const auto& t : op.terms) terms.push_back({Rational(t.coeff), t.d_power, t.t_power});
    return normalize(terms);
}

bool is_normalized(const DOperator& op) {
    try {
        return normalize(op) == op;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

PeriodSequence product_period(const PeriodSequence& a, const PeriodSequence& b, long count) {
    if (count < 0) throw std::invalid_argument("product_period: negative count");
    if (count > a.max_index() || count > b.max_index())
        throw std::invalid_argument("product_period: count exceeds a factor's truncation");
    std::vector<Rational> c(static_cast<std::size_t>(count) + 1);
    for (long d = 0; d <= count; ++d) {
        Rational sum = 0;
        for (long i = 0; i <= d; ++i)
            sum += Rational(binomial(d, i)) * a.coeffs[i] * b.coeffs[d - i];
        c[d] = sum;
    }
    return PeriodSequence(std::move(c));
}

}  // namespace fano
