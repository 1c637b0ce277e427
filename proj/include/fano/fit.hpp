#pragma once

#include "fano/core.hpp"
#include "fano/recurrence.hpp"

#include <functional>
#include <random>

namespace fano {

struct FitAnsatz {
    unsigned max_d_power = 0;  // R: largest D exponent tried
    unsigned max_t_power = 0;  // S: largest t exponent tried
    bool operator==(const FitAnsatz&) const = default;
};

struct FitResult {
    DOperator op;            // normalized
    long excess_equations;   // equations beyond those needed to pin the solution
    FitAnsatz ansatz;
};

enum class FitFailure {
    nullspace_trivial,
    nullspace_multidimensional,
    insufficient_excess,
};

struct FitOutcome {
    std::optional<FitResult> result;
    FitFailure failure = FitFailure::nullspace_trivial;

    bool ok() const { return result.has_value(); }
};

/// Fits an annihilating operator with support 0 <= d_power <= R,
/// 0 <= t_power <= S by solving the homogeneous linear system with one
/// equation per stored coefficient. Succeeds when the solution space is
/// spanned by the t-power shifts of a single minimal operator (in particular
/// when it is one-dimensional) and the equation count exceeds the pinned rank
/// by at least min_excess. The returned operator is normalized and verified
/// to annihilate the entire input truncation.
FitOutcome fit_operator(const PeriodSequence& seq, unsigned R, unsigned S, long min_excess);

/// Tries ansatz sizes in increasing (R+S, R) order and returns the first
/// success; deterministic.
FitOutcome fit_operator_search(const PeriodSequence& seq, unsigned R_max, unsigned S_max,
                               long min_excess);

/// Supplies moduli for the modular fitting path.
class PrimeSource {
  public:
    virtual ~PrimeSource() = default;
    virtual std::uint64_t next() = 0;
};

/// Uniform random primes in [2^31, 2^32); deterministic for a fixed seed.
class RandomPrimeSource : public PrimeSource {
  public:
    explicit RandomPrimeSource(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t next() override;

  private:
    std::mt19937_64 rng_;
};

/// Same contract and output as fit_operator, computed from reductions modulo
/// a growing set of primes, combined by Chinese remaindering and recovered by
/// rational reconstruction once stable. Unusable primes (dividing a
/// denominator, or disagreeing with the modular consensus) are discarded and
/// replaced transparently. Every candidate is re-verified exactly, and the
/// dense path is the fallback, so the result never depends on luck.
FitOutcome fit_operator_modular(const PeriodSequence& seq, unsigned R, unsigned S,
                                long min_excess, PrimeSource& primes);
FitOutcome fit_operator_modular(const PeriodSequence& seq, unsigned R, unsigned S,
                                long min_excess, std::uint64_t seed = 1);

/// Recovers the unique p/q with p = a*q (mod m), |p|, q <= floor(sqrt(m/2)),
/// q > 0, gcd(p, q) = 1, gcd(q, m) = 1, when it exists.
/// Precondition: 0 <= a < m, m >= 2.
std::optional<Rational> rational_reconstruction(const Integer& a, const Integer& m);

}  // namespace fano
