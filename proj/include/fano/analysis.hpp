#pragma once

#include "fano/core.hpp"
#include "fano/numberfield.hpp"
#include "fano/polynomial.hpp"

namespace fano {

/// The operator rewritten as sum a_i(t) (d/dt)^i with integer polynomial
/// coefficients of overall unit content; a_r != 0 and r >= 1.
struct DiffForm {
    std::vector<Polynomial> coeffs;  // index i holds a_i

    unsigned order() const { return static_cast<unsigned>(coeffs.size()) - 1; }
    const Polynomial& leading() const { return coeffs.back(); }
};

/// Rewrites t^n D^m using D^m = sum_j S(m,j) t^j (d/dt)^j with Stirling
/// numbers of the second kind.
DiffForm to_diff_form(const DOperator& op);

struct SingularPoint {
    enum class Kind { finite_rational, finite_algebraic, infinity };
    Kind kind = Kind::infinity;
    Rational value;       // finite_rational only
    Polynomial min_poly;  // finite_algebraic only: irreducible, degree >= 2
    int multiplicity = 0;  // multiplicity in the leading coefficient

    static SingularPoint rational(const Rational& v, int mult);
    static SingularPoint algebraic(Polynomial poly, int mult);
    static SingularPoint at_infinity();

    std::string str() const;
};

/// Candidate singular points: the irreducible factors of the leading
/// coefficient over Q (with multiplicities), plus infinity, in canonical
/// order (rational values ascending, then algebraic factors by degree and
/// coefficients, then infinity). Apparent and ordinary points stay listed;
/// they simply contribute zero ramification.
std::vector<SingularPoint> singular_points(const DiffForm& df);

struct FuchsCertificate {
    bool fuchsian = false;
    std::vector<std::pair<SingularPoint, bool>> points;  // per-point pass/fail
};

/// Classical regularity bounds: at a finite factor pi, ord(a_i) >=
/// ord(a_r) - (r - i); at infinity, deg a_i + (r - i) <= deg a_r.
FuchsCertificate is_fuchsian(const DiffForm& df);

struct NotFuchsianError : std::runtime_error {
    explicit NotFuchsianError(const std::string& where)
        : std::runtime_error("operator is not Fuchsian at " + where) {}
};

/// Indicial polynomial in the local exponent at a rational point or at
/// infinity (local parameter 1/t there). Throws NotFuchsianError when the
/// point is irregular and std::invalid_argument for algebraic points (see
/// indicial_polynomial_nf).
Polynomial indicial_polynomial(const DiffForm& df, const SingularPoint& point);

/// Indicial polynomial at an algebraic point, with coefficients in
/// Q[x]/(min_poly); entry j is the lambda^j coefficient.
std::vector<NFElem> indicial_polynomial_nf(const DiffForm& df, const SingularPoint& point,
                                           const std::shared_ptr<const NumberField>& field);

/// Dimension of the space of local solutions meromorphic at the point:
/// integer indicial exponents whose Frobenius series avoid logarithms.
int invariant_dimension(const DiffForm& df, const SingularPoint& point,
                        int extra_truncation = 0);

struct ExponentInfo {
    enum class Kind { integer, rational_noninteger, algebraic };
    Kind kind = Kind::integer;
    Rational value;        // rational kinds only
    int multiplicity = 1;  // for algebraic: residual indicial degree
};

struct PointReport {
    SingularPoint point;
    std::vector<ExponentInfo> exponents;
    int invariant_dim = 0;
    // (rank - invariant_dim), counted once per conjugate root of the factor
    long contribution = 0;
};

struct RamificationReport {
    unsigned rank = 0;
    std::vector<PointReport> points;  // computed points, canonical order
    long rf = 0;
    long defect = 0;
    bool extremal = false;
    bool complete = true;
    std::string incompleteness_reason;
    std::vector<std::string> warnings;
};

struct RamificationOptions {
    // algebraic factors above this degree are skipped and the report marked
    // partial, mirroring how expensive splitting-field work is declined
    int max_factor_degree = 8;
    int extra_truncation = 0;
    // when the caller attests the solution local system is irreducible and
    // non-trivial, a negative defect is a hard error instead of a warning
    bool attest_irreducible = false;
};

/// Full ramification data of the operator's solution local system.
/// Throws NotFuchsianError when any computed point is irregular.
RamificationReport ramification_data(const DOperator& op, const RamificationOptions& options = {});

long ramification_defect(const DOperator& op, const RamificationOptions& options = {});

}  // namespace fano
