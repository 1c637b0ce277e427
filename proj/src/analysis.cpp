#include "fano/analysis.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace fano {

// ---------------------------------------------------------------------------
// D-form to derivative form
// ---------------------------------------------------------------------------

namespace {

// Stirling numbers of the second kind, rows 0..m_max.
std::vector<std::vector<Integer>> stirling2(unsigned m_max) {
    std::vector<std::vector<Integer>> s(m_max + 1);
    s[0] = {Integer(1)};
    for (unsigned m = 1; m <= m_max; ++m) {
        s[m].assign(m + 1, Integer(0));
        for (unsigned j = 1; j <= m; ++j) {
            Integer left = (j < m) ? s[m - 1][j] * Integer(static_cast<long>(j)) : Integer(0);
            s[m][j] = left + s[m - 1][j - 1];
        }
    }
    return s;
}

}  // namespace

DiffForm to_diff_form(const DOperator& op) {
    op.validate();
    unsigned r = op.order();
    auto s2 = stirling2(r);

    std::vector<Polynomial> a(r + 1);
    for (const auto& term : op.terms) {
        unsigned j_low = term.d_power == 0 ? 0u : 1u;
        for (unsigned j = j_low; j <= term.d_power; ++j) {
            const Integer& s = s2[term.d_power][j];
            if (s == 0) continue;
            a[j] = a[j] + Polynomial::monomial(Rational(term.coeff * s), term.t_power + j);
        }
    }

    Integer content = 0;
    for (const auto& poly : a)
        for (const auto& c : poly.coeffs())
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num().get_mpz_t());
    DiffForm df;
    df.coeffs.reserve(a.size());
    for (auto& poly : a) df.coeffs.push_back(poly * make_rational(1, content));
    if (df.coeffs.back().is_zero()) throw std::logic_error("vanishing leading coefficient");
    return df;
}

// ---------------------------------------------------------------------------
// Singular points and the Fuchs criterion
// ---------------------------------------------------------------------------

SingularPoint SingularPoint::rational(const Rational& v, int mult) {
    SingularPoint p;
    p.kind = Kind::finite_rational;
    p.value = v;
    p.multiplicity = mult;
    return p;
}

SingularPoint SingularPoint::algebraic(Polynomial poly, int mult) {
    SingularPoint p;
    p.kind = Kind::finite_algebraic;
    p.min_poly = std::move(poly);
    p.multiplicity = mult;
    return p;
}

SingularPoint SingularPoint::at_infinity() { return SingularPoint{}; }

std::string SingularPoint::str() const {
    switch (kind) {
        case Kind::finite_rational: return "t = " + to_string(value);
        case Kind::finite_algebraic: return "root of " + min_poly.str();
        case Kind::infinity: return "t = infinity";
    }
    return "?";
}

std::vector<SingularPoint> singular_points(const DiffForm& df) {
    std::vector<SingularPoint> rational_points;
    std::vector<SingularPoint> algebraic_points;
    for (const auto& factor : factor_rational(df.leading())) {
        if (factor.poly.degree() == 1) {
            Rational root = div_checked(-factor.poly.coeff(0), factor.poly.coeff(1));
            rational_points.push_back(SingularPoint::rational(root, factor.multiplicity));
        } else {
            algebraic_points.push_back(
                SingularPoint::algebraic(factor.poly, factor.multiplicity));
        }
    }
    std::sort(rational_points.begin(), rational_points.end(),
              [](const SingularPoint& a, const SingularPoint& b) { return a.value < b.value; });
    std::vector<SingularPoint> out = std::move(rational_points);
    out.insert(out.end(), algebraic_points.begin(), algebraic_points.end());
    out.push_back(SingularPoint::at_infinity());
    return out;
}

namespace {

// Multiplicity of an irreducible factor; -1 stands for the zero polynomial.
int factor_multiplicity(const Polynomial& poly, const Polynomial& factor) {
    if (poly.is_zero()) return -1;
    int count = 0;
    Polynomial work = poly;
    while (true) {
        auto [q, rem] = divmod(work, factor);
        if (!rem.is_zero()) return count;
        work = std::move(q);
        ++count;
    }
}

bool fuchsian_at(const DiffForm& df, const SingularPoint& point) {
    long r = df.order();
    if (point.kind == SingularPoint::Kind::infinity) {
        long lead_deg = df.leading().degree();
        for (long i = 0; i < r; ++i) {
            if (df.coeffs[i].is_zero()) continue;
            if (df.coeffs[i].degree() + (r - i) > lead_deg) return false;
        }
        return true;
    }
    Polynomial factor = point.kind == SingularPoint::Kind::finite_rational
                            ? Polynomial({-point.value, Rational(1)})
                            : point.min_poly;
    int lead_ord = factor_multiplicity(df.leading(), factor);
    for (long i = 0; i < r; ++i) {
        int ord = factor_multiplicity(df.coeffs[i], factor);
        if (ord < 0) continue;
        if (ord < lead_ord - (r - i)) return false;
    }
    return true;
}

}  // namespace

FuchsCertificate is_fuchsian(const DiffForm& df) {
    FuchsCertificate cert;
    cert.fuchsian = true;
    for (const auto& point : singular_points(df)) {
        bool ok = fuchsian_at(df, point);
        cert.fuchsian = cert.fuchsian && ok;
        cert.points.emplace_back(point, ok);
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Local theta form: the operator as sum_q tau^q P_q(theta) in the local
// parameter tau, theta = tau d/dtau. P_0 is the indicial polynomial and the
// Frobenius recurrence for series sum u_j tau^(lambda0 + j) reads
//   P_0(lambda0 + j) u_j = - sum_{q >= 1} P_q(lambda0 + j - q) u_{j-q}.
// The same construction runs over Q and over a number field.
// ---------------------------------------------------------------------------

namespace {

inline bool elem_zero(const Rational& a) { return a == 0; }
inline bool elem_zero(const NFElem& a) { return a.is_zero(); }
inline Rational elem_div(const Rational& a, const Rational& b) { return div_checked(a, b); }
inline NFElem elem_div(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

template <class F>
struct FieldCtx {
    F zero;
    F one;
    std::function<F(const Rational&)> embed;
};

FieldCtx<Rational> rational_ctx() {
    return {Rational(0), Rational(1), [](const Rational& r) { return r; }};
}

FieldCtx<NFElem> nf_ctx(const std::shared_ptr<const NumberField>& field) {
    return {NFElem::from_rational(field, 0), NFElem::from_rational(field, 1),
            [field](const Rational& r) { return NFElem::from_rational(field, r); }};
}

template <class F>
struct ThetaLocal {
    std::vector<std::vector<F>> P;  // P[q][j] = coefficient of theta^j in P_q
    unsigned order = 0;
};

template <class F>
long vec_degree(const std::vector<F>& v) {
    for (long i = static_cast<long>(v.size()) - 1; i >= 0; --i)
        if (!elem_zero(v[i])) return i;
    return -1;
}

template <class F>
F eval_vec(const std::vector<F>& v, const F& x, const FieldCtx<F>& ctx) {
    F acc = ctx.zero;
    for (auto it = v.rbegin(); it != v.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// theta, theta +- 1, ...: ladder[i] = theta (theta - 1) ... (theta - i + 1)
// when falling, theta (theta + 1) ... (theta + i - 1) when rising.
template <class F>
std::vector<std::vector<F>> theta_ladder(unsigned r, bool rising, const FieldCtx<F>& ctx) {
    std::vector<std::vector<F>> out(r + 1);
    out[0] = {ctx.one};
    for (unsigned i = 1; i <= r; ++i) {
        long offset = rising ? static_cast<long>(i - 1) : -static_cast<long>(i - 1);
        F off = ctx.embed(Rational(offset));
        const auto& prev = out[i - 1];
        std::vector<F> next(prev.size() + 1, ctx.zero);
        for (std::size_t j = 0; j < prev.size(); ++j) {
            next[j + 1] = next[j + 1] + prev[j];
            next[j] = next[j] + prev[j] * off;
        }
        out[i] = std::move(next);
    }
    return out;
}

// Taylor shift over F: coefficients of p(x + s) for p given over Q.
template <class F>
std::vector<F> shifted_coeffs(const Polynomial& p, const F& s, const FieldCtx<F>& ctx) {
    std::vector<F> work;
    work.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) work.push_back(ctx.embed(c));
    std::vector<F> out(work.size(), ctx.zero);
    for (std::size_t k = 0; k < work.size(); ++k) {
        for (std::size_t i = work.size() - 1; i >= k + 1; --i)
            work[i - 1] = work[i - 1] + work[i] * s;
        out[k] = work[k];
    }
    return out;
}

template <class F>
ThetaLocal<F> theta_local_finite(const DiffForm& df, const F& s, const FieldCtx<F>& ctx) {
    unsigned r = df.order();
    auto falling = theta_ladder<F>(r, false, ctx);

    std::vector<std::vector<F>> b(r + 1);
    std::vector<long> val(r + 1, -1);
    long g = std::numeric_limits<long>::min();
    for (unsigned i = 0; i <= r; ++i) {
        if (df.coeffs[i].is_zero()) continue;
        b[i] = shifted_coeffs(df.coeffs[i], s, ctx);
        for (std::size_t q = 0; q < b[i].size(); ++q)
            if (!elem_zero(b[i][q])) {
                val[i] = static_cast<long>(q);
                break;
            }
        g = std::max(g, static_cast<long>(i) - val[i]);
    }

    ThetaLocal<F> local;
    local.order = r;
    long max_q = 0;
    for (unsigned i = 0; i <= r; ++i)
        if (val[i] >= 0) max_q = std::max(max_q, g - static_cast<long>(i) + vec_degree(b[i]));
    local.P.assign(max_q + 1, {});
    for (unsigned i = 0; i <= r; ++i) {
        if (val[i] < 0) continue;
        for (long q = 0; q <= max_q; ++q) {
            long src = q - g + static_cast<long>(i);
            if (src < 0 || src >= static_cast<long>(b[i].size())) continue;
            const F& scale = b[i][src];
            if (elem_zero(scale)) continue;
            auto& dst = local.P[q];
            if (dst.size() < falling[i].size()) dst.resize(falling[i].size(), ctx.zero);
            for (std::size_t j = 0; j < falling[i].size(); ++j)
                dst[j] = dst[j] + falling[i][j] * scale;
        }
    }
    return local;
}

ThetaLocal<Rational> theta_local_infinity(const DiffForm& df) {
    auto ctx = rational_ctx();
    unsigned r = df.order();
    auto rising = theta_ladder<Rational>(r, true, ctx);

    long g = std::numeric_limits<long>::min();
    for (unsigned i = 0; i <= r; ++i) {
        if (df.coeffs[i].is_zero()) continue;
        g = std::max(g, df.coeffs[i].degree() - static_cast<long>(i));
    }
    long max_q = 0;
    for (unsigned i = 0; i <= r; ++i)
        if (!df.coeffs[i].is_zero())
            max_q = std::max(max_q, g - (df.coeffs[i].degree() - static_cast<long>(i)) +
                                        df.coeffs[i].degree());

    ThetaLocal<Rational> local;
    local.order = r;
    local.P.assign(max_q + 1, {});
    for (unsigned i = 0; i <= r; ++i) {
        if (df.coeffs[i].is_zero()) continue;
        Polynomial rev = df.coeffs[i].reversed();
        long shift = g - (df.coeffs[i].degree() - static_cast<long>(i));
        Rational sign = (i % 2 == 0) ? Rational(1) : Rational(-1);
        for (long q = 0; q <= max_q; ++q) {
            long src = q - shift;
            if (src < 0 || src > rev.degree()) continue;
            Rational scale = sign * rev.coeff(src);
            if (scale == 0) continue;
            auto& dst = local.P[q];
            if (dst.size() < rising[i].size()) dst.resize(rising[i].size(), Rational(0));
            for (std::size_t j = 0; j < rising[i].size(); ++j)
                dst[j] += rising[i][j] * scale;
        }
    }
    return local;
}

// Frobenius series attempt: counts the distinct integer exponents whose
// series solution needs no logarithm. Free coefficients at repeated exponent
// levels are set to zero; they correspond to the higher exponent's own
// solution and do not change the count.
template <class F>
int count_log_free(const ThetaLocal<F>& local, const std::vector<long>& integer_roots,
                   const FieldCtx<F>& ctx, int extra_truncation) {
    if (integer_roots.empty()) return 0;
    std::vector<long> roots = integer_roots;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    long span = roots.back() - roots.front();
    long steps = span + static_cast<long>(local.order) + 16 + extra_truncation;

    auto chi = [&](long lambda) {
        return eval_vec(local.P[0], ctx.embed(Rational(lambda)), ctx);
    };

    int count = 0;
    for (long root : roots) {
        bool log_free = true;
        std::vector<F> u{ctx.one};
        for (long j = 1; j <= steps && log_free; ++j) {
            F rhs = ctx.zero;
            long q_max = std::min<long>(j, static_cast<long>(local.P.size()) - 1);
            for (long q = 1; q <= q_max; ++q) {
                if (local.P[q].empty()) continue;
                F weight = eval_vec(local.P[q], ctx.embed(Rational(root + j - q)), ctx);
                if (elem_zero(weight)) continue;
                rhs = rhs + weight * u[j - q];
            }
            F lhs = chi(root + j);
            if (!elem_zero(lhs)) {
                u.push_back(elem_div(-rhs, lhs));
            } else if (!elem_zero(rhs)) {
                log_free = false;
            } else {
                u.push_back(ctx.zero);
            }
        }
        if (log_free) ++count;
    }
    return count;
}

Polynomial poly_from_vec(const std::vector<Rational>& v) { return Polynomial(v); }

// Rational roots of a polynomial with number-field coefficients: the common
// rational roots of the coordinate polynomials, i.e. of their gcd.
std::vector<std::pair<Rational, int>> nf_rational_roots(const std::vector<NFElem>& chi) {
    long field_degree = 0;
    for (const auto& c : chi)
        if (c.field()) field_degree = c.field()->degree();
    Polynomial g;
    for (long w = 0; w < field_degree; ++w) {
        std::vector<Rational> coord(chi.size());
        for (std::size_t j = 0; j < chi.size(); ++j) coord[j] = chi[j].rep().coeff(w);
        Polynomial cw(coord);
        if (cw.is_zero()) continue;
        g = g.is_zero() ? cw : gcd(g, cw);
    }
    if (g.is_zero() || g.degree() < 1) return {};
    return rational_roots(g);
}

struct LocalAnalysis {
    std::vector<ExponentInfo> exponents;
    int invariant_dim = 0;
    long indicial_degree = 0;
};

std::vector<ExponentInfo> classify_rational_roots(
    const std::vector<std::pair<Rational, int>>& roots, long total_degree) {
    std::vector<ExponentInfo> out;
    long accounted = 0;
    for (const auto& [value, mult] : roots) {
        ExponentInfo info;
        info.kind = is_integral(value) ? ExponentInfo::Kind::integer
                                       : ExponentInfo::Kind::rational_noninteger;
        info.value = value;
        info.multiplicity = mult;
        out.push_back(info);
        accounted += mult;
    }
    if (accounted < total_degree) {
        ExponentInfo info;
        info.kind = ExponentInfo::Kind::algebraic;
        info.multiplicity = static_cast<int>(total_degree - accounted);
        out.push_back(info);
    }
    return out;
}

LocalAnalysis analyze_rational_point(const DiffForm& df, const SingularPoint& point,
                                     int extra_truncation) {
    auto ctx = rational_ctx();
    ThetaLocal<Rational> local = point.kind == SingularPoint::Kind::infinity
                                     ? theta_local_infinity(df)
                                     : theta_local_finite<Rational>(df, point.value, ctx);
    LocalAnalysis out;
    out.indicial_degree = vec_degree(local.P[0]);
    if (out.indicial_degree != static_cast<long>(df.order()))
        throw NotFuchsianError(point.str());

    Polynomial chi = poly_from_vec(local.P[0]);
    auto roots = rational_roots(chi);
    out.exponents = classify_rational_roots(roots, chi.degree());

    std::vector<long> integer_roots;
    for (const auto& [value, mult] : roots)
        if (is_integral(value)) integer_roots.push_back(value.get_num().get_si());
    out.invariant_dim = count_log_free(local, integer_roots, ctx, extra_truncation);
    return out;
}

LocalAnalysis analyze_algebraic_point(const DiffForm& df, const SingularPoint& point,
                                      int extra_truncation) {
    auto field = std::make_shared<const NumberField>(point.min_poly.monic());
    auto ctx = nf_ctx(field);
    NFElem generator = NFElem::generator(field);
    ThetaLocal<NFElem> local = theta_local_finite<NFElem>(df, generator, ctx);

    LocalAnalysis out;
    out.indicial_degree = vec_degree(local.P[0]);
    if (out.indicial_degree != static_cast<long>(df.order()))
        throw NotFuchsianError(point.str());

    auto roots = nf_rational_roots(local.P[0]);
    out.exponents = classify_rational_roots(roots, out.indicial_degree);

    std::vector<long> integer_roots;
    for (const auto& [value, mult] : roots)
        if (is_integral(value)) integer_roots.push_back(value.get_num().get_si());
    out.invariant_dim = count_log_free(local, integer_roots, ctx, extra_truncation);
    return out;
}

}  // namespace

Polynomial indicial_polynomial(const DiffForm& df, const SingularPoint& point) {
    if (point.kind == SingularPoint::Kind::finite_algebraic)
        throw std::invalid_argument("use indicial_polynomial_nf for algebraic points");
    if (!fuchsian_at(df, point)) throw NotFuchsianError(point.str());
    auto ctx = rational_ctx();
    ThetaLocal<Rational> local = point.kind == SingularPoint::Kind::infinity
                                     ? theta_local_infinity(df)
                                     : theta_local_finite<Rational>(df, point.value, ctx);
    return poly_from_vec(local.P[0]);
}

std::vector<NFElem> indicial_polynomial_nf(const DiffForm& df, const SingularPoint& point,
                                           const std::shared_ptr<const NumberField>& field) {
    if (point.kind != SingularPoint::Kind::finite_algebraic)
        throw std::invalid_argument("indicial_polynomial_nf expects an algebraic point");
    if (!fuchsian_at(df, point)) throw NotFuchsianError(point.str());
    auto ctx = nf_ctx(field);
    auto local = theta_local_finite<NFElem>(df, NFElem::generator(field), ctx);
    return local.P[0];
}

int invariant_dimension(const DiffForm& df, const SingularPoint& point, int extra_truncation) {
    if (!fuchsian_at(df, point)) throw NotFuchsianError(point.str());
    if (point.kind == SingularPoint::Kind::finite_algebraic)
        return analyze_algebraic_point(df, point, extra_truncation).invariant_dim;
    return analyze_rational_point(df, point, extra_truncation).invariant_dim;
}

RamificationReport ramification_data(const DOperator& op, const RamificationOptions& options) {
    DiffForm df = to_diff_form(op);
    RamificationReport report;
    report.rank = df.order();

    for (const auto& point : singular_points(df)) {
        if (!fuchsian_at(df, point)) throw NotFuchsianError(point.str());
        if (point.kind == SingularPoint::Kind::finite_algebraic &&
            point.min_poly.degree() > options.max_factor_degree) {
            report.complete = false;
            report.incompleteness_reason = "skipped algebraic point of degree " +
                                           std::to_string(point.min_poly.degree()) +
                                           " (limit " +
                                           std::to_string(options.max_factor_degree) + ")";
            continue;
        }
        LocalAnalysis local =
            point.kind == SingularPoint::Kind::finite_algebraic
                ? analyze_algebraic_point(df, point, options.extra_truncation)
                : analyze_rational_point(df, point, options.extra_truncation);
        PointReport pr;
        pr.point = point;
        pr.exponents = std::move(local.exponents);
        pr.invariant_dim = local.invariant_dim;
        long conjugates = point.kind == SingularPoint::Kind::finite_algebraic
                              ? point.min_poly.degree()
                              : 1;
        pr.contribution = conjugates * (static_cast<long>(report.rank) - local.invariant_dim);
        if (pr.contribution < 0) throw std::logic_error("invariant dimension exceeds rank");
        report.points.push_back(std::move(pr));
    }

    for (const auto& pr : report.points) report.rf += pr.contribution;
    report.defect = report.rf - 2 * static_cast<long>(report.rank);
    report.extremal = report.defect == 0;
    if (report.defect < 0) {
        std::string message =
            "negative ramification defect: the solution local system is reducible or trivial";
        if (options.attest_irreducible)
            throw std::runtime_error(message + " despite the irreducibility attestation");
        report.warnings.push_back(message);
    }
    return report;
}

long ramification_defect(const DOperator& op, const RamificationOptions& options) {
    return ramification_data(op, options).defect;
}

}  // namespace fano
