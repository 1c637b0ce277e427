#include "fano/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace fano {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) {
    return c == 0 ? Polynomial() : Polynomial({c});
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
    if (c == 0) return Polynomial();
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Polynomial::coeff(std::size_t i) const {
    static const Rational zero(0);
    return i < c_.size() ? c_[i] : zero;
}

const Rational& Polynomial::leading() const {
    if (c_.empty()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
    std::vector<Rational> v(c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = -c_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Rational& s) const {
    std::vector<Rational> v(c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c_[i] * s;
    return Polynomial(std::move(v));
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(v));
}

Polynomial Polynomial::shifted(const Rational& a) const {
    // Synthetic Horner: repeatedly divide by (x - (-a)) accumulating remainders.
    std::vector<Rational> work = c_;
    std::vector<Rational> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) {
        for (std::size_t i = work.size() - 1; i >= k + 1; --i) work[i - 1] += work[i] * a;
        out[k] = work[k];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::reversed() const {
    std::vector<Rational> v(c_.rbegin(), c_.rend());
    return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * div_checked(Rational(1), leading());
}

long Polynomial::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<long>(i);
    return -1;
}

std::string Polynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        const Rational& c = coeff(i);
        if (c == 0) continue;
        Rational a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (i == 0) {
            out += to_string(a);
        } else {
            if (a != 1) out += to_string(a) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.degree() < den.degree()) return {Polynomial(), num};
    std::vector<Rational> rem = num.coeffs();
    std::vector<Rational> quot(num.degree() - den.degree() + 1);
    const Rational& lead = den.leading();
    for (long i = num.degree() - den.degree(); i >= 0; --i) {
        Rational q = div_checked(rem[i + den.degree()], lead);
        quot[i] = q;
        if (q == 0) continue;
        for (long j = 0; j <= den.degree(); ++j) rem[i + j] -= q * den.coeff(j);
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.is_zero() ? x : x.monic();
}

std::vector<Integer> primitive_integer_coeffs(const Polynomial& p) {
    if (p.is_zero()) return {};
    Integer den_lcm = 1;
    for (const auto& c : p.coeffs())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> v;
    v.reserve(p.coeffs().size());
    Integer content = 0;
    for (const auto& c : p.coeffs()) {
        v.push_back(c.get_num() * (den_lcm / c.get_den()));
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.back().get_mpz_t());
    }
    if (v.back() < 0) content = -content;
    for (auto& x : v) x /= content;
    return v;
}

// ---------------------------------------------------------------------------
// Factorization over Q: arithmetic mod a small prime
// ---------------------------------------------------------------------------

namespace {

using FpPoly = std::vector<std::uint64_t>;  // degree 0 upward, no trailing zeros

struct Fp {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b % p) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        // p prime, a != 0 mod p
        return pow(a % p, p - 2);
    }
};

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const Fp& F, const FpPoly& a, const FpPoly& b) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    fp_trim(out);
    return out;
}

FpPoly fp_sub(const Fp& F, const FpPoly& a, const FpPoly& b) {
    FpPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    fp_trim(out);
    return out;
}

// Remainder of a modulo b (b nonzero).
FpPoly fp_mod(const Fp& F, FpPoly a, const FpPoly& b) {
    std::uint64_t lead_inv = F.inv(b.back());
    while (a.size() >= b.size()) {
        std::uint64_t q = F.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] = F.sub(a[shift + j], F.mul(q, b[j]));
        fp_trim(a);
        if (a.size() < b.size()) break;
    }
    return a;
}

FpPoly fp_divexact(const Fp& F, FpPoly a, const FpPoly& b) {
    FpPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    std::uint64_t lead_inv = F.inv(b.back());
    while (a.size() >= b.size()) {
        std::uint64_t q = F.mul(a.back(), lead_inv);
        std::size_t shift = a.size() - b.size();
        quot[shift] = q;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] = F.sub(a[shift + j], F.mul(q, b[j]));
        fp_trim(a);
        if (a.size() < b.size()) break;
    }
    fp_trim(quot);
    return quot;
}

FpPoly fp_gcd(const Fp& F, FpPoly a, FpPoly b) {
    while (!b.empty()) {
        FpPoly r = fp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::uint64_t s = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, s);
    }
    return a;
}

FpPoly fp_powmod(const Fp& F, FpPoly base, Integer e, const FpPoly& mod) {
    FpPoly result{1};
    base = fp_mod(F, std::move(base), mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = fp_mod(F, fp_mul(F, result, base), mod);
        base = fp_mod(F, fp_mul(F, base, base), mod);
        e >>= 1;
    }
    return result;
}

FpPoly fp_derivative(const Fp& F, const FpPoly& a) {
    if (a.size() <= 1) return {};
    FpPoly out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = F.mul(a[i], i % F.p);
    fp_trim(out);
    return out;
}

// Distinct-degree then equal-degree (Cantor-Zassenhaus) factorization of a
// squarefree monic polynomial mod an odd prime.
void fp_equal_degree(const Fp& F, const FpPoly& f, std::size_t d, std::mt19937_64& rng,
                     std::vector<FpPoly>& out) {
    std::size_t n = f.size() - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    Integer exponent = (int_pow(Integer(static_cast<unsigned long>(F.p)), d) - 1) / 2;
    while (true) {
        FpPoly r(n, 0);
        for (auto& c : r) c = rng() % F.p;
        fp_trim(r);
        if (r.size() <= 1) continue;
        FpPoly g = fp_gcd(F, r, f);
        if (g.size() > 1 && g.size() <= n) {
            fp_equal_degree(F, g, d, rng, out);
            fp_equal_degree(F, fp_divexact(F, f, g), d, rng, out);
            return;
        }
        FpPoly h = fp_powmod(F, r, exponent, f);
        if (h.empty()) continue;
        h[0] = F.sub(h[0], 1);
        fp_trim(h);
        g = fp_gcd(F, h, f);
        if (g.size() > 1 && g.size() <= n) {
            fp_equal_degree(F, g, d, rng, out);
            fp_equal_degree(F, fp_divexact(F, f, g), d, rng, out);
            return;
        }
    }
}

std::vector<FpPoly> fp_factor_squarefree(const Fp& F, FpPoly f, std::mt19937_64& rng) {
    std::vector<FpPoly> out;
    // make monic
    if (f.back() != 1) {
        std::uint64_t s = F.inv(f.back());
        for (auto& c : f) c = F.mul(c, s);
    }
    FpPoly x{0, 1};
    FpPoly h = x;
    std::size_t d = 0;
    while (f.size() - 1 >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod(F, h, Integer(static_cast<unsigned long>(F.p)), f);
        FpPoly diff = fp_sub(F, h, x);
        FpPoly g = fp_gcd(F, diff, f);
        if (g.size() > 1) {
            fp_equal_degree(F, g, d, rng, out);
            f = fp_divexact(F, f, g);
            h = fp_mod(F, h, f);
        }
    }
    if (f.size() > 1) out.push_back(f);
    return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting of a monic factorization mod p to mod p^k
// ---------------------------------------------------------------------------

using ZPoly = std::vector<Integer>;  // degree 0 upward

void z_trim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly z_mod(const ZPoly& f, const Integer& m, bool symmetric) {
    ZPoly out(f.size());
    Integer half = m / 2;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Integer r;
        mpz_mod(r.get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
        if (symmetric && r > half) r -= m;
        out[i] = r;
    }
    z_trim(out);
    return out;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    z_trim(out);
    return out;
}

ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] += a[i];
        if (i < b.size()) out[i] -= b[i];
    }
    z_trim(out);
    return out;
}

ZPoly z_add(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i < a.size()) out[i] += a[i];
        if (i < b.size()) out[i] += b[i];
    }
    z_trim(out);
    return out;
}

// Division with remainder modulo m by a monic divisor.
std::pair<ZPoly, ZPoly> z_divmod_monic_mod(ZPoly a, const ZPoly& b, const Integer& m) {
    ZPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Integer(0));
    while (a.size() >= b.size() && !a.empty()) {
        Integer q = a.back();
        std::size_t shift = a.size() - b.size();
        quot[shift] = q;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= q * b[j];
        a = z_mod(a, m, false);
        z_trim(a);
        if (a.size() < b.size()) break;
    }
    z_trim(quot);
    return {z_mod(quot, m, false), z_mod(a, m, false)};
}

// Extended gcd of coprime monic-mod-p polynomials: s*g + t*h = 1 mod p.
void fp_bezout(const Fp& F, const FpPoly& g, const FpPoly& h, FpPoly& s, FpPoly& t) {
    FpPoly r0 = g, r1 = h;
    FpPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // r0 = q*r1 + r
        FpPoly q = fp_divexact(F, r0, r1);
        FpPoly r = fp_sub(F, r0, fp_mul(F, q, r1));
        FpPoly s2 = fp_sub(F, s0, fp_mul(F, q, s1));
        FpPoly t2 = fp_sub(F, t0, fp_mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant
    std::uint64_t scale = F.inv(r0[0]);
    for (auto& c : s0) c = F.mul(c, scale);
    for (auto& c : t0) c = F.mul(c, scale);
    s = s0;
    t = t0;
}

ZPoly z_from_fp(const FpPoly& f) {
    ZPoly out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = Integer(static_cast<unsigned long>(f[i]));
    return out;
}

// Lifts f = g*h mod p (all monic, g and h coprime mod p) to mod p^target,
// doubling the modulus each pass (linear updates with fixed Bezout pair).
void hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, const Fp& F, const Integer& p_target) {
    FpPoly gp(g.size()), hp(h.size());
    for (std::size_t i = 0; i < g.size(); ++i) gp[i] = mpz_get_ui(Integer(g[i] % F.p).get_mpz_t());
    for (std::size_t i = 0; i < h.size(); ++i) hp[i] = mpz_get_ui(Integer(h[i] % F.p).get_mpz_t());
    FpPoly sp, tp;
    fp_bezout(F, gp, hp, sp, tp);
    ZPoly s = z_from_fp(sp), t = z_from_fp(tp);

    Integer m(static_cast<unsigned long>(F.p));
    while (m < p_target) {
        Integer m2 = m * m;
        if (m2 > p_target) m2 = p_target;  // p_target is a power of p
        // error e = f - g*h, divisible by m; split e = g*(s*e) + h*(t*e) and
        // move the quotient of s*e by h into the g-update to control degrees
        ZPoly e = z_mod(z_sub(f, z_mul(g, h)), m2, false);
        ZPoly se = z_mod(z_mul(s, e), m2, false);
        ZPoly te = z_mod(z_mul(t, e), m2, false);
        auto [q, dh] = z_divmod_monic_mod(se, h, m2);
        ZPoly dg = z_mod(z_add(te, z_mul(q, g)), m2, false);
        g = z_mod(z_add(g, dg), m2, false);
        h = z_mod(z_add(h, dh), m2, false);
        // refresh Bezout pair: s*g + t*h = 1 mod m2, same quotient trick
        ZPoly err =
            z_mod(z_sub(z_add(z_mul(s, g), z_mul(t, h)), ZPoly{Integer(1)}), m2, false);
        ZPoly serr = z_mod(z_mul(s, err), m2, false);
        ZPoly terr = z_mod(z_mul(t, err), m2, false);
        auto [q2, ds] = z_divmod_monic_mod(serr, h, m2);
        ZPoly dt = z_mod(z_add(terr, z_mul(q2, g)), m2, false);
        s = z_mod(z_sub(s, ds), m2, false);
        t = z_mod(z_sub(t, dt), m2, false);
        m = m2;
    }
}

// Lifts the full list of monic mod-p factors to mod p^target via a product tree.
std::vector<ZPoly> hensel_tree(const ZPoly& f_monic_mod, const std::vector<FpPoly>& factors,
                               const Fp& F, const Integer& p_target) {
    if (factors.size() == 1) return {z_mod(f_monic_mod, p_target, false)};
    std::size_t half = factors.size() / 2;
    std::vector<FpPoly> left(factors.begin(), factors.begin() + half);
    std::vector<FpPoly> right(factors.begin() + half, factors.end());
    FpPoly gp{1}, hp{1};
    for (const auto& x : left) gp = fp_mul(F, gp, x);
    for (const auto& x : right) hp = fp_mul(F, hp, x);
    ZPoly g = z_from_fp(gp), h = z_from_fp(hp);
    hensel_pair(f_monic_mod, g, h, F, p_target);
    auto out = hensel_tree(g, left, F, p_target);
    auto rest = hensel_tree(h, right, F, p_target);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

Polynomial poly_from_z(const ZPoly& f) {
    std::vector<Rational> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = Rational(f[i]);
    return Polynomial(std::move(v));
}

ZPoly z_from_poly_primitive(const Polynomial& p) {
    auto v = primitive_integer_coeffs(p);
    return ZPoly(v.begin(), v.end());
}

// Exact division test over Z for primitive polynomials.
bool z_divides(const ZPoly& f, const ZPoly& g, ZPoly* quotient) {
    // divide f by g over Q, check integrality and zero remainder
    auto [q, r] = divmod(poly_from_z(f), poly_from_z(g));
    if (!r.is_zero()) return false;
    for (const auto& c : q.coeffs())
        if (!is_integral(c)) return false;
    if (quotient) {
        quotient->clear();
        for (const auto& c : q.coeffs()) quotient->push_back(c.get_num());
    }
    return true;
}

Integer z_norm2_sq(const ZPoly& f) {
    Integer s = 0;
    for (const auto& c : f) s += c * c;
    return s;
}

// Squarefree irreducible factorization of a primitive squarefree integer
// polynomial of degree >= 1.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f, std::mt19937_64& rng) {
    if (f.size() == 2) return {f};

    // pick a prime keeping the degree and squarefreeness
    static const std::uint64_t primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31,  37,  41,
                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83,  89,  97,
                                           101, 103, 107, 109, 113, 127, 131, 137, 139, 149};
    const Integer& lc = f.back();
    Fp F{0};
    FpPoly fp;
    bool found = false;
    for (std::uint64_t p : primes) {
        if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
        F.p = p;
        fp.assign(f.size(), 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            Integer r;
            mpz_mod_ui(r.get_mpz_t(), f[i].get_mpz_t(), p);
            fp[i] = mpz_get_ui(r.get_mpz_t());
        }
        fp_trim(fp);
        FpPoly d = fp_derivative(F, fp);
        if (d.empty()) continue;
        FpPoly g = fp_gcd(F, fp, d);
        if (g.size() == 1) {
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("no good factorization prime found");

    auto mod_factors = fp_factor_squarefree(F, fp, rng);
    if (mod_factors.size() == 1) return {f};
    std::sort(mod_factors.begin(), mod_factors.end());

    // Landau-Mignotte style bound on factor coefficients, times leading coeff.
    Integer norm;
    mpz_sqrt(norm.get_mpz_t(), Integer(z_norm2_sq(f) + 1).get_mpz_t());
    norm += 1;
    Integer bound = (Integer(1) << static_cast<unsigned long>(f.size())) * norm * abs(lc) * 2;
    Integer p_target(static_cast<unsigned long>(F.p));
    while (p_target <= bound) p_target *= Integer(static_cast<unsigned long>(F.p));

    // lift against the monic image of f mod p^k
    Integer lc_inv_mod;
    {
        Integer m = p_target;
        if (mpz_invert(lc_inv_mod.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t()) == 0)
            throw std::runtime_error("leading coefficient not invertible");
    }
    ZPoly f_monic(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Integer r;
        mpz_mod(r.get_mpz_t(), Integer(f[i] * lc_inv_mod).get_mpz_t(), p_target.get_mpz_t());
        f_monic[i] = r;
    }
    auto lifted = hensel_tree(f_monic, mod_factors, F, p_target);

    // subset recombination
    std::vector<ZPoly> result;
    ZPoly remaining = f;
    std::vector<ZPoly> pool = lifted;
    std::size_t take = 1;
    while (2 * take <= pool.size()) {
        bool found_factor = false;
        std::vector<std::size_t> idx(take);
        for (std::size_t i = 0; i < take; ++i) idx[i] = i;
        while (true) {
            // leading coefficient attached, symmetric representatives
            ZPoly prod{remaining.back()};
            for (std::size_t i : idx) prod = z_mod(z_mul(prod, pool[i]), p_target, true);
            // primitive part
            Integer content = 0;
            for (const auto& c : prod) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
            ZPoly candidate = prod;
            if (content > 1)
                for (auto& c : candidate) c /= content;
            if (!candidate.empty() && candidate.back() < 0)
                for (auto& c : candidate) c = -c;
            ZPoly quotient;
            if (candidate.size() > 1 && z_divides(remaining, candidate, &quotient)) {
                result.push_back(candidate);
                remaining = quotient;
                std::vector<ZPoly> next_pool;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end())
                        next_pool.push_back(pool[i]);
                pool = std::move(next_pool);
                found_factor = true;
                break;
            }
            // next combination
            long pos = static_cast<long>(take) - 1;
            while (pos >= 0 && idx[pos] == pool.size() - take + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (std::size_t i = pos + 1; i < take; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found_factor) ++take;
    }
    if (remaining.size() > 1) result.push_back(remaining);
    return result;
}

}  // namespace

std::vector<IrreducibleFactor> factor_rational(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    std::vector<IrreducibleFactor> out;
    if (p.degree() == 0) return out;

    ZPoly f = z_from_poly_primitive(p);

    // powers of t first
    std::size_t val = 0;
    while (val < f.size() && f[val] == 0) ++val;
    if (val > 0) {
        out.push_back({Polynomial::monomial(1, 1), static_cast<int>(val)});
        f.erase(f.begin(), f.begin() + val);
    }
    if (f.size() <= 1) {
        std::sort(out.begin(), out.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
            if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
            return a.poly.coeffs() < b.poly.coeffs();
        });
        return out;
    }

    // squarefree decomposition by repeated gcd with the derivative
    Polynomial work = poly_from_z(f);
    std::mt19937_64 rng(0x5eedf00d);
    int multiplicity = 0;
    std::vector<std::pair<Polynomial, int>> squarefree_parts;
    while (work.degree() >= 1) {
        ++multiplicity;
        Polynomial g = gcd(work, work.derivative());
        Polynomial part_with_rest = divmod(work, g).first;  // product of factors with mult >= current
        // factors appearing exactly `multiplicity` times: part / gcd(part, g)
        Polynomial next = g;
        Polynomial exact = divmod(part_with_rest, gcd(part_with_rest, g)).first;
        if (exact.degree() >= 1) squarefree_parts.emplace_back(exact, multiplicity);
        work = next;
    }

    for (auto& [part, mult] : squarefree_parts) {
        ZPoly zf = z_from_poly_primitive(part);
        for (auto& irreducible : factor_squarefree_z(zf, rng))
            out.push_back({poly_from_z(irreducible), mult});
    }
    std::sort(out.begin(), out.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        return a.poly.coeffs() < b.poly.coeffs();
    });
    return out;
}

std::vector<std::pair<Rational, int>> rational_roots(const Polynomial& p) {
    std::vector<std::pair<Rational, int>> roots;
    for (const auto& factor : factor_rational(p)) {
        if (factor.poly.degree() != 1) continue;
        // a*t + b = 0  ->  t = -b/a
        Rational root = div_checked(-factor.poly.coeff(0), factor.poly.coeff(1));
        roots.emplace_back(root, factor.multiplicity);
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
}

}  // namespace fano
