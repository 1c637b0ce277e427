#include "fano/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace fano {

namespace {

std::vector<std::int64_t> add_exponents(const std::vector<std::int64_t>& a,
                                        const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (__builtin_add_overflow(a[i], b[i], &out[i]))
            throw std::overflow_error("exponent overflow in Laurent multiplication");
    }
    return out;
}

struct ExponentBounds {
    std::vector<std::int64_t> min;
    std::vector<std::int64_t> max;
};

ExponentBounds support_bounds(const LaurentPolynomial& f) {
    ExponentBounds b;
    b.min.assign(f.dims, 0);
    b.max.assign(f.dims, 0);
    bool first = true;
    for (const auto& [exps, coeff] : f.terms) {
        for (int i = 0; i < f.dims; ++i) {
            if (first) {
                b.min[i] = b.max[i] = exps[i];
            } else {
                b.min[i] = std::min(b.min[i], exps[i]);
                b.max[i] = std::max(b.max[i], exps[i]);
            }
        }
        first = false;
    }
    return b;
}

// A monomial can reach exponent zero within `steps` more multiplications by f
// only if every coordinate can be cancelled: v_i + steps*min_i <= 0 <= v_i +
// steps*max_i. Necessary, not sufficient, so pruning is always sound.
bool can_return_to_zero(const std::vector<std::int64_t>& v, const ExponentBounds& b, long steps) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] + steps * b.min[i] > 0) return false;
        if (v[i] + steps * b.max[i] < 0) return false;
    }
    return true;
}

}  // namespace

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    if (f.dims != g.dims) throw std::invalid_argument("multiply: dimension mismatch");
    LaurentPolynomial out(f.dims);
    for (const auto& [ea, ca] : f.terms)
        for (const auto& [eb, cb] : g.terms) out.add_term(add_exponents(ea, eb), ca * cb);
    return out;
}

PeriodSequence constant_term_powers(const LaurentPolynomial& f, long count,
                                    SupportPruning pruning) {
    if (count < 0) throw std::invalid_argument("constant_term_powers: negative count");
    if (f.terms.empty())
        throw std::invalid_argument("constant_term_powers: polynomial has no terms");

    const std::vector<std::int64_t> origin(f.dims, 0);
    auto constant_of = [&](const LaurentPolynomial& p) -> Rational {
        auto it = p.terms.find(origin);
        return it == p.terms.end() ? Rational(0) : it->second;
    };

    std::vector<Rational> cts;
    cts.reserve(static_cast<std::size_t>(count) + 1);
    cts.emplace_back(1);  // f^0 = 1

    ExponentBounds bounds = support_bounds(f);
    LaurentPolynomial power(f.dims);
    power.add_term(origin, 1);
    for (long d = 1; d <= count; ++d) {
        power = multiply(power, f);
        if (pruning == SupportPruning::box) {
            long remaining = count - d;
            for (auto it = power.terms.begin(); it != power.terms.end();) {
                it = can_return_to_zero(it->first, bounds, remaining) ? std::next(it)
                                                                      : power.terms.erase(it);
            }
        }
        cts.push_back(constant_of(power));
    }
    return PeriodSequence(std::move(cts));
}

LaurentPolynomial disjoint_sum(const LaurentPolynomial& f, const LaurentPolynomial& g) {
    LaurentPolynomial out(f.dims + g.dims);
    for (const auto& [exps, coeff] : f.terms) {
        std::vector<std::int64_t> padded = exps;
        padded.resize(f.dims + g.dims, 0);
        out.add_term(padded, coeff);
    }
    for (const auto& [exps, coeff] : g.terms) {
        std::vector<std::int64_t> padded(f.dims, 0);
        padded.insert(padded.end(), exps.begin(), exps.end());
        out.add_term(padded, coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Plain-text grammar: [-] term ((+|-) term)*, term = coeff | [coeff *] factor
// (* factor)*, factor = x<k>[^<int>].
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_space();
        return pos >= text.size();
    }
    char peek() {
        skip_space();
        return text[pos];
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("laurent parse error at position " + std::to_string(pos) +
                                    ": " + what);
    }
};

long parse_long(Cursor& c, bool allow_sign) {
    c.skip_space();
    std::size_t start = c.pos;
    if (allow_sign && c.pos < c.text.size() && (c.text[c.pos] == '-' || c.text[c.pos] == '+'))
        ++c.pos;
    while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos])))
        ++c.pos;
    if (c.pos == start || (c.pos == start + 1 && !std::isdigit(static_cast<unsigned char>(
                                                     c.text[c.pos - 1]))))
        c.fail("expected an integer");
    return std::stol(c.text.substr(start, c.pos - start));
}

Rational parse_coefficient(Cursor& c) {
    long num = parse_long(c, false);
    c.skip_space();
    if (c.pos < c.text.size() && c.text[c.pos] == '/') {
        ++c.pos;
        long den = parse_long(c, false);
        return make_rational(Integer(num), Integer(den));
    }
    return Rational(num);
}

}  // namespace

LaurentPolynomial parse_laurent(const std::string& text, int dims) {
    Cursor c{text};
    std::vector<std::pair<std::map<int, std::int64_t>, Rational>> parsed;
    int max_var = 0;

    bool first = true;
    while (!c.eof()) {
        Rational sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = (c.peek() == '-') ? -1 : 1;
            ++c.pos;
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        if (c.eof()) c.fail("dangling sign");

        Rational coeff = 1;
        bool saw_factor = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = parse_coefficient(c);
            saw_factor = true;
        }
        std::map<int, std::int64_t> exponents;
        while (true) {
            c.skip_space();
            if (c.pos < c.text.size() && c.text[c.pos] == '*') {
                ++c.pos;
                c.skip_space();
            } else if (saw_factor && (c.eof() || c.peek() == '+' || c.peek() == '-')) {
                break;
            } else if (saw_factor && c.peek() != 'x') {
                c.fail("expected '*', '+', '-' or end of input");
            }
            if (c.eof() || c.peek() != 'x') {
                if (!saw_factor) c.fail("expected a coefficient or variable");
                break;
            }
            ++c.pos;  // consume 'x'
            long var = parse_long(c, false);
            if (var < 1) c.fail("variable indices start at 1");
            std::int64_t exponent = 1;
            c.skip_space();
            if (c.pos < c.text.size() && c.text[c.pos] == '^') {
                ++c.pos;
                exponent = parse_long(c, true);
            }
            exponents[static_cast<int>(var)] += exponent;
            max_var = std::max(max_var, static_cast<int>(var));
            saw_factor = true;
        }
        parsed.emplace_back(std::move(exponents), sign * coeff);
        first = false;
    }
    if (parsed.empty()) throw std::invalid_argument("laurent parse error: empty input");

    int n = std::max(dims, max_var);
    LaurentPolynomial out(n);
    for (const auto& [exps, coeff] : parsed) {
        std::vector<std::int64_t> v(n, 0);
        for (const auto& [var, e] : exps) v[var - 1] = e;
        out.add_term(v, coeff);
    }
    return out;
}

std::string format_laurent(const LaurentPolynomial& f) {
    if (f.terms.empty()) return "0";
    std::string out;
    for (const auto& [exps, coeff] : f.terms) {
        Rational c = coeff;
        if (out.empty()) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += (c < 0) ? " - " : " + ";
            if (c < 0) c = -c;
        }
        std::string monomial;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!monomial.empty()) monomial += "*";
            monomial += "x" + std::to_string(i + 1);
            if (exps[i] != 1) monomial += "^" + std::to_string(exps[i]);
        }
        if (monomial.empty()) {
            out += to_string(c);
        } else {
            if (c != 1) out += to_string(c) + "*";
            out += monomial;
        }
    }
    return out;
}

}  // namespace fano
