#include "fano/fit.hpp"

#include <algorithm>

namespace fano {

namespace {

// Thrown internally while reducing the system modulo an unusable prime.
struct BadPrime : std::runtime_error {
    BadPrime() : std::runtime_error("prime divides a denominator") {}
};

struct QRing {
    using Elem = Rational;
    Elem zero() const { return Rational(0); }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const { return div_checked(a, b); }
    Elem neg(const Elem& a) const { return -a; }
    Elem one() const { return Rational(1); }
    Elem from_rational(const Rational& r) const { return r; }
    Elem from_integer(const Integer& z) const { return Rational(z); }
};

struct PRing {
    std::uint64_t p;
    using Elem = std::uint64_t;
    Elem zero() const { return 0; }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(const Elem& a, const Elem& b) const { return (a + b) % p; }
    Elem sub(const Elem& a, const Elem& b) const { return (a + p - b) % p; }
    Elem mul(const Elem& a, const Elem& b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elem div(const Elem& a, const Elem& b) const {
        if (b == 0) throw BadPrime();
        return mul(a, pow(b, p - 2));
    }
    Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
    Elem one() const { return 1 % p; }
    Elem from_integer(const Integer& z) const {
        Integer r;
        mpz_mod_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
        return mpz_get_ui(r.get_mpz_t());
    }
    Elem from_rational(const Rational& r) const {
        Elem den = from_integer(r.get_den());
        if (den == 0) throw BadPrime();
        return div(from_integer(r.get_num()), den);
    }
};

// One homogeneous equation per stored coefficient. Column (d_power m,
// t_power n) is n * (R + 1) + m, so a t-power cap is a column prefix.
template <class Ring>
std::vector<std::vector<typename Ring::Elem>> build_system(const Ring& ring,
                                                           const PeriodSequence& seq, unsigned R,
                                                           unsigned S) {
    long M = seq.max_index();
    std::size_t cols = static_cast<std::size_t>(R + 1) * (S + 1);
    std::vector<std::vector<typename Ring::Elem>> rows(
        static_cast<std::size_t>(M) + 1, std::vector<typename Ring::Elem>(cols, ring.zero()));
    for (long e = 0; e <= M; ++e) {
        for (unsigned n = 0; n <= S; ++n) {
            long index = e - static_cast<long>(n);
            if (index < 0) continue;
            auto value = ring.from_rational(seq.coeffs[index]);
            if (ring.is_zero(value)) continue;
            for (unsigned m = 0; m <= R; ++m) {
                auto entry = ring.mul(value, ring.from_integer(int_pow(Integer(index), m)));
                rows[e][n * (R + 1) + m] = ring.add(rows[e][n * (R + 1) + m], entry);
            }
        }
    }
    return rows;
}

template <class Ring>
struct Reduction {
    long rank = 0;
    std::vector<std::size_t> pivot_cols;
    // set when the nullspace over the first `cols` columns is 1-dimensional
    std::optional<std::vector<typename Ring::Elem>> nullvector;
    long nullity = 0;
};

// Gaussian elimination over the column prefix [0, cols); rows are copied.
template <class Ring>
Reduction<Ring> reduce(const Ring& ring, const std::vector<std::vector<typename Ring::Elem>>& rows,
                       std::size_t cols) {
    std::vector<std::vector<typename Ring::Elem>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.emplace_back(r.begin(), r.begin() + cols);

    Reduction<Ring> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && ring.is_zero(m[pivot][col])) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        auto inv = ring.div(ring.one(), m[row][col]);
        for (std::size_t j = col; j < cols; ++j) m[row][j] = ring.mul(m[row][j], inv);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || ring.is_zero(m[i][col])) continue;
            auto factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = ring.sub(m[i][j], ring.mul(factor, m[row][j]));
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = static_cast<long>(out.pivot_cols.size());
    out.nullity = static_cast<long>(cols) - out.rank;

    if (out.nullity == 1) {
        std::size_t free_col = 0;
        std::vector<bool> is_pivot(cols, false);
        for (std::size_t c : out.pivot_cols) is_pivot[c] = true;
        while (free_col < cols && is_pivot[free_col]) ++free_col;
        std::vector<typename Ring::Elem> v(cols, ring.zero());
        v[free_col] = ring.one();
        for (std::size_t i = 0; i < out.pivot_cols.size(); ++i)
            v[out.pivot_cols[i]] = ring.neg(m[i][free_col]);
        out.nullvector = std::move(v);
    }
    return out;
}

unsigned max_t_power_of(const std::vector<Rational>& v, unsigned R, unsigned S) {
    unsigned n_max = 0;
    for (unsigned n = 0; n <= S; ++n)
        for (unsigned m = 0; m <= R; ++m)
            if (v[n * (R + 1) + m] != 0) n_max = n;
    return n_max;
}

// Shared shape of the solution space: full rank, the smallest t-power cap
// with a one-dimensional solution space, and its pivot columns.
template <class Ring>
struct Structure {
    long full_rank = 0;
    long full_nullity = 0;
    bool has_minimal = false;
    unsigned minimal_S = 0;
    std::vector<std::size_t> minimal_pivots;
    std::vector<typename Ring::Elem> vec;  // zero-extended to all columns
    bool multidimensional = false;
};

template <class Ring>
Structure<Ring> analyze_system(const Ring& ring,
                               const std::vector<std::vector<typename Ring::Elem>>& rows,
                               unsigned R, unsigned S) {
    Structure<Ring> out;
    std::size_t cols = static_cast<std::size_t>(R + 1) * (S + 1);
    auto full = reduce(ring, rows, cols);
    out.full_rank = full.rank;
    out.full_nullity = full.nullity;
    if (full.nullity == 0) return out;

    for (unsigned s = 0; s <= S; ++s) {
        std::size_t sub_cols = static_cast<std::size_t>(R + 1) * (s + 1);
        auto sub = reduce(ring, rows, sub_cols);
        if (sub.nullity == 0) continue;
        if (sub.nullity > 1) {
            out.multidimensional = true;
            return out;
        }
        out.has_minimal = true;
        out.minimal_S = s;
        out.minimal_pivots = sub.pivot_cols;
        out.vec.assign(cols, ring.zero());
        std::copy(sub.nullvector->begin(), sub.nullvector->end(), out.vec.begin());
        return out;
    }
    return out;
}

std::optional<DOperator> operator_from_vector(const std::vector<Rational>& v, unsigned R,
                                              unsigned S) {
    std::vector<RationalTerm> terms;
    for (unsigned n = 0; n <= S; ++n)
        for (unsigned m = 0; m <= R; ++m)
            if (v[n * (R + 1) + m] != 0) terms.push_back({v[n * (R + 1) + m], m, n});
    if (terms.empty()) return std::nullopt;
    if (std::all_of(terms.begin(), terms.end(),
                    [](const RationalTerm& t) { return t.d_power == 0; }))
        return std::nullopt;  // pure multiplication cannot annihilate the data
    return normalize(terms);
}

FitOutcome finish_fit(const PeriodSequence& seq, unsigned R, unsigned S, long min_excess,
                      const Structure<QRing>& st) {
    FitOutcome out;
    if (st.full_nullity == 0) {
        out.failure = FitFailure::nullspace_trivial;
        return out;
    }
    // Accept a higher-dimensional solution space only when it consists of the
    // t-power shifts of one minimal operator: then that operator is canonical.
    if (st.multidimensional || !st.has_minimal) {
        out.failure = FitFailure::nullspace_multidimensional;
        return out;
    }
    unsigned n_max = max_t_power_of(st.vec, R, S);
    long expected_span = static_cast<long>(S - n_max) + 1;
    if (expected_span != st.full_nullity) {
        out.failure = FitFailure::nullspace_multidimensional;
        return out;
    }
    long excess = seq.max_index() + 1 - st.full_rank;
    if (excess < min_excess) {
        out.failure = FitFailure::insufficient_excess;
        return out;
    }
    auto op = operator_from_vector(st.vec, R, S);
    if (!op || !annihilates(*op, seq).clean()) {
        out.failure = FitFailure::nullspace_trivial;
        return out;
    }
    out.result = FitResult{std::move(*op), excess, FitAnsatz{R, S}};
    return out;
}

}  // namespace

FitOutcome fit_operator(const PeriodSequence& seq, unsigned R, unsigned S, long min_excess) {
    if (R < 1 || S < 1) throw std::invalid_argument("fit ansatz bounds must be at least 1");
    if (min_excess < 0) throw std::invalid_argument("min_excess must be non-negative");
    if (seq.coeffs.empty()) throw std::invalid_argument("fit requires a non-empty sequence");
    QRing ring;
    auto rows = build_system(ring, seq, R, S);
    auto st = analyze_system(ring, rows, R, S);
    return finish_fit(seq, R, S, min_excess, st);
}

FitOutcome fit_operator_search(const PeriodSequence& seq, unsigned R_max, unsigned S_max,
                               long min_excess) {
    if (R_max < 1 || S_max < 1) throw std::invalid_argument("search bounds must be at least 1");
    FitOutcome last;
    last.failure = FitFailure::nullspace_trivial;
    for (unsigned total = 2; total <= R_max + S_max; ++total) {
        for (unsigned R = 1; R < total; ++R) {
            unsigned S = total - R;
            if (R > R_max || S > S_max || S < 1) continue;
            FitOutcome attempt = fit_operator(seq, R, S, min_excess);
            if (attempt.ok()) return attempt;
            last = std::move(attempt);
        }
    }
    return last;
}

std::uint64_t RandomPrimeSource::next() {
    while (true) {
        std::uint64_t candidate = (1ull << 31) + (rng_() % (1ull << 31));
        Integer z(static_cast<unsigned long>(candidate));
        if (mpz_probab_prime_p(z.get_mpz_t(), 30) > 0) return candidate;
    }
}

std::optional<Rational> rational_reconstruction(const Integer& a, const Integer& m) {
    if (m < 2) throw std::invalid_argument("modulus must be at least 2");
    if (a < 0 || a >= m) throw std::invalid_argument("residue must satisfy 0 <= a < m");

    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());

    Integer r0 = m, r1 = a;
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    Integer num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den == 0 || den > bound) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1 && !(num == 0 && den == 1)) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    return make_rational(num, den);
}

namespace {

// Exact check that the candidate coefficient vector satisfies every equation.
bool verify_vector_exact(const PeriodSequence& seq, unsigned R, unsigned S,
                         const std::vector<Rational>& v) {
    long M = seq.max_index();
    for (long e = 0; e <= M; ++e) {
        Rational total = 0;
        for (unsigned n = 0; n <= S; ++n) {
            long index = e - static_cast<long>(n);
            if (index < 0) continue;
            if (seq.coeffs[index] == 0) continue;
            for (unsigned m = 0; m <= R; ++m) {
                const Rational& c = v[n * (R + 1) + m];
                if (c == 0) continue;
                total += c * Rational(int_pow(Integer(index), m)) * seq.coeffs[index];
            }
        }
        if (total != 0) return false;
    }
    return true;
}

}  // namespace

FitOutcome fit_operator_modular(const PeriodSequence& seq, unsigned R, unsigned S,
                                long min_excess, PrimeSource& primes) {
    if (R < 1 || S < 1) throw std::invalid_argument("fit ansatz bounds must be at least 1");
    if (min_excess < 0) throw std::invalid_argument("min_excess must be non-negative");
    if (seq.coeffs.empty()) throw std::invalid_argument("fit requires a non-empty sequence");

    const std::size_t cols = static_cast<std::size_t>(R + 1) * (S + 1);
    const long equations = seq.max_index() + 1;

    bool have_reference = false;
    Structure<PRing> reference;
    std::vector<std::uint64_t> used_primes;
    std::vector<Integer> crt;          // combined residues, modulo `modulus`
    Integer modulus = 1;
    std::vector<Rational> previous_reconstruction;
    bool have_previous = false;

    const int kMaxGoodPrimes = 64;
    const int kMaxDraws = 256;

    for (int draw = 0; draw < kMaxDraws && static_cast<int>(used_primes.size()) < kMaxGoodPrimes;
         ++draw) {
        std::uint64_t p = primes.next();
        if (std::find(used_primes.begin(), used_primes.end(), p) != used_primes.end()) continue;
        PRing ring{p};
        Structure<PRing> st;
        try {
            auto rows = build_system(ring, seq, R, S);
            st = analyze_system(ring, rows, R, S);
        } catch (const BadPrime&) {
            continue;  // discard and replace, transparently
        }

        // A modular nullspace can only be larger than the rational one, so a
        // trivial modular nullspace settles the question unconditionally.
        if (st.full_nullity == 0) {
            FitOutcome out;
            out.failure = FitFailure::nullspace_trivial;
            return out;
        }
        long excess_upper = equations - st.full_rank;
        if (excess_upper < min_excess) {
            // the true rank is at least the modular rank, so the true excess
            // can only be smaller
            FitOutcome out;
            out.failure = FitFailure::insufficient_excess;
            return out;
        }
        if (st.multidimensional || !st.has_minimal) break;  // dense fallback decides

        if (!have_reference) {
            have_reference = true;
            reference = st;
        } else if (st.full_nullity < reference.full_nullity ||
                   (st.full_nullity == reference.full_nullity &&
                    st.minimal_pivots.size() > reference.minimal_pivots.size())) {
            // the new prime sees a smaller solution space: everything so far
            // was unlucky; restart from this prime
            reference = st;
            used_primes.clear();
            crt.clear();
            modulus = 1;
            have_previous = false;
        } else if (st.full_nullity != reference.full_nullity ||
                   st.minimal_S != reference.minimal_S ||
                   st.minimal_pivots != reference.minimal_pivots) {
            continue;  // minority report; discard this prime
        }

        // fold into the Chinese remainder accumulator
        Integer pz(static_cast<unsigned long>(p));
        if (crt.empty()) {
            crt.assign(cols, Integer(0));
            for (std::size_t j = 0; j < cols; ++j)
                crt[j] = Integer(static_cast<unsigned long>(st.vec[j]));
            modulus = pz;
        } else {
            Integer inv;
            mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
            Integer new_modulus = modulus * pz;
            for (std::size_t j = 0; j < cols; ++j) {
                Integer target(static_cast<unsigned long>(st.vec[j]));
                Integer diff = (target - crt[j]) % pz;
                if (diff < 0) diff += pz;
                Integer step = (diff * inv) % pz;
                crt[j] = crt[j] + modulus * step;
            }
            modulus = new_modulus;
        }
        used_primes.push_back(p);

        if (used_primes.size() < 2) continue;

        std::vector<Rational> candidate(cols);
        bool reconstructed = true;
        for (std::size_t j = 0; j < cols && reconstructed; ++j) {
            auto r = rational_reconstruction(crt[j], modulus);
            if (!r)
                reconstructed = false;
            else
                candidate[j] = *r;
        }
        if (!reconstructed) {
            have_previous = false;
            continue;
        }
        if (have_previous && candidate == previous_reconstruction) {
            // stabilized; verify exactly so the answer does not depend on the
            // primes at all
            if (verify_vector_exact(seq, R, S, candidate)) {
                Structure<QRing> exact;
                exact.full_rank = reference.full_rank;
                exact.full_nullity = reference.full_nullity;
                exact.has_minimal = true;
                exact.minimal_S = reference.minimal_S;
                exact.vec = candidate;
                FitOutcome out = finish_fit(seq, R, S, min_excess, exact);
                if (out.ok()) return out;
            }
            have_previous = false;  // verification failed; gather more primes
            continue;
        }
        previous_reconstruction = std::move(candidate);
        have_previous = true;
    }

    // Unlucky primes or a genuinely ambiguous system: the dense path settles it.
    return fit_operator(seq, R, S, min_excess);
}

FitOutcome fit_operator_modular(const PeriodSequence& seq, unsigned R, unsigned S,
                                long min_excess, std::uint64_t seed) {
    RandomPrimeSource primes(seed);
    return fit_operator_modular(seq, R, S, min_excess, primes);
}

}  // namespace fano
