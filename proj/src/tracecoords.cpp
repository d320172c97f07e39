#include "cfn/tracecoords.hpp"

#include "cfn/tensorial.hpp"

#include <optional>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>

namespace cfn {

namespace {

enum Var : std::size_t { T1, T2, T3, T12, T13, T23, T123 };

Polynomial var(std::size_t v) { return Polynomial::variable(rank3_alphabet(), v); }
Polynomial cst(long c) { return Polynomial(rank3_alphabet(), Rational(c)); }

// Removes adjacent inverse pairs, including across the wrap-around.
TraceWord cyclic_reduce(TraceWord w) {
    TraceWord out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    std::size_t lo = 0, hi = out.size();
    while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
        ++lo;
        --hi;
    }
    return TraceWord(out.begin() + std::ptrdiff_t(lo), out.begin() + std::ptrdiff_t(hi));
}

TraceWord rotate_to(const TraceWord& w, std::size_t start) {
    TraceWord r(w.begin() + std::ptrdiff_t(start), w.end());
    r.insert(r.end(), w.begin(), w.begin() + std::ptrdiff_t(start));
    return r;
}

TraceWord least_rotation(const TraceWord& w) {
    TraceWord best = w;
    for (std::size_t s = 1; s < w.size(); ++s) best = std::min(best, rotate_to(w, s));
    return best;
}

TraceWord inverse_word(const TraceWord& w) {
    TraceWord r(w.rbegin(), w.rend());
    for (int& x : r) x = -x;
    return r;
}

TraceWord concat(const TraceWord& a, const TraceWord& b) {
    TraceWord r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Polynomial reduce_canonical(const TraceWord& w);

Polynomial reduce_any(const TraceWord& w) {
    TraceWord r = cyclic_reduce(w);
    if (r.empty()) return cst(2);
    return reduce_canonical(least_rotation(r));
}

Polynomial generator_trace(const TraceWord& w) {
    // w is positive with distinct letters, least rotation
    if (w.size() == 1) return var(std::size_t(w[0] - 1));
    if (w.size() == 2) {
        int lo = std::min(w[0], w[1]), hi = std::max(w[0], w[1]);
        if (lo == 1 && hi == 2) return var(T12);
        if (lo == 1 && hi == 3) return var(T13);
        return var(T23);
    }
    if (w == TraceWord{1, 2, 3}) return var(T123);
    return t132_poly();
}

Polynomial reduce_uncached(const TraceWord& w) {
    // Inverse letters: X^{-1} = tr(X) I - X.
    for (std::size_t p = 0; p < w.size(); ++p) {
        if (w[p] > 0) continue;
        TraceWord rot = rotate_to(w, (p + 1) % w.size());
        int g = -rot.back();
        TraceWord u(rot.begin(), rot.end() - 1);
        Polynomial res = reduce_any({g}) * reduce_any(u);
        res -= reduce_any(concat(u, {g}));
        return res;
    }
    // Repeated letter: tr(gUgV) = tr(gU) tr(gV) - tr(U V^{-1}).
    for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t q = p + 1; q < w.size(); ++q) {
            if (w[p] != w[q]) continue;
            TraceWord rot = rotate_to(w, p);
            std::size_t off = q - p;
            int g = rot[0];
            TraceWord u(rot.begin() + 1, rot.begin() + std::ptrdiff_t(off));
            TraceWord v(rot.begin() + std::ptrdiff_t(off) + 1, rot.end());
            Polynomial res = reduce_any(concat({g}, u)) * reduce_any(concat({g}, v));
            res -= reduce_any(concat(u, inverse_word(v)));
            return reduce_t123(res);
        }
    return generator_trace(w);
}

Polynomial reduce_canonical(const TraceWord& w) {
    static std::shared_mutex mu;
    static std::map<TraceWord, Polynomial> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
    }
    Polynomial p = reduce_uncached(w);
    std::unique_lock lock(mu);
    return cache.emplace(w, std::move(p)).first->second;
}

}  // namespace

Polynomial reduce_trace_word(const TraceWord& w) {
    for (int x : w)
        if (x == 0 || x < -3 || x > 3) throw std::invalid_argument("trace word letters must be in +-1..3");
    return reduce_any(w);
}

Polynomial trace_var(std::string_view name) { return Polynomial::variable(rank3_alphabet(), name); }

std::pair<Polynomial, Polynomial> pq_polys() {
    Polynomial t1 = var(T1), t2 = var(T2), t3 = var(T3), t12 = var(T12), t13 = var(T13), t23 = var(T23);
    Polynomial p = -(t1 * t2 * t3) + t12 * t3 + t2 * t13 + t1 * t23;
    Polynomial q = t1 * t1 + t2 * t2 + t3 * t3 + t12 * t12 + t23 * t23 + t13 * t13 -
                   (t1 * t2 * t12 + t2 * t3 * t23 + t3 * t1 * t13) + t12 * t23 * t13 - cst(4);
    return {p, q};
}

Polynomial t132_poly() {
    static const Polynomial t132 = pq_polys().first - var(T123);
    return t132;
}

Polynomial reduce_t123(const Polynomial& p) {
    if (p.degree_in(T123) <= 1) return p;
    static const auto pq = pq_polys();
    const Polynomial& P = pq.first;
    const Polynomial& Q = pq.second;
    // t123^k = A_k t123 + B_k, built up as needed
    std::vector<std::pair<Polynomial, Polynomial>> pw;
    pw.emplace_back(cst(0), cst(1));
    pw.emplace_back(cst(1), cst(0));
    Polynomial out(rank3_alphabet());
    for (const auto& [m, c] : p.terms()) {
        unsigned k = m.exp[T123];
        Monomial rest = m;
        rest.exp[T123] = 0;
        Polynomial base(rank3_alphabet());
        base.add_term(rest, c);
        if (k <= 1) {
            out.add_term(m, c);
            continue;
        }
        while (pw.size() <= k) {
            const auto& [a, b] = pw.back();
            // t123 (A t123 + B) = A (P t123 - Q) + B t123
            pw.emplace_back(a * P + b, -(a * Q));
        }
        out += base * (pw[k].first * var(T123) + pw[k].second);
    }
    return out;
}

namespace {

Rational shear_parameter(std::mt19937_64& eng) {
    long num = long(eng() % 10) - 5;
    if (num >= 0) ++num;  // -5..-1, 1..5
    long den = long(eng() % 4) + 1;
    return Rational(num, den);
}

}  // namespace

Mat2 random_sl2(std::uint64_t seed, int steps) {
    std::mt19937_64 eng(seed);
    Mat2 m = Mat2::identity();
    bool upper = (eng() & 1u) != 0;
    for (int s = 0; s < steps; ++s) {
        Rational t = shear_parameter(eng);
        Mat2 shear = upper ? Mat2{1, t, 0, 1} : Mat2{1, 0, t, 1};
        m = m * shear;
        upper = !upper;
    }
    return m;
}

SL2Triple random_triple(std::uint64_t seed, int steps) {
    std::uint64_t base = seed * 0x9E3779B97F4A7C15ull;
    return {random_sl2(base + 1, steps), random_sl2(base + 2, steps), random_sl2(base + 3, steps)};
}

Mat2 random_conjugator(std::uint64_t seed) { return random_sl2(seed ^ 0xC0FFEEull, 3); }

TraceTuple evaluate_traces(const Mat2& x1, const Mat2& x2, const Mat2& x3) {
    Mat2 x12 = x1 * x2;
    return {x1.trace(), x2.trace(), x3.trace(), x12.trace(), (x1 * x3).trace(), (x2 * x3).trace(),
            (x12 * x3).trace()};
}

std::array<Complex, 7> complex_traces(const ComplexTriple& m) {
    ComplexMat2 x12 = m.x1 * m.x2;
    return {m.x1.trace(), m.x2.trace(), m.x3.trace(), x12.trace(), (m.x1 * m.x3).trace(),
            (m.x2 * m.x3).trace(), (x12 * m.x3).trace()};
}

namespace {

bool prefer(const Complex& a, const Complex& b) {
    // non-negative imaginary part first, then larger real part
    bool ia = a.imag() >= 0, ib = b.imag() >= 0;
    if (ia != ib) return ia;
    return a.real() >= b.real();
}

}  // namespace

ComplexTriple goldman_slice(const TraceTuple& tt) {
    auto ld = [](const Rational& r) { return Complex(r.to_long_double()); };
    const Complex t1 = ld(tt.t1), t2 = ld(tt.t2), t3 = ld(tt.t3);
    const Complex t12 = ld(tt.t12), t13 = ld(tt.t13), t23 = ld(tt.t23), t123 = ld(tt.t123);
    const Complex one(1), two(2);

    Complex disc = std::sqrt(t12 * t12 - Complex(4));
    Complex w1 = (t12 + disc) / two, w2 = (t12 - disc) / two;
    Complex w = prefer(w1, w2) ? w1 : w2;
    Complex w2m1 = w * w - one;
    if (std::abs(w2m1) < 1e-9L) throw SliceSingular("slice is singular where w^2 = 1 (t12 = +-2)");

    ComplexMat2 x1{t1, -one, one, Complex(0)};
    ComplexMat2 x2{Complex(0), w, -one / w, t2};
    auto x3_at = [&](Complex s) {
        return ComplexMat2{s * (one / w - w) + t3, s * (w * t1 - t2) + w * (w * (t13 - t1 * t3) + t23) / w2m1,
                           s * (t1 / w - t2) + (-t1 * t3 + t13 + w * t23) / w2m1, s * (w - one / w)};
    };
    // det X3(s) is quadratic in s
    Complex d0 = x3_at(Complex(0)).det(), dp = x3_at(one).det(), dm = x3_at(-one).det();
    Complex qa = (dp + dm) / two - d0, qb = (dp - dm) / two, qc = d0 - one;
    std::vector<Complex> roots;
    if (std::abs(qa) < 1e-14L) {
        if (std::abs(qb) < 1e-14L) throw SliceSingular("slice determinant equation is degenerate");
        roots.push_back(-qc / qb);
    } else {
        Complex sq = std::sqrt(qb * qb - Complex(4) * qa * qc);
        // stable pair: avoid cancellation between -qb and sq
        Complex q = (std::real(std::conj(qb) * sq) >= 0) ? -(qb + sq) / two : -(qb - sq) / two;
        roots.push_back(q / qa);
        if (std::abs(q) > 0) roots.push_back(qc / q);
    }
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            Complex f = x3_at(r).det() - one, df = two * qa * r + qb;
            if (std::abs(df) == 0) break;
            r -= f / df;
        }
    }
    // The two roots realize t123 and t132; keep the one matching the input.
    Complex best = roots.front();
    long double best_err = std::abs((x1 * x2 * x3_at(best)).trace() - t123);
    for (std::size_t i = 1; i < roots.size(); ++i) {
        long double err = std::abs((x1 * x2 * x3_at(roots[i])).trace() - t123);
        if (err < best_err || (err == best_err && prefer(roots[i], best))) {
            best = roots[i];
            best_err = err;
        }
    }
    return {x1, x2, x3_at(best)};
}

std::vector<Monomial> trace_basis_total(int s) {
    std::vector<Monomial> out;
    Monomial m;
    auto rec = [&](auto&& self, std::size_t v, int left) -> void {
        if (v == 7) {
            out.push_back(m);
            return;
        }
        int cap = v == T123 ? std::min(left, 1) : left;
        for (int e = 0; e <= cap; ++e) {
            m.exp[v] = static_cast<std::uint8_t>(e);
            self(self, v + 1, left - e);
        }
        m.exp[v] = 0;
    };
    if (s >= 0) rec(rec, 0, s);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

std::vector<Monomial> trace_basis_multidegree(int a, int b, int c) {
    std::vector<Monomial> out;
    for (int r = 0; r <= 1; ++r)
        for (int q12 = 0; q12 <= std::min(a, b); ++q12)
            for (int q13 = 0; q13 <= std::min(a, c); ++q13)
                for (int q23 = 0; q23 <= std::min(b, c); ++q23) {
                    int ra = a - q12 - q13 - r, rb = b - q12 - q23 - r, rc = c - q13 - q23 - r;
                    if (ra < 0 || rb < 0 || rc < 0) continue;
                    for (int p1 = ra % 2; p1 <= ra; p1 += 2)
                        for (int p2 = rb % 2; p2 <= rb; p2 += 2)
                            for (int p3 = rc % 2; p3 <= rc; p3 += 2) {
                                Monomial m;
                                m.exp[T1] = std::uint8_t(p1);
                                m.exp[T2] = std::uint8_t(p2);
                                m.exp[T3] = std::uint8_t(p3);
                                m.exp[T12] = std::uint8_t(q12);
                                m.exp[T13] = std::uint8_t(q13);
                                m.exp[T23] = std::uint8_t(q23);
                                m.exp[T123] = std::uint8_t(r);
                                out.push_back(m);
                            }
                }
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

namespace {

Rational monomial_value(const Monomial& m, const std::vector<Rational>& v) {
    Rational r(1);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (m.exp[i]) r *= pow(v[i], m.exp[i]);
    return r;
}

}  // namespace

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 x, u64 y, u64 p) { return u64(u128(x) * y % p); }

u64 powmod(u64 x, u64 e, u64 p) {
    u64 r = 1;
    for (; e; e >>= 1, x = mulmod(x, x, p))
        if (e & 1) r = mulmod(r, x, p);
    return r;
}

std::optional<u64> reduce_mod(const Rational& q, u64 p) {
    u64 den = mpz_fdiv_ui(q.raw().get_den_mpz_t(), p);
    if (den == 0) return std::nullopt;
    u64 num = mpz_fdiv_ui(q.raw().get_num_mpz_t(), p);
    return mulmod(num, powmod(den, p - 2, p), p);
}

// Unique solution of the full-column-rank system mod p, or empty.
std::optional<std::vector<u64>> solve_mod(const std::vector<std::vector<Rational>>& rows, std::size_t n, u64 p) {
    std::vector<std::vector<u64>> a(rows.size(), std::vector<u64>(n + 1));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k <= n; ++k) {
            auto v = reduce_mod(rows[r][k], p);
            if (!v) return std::nullopt;
            a[r][k] = *v;
        }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][col] == 0) ++piv;
        if (piv == a.size()) return std::nullopt;
        std::swap(a[piv], a[rank]);
        u64 inv = powmod(a[rank][col], p - 2, p);
        for (std::size_t k = col; k <= n; ++k) a[rank][k] = mulmod(a[rank][k], inv, p);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][col] == 0) continue;
            u64 factor = a[r][col];
            for (std::size_t k = col; k <= n; ++k)
                if (a[rank][k]) a[r][k] = (a[r][k] + p - mulmod(factor, a[rank][k], p)) % p;
        }
        ++rank;
    }
    for (std::size_t r = rank; r < a.size(); ++r)
        if (a[r][n] != 0) return std::nullopt;
    std::vector<u64> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k][n];
    return x;
}

std::optional<Rational> rational_reconstruct(const mpz_class& u, const mpz_class& m) {
    mpz_class bound = sqrt(mpz_class(m / 2));
    mpz_class r0 = m, r1 = u, s0 = 0, s1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1, s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0 || abs(s1) > bound) return std::nullopt;
    mpq_class q(r1, s1);
    q.canonicalize();
    if (gcd(mpz_class(q.get_den()), m) != 1) return std::nullopt;
    return Rational(q);
}

bool satisfies(const std::vector<std::vector<Rational>>& rows, std::size_t n, const std::vector<Rational>& x) {
    for (const auto& row : rows) {
        Rational acc(0);
        for (std::size_t k = 0; k < n; ++k)
            if (!x[k].is_zero() && !row[k].is_zero()) acc += row[k] * x[k];
        if (acc != row[n]) return false;
    }
    return true;
}

// Multi-modular solve with exact verification; empty when it cannot certify a solution.
std::optional<std::vector<Rational>> solve_multimodular(const std::vector<std::vector<Rational>>& rows,
                                                        std::size_t n) {
    mpz_class prime = mpz_class(1) << 61;
    mpz_class modulus = 1;
    std::vector<mpz_class> acc(n);
    for (int used = 0; used < 64; ++used) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        u64 p = prime.get_ui();
        auto x = solve_mod(rows, n, p);
        if (!x) {
            if (used >= 3 && modulus == 1) return std::nullopt;
            continue;
        }
        // CRT: acc += modulus * ((x - acc) * modulus^{-1} mod p)
        u64 minv = powmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
        for (std::size_t k = 0; k < n; ++k) {
            u64 cur = mpz_fdiv_ui(acc[k].get_mpz_t(), p);
            u64 t = mulmod(((*x)[k] + p - cur) % p, minv, p);
            acc[k] += modulus * t;
        }
        modulus *= p;
        std::vector<Rational> sol(n);
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k) {
            auto q = rational_reconstruct(acc[k], modulus);
            if (!q) ok = false;
            else sol[k] = *q;
        }
        if (ok && satisfies(rows, n, sol)) return sol;
    }
    return std::nullopt;
}

}  // namespace

Polynomial interpolate_in_basis(const TripleFunction& f, const std::vector<Monomial>& basis, std::uint64_t seed) {
    const std::size_t n = basis.size();
    const std::size_t extra = 4;
    std::vector<std::vector<Rational>> rows;
    std::uint64_t next = seed * 1000003ull;
    auto add_rows = [&](std::size_t count) {
        for (std::size_t r = 0; r < count; ++r) {
            SL2Triple t = random_triple(next++, 3);
            auto tv = evaluate_traces(t).values();
            std::vector<Rational> row(n + 1);
            for (std::size_t k = 0; k < n; ++k) row[k] = monomial_value(basis[k], tv);
            row[n] = f(t);
            rows.push_back(std::move(row));
        }
    };
    add_rows(n + extra);

    if (auto sol = solve_multimodular(rows, n)) {
        Polynomial out(rank3_alphabet());
        for (std::size_t col = 0; col < n; ++col) out.add_term(basis[col], (*sol)[col]);
        return out;
    }
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto a = rows;
        std::vector<std::size_t> pivot_row(n, SIZE_MAX);
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
            std::size_t p = rank;
            while (p < a.size() && a[p][col].is_zero()) ++p;
            if (p == a.size()) continue;
            std::swap(a[p], a[rank]);
            Rational inv = Rational(1) / a[rank][col];
            for (std::size_t k = col; k <= n; ++k) a[rank][k] *= inv;
            for (std::size_t r = 0; r < a.size(); ++r) {
                if (r == rank || a[r][col].is_zero()) continue;
                Rational factor = a[r][col];
                for (std::size_t k = col; k <= n; ++k)
                    if (!a[rank][k].is_zero()) a[r][k] -= factor * a[rank][k];
            }
            pivot_row[col] = rank++;
        }
        for (std::size_t r = rank; r < a.size(); ++r)
            if (!a[r][n].is_zero())
                throw InterpolationError("function is not in the span of the trace basis (nonzero residual)");
        if (rank < n) {
            add_rows(n - rank + extra);
            continue;
        }
        Polynomial out(rank3_alphabet());
        for (std::size_t col = 0; col < n; ++col) out.add_term(basis[col], a[pivot_row[col]][n]);
        return out;
    }
    throw InterpolationError("sample system stayed singular after resampling");
}

Polynomial interpolate_to_traces(const Polynomial& p, int s, std::uint64_t seed) {
    if (!(*p.alphabet() == *entry_alphabet())) throw AlphabetMismatch("expected an entry polynomial");
    TripleFunction f = [&](const SL2Triple& t) { return p.evaluate(entry_values(t.x1, t.x2, t.x3)); };
    return interpolate_in_basis(f, trace_basis_total(s), seed);
}

}  // namespace cfn
