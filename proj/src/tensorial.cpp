#include "cfn/tensorial.hpp"

#include "cfn/reptheory.hpp"

#include <mutex>
#include <shared_mutex>

namespace cfn {

namespace {

std::size_t entry_index(int generator, int row, int col) {
    return std::size_t(generator - 1) * 4 + std::size_t(row) * 2 + std::size_t(col);
}

// Coefficient table shared by the symbolic and numeric paths: for fixed (n,k,l)
// the list of (i, j, weight) with i+j=k.
struct SymTerm {
    int i, j;
    Rational w;
};

std::vector<SymTerm> sym_terms(int n, int k, int l) {
    std::vector<SymTerm> out;
    Rational inv = Rational(1) / binomial(n, k);
    for (int i = 0; i <= k; ++i) {
        int j = k - i;
        if (i > n - l || j > l) continue;
        out.push_back({i, j, inv * binomial(n - l, i) * binomial(l, j)});
    }
    return out;
}

}  // namespace

std::shared_ptr<const SymMatrix> sym_power_matrix(int generator, int n) {
    if (generator < 1 || generator > 3) throw std::invalid_argument("generator index must be 1..3");
    if (n < 0) throw std::invalid_argument("negative symmetric power");
    static std::shared_mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const SymMatrix>> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find({generator, n});
        if (it != cache.end()) return it->second;
    }
    const Alphabet& alpha = entry_alphabet();
    auto m = std::make_shared<SymMatrix>();
    m->n = n;
    m->entries.reserve(std::size_t(n + 1) * (n + 1));
    std::size_t v11 = entry_index(generator, 0, 0), v12 = entry_index(generator, 0, 1);
    std::size_t v21 = entry_index(generator, 1, 0), v22 = entry_index(generator, 1, 1);
    for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= n; ++l) {
            Polynomial p(alpha);
            for (const auto& t : sym_terms(n, k, l)) {
                Monomial mono;
                mono.exp[v11] = static_cast<std::uint8_t>(n - l - t.i);
                mono.exp[v12] = static_cast<std::uint8_t>(l - t.j);
                mono.exp[v21] = static_cast<std::uint8_t>(t.i);
                mono.exp[v22] = static_cast<std::uint8_t>(t.j);
                p.add_term(mono, t.w);
            }
            m->entries.push_back(std::move(p));
        }
    }
    std::unique_lock lock(mu);
    auto [it, inserted] = cache.emplace(std::make_pair(generator, n), std::move(m));
    return it->second;
}

RationalMatrix sym_power_numeric(const Mat2& x, int n) {
    RationalMatrix out(std::size_t(n + 1), std::vector<Rational>(std::size_t(n + 1)));
    for (int k = 0; k <= n; ++k)
        for (int l = 0; l <= n; ++l) {
            Rational s(0);
            for (const auto& t : sym_terms(n, k, l))
                s += t.w * pow(x.a, unsigned(n - l - t.i)) * pow(x.b, unsigned(l - t.j)) * pow(x.c, unsigned(t.i)) *
                     pow(x.d, unsigned(t.j));
            out[k][l] = s;
        }
    return out;
}

RationalMatrix sym_power_action(const Mat2& x, int n) {
    RationalMatrix out = sym_power_numeric(x, n);
    for (int k = 0; k <= n; ++k)
        for (auto& v : out[std::size_t(k)]) v *= binomial(n, k);
    return out;
}

CGMap cg_injection(int a, int b, int c) {
    require_admissible(a, b, c);
    const int alpha = (b + c - a) / 2, beta = (a - b + c) / 2, gamma = (a + b - c) / 2;
    CGMap map{a, b, c, {}};
    map.images.resize(std::size_t(c + 1));
    for (int k = 0; k <= c; ++k) {
        std::map<std::pair<int, int>, Rational> acc;
        Rational inv = Rational(1) / binomial(c, k);
        for (int i = 0; i <= std::min(beta, k); ++i) {
            int j = k - i;
            if (j > alpha) continue;
            for (int m = 0; m <= gamma; ++m) {
                Rational w = binomial(beta, i) * binomial(alpha, j) * binomial(gamma, m) * inv;
                if (m % 2) w = -w;
                acc[{i + gamma - m, j + m}] += w;
            }
        }
        for (auto& [ij, w] : acc)
            if (!w.is_zero()) map.images[k].push_back({ij.first, ij.second, w});
    }
    return map;
}

std::vector<TripleImage> left_assoc_injection(const std::array<int, 3>& i, int e, int d) {
    CGMap outer = cg_injection(e, i[2], d);
    CGMap inner = cg_injection(i[0], i[1], e);
    std::vector<TripleImage> out(std::size_t(d + 1));
    for (int k = 0; k <= d; ++k) {
        std::map<TripleIndex, Rational> acc;
        for (const auto& t : outer.images[k])
            for (const auto& s : inner.images[t.i]) acc[{s.i, s.j, t.j}] += t.coeff * s.coeff;
        for (auto& [idx, w] : acc)
            if (!w.is_zero()) out[k].emplace_back(idx, w);
    }
    return out;
}

CentralTensor central_tensor(const Rank3Label& label) {
    if (!label.admissible()) throw InadmissibleError("label " + label.to_string() + ": " + label.violation());
    const std::array<int, 3> i{label.a, label.b, label.c};
    auto vec = left_assoc_injection(i, label.e, label.d);
    auto dual = left_assoc_injection(i, label.f, label.d);
    CentralTensor t{label, {}};
    for (int k = 0; k <= label.d; ++k) {
        Rational w = binomial(label.d, k);
        for (const auto& [di, dc] : dual[k])
            for (const auto& [vi, vc] : vec[k]) t.terms[{di, vi}] += w * dc * vc;
    }
    for (auto it = t.terms.begin(); it != t.terms.end();) {
        if (it->second.is_zero())
            it = t.terms.erase(it);
        else
            ++it;
    }
    return t;
}

Polynomial contract(const CentralTensor& t) {
    const Alphabet& alpha = entry_alphabet();
    auto m1 = sym_power_matrix(1, t.label.a);
    auto m2 = sym_power_matrix(2, t.label.b);
    auto m3 = sym_power_matrix(3, t.label.c);
    // Group by the first two slots so each generator's factor is multiplied once.
    std::map<std::array<int, 4>, Polynomial> inner;
    for (const auto& [key, w] : t.terms) {
        const auto& [du, ve] = key;
        auto it = inner.try_emplace({du[0], ve[0], du[1], ve[1]}, alpha).first;
        it->second.add_scaled(m3->at(du[2], ve[2]), w);
    }
    std::map<std::array<int, 2>, Polynomial> middle;
    for (const auto& [key, p] : inner) {
        auto it = middle.try_emplace({key[0], key[1]}, alpha).first;
        it->second += m2->at(key[2], key[3]) * p;
    }
    Polynomial out(alpha);
    for (const auto& [key, p] : middle) out += m1->at(key[0], key[1]) * p;
    return out;
}

Rational contract_numeric(const CentralTensor& t, const Mat2& x1, const Mat2& x2, const Mat2& x3) {
    auto m1 = sym_power_numeric(x1, t.label.a);
    auto m2 = sym_power_numeric(x2, t.label.b);
    auto m3 = sym_power_numeric(x3, t.label.c);
    Rational s(0);
    for (const auto& [key, w] : t.terms) {
        const auto& [du, ve] = key;
        s += w * m1[du[0]][ve[0]] * m2[du[1]][ve[1]] * m3[du[2]][ve[2]];
    }
    return s;
}

Polynomial tensorial_central_function(const Rank3Label& label) { return contract(central_tensor(label)); }

std::vector<Rational> entry_values(const Mat2& x1, const Mat2& x2, const Mat2& x3) {
    return {x1.a, x1.b, x1.c, x1.d, x2.a, x2.b, x2.c, x2.d, x3.a, x3.b, x3.c, x3.d};
}

}  // namespace cfn
