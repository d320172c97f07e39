#include "cfn/recurrence.hpp"

#include "cfn/reptheory.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <shared_mutex>
#include <thread>

namespace cfn {

namespace {

template <class Key>
class Memo {
public:
    std::optional<Polynomial> find(const Key& k) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    // First insertion wins so concurrent computations converge on one value.
    Polynomial insert(const Key& k, Polynomial p) {
        std::unique_lock lock(mu_);
        return map_.emplace(k, std::move(p)).first->second;
    }

    std::vector<std::pair<Key, Polynomial>> snapshot() const {
        std::shared_lock lock(mu_);
        return {map_.begin(), map_.end()};
    }

    void clear() {
        std::unique_lock lock(mu_);
        map_.clear();
    }

private:
    mutable std::shared_mutex mu_;
    std::map<Key, Polynomial> map_;
};

Memo<int>& rank1_memo() {
    static Memo<int> m;
    return m;
}

Memo<std::array<int, 3>>& rank2_memo() {
    static Memo<std::array<int, 3>> m;
    return m;
}

Memo<BarbellLabel>& barbell_memo() {
    static Memo<BarbellLabel> m;
    return m;
}

Memo<Rank3Label>& rank3_memo() {
    static Memo<Rank3Label> m;
    return m;
}

struct CycleTerm {
    std::vector<int> labels;
    Rational coeff;
};

// Terms of loop * diagram for a cycle whose vertex i joins edge i-1 and edge i
// and carries third label thirds[i]. Inadmissible relabelings are dropped.
std::optional<Rational> cycle_coefficient(const std::vector<int>& old, const std::vector<int>& fresh,
                                          const std::vector<int>& thirds, const std::vector<int>& parity) {
    const std::size_t n = old.size();
    Rational coeff(1);
    for (std::size_t i = 0; i < n; ++i) {
        if (fresh[i] < 0 || (fresh[i] != old[i] + 1 && fresh[i] != old[i] - 1)) return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t prev = (i + n - 1) % n;
        auto f = fusion_coeff({thirds[i], old[prev], fresh[prev], old[i], fresh[i]});
        if (!f) return std::nullopt;
        coeff *= *f;
    }
    for (std::size_t i = 0; i < n; ++i) {
        coeff /= fusion_const(fresh[i], 1, old[i]);
        if (fresh[i] < old[i] && parity[i] % 2) coeff = -coeff;
    }
    return coeff;
}

std::vector<CycleTerm> cycle_terms(const std::vector<int>& old, const std::vector<int>& thirds,
                                   const std::vector<int>& parity) {
    const std::size_t n = old.size();
    std::vector<CycleTerm> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> fresh(n);
        for (std::size_t i = 0; i < n; ++i) fresh[i] = old[i] + (((mask >> i) & 1u) ? -1 : 1);
        auto c = cycle_coefficient(old, fresh, thirds, parity);
        if (c && !c->is_zero()) out.push_back({std::move(fresh), *c});
    }
    return out;
}

Polynomial xvar(std::size_t i) { return Polynomial::variable(rank2_alphabet(), i); }

}  // namespace

Polynomial rank1_cf(int n) {
    if (n < 0) throw std::invalid_argument("rank-1 label must be non-negative");
    if (auto hit = rank1_memo().find(n)) return *hit;
    const Alphabet& alpha = rank1_alphabet();
    Polynomial prev(alpha, Rational(1));
    Polynomial cur = n == 0 ? prev : Polynomial::variable(alpha, 0);
    Polynomial x = Polynomial::variable(alpha, 0);
    for (int k = 1; k < n; ++k) {
        Polynomial next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return rank1_memo().insert(n, std::move(cur));
}

Polynomial rank2_cf(int a, int b, int c) {
    require_admissible(a, b, c);
    std::array<int, 3> key{a, b, c};
    if (auto hit = rank2_memo().find(key)) return *hit;
    const Alphabet& alpha = rank2_alphabet();
    if (a == 0 && b == 0 && c == 0) return rank2_memo().insert(key, Polynomial(alpha, Rational(1)));

    // Theta graph: both vertices are {a,b,c}. The z-loop runs along a and b,
    // the x-loop along a and c, the y-loop along b and c.
    auto e = edge_counts(a, b, c);
    std::array<int, 3> lab{a, b, c};
    std::size_t p, q, var;
    if (e.e_c > 0) {
        p = 0, q = 1, var = 2;
    } else if (e.e_b > 0) {
        p = 0, q = 2, var = 0;
    } else {
        p = 1, q = 2, var = 1;
    }
    int third = lab[3 - p - q];
    std::vector<int> old{lab[p] - 1, lab[q] - 1};
    std::array<int, 3> low = lab;
    low[p] -= 1;
    low[q] -= 1;
    Polynomial result = xvar(var) * rank2_cf(low[0], low[1], low[2]);
    for (const auto& t : cycle_terms(old, {third, third}, {0, 0})) {
        std::array<int, 3> lt = lab;
        lt[p] = t.labels[0];
        lt[q] = t.labels[1];
        if (lt == lab) continue;
        result.add_scaled(rank2_cf(lt[0], lt[1], lt[2]), -t.coeff);
    }
    return rank2_memo().insert(key, std::move(result));
}

Polynomial barbell(const BarbellLabel& l) {
    if (!l.admissible()) {
        bool left = is_admissible(l.a, l.a, l.b);
        int x = left ? l.c : l.a;
        throw InadmissibleError("barbell " + l.to_string() + ": vertex " + (left ? "{c,c,b}" : "{a,a,b}") + " = (" +
                                std::to_string(x) + "," + std::to_string(x) + "," + std::to_string(l.b) +
                                ") is not admissible");
    }
    if (auto hit = barbell_memo().find(l)) return *hit;
    const Alphabet& alpha = rank2_alphabet();
    Polynomial result(alpha);
    if (l.b == 0) {
        result = rank1_cf(l.a).substitute({xvar(0)}) * rank1_cf(l.c).substitute({xvar(1)});
    } else if (is_admissible(l.a - 1, l.a - 1, l.b)) {
        // single-edge loop around the a circle
        result = xvar(0) * barbell({l.a - 1, l.c, l.b});
        for (const auto& t : cycle_terms({l.a - 1}, {l.b}, {1}))
            if (t.labels[0] != l.a) result.add_scaled(barbell({t.labels[0], l.c, l.b}), -t.coeff);
    } else if (is_admissible(l.c - 1, l.c - 1, l.b)) {
        result = xvar(1) * barbell({l.a, l.c - 1, l.b});
        for (const auto& t : cycle_terms({l.c - 1}, {l.b}, {1}))
            if (t.labels[0] != l.c) result.add_scaled(barbell({l.a, t.labels[0], l.b}), -t.coeff);
    } else {
        // b = 2a = 2c: multiply the lower barbell by tr(XY), whose loop crosses the bar twice
        const int A = l.a - 1, C = l.c - 1, B = l.b - 2;
        std::map<BarbellLabel, Rational> terms;
        for (int a1 : {A + 1, A - 1})
            for (int c1 : {C + 1, C - 1})
                for (int b1 : {B + 1, B - 1})
                    for (int b2 : {b1 + 1, b1 - 1}) {
                        if (a1 < 0 || c1 < 0 || b1 < 0 || b2 < 0) continue;
                        auto f1 = fusion_coeff({A, A, a1, B, b1});
                        auto f2 = fusion_coeff({C, C, c1, B, b1});
                        if (!f1 || !f2) continue;
                        auto f3 = fusion_coeff({a1, A, a1, b1, b2});
                        auto f4 = fusion_coeff({c1, C, c1, b1, b2});
                        if (!f3 || !f4) continue;
                        Rational coeff = *f1 * *f2 * *f3 * *f4;
                        coeff /= fusion_const(a1, 1, A) * fusion_const(c1, 1, C) * fusion_const(b1, 1, B) *
                                 fusion_const(b2, 1, b1);
                        if (a1 < A) coeff = -coeff;
                        if (c1 < C) coeff = -coeff;
                        terms[{a1, c1, b2}] += coeff;
                    }
        result = xvar(2) * barbell({A, C, B});
        for (const auto& [lbl, coeff] : terms) {
            if (lbl == l || coeff.is_zero()) continue;
            result.add_scaled(barbell(lbl), -coeff);
        }
    }
    return barbell_memo().insert(l, std::move(result));
}

int edge_label(const Rank3Label& l, Edge e) {
    switch (e) {
        case Edge::A: return l.a;
        case Edge::B: return l.b;
        case Edge::C: return l.c;
        case Edge::D: return l.d;
        case Edge::E: return l.e;
        case Edge::F: return l.f;
    }
    return 0;
}

void set_edge_label(Rank3Label& l, Edge e, int value) {
    switch (e) {
        case Edge::A: l.a = value; break;
        case Edge::B: l.b = value; break;
        case Edge::C: l.c = value; break;
        case Edge::D: l.d = value; break;
        case Edge::E: l.e = value; break;
        case Edge::F: l.f = value; break;
    }
}

const std::vector<LoopSpec>& rank3_loops() {
    using enum Edge;
    static const std::vector<LoopSpec> loops = {
        {LoopId::AB, "(a,b)", {A, B}, {F, E}, {0, 0}, {1, -2}},
        {LoopId::CD, "(c,d)", {C, D}, {F, E}, {0, 0}, {3}},
        {LoopId::AEDF, "(a,e,d,f)", {A, E, D, F}, {B, B, C, C}, {0, 1, 0, 1}, {1}},
        {LoopId::BEDF, "(b,e,d,f)", {B, E, D, F}, {A, A, C, C}, {0, 0, 0, 0}, {2}},
        {LoopId::BECF, "(b,e,c,f)", {B, E, C, F}, {A, A, D, D}, {0, 1, 0, 1}, {2, -3}},
        {LoopId::AECF, "(a,e,c,f)", {A, E, C, F}, {B, B, D, D}, {0, 0, 0, 0}, {1, -3}},
    };
    return loops;
}

const LoopSpec& loop_spec(LoopId id) { return rank3_loops().at(static_cast<std::size_t>(id)); }

namespace {

std::vector<int> labels_on(const Rank3Label& l, const std::vector<Edge>& edges) {
    std::vector<int> out;
    for (Edge e : edges) out.push_back(edge_label(l, e));
    return out;
}

bool same_off_loop(const LoopSpec& loop, const Rank3Label& x, const Rank3Label& y) {
    using enum Edge;
    for (Edge e : {A, B, C, D, E, F}) {
        if (std::find(loop.edges.begin(), loop.edges.end(), e) != loop.edges.end()) continue;
        if (edge_label(x, e) != edge_label(y, e)) return false;
    }
    return true;
}

}  // namespace

std::optional<Rational> loop_coefficient(const LoopSpec& loop, const Rank3Label& source, const Rank3Label& target) {
    if (!source.admissible() || !same_off_loop(loop, source, target)) return std::nullopt;
    return cycle_coefficient(labels_on(source, loop.edges), labels_on(target, loop.edges),
                             labels_on(source, loop.thirds), loop.parity);
}

std::optional<RadExact> loop_coefficient_radical(const LoopSpec& loop, const Rank3Label& source,
                                                 const Rank3Label& target) {
    if (!source.admissible() || !same_off_loop(loop, source, target)) return std::nullopt;
    auto old = labels_on(source, loop.edges);
    auto fresh = labels_on(target, loop.edges);
    auto thirds = labels_on(source, loop.thirds);
    const std::size_t n = old.size();
    for (std::size_t i = 0; i < n; ++i)
        if (fresh[i] < 0 || (fresh[i] != old[i] + 1 && fresh[i] != old[i] - 1)) return std::nullopt;
    RadExact prod = RadExact::from_rational(Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t prev = (i + n - 1) % n;
        auto f = norm_fusion_coeff({thirds[i], old[prev], fresh[prev], old[i], fresh[i]});
        if (!f) return std::nullopt;
        prod = prod * *f;
        if (loop.parity[i] % 2 && sign_s(fresh[i], 1, old[i]) < 0) prod = -prod;
    }
    return prod;
}

FormalSum multiply_simple_loop(const Rank3Label& label, const LoopSpec& loop) {
    if (!label.admissible()) throw InadmissibleError("label " + label.to_string() + ": " + label.violation());
    FormalSum out;
    auto old = labels_on(label, loop.edges);
    for (const auto& t : cycle_terms(old, labels_on(label, loop.thirds), loop.parity)) {
        Rank3Label target = label;
        for (std::size_t i = 0; i < loop.edges.size(); ++i) set_edge_label(target, loop.edges[i], t.labels[i]);
        if (target.admissible()) out[target] += t.coeff;
    }
    return out;
}

ReduceStep reduce_step(const Rank3Label& l) {
    if (!l.admissible()) throw InadmissibleError("label " + l.to_string() + ": " + l.violation());
    if (l == Rank3Label{}) throw std::invalid_argument("the base label has no reduction step");
    auto pos = [](int opposite, int x, int y) { return edge_count(opposite, x, y) > 0; };
    const int a = l.a, b = l.b, c = l.c, d = l.d, e = l.e, f = l.f;
    std::optional<LoopId> loop;
    int which = 0;
    if (pos(e, a, b) && pos(f, a, b)) {
        which = 1, loop = LoopId::AB;
    } else if (pos(e, c, d) && pos(f, c, d)) {
        which = 2, loop = LoopId::CD;
    } else if (pos(b, a, e) && pos(b, a, f) && pos(c, d, e) && pos(c, d, f)) {
        which = 3, loop = LoopId::AEDF;
    } else if (pos(a, b, e) && pos(a, b, f) && pos(c, d, e) && pos(c, d, f)) {
        which = 4, loop = LoopId::BEDF;
    } else if (pos(a, b, e) && pos(a, b, f) && pos(d, c, e) && pos(d, c, f)) {
        which = 5, loop = LoopId::BECF;
    } else if (pos(b, a, e) && pos(b, a, f) && pos(d, c, e) && pos(d, c, f)) {
        which = 6, loop = LoopId::AECF;
    } else if (e == 0) {
        which = 7;
    } else if (f == 0) {
        which = 8;
    } else {
        throw std::logic_error("no reduction case applies to " + l.to_string());
    }
    ReduceStep step;
    step.reduction_case = which;
    step.loop = loop;
    if (!loop) return step;
    const LoopSpec& def = loop_spec(*loop);
    Rank3Label low = l;
    for (Edge x : def.edges) set_edge_label(low, x, edge_label(l, x) - 1);
    step.decremented = low;
    step.lower = multiply_simple_loop(low, def);
    auto top = step.lower.find(l);
    if (top == step.lower.end() || !top->second.is_one())
        throw std::logic_error("leading loop term of " + l.to_string() + " is not 1");
    step.lower.erase(top);
    return step;
}

namespace {

Polynomial tvar(const char* name) { return trace_var(name); }

Polynomial rank3_compute(const Rank3Label& l) {
    const Alphabet& alpha = rank3_alphabet();
    if (l == Rank3Label{}) return Polynomial(alpha, Rational(1));
    ReduceStep step = reduce_step(l);
    if (step.reduction_case == 7 || step.reduction_case == 8) {
        Polynomial x12 = tvar("t1") * tvar("t2") - tvar("t12");
        std::vector<Polynomial> images;
        Polynomial bb(rank2_alphabet());
        int bar;
        if (step.reduction_case == 7) {
            bar = l.f;
            bb = barbell({l.a, l.c, l.f});
            images = {x12, tvar("t3"), tvar("t2") * tvar("t13") - tvar("t123")};
        } else {
            bar = l.e;
            bb = barbell({l.c, l.a, l.e});
            images = {tvar("t3"), x12,
                      tvar("t123") + tvar("t1") * tvar("t2") * tvar("t3") - tvar("t12") * tvar("t3") -
                          tvar("t1") * tvar("t23")};
        }
        Polynomial out = reduce_t123(bb.substitute(images));
        if ((bar / 2) % 2) out = -out;
        return out;
    }
    const LoopSpec& def = loop_spec(*step.loop);
    Polynomial out = reduce_trace_word(def.multiplier) * rank3_cf(step.decremented);
    for (const auto& [lbl, coeff] : step.lower) out.add_scaled(rank3_cf(lbl), -coeff);
    return reduce_t123(out);
}

}  // namespace

Polynomial rank3_cf(const Rank3Label& label) {
    if (!label.admissible()) throw InadmissibleError("label " + label.to_string() + ": " + label.violation());
    if (auto hit = rank3_memo().find(label)) return *hit;
    return rank3_memo().insert(label, rank3_compute(label));
}

std::vector<Polynomial> rank3_batch(const std::vector<Rank3Label>& labels, unsigned threads) {
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return labels[x].order() < labels[y].order(); });
    std::vector<std::optional<Polynomial>> results(labels.size());
    if (threads <= 1) {
        for (std::size_t i : order) results[i] = rank3_cf(labels[i]);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t k = next++; k < order.size(); k = next++) results[order[k]] = rank3_cf(labels[order[k]]);
        };
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    std::vector<Polynomial> out;
    out.reserve(labels.size());
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

Rank3Label cfindex_to_label(const IndexTuple& ix) {
    if (ix.a < 0 || ix.b < 0 || ix.c < 0 || ix.d < 0)
        throw InadmissibleError("labels must be non-negative in " + ix.to_string());
    auto ints = multiplicity_intermediates(ix.a, ix.b, ix.c, ix.d);
    if (ints.empty()) {
        std::string why = (ix.a + ix.b + ix.c + ix.d) % 2 ? "a+b+c+d is odd" : "the triangle inequalities fail";
        throw InadmissibleError("V_" + std::to_string(ix.d) + " does not occur in V_" + std::to_string(ix.a) +
                                " (x) V_" + std::to_string(ix.b) + " (x) V_" + std::to_string(ix.c) +
                                ": no e makes both vertex triples {a,b,e} = (" + std::to_string(ix.a) + "," +
                                std::to_string(ix.b) + ",e) and {e,c,d} = (e," + std::to_string(ix.c) + "," +
                                std::to_string(ix.d) + ") admissible (" + why + ")");
    }
    const int m = int(ints.size());
    if (ix.i < 1 || ix.i > m || ix.j < 1 || ix.j > m)
        throw std::out_of_range("multiplicity index out of range 1.." + std::to_string(m) + " in " + ix.to_string());
    return {ix.a, ix.b, ix.c, ix.d, ints[std::size_t(ix.i - 1)], ints[std::size_t(ix.j - 1)]};
}

std::vector<IndexTuple> enumerate_order(int s) {
    std::vector<IndexTuple> out;
    for (int a = 0; a <= s; ++a)
        for (int b = 0; a + b <= s; ++b) {
            int c = s - a - b;
            for (int d = 0; d <= s; ++d) {
                int m = int(multiplicity_intermediates(a, b, c, d).size());
                for (int i = 1; i <= m; ++i)
                    for (int j = 1; j <= m; ++j) out.push_back({a, b, c, d, i, j});
            }
        }
    return out;
}

std::vector<std::pair<Rank3Label, Polynomial>> rank3_cache_snapshot() { return rank3_memo().snapshot(); }

void rank3_cache_insert(const Rank3Label& label, const Polynomial& p) { rank3_memo().insert(label, p); }

void clear_recurrence_caches() {
    rank1_memo().clear();
    rank2_memo().clear();
    barbell_memo().clear();
    rank3_memo().clear();
}

}  // namespace cfn
