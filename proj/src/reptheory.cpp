#include "cfn/reptheory.hpp"

#include <algorithm>
#include <cstdlib>

namespace cfn {

namespace {

std::string triple_str(int a, int b, int c) {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "}";
}

}  // namespace

bool is_admissible(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) return false;
    if ((a + b + c) % 2 != 0) return false;
    return std::abs(a - b) <= c && c <= a + b;
}

std::vector<int> admissible_range(int a, int b) {
    std::vector<int> out;
    if (a < 0 || b < 0) return out;
    for (int j = 0; j <= std::min(a, b); ++j) out.push_back(a + b - 2 * j);
    return out;
}

void require_admissible(int a, int b, int c) {
    if (!is_admissible(a, b, c)) throw InadmissibleError("inadmissible triple " + triple_str(a, b, c));
}

EdgeCounts edge_counts(int a, int b, int c) {
    require_admissible(a, b, c);
    return {(b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2, (a + b + c) / 2};
}

int edge_count(int a, int b, int c) {
    require_admissible(a, b, c);
    return (b + c - a) / 2;
}

int sign_s(int a, int b, int c) { return edge_count(a, b, c) % 2 == 0 ? 1 : -1; }

long delta(int c) { return c + 1; }

Rational theta(int a, int b, int c) {
    auto e = edge_counts(a, b, c);
    return factorial(e.e_a) * factorial(e.e_b) * factorial(e.e_c) * factorial(e.e_total + 1) /
           (factorial(a) * factorial(b) * factorial(c));
}

Rational bubble_const(int c, int a, int b) { return theta(a, b, c) / Rational(delta(c)); }

Rational fusion_const(int c, int a, int b) { return Rational(delta(c)) / theta(a, b, c); }

namespace {

enum class Row { PP, MP, PM, MM };

Row classify(int a_new, int c_new, int a, int c) {
    bool ap = a_new == a + 1, am = a_new == a - 1;
    bool cp = c_new == c + 1, cm = c_new == c - 1;
    if (!(ap || am) || !(cp || cm))
        throw std::invalid_argument("fusion relabeling must change each label by one");
    if (ap) return cp ? Row::PP : Row::PM;
    return cp ? Row::MP : Row::MM;
}

}  // namespace

Rational six_j_spin1(int a_new, int c_new, int a, int b, int c) {
    require_admissible(a, b, c);
    Row row = classify(a_new, c_new, a, c);
    require_admissible(a_new, b, c_new);
    auto e = edge_counts(a, b, c);
    switch (row) {
        case Row::PP: return Rational(1);
        case Row::MP: return Rational(e.e_c, a);
        case Row::PM: return Rational(-e.e_a, c + 1);
        case Row::MM: return Rational(long(e.e_b) * (e.e_total + 1), long(a) * (c + 1));
    }
    return Rational(0);
}

std::optional<Rational> fusion_coeff(const FusionKey& k) {
    Row row = classify(k.a_new, k.c_new, k.a, k.c);
    if (!is_admissible(k.a, k.b, k.c) || !is_admissible(k.a_new, k.b, k.c_new)) return std::nullopt;
    auto e = edge_counts(k.a, k.b, k.c);
    switch (row) {
        case Row::PP: return Rational(1);
        case Row::MP: return Rational(-e.e_c, k.a + 1);
        case Row::PM: return Rational(-e.e_a, k.c + 1);
        case Row::MM: return Rational(-long(e.e_b) * (e.e_total + 1), long(k.a + 1) * (k.c + 1));
    }
    return std::nullopt;
}

std::optional<RadExact> norm_fusion_coeff(const FusionKey& k) {
    auto f = fusion_coeff(k);
    if (!f) return std::nullopt;
    Rational scale = fusion_const(k.a_new, 1, k.a) * fusion_const(k.c_new, 1, k.c);
    return RadExact(f->sign(), (*f) * (*f) / scale);
}

bool is_i_admissible(const std::vector<int>& i, const std::vector<int>& j) {
    if (i.empty() || j.size() + 1 != i.size()) return false;
    int partial = 0;
    int used = 0;
    for (std::size_t l = 0; l < j.size(); ++l) {
        partial += i[l];
        int bound = std::min(partial - 2 * used, i[l + 1]);
        if (j[l] < 0 || j[l] > bound) return false;
        used += j[l];
    }
    return true;
}

std::vector<std::vector<int>> enumerate_i_admissible(const std::vector<int>& i) {
    std::vector<std::vector<int>> out;
    if (i.empty()) return out;
    std::vector<int> j(i.size() - 1, 0);
    auto rec = [&](auto&& self, std::size_t l, int partial, int used) -> void {
        if (l == j.size()) {
            out.push_back(j);
            return;
        }
        partial += i[l];
        int bound = std::min(partial - 2 * used, i[l + 1]);
        for (int v = 0; v <= bound; ++v) {
            j[l] = v;
            self(self, l + 1, partial, used + v);
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

std::vector<int> multiplicity_intermediates(int a, int b, int c, int d) {
    std::vector<int> out;
    for (int e : admissible_range(a, b))
        if (is_admissible(e, c, d)) out.push_back(e);
    return out;
}

}  // namespace cfn
