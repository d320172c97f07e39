#include "cfn/labels.hpp"

#include "cfn/reptheory.hpp"

namespace cfn {

namespace {

std::string join(std::initializer_list<int> xs) {
    std::string s = "(";
    bool first = true;
    for (int x : xs) {
        if (!first) s += ',';
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

}  // namespace

bool Rank3Label::admissible() const { return violation().empty(); }

std::string Rank3Label::violation() const {
    const std::array<std::array<int, 3>, 4> vertices{{{a, b, e}, {e, c, d}, {a, b, f}, {f, c, d}}};
    const char* names[] = {"{a,b,e}", "{e,c,d}", "{a,b,f}", "{f,c,d}"};
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const auto& t = vertices[v];
        if (!is_admissible(t[0], t[1], t[2]))
            return std::string("vertex ") + names[v] + " = " + join({t[0], t[1], t[2]}) + " is not admissible";
    }
    return {};
}

std::string Rank3Label::to_string() const { return join({a, b, c, d, e, f}); }

bool BarbellLabel::admissible() const { return is_admissible(a, a, b) && is_admissible(c, c, b); }

std::string BarbellLabel::to_string() const { return join({a, c, b}); }

std::string IndexTuple::to_string() const { return join({a, b, c, d, i, j}); }

}  // namespace cfn
