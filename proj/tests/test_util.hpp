#pragma once

#include "cfn/polynomial.hpp"

#include <random>

namespace testutil {

inline cfn::Rational random_rational(std::mt19937_64& eng, int span = 9) {
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    return cfn::Rational(num(eng), den(eng));
}

/// Up to `terms` random terms with per-variable exponent at most `max_exp`.
inline cfn::Polynomial random_poly(std::mt19937_64& eng, const cfn::Alphabet& A, int terms = 5, int max_exp = 3) {
    cfn::Polynomial p(A);
    std::uniform_int_distribution<int> e(0, max_exp), nterms(0, terms);
    for (int t = nterms(eng); t > 0; --t) {
        cfn::Monomial m;
        for (std::size_t v = 0; v < A->size(); ++v) m.exp[v] = std::uint8_t(e(eng) * (eng() % 2));
        p.add_term(m, random_rational(eng));
    }
    return p;
}

}  // namespace testutil
