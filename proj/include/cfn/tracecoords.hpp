#pragma once

#include "cfn/labels.hpp"
#include "cfn/matrix2.hpp"
#include "cfn/polynomial.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cfn {

/// Letters are generator indices 1..3; a negative index is the inverse.
using TraceWord = std::vector<int>;

/// Trace of the word as a polynomial in rank3_alphabet() with t123-degree at most one.
Polynomial reduce_trace_word(const TraceWord& w);

/// Variable of rank3_alphabet() by name ("t1", "t12", ...).
Polynomial trace_var(std::string_view name);

/// t123^2 - P*t123 + Q = 0 on the character variety.
std::pair<Polynomial, Polynomial> pq_polys();
/// t132 = P - t123
Polynomial t132_poly();
/// Rewrites p modulo the quadratic relation so t123 appears at most linearly.
Polynomial reduce_t123(const Polynomial& p);

struct SL2Triple {
    Mat2 x1, x2, x3;
};

/// Product of `steps` alternating unipotent shears with small rational
/// parameters; identity when steps is zero.
Mat2 random_sl2(std::uint64_t seed, int steps = 4);
SL2Triple random_triple(std::uint64_t seed, int steps = 4);
/// Random determinant-one conjugator built the same way.
Mat2 random_conjugator(std::uint64_t seed);

struct TraceTuple {
    Rational t1, t2, t3, t12, t13, t23, t123;

    /// In rank3_alphabet() order.
    std::vector<Rational> values() const { return {t1, t2, t3, t12, t13, t23, t123}; }
};

TraceTuple evaluate_traces(const Mat2& x1, const Mat2& x2, const Mat2& x3);
inline TraceTuple evaluate_traces(const SL2Triple& t) { return evaluate_traces(t.x1, t.x2, t.x3); }

using Complex = std::complex<long double>;

struct ComplexMat2 {
    Complex a, b, c, d;

    Complex det() const { return a * d - b * c; }
    Complex trace() const { return a + d; }
    friend ComplexMat2 operator*(const ComplexMat2& x, const ComplexMat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
};

struct ComplexTriple {
    ComplexMat2 x1, x2, x3;
};

class SliceSingular : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Explicit triple realizing the seven traces; floating point.
ComplexTriple goldman_slice(const TraceTuple& t);
/// t1, t2, t3, t12, t13, t23, t123 of a complex triple.
std::array<Complex, 7> complex_traces(const ComplexTriple& m);

/// Monomials with total degree <= s and t123-degree <= 1.
std::vector<Monomial> trace_basis_total(int s);
/// Monomials whose X1/X2/X3 degrees are bounded by (and congruent mod 2 to) the
/// given labels, with t123-degree <= 1.
std::vector<Monomial> trace_basis_multidegree(int a, int b, int c);

using TripleFunction = std::function<Rational(const SL2Triple&)>;

class InterpolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact interpolation of an invariant function over the given monomial basis.
/// Throws InterpolationError when the function is not in the span.
Polynomial interpolate_in_basis(const TripleFunction& f, const std::vector<Monomial>& basis,
                                std::uint64_t seed = 1);

/// Entry polynomial to trace polynomial of total degree <= s.
Polynomial interpolate_to_traces(const Polynomial& p, int s, std::uint64_t seed = 1);

struct CrossValidationReport {
    Rank3Label label;
    int trials = 0;
    std::vector<int> failures;
    /// Tensorial / combinatorial when every nonzero trial gave the same ratio.
    std::optional<Rational> ratio;

    bool ok() const { return failures.empty(); }
};

/// Tensorial pipeline end to end: contraction, then exact interpolation over
/// the multidegree basis of the label.
Polynomial tensorial_rank3_cf(const Rank3Label& label, std::uint64_t seed = 1);

CrossValidationReport cross_validate(const Rank3Label& label, int trials, std::uint64_t seed);

}  // namespace cfn
