#pragma once

#include "cfn/labels.hpp"
#include "cfn/matrix2.hpp"
#include "cfn/polynomial.hpp"

#include <array>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace cfn {

/// Action of a generic matrix on V_n. Row and column k index the basis vector
/// e1^{n-k} e2^k; entries live in entry_alphabet().
struct SymMatrix {
    int n = 0;
    std::vector<Polynomial> entries;

    const Polynomial& at(int k, int l) const { return entries[std::size_t(k) * (n + 1) + l]; }
};

/// Memoized per (generator, n); generator is 1, 2 or 3.
std::shared_ptr<const SymMatrix> sym_power_matrix(int generator, int n);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Same action evaluated at a concrete matrix.
RationalMatrix sym_power_numeric(const Mat2& x, int n);

/// Matrix of x acting on Sym^n in the basis e1^{n-k} e2^k: diag(C(n,k)) * sym_power_numeric(x, n).
RationalMatrix sym_power_action(const Mat2& x, int n);

struct CGTerm {
    int i;
    int j;
    Rational coeff;
};

/// images[k] is the image of basis vector c_k of V_c inside V_a (x) V_b.
struct CGMap {
    int a = 0, b = 0, c = 0;
    std::vector<std::vector<CGTerm>> images;
};

CGMap cg_injection(int a, int b, int c);

using TripleIndex = std::array<int, 3>;
using TripleImage = std::vector<std::pair<TripleIndex, Rational>>;

/// V_d -> V_e (x) V_{i3} -> V_{i1} (x) V_{i2} (x) V_{i3}; one image per basis vector of V_d.
std::vector<TripleImage> left_assoc_injection(const std::array<int, 3>& i, int e, int d);

struct CentralTensor {
    Rank3Label label;
    /// (dual multi-index, vector multi-index) -> coefficient
    std::map<std::pair<TripleIndex, TripleIndex>, Rational> terms;
};

CentralTensor central_tensor(const Rank3Label& label);
Polynomial contract(const CentralTensor& t);
/// Contraction at concrete matrices without building the entry polynomial.
Rational contract_numeric(const CentralTensor& t, const Mat2& x1, const Mat2& x2, const Mat2& x3);

Polynomial tensorial_central_function(const Rank3Label& label);

/// Entry-variable values for a concrete triple, in entry_alphabet() order.
std::vector<Rational> entry_values(const Mat2& x1, const Mat2& x2, const Mat2& x3);

}  // namespace cfn
