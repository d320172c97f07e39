#pragma once

#include "cfn/rad_exact.hpp"
#include "cfn/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfn {

class InadmissibleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EdgeCounts {
    int e_a;
    int e_b;
    int e_c;
    int e_total;
    friend bool operator==(const EdgeCounts&, const EdgeCounts&) = default;
};

bool is_admissible(int a, int b, int c);
/// Labels c with {a,b,c} admissible, largest first.
std::vector<int> admissible_range(int a, int b);
void require_admissible(int a, int b, int c);

EdgeCounts edge_counts(int a, int b, int c);
/// e_a(b,c) = (b+c-a)/2: strands at the vertex avoiding edge a.
int edge_count(int a, int b, int c);
/// (-1)^{e_a(b,c)}
int sign_s(int a, int b, int c);

long delta(int c);
Rational theta(int a, int b, int c);
Rational bubble_const(int c, int a, int b);
Rational fusion_const(int c, int a, int b);

/// Spin-1 recoupling coefficient for (a,c) -> (a',c') around b.
Rational six_j_spin1(int a_new, int c_new, int a, int b, int c);

struct FusionKey {
    int b, a, a_new, c, c_new;
};

/// Unnormalized fusion coefficient; empty when either vertex is inadmissible.
std::optional<Rational> fusion_coeff(const FusionKey& k);
/// Normalized coefficient; empty when either vertex is inadmissible.
std::optional<RadExact> norm_fusion_coeff(const FusionKey& k);

bool is_i_admissible(const std::vector<int>& i, const std::vector<int>& j);
std::vector<std::vector<int>> enumerate_i_admissible(const std::vector<int>& i);

/// Intermediate labels e (decreasing) with e in [a,b] and d in [e,c].
std::vector<int> multiplicity_intermediates(int a, int b, int c, int d);

}  // namespace cfn
