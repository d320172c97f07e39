#pragma once

#include "cfn/labels.hpp"
#include "cfn/polynomial.hpp"
#include "cfn/rad_exact.hpp"
#include "cfn/tracecoords.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cfn {

/// Tr(X)-recurrence polynomials in rank1_alphabet().
Polynomial rank1_cf(int n);

/// chi^c_{a,b}(X1, X2) in rank2_alphabet(): x = tr X1, y = tr X2, z = tr X1 X2^{-1}.
Polynomial rank2_cf(int a, int b, int c);

/// Barbell function in rank2_alphabet() read as x = tr X, y = tr Y, z = tr XY.
Polynomial barbell(const BarbellLabel& label);

enum class Edge { A, B, C, D, E, F };

enum class LoopId { AB, CD, AEDF, BEDF, BECF, AECF };

/// A simple cycle of the rank-3 diagram. Vertex i joins edges[i-1] and edges[i]
/// (cyclically) and carries the third edge thirds[i]. A decremented edge
/// contributes (-1)^parity[i] to the term sign.
struct LoopSpec {
    LoopId id;
    std::string name;
    std::vector<Edge> edges;
    std::vector<Edge> thirds;
    std::vector<int> parity;
    TraceWord multiplier;
};

const LoopSpec& loop_spec(LoopId id);
const std::vector<LoopSpec>& rank3_loops();

int edge_label(const Rank3Label& l, Edge e);
void set_edge_label(Rank3Label& l, Edge e, int value);

/// Coefficient of `target` in loop * chi_{source}; empty when the relabeling is
/// not a +-1 move on the loop edges or produces an inadmissible vertex.
std::optional<Rational> loop_coefficient(const LoopSpec& loop, const Rank3Label& source, const Rank3Label& target);
/// Same coefficient as a cycle product of normalized fusion coefficients.
std::optional<RadExact> loop_coefficient_radical(const LoopSpec& loop, const Rank3Label& source,
                                                 const Rank3Label& target);

using FormalSum = std::map<Rank3Label, Rational>;

FormalSum multiply_simple_loop(const Rank3Label& label, const LoopSpec& loop);

struct ReduceStep {
    /// 1..6 for simple loops, 7 for e = 0, 8 for f = 0.
    int reduction_case = 0;
    std::optional<LoopId> loop;
    Rank3Label decremented;
    /// loop * chi_decremented minus chi_label; empty for cases 7 and 8.
    FormalSum lower;

    bool barbell_case() const { return reduction_case >= 7; }
};

ReduceStep reduce_step(const Rank3Label& label);

Polynomial rank3_cf(const Rank3Label& label);

/// Computes every label, lowest order first, optionally on several threads.
std::vector<Polynomial> rank3_batch(const std::vector<Rank3Label>& labels, unsigned threads = 1);

Rank3Label cfindex_to_label(const IndexTuple& index);
std::vector<IndexTuple> enumerate_order(int s);

/// Memo access, used for on-disk persistence.
std::vector<std::pair<Rank3Label, Polynomial>> rank3_cache_snapshot();
void rank3_cache_insert(const Rank3Label& label, const Polynomial& p);
void clear_recurrence_caches();

}  // namespace cfn
