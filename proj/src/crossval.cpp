#include "cfn/recurrence.hpp"
#include "cfn/tensorial.hpp"
#include "cfn/tracecoords.hpp"

namespace cfn {

Polynomial tensorial_rank3_cf(const Rank3Label& label, std::uint64_t seed) {
    CentralTensor t = central_tensor(label);
    TripleFunction f = [&](const SL2Triple& m) { return contract_numeric(t, m.x1, m.x2, m.x3); };
    return interpolate_in_basis(f, trace_basis_multidegree(label.a, label.b, label.c), seed);
}

CrossValidationReport cross_validate(const Rank3Label& label, int trials, std::uint64_t seed) {
    CrossValidationReport report;
    report.label = label;
    report.trials = trials;
    Polynomial entry = tensorial_central_function(label);
    Polynomial traces = rank3_cf(label);
    std::optional<Rational> ratio;
    bool ratio_consistent = true;
    for (int k = 0; k < trials; ++k) {
        SL2Triple t = random_triple(seed + std::uint64_t(k));
        Rational lhs = entry.evaluate(entry_values(t.x1, t.x2, t.x3));
        Rational rhs = traces.evaluate(evaluate_traces(t).values());
        if (lhs != rhs) report.failures.push_back(k);
        if (rhs.is_zero()) {
            if (!lhs.is_zero()) ratio_consistent = false;
            continue;
        }
        Rational r = lhs / rhs;
        if (!ratio)
            ratio = r;
        else if (*ratio != r)
            ratio_consistent = false;
    }
    if (ratio_consistent) report.ratio = ratio;
    return report;
}

}  // namespace cfn
