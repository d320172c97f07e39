#include "cfn/recurrence.hpp"
#include "cfn/tensorial.hpp"
#include "cfn/tracecoords.hpp"
#include "golden.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace cfn;

namespace {

Polynomial tp(std::string_view text) { return Polynomial::parse_text(rank3_alphabet(), text); }

Mat2 letter(const SL2Triple& m, int g) {
    const Mat2& x = g == 1 || g == -1 ? m.x1 : g == 2 || g == -2 ? m.x2 : m.x3;
    return g > 0 ? x : x.sl2_inverse();
}

Rational word_trace(const SL2Triple& m, const TraceWord& w) {
    Mat2 p;
    for (int g : w) p = p * letter(m, g);
    return p.trace();
}

TraceWord random_word(std::mt19937_64& eng, int max_len) {
    static const int letters[] = {1, -1, 2, -2, 3, -3};
    int len = 1 + int(eng() % std::uint64_t(max_len));
    TraceWord w;
    for (int k = 0; k < len; ++k) w.push_back(letters[eng() % 6]);
    return w;
}

TraceWord cat(std::initializer_list<TraceWord> parts) {
    TraceWord w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}

Polynomial tr(std::initializer_list<TraceWord> parts) { return reduce_trace_word(cat(parts)); }

}  // namespace

TEST_CASE("reduce_trace_word examples") {
    CHECK(reduce_trace_word({1, -2}) == tp("t1*t2 - t12"));
    CHECK(reduce_trace_word({3, -2, 1}) == tp("t123 + t1*t2*t3 - t12*t3 - t1*t23"));
    CHECK(reduce_trace_word({3, 1, -2}) == tp("t13*t2 - t123"));
    CHECK(reduce_trace_word({1}) == tp("t1"));
    CHECK(reduce_trace_word({-1}) == tp("t1"));
    CHECK(reduce_trace_word({1, 1}) == tp("t1^2 - 2"));
    CHECK(reduce_trace_word({2, 1}) == tp("t12"));
    CHECK(reduce_trace_word({1, 3, 2}) == t132_poly());
    CHECK(reduce_trace_word({1, -1}) == tp("2"));
    CHECK(reduce_trace_word({2, 3, 1}) == tp("t123"));
}

TEST_CASE("P, Q and t132") {
    auto [P, Q] = pq_polys();
    CHECK(P == tp("-t1*t2*t3 + t12*t3 + t2*t13 + t1*t23"));
    CHECK(Q == tp("t1^2 + t2^2 + t3^2 + t12^2 + t23^2 + t13^2 - t1*t2*t12 - t2*t3*t23 - t3*t1*t13 + t12*t23*t13 - 4"));
    CHECK(t132_poly() == P - tp("t123"));
    std::vector<Rational> two(7, Rational(2));
    CHECK(t132_poly().evaluate(two) == Rational(2));
    CHECK(Q.evaluate(two) == Rational(4));
    Polynomial rel = tp("t123^2") - P * tp("t123") + Q;
    for (std::uint64_t s = 0; s < 100; ++s) CHECK(rel.evaluate(evaluate_traces(random_triple(s)).values()) == 0);
    CHECK(reduce_t123(rel).is_zero());
    CHECK(reduce_t123(tp("t123^2")) == P * tp("t123") - Q);
}

TEST_CASE("random_sl2") {
    CHECK(random_sl2(5, 0) == Mat2::identity());
    std::set<std::string> seen;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        Mat2 m = random_sl2(s);
        if (s < 100) CHECK(m.det() == Rational(1));
        seen.insert(m.a.to_string() + " " + m.b.to_string() + " " + m.c.to_string() + " " + m.d.to_string());
    }
    CHECK(seen.size() >= 990);
    CHECK(random_sl2(42) == random_sl2(42));
    for (std::uint64_t s = 0; s < 100; ++s) CHECK(random_conjugator(s).det() == Rational(1));
}

TEST_CASE("evaluate_traces") {
    auto id = evaluate_traces(Mat2::identity(), Mat2::identity(), Mat2::identity());
    for (const auto& v : id.values()) CHECK(v == Rational(2));
    Mat2 d{Rational(2), Rational(0), Rational(0), Rational(1, 2)};
    auto t = evaluate_traces(d, Mat2::identity(), Mat2::identity());
    Rational f(5, 2);
    CHECK(t.values() == std::vector<Rational>{f, 2, 2, f, f, 2, f});
}

TEST_CASE("evaluate_traces is conjugation invariant") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        SL2Triple m = random_triple(s);
        Mat2 g = random_conjugator(s), gi = g.sl2_inverse();
        CHECK(evaluate_traces(m).values() == evaluate_traces(g * m.x1 * gi, g * m.x2 * gi, g * m.x3 * gi).values());
    }
}

TEST_CASE("word reduction agrees with matrix traces") {
    std::mt19937_64 eng(77);
    std::vector<SL2Triple> triples;
    for (std::uint64_t s = 0; s < 20; ++s) triples.push_back(random_triple(s + 500));
    for (int k = 0; k < 50; ++k) {
        TraceWord w = random_word(eng, 4);
        Polynomial p = reduce_trace_word(w);
        CHECK(p.degree_in(6) <= 1);
        for (const auto& m : triples) CHECK(p.evaluate(evaluate_traces(m).values()) == word_trace(m, w));
    }
}

TEST_CASE("sum formula") {
    TraceWord perms[][3] = {{{1}, {2}, {3}}, {{2}, {3}, {1}}, {{3}, {1}, {2}}};
    for (auto& p : perms) {
        const auto &x = p[0], &y = p[1], &z = p[2];
        Polynomial lhs = tr({x, y, z}) + tr({x, z, y});
        Polynomial rhs = tr({x, y}) * tr({z}) + tr({x, z}) * tr({y}) + tr({z, y}) * tr({x}) - tr({x}) * tr({y}) * tr({z});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("length-4 reduction identity") {
    // holds with 2 tr(w1 w2 w3 w4) on the left and tr(w1 w2) tr(w3 w4) counted once
    std::mt19937_64 eng(4);
    for (int k = 0; k < 40; ++k) {
        TraceWord w1 = random_word(eng, 2), w2 = random_word(eng, 2), w3 = random_word(eng, 2),
                  w4 = random_word(eng, 2);
        Polynomial rhs = tr({w1}) * tr({w2}) * tr({w3}) * tr({w4}) + tr({w1}) * tr({w2, w3, w4}) +
                         tr({w2}) * tr({w3, w4, w1}) + tr({w3}) * tr({w4, w1, w2}) + tr({w4}) * tr({w1, w2, w3}) +
                         tr({w1, w2}) * tr({w3, w4}) + tr({w1, w4}) * tr({w2, w3}) - tr({w1, w3}) * tr({w2, w4}) -
                         tr({w1}) * tr({w2}) * tr({w3, w4}) - tr({w1}) * tr({w4}) * tr({w2, w3}) -
                         tr({w2}) * tr({w3}) * tr({w1, w4}) - tr({w3}) * tr({w4}) * tr({w1, w2});
        CHECK(reduce_t123(Rational(2) * tr({w1, w2, w3, w4})) == reduce_t123(rhs));
    }
}

TEST_CASE("goldman slice") {
    TraceTuple id{2, 2, 2, 2, 2, 2, 2};
    CHECK_THROWS_AS(goldman_slice(id), SliceSingular);
    int done = 0;
    for (std::uint64_t s = 0; done < 50; ++s) {
        TraceTuple t = evaluate_traces(random_triple(s));
        ComplexTriple m;
        try {
            m = goldman_slice(t);
        } catch (const SliceSingular&) {
            continue;
        }
        ++done;
        for (const auto& x : {m.x1, m.x2, m.x3}) CHECK(std::abs(x.det() - Complex(1)) < 1e-12);
        auto got = complex_traces(m);
        auto want = t.values();
        for (std::size_t k = 0; k < 7; ++k) CHECK(std::abs(got[k] - Complex(want[k].to_long_double())) < 1e-9);
        CHECK(m.x1.a == Complex(want[0].to_long_double()));
        CHECK(m.x1.b == Complex(-1));
    }
}

TEST_CASE("interpolation examples") {
    auto E = entry_alphabet();
    CHECK(interpolate_to_traces(Polynomial::parse_text(E, "x1_11 + x1_22"), 1) == tp("t1"));
    CHECK(interpolate_to_traces(tensorial_central_function({1, 1, 0, 0, 0, 0}), 2) == tp("t1*t2 - t12"));
    Polynomial p = tensorial_central_function(cfindex_to_label({1, 1, 1, 3, 1, 1}));
    CHECK(interpolate_to_traces(p, 3) == tp("1/3*t3*t12 + 1/3*t2*t13 + 1/3*t1*t23"));
    CHECK_THROWS_AS(interpolate_to_traces(Polynomial::parse_text(E, "x1_12"), 2), InterpolationError);
    CHECK_THROWS_AS(interpolate_to_traces(tp("t1"), 1), AlphabetMismatch);
}

TEST_CASE("interpolation is a projection") {
    std::mt19937_64 eng(8);
    auto basis = trace_basis_total(3);
    for (int k = 0; k < 10; ++k) {
        Polynomial q(rank3_alphabet());
        for (int t = 0; t < 6; ++t) q.add_term(basis[eng() % basis.size()], testutil::random_rational(eng));
        TripleFunction f = [&](const SL2Triple& m) { return q.evaluate(evaluate_traces(m).values()); };
        CHECK(interpolate_in_basis(f, basis, std::uint64_t(k) + 1) == q);
    }
}

TEST_CASE("trace bases") {
    for (const auto& m : trace_basis_total(4)) {
        CHECK(m.degree() <= 4);
        CHECK(m.exp[6] <= 1);
    }
    auto tb = trace_basis_total(4);
    for (const auto& m : trace_basis_multidegree(2, 1, 1))
        CHECK(std::find(tb.begin(), tb.end(), m) != tb.end());
}

TEST_CASE("cross_validate examples") {
    auto base = cross_validate(Rank3Label{}, 5, 1);
    CHECK(base.ok());
    CHECK(base.ratio == Rational(1));
    for (const auto& g : golden::rank3) {
        auto r = cross_validate(cfindex_to_label(g.index), 5, 3);
        CHECK_MESSAGE(r.ok(), g.index.to_string());
    }
    auto large = cross_validate(cfindex_to_label(golden::large_index), 20, 11);
    CHECK(large.ok());
    CHECK(large.ratio == Rational(1));
}

TEST_CASE("tensorial pipeline reproduces the table") {
    for (const auto& g : golden::rank3)
        CHECK_MESSAGE(tensorial_rank3_cf(cfindex_to_label(g.index)) == tp(g.poly), g.index.to_string());
}
