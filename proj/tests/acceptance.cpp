#include "cfn/recurrence.hpp"
#include "cfn/reptheory.hpp"
#include "cfn/tensorial.hpp"
#include "cfn/tracecoords.hpp"
#include "golden.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace cfn;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

std::string fmt_ms(double ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f ms", ms);
    return buf;
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << " -- " << detail << std::endl;
}

Polynomial parse3(const std::string& s) { return Polynomial::parse_text(rank3_alphabet(), s); }

Polynomial r2(int a, int b, int c) {
    return is_admissible(a, b, c) ? rank2_cf(a, b, c) : Polynomial(rank2_alphabet());
}

void criterion1() {
    clear_recurrence_caches();
    auto t0 = Clock::now();
    std::vector<Polynomial> got;
    for (int n = 0; n <= 5; ++n) got.push_back(rank1_cf(n));
    double ms = ms_since(t0);
    int bad = 0;
    for (int n = 0; n <= 5; ++n)
        if (!(got[std::size_t(n)] == Polynomial::parse_text(rank1_alphabet(), golden::rank1[std::size_t(n)]))) ++bad;
    report(1, "rank-1 table n=0..5 bit-exact, < 1 ms", bad == 0 && ms < 1.0,
           std::to_string(6 - bad) + "/6 match, " + fmt_ms(ms));
}

void criterion2() {
    clear_recurrence_caches();
    auto t0 = Clock::now();
    std::vector<Polynomial> got;
    for (const auto& g : golden::rank3) got.push_back(rank3_cf(cfindex_to_label(g.index)));
    double ms = ms_since(t0);
    int bad = 0;
    std::string which;
    for (std::size_t k = 0; k < got.size(); ++k)
        if (!(got[k] == parse3(golden::rank3[k].poly))) {
            ++bad;
            which += " " + golden::rank3[k].index.to_string();
        }
    std::size_t count = 0;
    for (int s = 0; s <= 3; ++s) count += enumerate_order(s).size();
    bool ok = bad == 0 && golden::rank3.size() == 33 && count == 33 && ms < 1000.0;
    report(2, "rank-3 table orders 0-3 (33 functions) bit-exact, < 1 s", ok,
           std::to_string(golden::rank3.size() - std::size_t(bad)) + "/33 match, " + fmt_ms(ms) +
               (which.empty() ? "" : ", mismatches:" + which));
}

void criterion3() {
    clear_recurrence_caches();
    auto t0 = Clock::now();
    Polynomial p = rank3_cf(cfindex_to_label(golden::large_index));
    double ms = ms_since(t0);
    Polynomial want = parse3(golden::large_poly);
    bool coeffs = want.coefficient(parse3("t2^2*t1^3").terms().begin()->first) == Rational(1, 30) &&
                  want.coefficient(parse3("t2^2*t3^2*t1^3").terms().begin()->first) == Rational(4, 15) &&
                  want.coefficient(parse3("t2^2*t3*t13*t1^2").terms().begin()->first) == Rational(-7, 10) &&
                  want.coefficient(parse3("t23^2*t1").terms().begin()->first) == Rational(7, 30);
    report(3, "chi^{2,1}_{3,2,2,3} bit-exact, < 10 s", p == want && coeffs && ms < 10000.0,
           std::to_string(p.size()) + " terms (expected " + std::to_string(want.size()) + "), " + fmt_ms(ms));
}

void criterion4() {
    int bad = 0;
    std::string which;
    for (const auto& g : golden::barbell)
        if (!(barbell(g.label) == Polynomial::parse_text(rank2_alphabet(), g.poly))) {
            ++bad;
            which += " " + g.label.to_string();
        }
    report(4, "barbell table entries bit-exact", bad == 0,
           std::to_string(golden::barbell.size() - std::size_t(bad)) + "/" + std::to_string(golden::barbell.size()) +
               " match" + (which.empty() ? "" : ", mismatches:" + which));
}

void criterion5() {
    std::size_t total = 0;
    for (int s = 0; s <= 10; ++s) total += enumerate_order(s).size();
    report(5, "cumulative count over orders 0..10 is 2254", total == 2254, "count " + std::to_string(total));
}

void criterion6() {
    auto t0 = Clock::now();
    std::size_t labels = 0, failed = 0;
    std::string which;
    for (int s = 0; s <= 5; ++s)
        for (const auto& ix : enumerate_order(s)) {
            Rank3Label l = cfindex_to_label(ix);
            auto r = cross_validate(l, 20, 1000 + labels);
            ++labels;
            bool ok = r.ok() && (!r.ratio || *r.ratio == Rational(1));
            if (!ok) {
                ++failed;
                if (failed <= 5)
                    which += " " + ix.to_string() + "(scalar " + (r.ratio ? r.ratio->to_string() : "none") + ")";
            }
        }
    report(6, "dual-algorithm oracle, order <= 5, 20 triples per label, scalar 1", failed == 0,
           std::to_string(labels) + " labels, " + std::to_string(failed) + " failed, " + fmt_ms(ms_since(t0)) +
               (which.empty() ? "" : ", first failures:" + which));
}

void criterion7() {
    clear_recurrence_caches();
    std::vector<Rank3Label> upto6, upto4;
    for (int s = 0; s <= 6; ++s)
        for (const auto& ix : enumerate_order(s)) {
            upto6.push_back(cfindex_to_label(ix));
            if (s <= 4) upto4.push_back(upto6.back());
        }
    auto t0 = Clock::now();
    for (const auto& l : upto6) rank3_cf(l);
    double comb6 = ms_since(t0);

    clear_recurrence_caches();
    t0 = Clock::now();
    for (const auto& l : upto4) rank3_cf(l);
    double comb4 = ms_since(t0);
    t0 = Clock::now();
    int mismatch = 0;
    for (const auto& l : upto4)
        if (!(tensorial_rank3_cf(l) == rank3_cf(l))) ++mismatch;
    double tens4 = ms_since(t0);
    double speedup = tens4 / std::max(comb4, 1e-6);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fx", speedup);
    report(7, "order <= 6 combinatorial < 10 s; >= 10x faster than tensorial at order <= 4",
           comb6 < 10000.0 && speedup >= 10.0 && mismatch == 0,
           std::to_string(upto6.size()) + " functions in " + fmt_ms(comb6) + "; order <= 4 (" +
               std::to_string(upto4.size()) + " functions): combinatorial " + fmt_ms(comb4) + ", tensorial " +
               fmt_ms(tens4) + ", speedup " + buf + ", " + std::to_string(mismatch) + " output mismatches");
}

Mat2 letter(const SL2Triple& m, int g) {
    const Mat2& x = std::abs(g) == 1 ? m.x1 : std::abs(g) == 2 ? m.x2 : m.x3;
    return g > 0 ? x : x.sl2_inverse();
}

void criterion8() {
    std::vector<std::string> failed;
    auto suite = [&](const std::string& name, const std::function<bool()>& body) {
        if (!body()) failed.push_back(name);
    };

    suite("rank-1 product", [] {
        for (int a = 0; a <= 8; ++a)
            for (int b = 0; b <= 8; ++b) {
                Polynomial sum(rank1_alphabet());
                for (int c : admissible_range(a, b)) sum += rank1_cf(c);
                if (!(rank1_cf(a) * rank1_cf(b) == sum)) return false;
            }
        return true;
    });

    suite("rank-2 symmetry", [] {
        const std::size_t slot_var[3] = {1, 0, 2};
        std::array<int, 3> sigma = {0, 1, 2};
        do {
            std::vector<Polynomial> img(3, Polynomial(rank2_alphabet()));
            for (std::size_t k = 0; k < 3; ++k)
                img[slot_var[k]] = Polynomial::variable(rank2_alphabet(), slot_var[std::size_t(sigma[k])]);
            for (int a = 0; a <= 4; ++a)
                for (int b = 0; b <= 4; ++b)
                    for (int c : admissible_range(a, b)) {
                        if (c > 4) continue;
                        std::array<int, 3> l = {a, b, c}, m{};
                        for (std::size_t k = 0; k < 3; ++k) m[std::size_t(sigma[k])] = l[k];
                        if (!(rank2_cf(m[0], m[1], m[2]) == rank2_cf(a, b, c).substitute(img))) return false;
                    }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return true;
    });

    suite("four-term relation", [] {
        Polynomial z = Polynomial::variable(rank2_alphabet(), "z");
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; b <= 5; ++b)
                for (int c : admissible_range(a, b)) {
                    if (c > 5) continue;
                    auto e = edge_counts(a, b, c);
                    Polynomial rhs = r2(a + 1, b + 1, c);
                    if (b > 0) rhs += Rational(long(e.e_a) * e.e_a, long(b) * (b + 1)) * r2(a + 1, b - 1, c);
                    if (a > 0) rhs += Rational(long(e.e_b) * e.e_b, long(a) * (a + 1)) * r2(a - 1, b + 1, c);
                    if (a > 0 && b > 0)
                        rhs += Rational(long(e.e_c) * e.e_c * (e.e_total + 1) * (e.e_total + 1),
                                        long(a) * (a + 1) * b * (b + 1)) *
                               r2(a - 1, b - 1, c);
                    if (!(z * rank2_cf(a, b, c) == rhs)) return false;
                }
        return true;
    });

    suite("fusion swap symmetry and normalization", [] {
        for (int a = 0; a <= 6; ++a)
            for (int c = 0; c <= 6; ++c)
                for (int b : admissible_range(a, c))
                    for (int da : {-1, 1})
                        for (int dc : {-1, 1}) {
                            FusionKey k{b, a, a + da, c, c + dc}, s{b, c, c + dc, a, a + da};
                            auto f = fusion_coeff(k), g = fusion_coeff(s);
                            if (f.has_value() != g.has_value()) return false;
                            if (!f) continue;
                            auto fh = norm_fusion_coeff(k), gh = norm_fusion_coeff(s);
                            if (*f != *g || !(*fh == *gh)) return false;
                            RadExact scale =
                                RadExact::sqrt_of(fusion_const(a + da, 1, a) * fusion_const(c + dc, 1, c));
                            if (rad_to_rational(rad_mul(scale, *fh)) != *f) return false;
                        }
        return true;
    });

    suite("theta symmetry", [] {
        for (int a = 0; a <= 10; ++a)
            for (int b = 0; b <= 10; ++b)
                for (int c : admissible_range(a, b)) {
                    if (c > 10) continue;
                    Rational t = theta(a, b, c);
                    if (theta(b, a, c) != t || theta(a, c, b) != t || theta(c, b, a) != t || theta(b, c, a) != t ||
                        theta(c, a, b) != t)
                        return false;
                }
        return true;
    });

    suite("t123 quadratic", [] {
        auto [P, Q] = pq_polys();
        Polynomial t = trace_var("t123");
        Polynomial rel = t * t - P * t + Q;
        for (std::uint64_t s = 0; s < 100; ++s)
            if (!rel.evaluate(evaluate_traces(random_triple(s + 7000)).values()).is_zero()) return false;
        return true;
    });

    suite("Cayley-Hamilton words", [] {
        std::vector<SL2Triple> triples;
        std::vector<std::vector<Rational>> values;
        for (std::uint64_t s = 0; s < 20; ++s) {
            triples.push_back(random_triple(s + 8000));
            values.push_back(evaluate_traces(triples.back()).values());
        }
        static const int letters[] = {1, -1, 2, -2, 3, -3};
        for (int len = 1; len <= 5; ++len) {
            std::vector<int> digits(std::size_t(len), 0);
            while (true) {
                TraceWord w;
                for (int d : digits) w.push_back(letters[d]);
                Polynomial p = reduce_trace_word(w);
                if (p.degree_in(6) > 1) return false;
                for (std::size_t k = 0; k < triples.size(); ++k) {
                    Mat2 m;
                    for (int g : w) m = m * letter(triples[k], g);
                    if (p.evaluate(values[k]) != m.trace()) return false;
                }
                std::size_t i = 0;
                while (i < digits.size() && ++digits[i] == 6) digits[i++] = 0;
                if (i == digits.size()) break;
            }
        }
        return true;
    });

    suite("t123-degree", [] {
        for (int s = 0; s <= 6; ++s)
            for (const auto& ix : enumerate_order(s))
                if (rank3_cf(cfindex_to_label(ix)).degree_in(6) > 1) return false;
        return true;
    });

    suite("tensorial conjugation invariance", [] {
        for (int s = 0; s <= 3; ++s)
            for (const auto& ix : enumerate_order(s)) {
                Polynomial p = tensorial_central_function(cfindex_to_label(ix));
                for (std::uint64_t k = 0; k < 10; ++k) {
                    SL2Triple m = random_triple(k + 9000);
                    Mat2 g = random_conjugator(k + 9100), gi = g.sl2_inverse();
                    if (p.evaluate(entry_values(m.x1, m.x2, m.x3)) !=
                        p.evaluate(entry_values(g * m.x1 * gi, g * m.x2 * gi, g * m.x3 * gi)))
                        return false;
                }
            }
        return true;
    });

    std::string detail = "9 suites, " + std::to_string(9 - failed.size()) + " pass";
    for (const auto& f : failed) detail += "; failed: " + f;
    report(8, "exact property suites", failed.empty(), detail);
}

void criterion9() {
    int done = 0, skipped = 0, bad = 0;
    long double worst = 0;
    for (std::uint64_t s = 0; done < 50; ++s) {
        TraceTuple t = evaluate_traces(random_triple(s + 10000));
        ComplexTriple m;
        try {
            m = goldman_slice(t);
        } catch (const SliceSingular&) {
            ++skipped;
            continue;
        }
        ++done;
        auto got = complex_traces(m);
        auto want = t.values();
        long double err = 0;
        for (std::size_t k = 0; k < 7; ++k) err = std::max(err, std::abs(got[k] - Complex(want[k].to_long_double())));
        worst = std::max(worst, err);
        if (!(err <= 1e-9)) ++bad;
    }
    std::ostringstream d;
    d << done << " triples (" << skipped << " on the branch locus skipped), " << bad << " outside 1e-9, max error "
      << worst;
    report(9, "Goldman slice round trip within 1e-9", bad == 0, d.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (failures ? "FAILED: " + std::to_string(failures) + " criteria" : std::string("all criteria pass"))
              << std::endl;
    return failures ? 1 : 0;
}
