#include "cfn/cli.hpp"

#include "cfn/cache_file.hpp"
#include "cfn/recurrence.hpp"
#include "cfn/reptheory.hpp"
#include "cfn/tracecoords.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cfn {

namespace {

using nlohmann::ordered_json;

enum class Algorithm { Combinatorial, Tensorial, Both };
enum class Format { Text, Json, Csv };

struct Options {
    int rank = 3;
    std::vector<int> index;
    bool raw_label = false;
    Algorithm algorithm = Algorithm::Combinatorial;
    Format format = Format::Text;
    std::uint64_t seed = 1;
    int trials = 20;
    int order = -1;
    bool count_only = false;
    unsigned threads = 1;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += sep;
        s += std::to_string(v[k]);
    }
    return s;
}

std::vector<int> index_values(const IndexTuple& ix) { return {ix.a, ix.b, ix.c, ix.d, ix.i, ix.j}; }

void require_length(const Options& o, std::size_t n, const char* what) {
    if (o.index.size() != n)
        throw UsageError(std::string("--index needs ") + std::to_string(n) + " comma-separated values (" + what +
                         "), got " + std::to_string(o.index.size()));
}

/// Rank-3 label named by the options; index form unless --raw-label.
Rank3Label rank3_label(const Options& o) {
    require_length(o, 6, o.raw_label ? "a,b,c,d,e,f" : "a,b,c,d,i,j");
    const auto& v = o.index;
    if (!o.raw_label) return cfindex_to_label({v[0], v[1], v[2], v[3], v[4], v[5]});
    Rank3Label l{v[0], v[1], v[2], v[3], v[4], v[5]};
    if (!l.admissible()) throw InadmissibleError("label " + l.to_string() + ": " + l.violation());
    return l;
}

Polynomial rank3_to_rank2(const Polynomial& p) {
    const auto& A = rank2_alphabet();
    Polynomial x = Polynomial::variable(A, "x"), y = Polynomial::variable(A, "y"), z = Polynomial::variable(A, "z");
    Polynomial zero(A);
    // t1, t2, t3, t12, t13, t23, t123; only t1, t2, t12 occur when c = 0.
    return p.substitute({x, y, zero, x * y - z, zero, zero, zero});
}

Polynomial rank3_to_rank1(const Polynomial& p) {
    const auto& A = rank1_alphabet();
    Polynomial zero(A);
    return p.substitute({Polynomial::variable(A, "x"), zero, zero, zero, zero, zero, zero});
}

/// Tensorial route for ranks 1 and 2 goes through the degenerate rank-3 labels.
Polynomial compute_tensorial(const Options& o, std::uint64_t seed) {
    switch (o.rank) {
        case 1: {
            require_length(o, 1, "n");
            int n = o.index[0];
            if (n < 0) throw InadmissibleError("rank-1 label must be non-negative");
            return rank3_to_rank1(tensorial_rank3_cf({n, 0, 0, n, n, n}, seed));
        }
        case 2: {
            require_length(o, 3, "a,b,c");
            int a = o.index[0], b = o.index[1], c = o.index[2];
            if (!is_admissible(a, b, c))
                throw InadmissibleError("vertex triple {a,b,c} = (" + join(o.index) + ") is not admissible");
            return rank3_to_rank2(tensorial_rank3_cf({a, b, 0, c, c, c}, seed));
        }
        default:
            return tensorial_rank3_cf(rank3_label(o), seed);
    }
}

Polynomial compute_combinatorial(const Options& o) {
    switch (o.rank) {
        case 1:
            require_length(o, 1, "n");
            if (o.index[0] < 0) throw InadmissibleError("rank-1 label must be non-negative");
            return rank1_cf(o.index[0]);
        case 2:
            require_length(o, 3, "a,b,c");
            if (!is_admissible(o.index[0], o.index[1], o.index[2]))
                throw InadmissibleError("vertex triple {a,b,c} = (" + join(o.index) + ") is not admissible");
            return rank2_cf(o.index[0], o.index[1], o.index[2]);
        default:
            return rank3_cf(rank3_label(o));
    }
}

std::vector<std::string> csv_header(const Options& o) {
    if (o.rank == 1) return {"n"};
    if (o.rank == 2) return {"a", "b", "c"};
    if (o.raw_label) return {"a", "b", "c", "d", "e", "f"};
    return {"a", "b", "c", "d", "i", "j"};
}

void write_csv_header(std::ostream& out, const std::vector<std::string>& cols) {
    for (const auto& c : cols) out << c << ",";
    out << "polynomial\n";
}

void write_csv_row(std::ostream& out, const std::vector<int>& key, const Polynomial& p) {
    out << join(key) << ",\"" << p.to_text() << "\"\n";
}

void emit_one(std::ostream& out, const Options& o, const std::vector<int>& key, const std::vector<std::string>& cols,
              const Polynomial& p) {
    switch (o.format) {
        case Format::Text:
            out << p.to_text() << "\n";
            break;
        case Format::Json:
            out << p.to_json() << "\n";
            break;
        case Format::Csv:
            write_csv_header(out, cols);
            write_csv_row(out, key, p);
            break;
    }
}

int run_compute(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.rank < 1 || o.rank > 3) throw UsageError("--rank must be 1, 2 or 3");
    if (o.raw_label && o.rank != 3) throw UsageError("--raw-label applies to rank 3 only");
    std::optional<Polynomial> comb, tens;
    if (o.algorithm != Algorithm::Tensorial) comb = compute_combinatorial(o);
    if (o.algorithm != Algorithm::Combinatorial) tens = compute_tensorial(o, o.seed);
    if (comb && tens && !(*comb == *tens)) {
        err << "error: algorithms disagree\n  combinatorial: " << comb->to_text() << "\n  tensorial:     "
            << tens->to_text() << "\n";
        return 1;
    }
    emit_one(out, o, o.index, csv_header(o), comb ? *comb : *tens);
    return 0;
}

int run_barbell(const Options& o, std::ostream& out) {
    require_length(o, 3, "a,c,b");
    BarbellLabel l{o.index[0], o.index[1], o.index[2]};
    emit_one(out, o, o.index, {"a", "c", "b"}, barbell(l));
    return 0;
}

int run_enumerate(const Options& o, std::ostream& out) {
    if (o.order < 0) throw UsageError("--order must be non-negative");
    auto tuples = enumerate_order(o.order);
    if (o.count_only) {
        out << tuples.size() << "\n";
        return 0;
    }
    std::vector<Rank3Label> labels;
    labels.reserve(tuples.size());
    for (const auto& t : tuples) labels.push_back(cfindex_to_label(t));
    auto polys = rank3_batch(labels, std::max(1u, o.threads));
    switch (o.format) {
        case Format::Text:
            for (std::size_t k = 0; k < tuples.size(); ++k)
                out << join(index_values(tuples[k])) << ": " << polys[k].to_text() << "\n";
            out << "count: " << tuples.size() << "\n";
            break;
        case Format::Json: {
            ordered_json doc;
            doc["order"] = o.order;
            doc["count"] = tuples.size();
            doc["functions"] = ordered_json::array();
            for (std::size_t k = 0; k < tuples.size(); ++k)
                doc["functions"].push_back(
                    {{"index", index_values(tuples[k])}, {"polynomial", ordered_json::parse(polys[k].to_json())}});
            out << doc.dump() << "\n";
            break;
        }
        case Format::Csv:
            write_csv_header(out, {"a", "b", "c", "d", "i", "j"});
            for (std::size_t k = 0; k < tuples.size(); ++k) write_csv_row(out, index_values(tuples[k]), polys[k]);
            break;
    }
    return 0;
}

int run_verify(const Options& o, std::ostream& out) {
    if (o.rank != 3) throw UsageError("verify supports --rank 3 only");
    if (o.trials < 1) throw UsageError("--trials must be positive");
    std::vector<std::pair<std::vector<int>, Rank3Label>> work;
    if (!o.index.empty()) {
        work.emplace_back(o.index, rank3_label(o));
    } else if (o.order >= 0) {
        for (const auto& t : enumerate_order(o.order)) work.emplace_back(index_values(t), cfindex_to_label(t));
    } else {
        throw UsageError("verify needs --index or --order");
    }
    std::size_t failed = 0;
    ordered_json reports = ordered_json::array();
    for (const auto& [key, label] : work) {
        auto r = cross_validate(label, o.trials, o.seed);
        if (!r.ok()) ++failed;
        std::string ratio = r.ratio ? r.ratio->to_string() : "none";
        if (o.format == Format::Json) {
            reports.push_back({{"index", key},
                               {"label", label.to_string()},
                               {"trials", r.trials},
                               {"failures", r.failures},
                               {"ratio", ratio}});
        } else if (o.format == Format::Csv) {
            if (reports.empty()) out << "index,label,trials,failures,ratio\n";
            reports.push_back(nullptr);
            out << "\"" << join(key) << "\",\"" << label.to_string() << "\"," << r.trials << ","
                << r.failures.size() << "," << ratio << "\n";
        } else {
            out << join(key) << " " << label.to_string() << ": "
                << (r.ok() ? "ok" : "FAIL (" + std::to_string(r.failures.size()) + "/" +
                                        std::to_string(r.trials) + " trials differ)")
                << ", ratio " << ratio << "\n";
        }
    }
    if (o.format == Format::Json)
        out << ordered_json{{"labels", work.size()}, {"failed", failed}, {"reports", reports}}.dump() << "\n";
    else if (o.format == Format::Text)
        out << "verified " << work.size() << " labels, " << failed << " failed\n";
    if (failed) throw VerificationFailure(std::to_string(failed) + " label(s) disagree between the two algorithms");
    return 0;
}

void add_format(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}}));
}

CLI::Option* add_index(CLI::App* cmd, Options& o, const char* help) {
    return cmd->add_option("--index", o.index, help)->delimiter(',');
}

std::optional<std::filesystem::path> cache_path() {
    const char* dir = std::getenv("CF_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::filesystem::path(dir) / kRank3CacheFile;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact SL(2,C) central functions of free groups of rank 1, 2 and 3", "cfcalc"};
    app.require_subcommand(1);

    auto* compute = app.add_subcommand("compute", "Compute one central function");
    compute->add_option("--rank", o.rank, "Free group rank")->check(CLI::Range(1, 3));
    add_index(compute, o, "Label: n (rank 1), a,b,c (rank 2), a,b,c,d,i,j (rank 3)");
    compute->add_flag("--raw-label", o.raw_label, "Read the rank-3 index as edge labels a,b,c,d,e,f");
    compute->add_option("--algorithm", o.algorithm, "combinatorial, tensorial or both")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Algorithm>{
            {"combinatorial", Algorithm::Combinatorial}, {"tensorial", Algorithm::Tensorial}, {"both", Algorithm::Both}}));
    compute->add_option("--seed", o.seed, "Sampling seed for the tensorial interpolation");
    add_format(compute, o);

    auto* enumerate = app.add_subcommand("enumerate", "List every rank-3 function of one order");
    enumerate->add_option("--order", o.order, "Order a+b+c")->required();
    enumerate->add_flag("--count-only", o.count_only, "Print only the number of index tuples");
    enumerate->add_option("--threads", o.threads, "Worker threads");
    add_format(enumerate, o);

    auto* verify = app.add_subcommand("verify", "Cross-validate the two algorithms on random triples");
    verify->add_option("--rank", o.rank, "Free group rank (3)");
    add_index(verify, o, "Single label a,b,c,d,i,j");
    verify->add_flag("--raw-label", o.raw_label, "Read the index as edge labels a,b,c,d,e,f");
    verify->add_option("--order", o.order, "Verify every label of this order");
    verify->add_option("--trials", o.trials, "Random triples per label");
    verify->add_option("--seed", o.seed, "First triple seed");
    add_format(verify, o);

    auto* bar = app.add_subcommand("barbell", "Compute a barbell function");
    add_index(bar, o, "Labels a,c,b: loop a, loop c, bar b")->required();
    add_format(bar, o);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    auto cache = cache_path();
    if (cache) load_rank3_cache(*cache, err);

    int code = 0;
    try {
        if (*compute)
            code = run_compute(o, out, err);
        else if (*enumerate)
            code = run_enumerate(o, out);
        else if (*verify)
            code = run_verify(o, out);
        else
            code = run_barbell(o, out);
    } catch (const InadmissibleError& e) {
        err << "error: inadmissible label: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationFailure& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (cache && code == 0) {
        try {
            save_rank3_cache(*cache);
        } catch (const std::exception& e) {
            err << "warning: could not write cache: " << e.what() << "\n";
        }
    }
    return code;
}

}  // namespace cfn
