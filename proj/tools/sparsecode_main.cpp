// Command-line front end: parses code/graph files, dispatches to the engine,
// and emits one deterministic JSON report per run on standard output.
// Diagnostics go to standard error.
//
// Exit codes: 0 computed (all asserted bounds hold), 1 usage or parse error,
// 2 enumeration cap exceeded, 3 heuristic search gave up (NOT_FOUND),
// 4 a guaranteed bound failed (THEOREM_VIOLATION) -- the report then
// carries a machine-readable witness.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsecode/bounds.hpp"
#include "sparsecode/graph.hpp"
#include "sparsecode/io.hpp"
#include "sparsecode/sparsifier.hpp"

using json = nlohmann::ordered_json;
using namespace sparsecode;

namespace {

constexpr const char *kVersion = "0.1.0";

struct Options {
    std::string code_path;
    std::string graph_path;
    std::string set_spec;
    std::string alpha_text = "1/2";
    unsigned ell = 1;
    std::string mode = "exact";
    unsigned restarts = 1000;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t max_n = kDefaultMaxLength;
    std::size_t max_k = kDefaultMaxDimension;
    std::string format = "json";
    std::string out_path;
    std::string code_out_path;
    std::size_t bounds_n = 0;
    std::size_t bounds_k = 0;
};

// 2^e as a decimal string; exponents can exceed 64 bits in bound reports.
std::string pow2_decimal(std::size_t exponent) {
    std::vector<unsigned char> digits{1}; // little-endian decimal
    for (std::size_t i = 0; i < exponent; ++i) {
        unsigned carry = 0;
        for (auto &d : digits) {
            const unsigned x = 2u * d + carry;
            d = static_cast<unsigned char>(x % 10);
            carry = x / 10;
        }
        if (carry)
            digits.push_back(static_cast<unsigned char>(carry));
    }
    std::string out(digits.rbegin(), digits.rend());
    for (auto &ch : out)
        ch = static_cast<char>('0' + ch);
    return out;
}

json indices_json(const BitVector &subset) {
    json arr = json::array();
    for (std::size_t i : subset.set_indices())
        arr.push_back(i + 1); // 1-indexed, matching [n]
    return arr;
}

json histogram_json(const CensusReport &report) {
    json arr = json::array();
    for (std::size_t s = 0; s < report.size_histogram.size(); ++s)
        arr.push_back(json{{"size", s},
                           {"count", std::to_string(report.size_histogram[s])}});
    return arr;
}

std::string histogram_csv(const CensusReport &report) {
    std::string out = "size,count\n";
    for (std::size_t s = 0; s < report.size_histogram.size(); ++s)
        out += std::to_string(s) + "," +
               std::to_string(report.size_histogram[s]) + "\n";
    return out;
}

json trace_json(const IterationTrace &trace) {
    json rounds = json::array();
    for (const auto &round : trace.rounds) {
        json chosen = json::array();
        for (std::size_t i : round.chosen)
            chosen.push_back(i + 1);
        rounds.push_back(json{{"r", round.round},
                              {"n_r", round.remaining},
                              {"chosen", chosen},
                              {"dim", round.dim},
                              {"budget", round.budget}});
    }
    return json{{"alpha", trace.alpha.to_string()},
                {"rounds", rounds},
                {"final_set", indices_json(trace.final_set)},
                {"final_size", trace.final_set.weight()},
                {"size_bound", trace.size_bound}};
}

class ReportWriter {
  public:
    ReportWriter(std::string command, const Options &opts)
        : opts_(opts), start_(std::chrono::steady_clock::now()) {
        report_["command"] = std::move(command);
    }

    json &report() { return report_; }

    void set_input_digest(std::string_view bytes) {
        report_["input_digest"] = fnv1a64_hex(bytes);
    }

    // Emits the report (JSON, or CSV when requested and available) to stdout
    // and optionally to --out.
    int finish(int exit_code, const std::optional<std::string> &csv_body = {}) {
        report_["seed"] = opts_.seed;
        report_["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start_)
                .count();
        report_["version"] = kVersion;

        std::string body;
        if (opts_.format == "csv") {
            if (!csv_body)
                throw Error(Errc::domain_error,
                            "--format csv is only available for census and "
                            "count-thin");
            body = *csv_body;
        } else if (opts_.format == "json") {
            body = report_.dump(2) + "\n";
        } else {
            throw Error(Errc::domain_error, "--format must be json or csv");
        }
        std::cout << body;
        if (!opts_.out_path.empty()) {
            std::ofstream out(opts_.out_path, std::ios::binary);
            if (!out)
                throw Error(Errc::io_error,
                            "cannot open '" + opts_.out_path + "' for writing");
            out << body;
        }
        return exit_code;
    }

  private:
    const Options &opts_;
    json report_;
    std::chrono::steady_clock::time_point start_;
};

LinearCode load_code(const Options &opts, ReportWriter &writer) {
    if (opts.code_path.empty())
        throw Error(Errc::domain_error, "this command requires --code");
    const std::string bytes = read_file(opts.code_path);
    writer.set_input_digest(bytes);
    return parse_code_text(bytes, opts.code_path);
}

Graph load_graph(const Options &opts, ReportWriter &writer) {
    if (opts.graph_path.empty())
        throw Error(Errc::domain_error, "this command requires --graph");
    const std::string bytes = read_file(opts.graph_path);
    writer.set_input_digest(bytes);
    return parse_graph_text(bytes, opts.graph_path);
}

SearchMode parse_mode(const std::string &mode) {
    if (mode == "exact")
        return SearchMode::exact;
    if (mode == "heuristic")
        return SearchMode::heuristic;
    throw Error(Errc::domain_error, "--mode must be exact or heuristic");
}

void put_code_header(json &report, const LinearCode &code, const Alpha &alpha) {
    report["n"] = code.length();
    report["k"] = code.dimension(); // rank; may be below the declared row count
    report["declared_k"] = code.generators().rows.size();
    report["alpha"] = alpha.to_string();
}

int cmd_verify(const Options &opts) {
    ReportWriter writer("verify", opts);
    const LinearCode code = load_code(opts, writer);
    const Alpha alpha = Alpha::parse(opts.alpha_text);
    put_code_header(writer.report(), code, alpha);
    const BitVector subset = parse_subset_spec(opts.set_spec, code.length());
    const Verdict verdict = verify(code, subset, alpha, opts.max_k);
    json result{{"pass", verdict.pass},
                {"set", indices_json(subset)},
                {"set_size", subset.weight()}};
    if (verdict.violation) {
        result["violation"] =
            json{{"codeword", verdict.violation->codeword.to_string()},
                 {"weight", verdict.violation->weight},
                 {"projected_weight", verdict.violation->projected_weight}};
    }
    writer.report()["result"] = std::move(result);
    return writer.finish(0);
}

int cmd_maximize(const Options &opts) {
    ReportWriter writer("maximize", opts);
    const LinearCode code = load_code(opts, writer);
    put_code_header(writer.report(), code, Alpha(1, 2));
    const BitVector start = parse_subset_spec(opts.set_spec, code.length());
    const BitVector result = coset_maximize(code, start, opts.max_k);
    writer.report()["result"] =
        json{{"input", indices_json(start)},
             {"input_size", start.weight()},
             {"output", indices_json(result)},
             {"output_size", result.weight()},
             {"half_sparsifier",
              verify(code, result, Alpha(1, 2), opts.max_k).pass}};
    return writer.finish(0);
}

int cmd_census(const Options &opts) {
    ReportWriter writer("census", opts);
    const LinearCode code = load_code(opts, writer);
    const Alpha alpha = Alpha::parse(opts.alpha_text);
    put_code_header(writer.report(), code, alpha);
    const CensusReport report =
        count_sparsifiers(code, alpha, opts.threads, opts.max_n, opts.max_k);
    writer.report()["result"] =
        json{{"count", std::to_string(report.count)},
             {"lower_bound", std::to_string(report.lower_bound)},
             {"min_size", report.min_size},
             {"exhaustive", report.exhaustive},
             {"histogram", histogram_json(report)}};
    return writer.finish(0, histogram_csv(report));
}

int cmd_min_size(const Options &opts) {
    ReportWriter writer("min-size", opts);
    const LinearCode code = load_code(opts, writer);
    const Alpha alpha = Alpha::parse(opts.alpha_text);
    put_code_header(writer.report(), code, alpha);
    const MinSparsifierResult result =
        min_sparsifier(code, alpha, opts.max_n, opts.max_k);
    writer.report()["result"] =
        json{{"set", indices_json(result.set)}, {"size", result.size}};
    return writer.finish(0);
}

int cmd_small(const Options &opts) {
    ReportWriter writer("small", opts);
    const LinearCode code = load_code(opts, writer);
    put_code_header(writer.report(), code, Alpha(1, 2));
    const SmallSearchResult result =
        small_sparsifier_search(code, parse_mode(opts.mode), opts.restarts,
                                opts.seed, opts.max_n, opts.max_k);
    json r{{"found", result.set.has_value()},
           {"budget", result.budget},
           {"epsilon", result.epsilon},
           {"mode", opts.mode},
           {"restarts", opts.restarts}};
    if (result.set) {
        r["set"] = indices_json(*result.set);
        r["size"] = result.set->weight();
    }
    writer.report()["result"] = std::move(r);
    return writer.finish(result.set ? 0 : 3);
}

int cmd_iterate(const Options &opts) {
    ReportWriter writer("iterate", opts);
    const LinearCode code = load_code(opts, writer);
    const IterationTrace trace =
        iterated_sparsifier(code, opts.ell, parse_mode(opts.mode),
                            opts.restarts, opts.seed, opts.max_n, opts.max_k);
    put_code_header(writer.report(), code, trace.alpha);
    writer.report()["result"] = trace_json(trace);
    writer.report()["result"]["ell"] = opts.ell;
    writer.report()["result"]["mode"] = opts.mode;
    return writer.finish(0);
}

int cmd_montecarlo(const Options &opts) {
    ReportWriter writer("montecarlo", opts);
    const LinearCode code = load_code(opts, writer);
    const Alpha alpha = Alpha::parse(opts.alpha_text);
    put_code_header(writer.report(), code, alpha);
    const MonteCarloResult result = monte_carlo_density(
        code, opts.trials, alpha, opts.seed, opts.threads, opts.max_k);
    writer.report()["result"] = json{{"hits", std::to_string(result.hits)},
                                     {"trials", std::to_string(result.trials)},
                                     {"estimate", result.estimate}};
    return writer.finish(0);
}

int cmd_bounds(const Options &opts) {
    ReportWriter writer("bounds", opts);
    std::size_t n = opts.bounds_n;
    std::size_t k = opts.bounds_k;
    if (!opts.code_path.empty()) {
        const LinearCode code = load_code(opts, writer);
        n = code.length();
        k = code.dimension();
    } else {
        writer.set_input_digest("n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    }
    const BoundsReport report = bounds_for(n, k);
    writer.report()["n"] = n;
    writer.report()["k"] = k;
    writer.report()["alpha"] = "1/2";
    json r{{"entropy_gap", report.entropy_gap},
           {"epsilon_closed", report.epsilon_closed},
           {"gamma", report.gamma},
           {"c_const", report.c_const},
           {"budget_small", report.budget_small},
           {"ell", opts.ell},
           {"budget_big_alpha", report.budget_big_alpha(opts.ell)},
           {"count_floor", pow2_decimal(n - k)}};
    if (report.epsilon_root)
        r["epsilon_root"] = *report.epsilon_root;
    else
        r["epsilon_root"] = nullptr;
    writer.report()["result"] = std::move(r);
    return writer.finish(0);
}

int cmd_cut_space(const Options &opts) {
    ReportWriter writer("cut-space", opts);
    const Graph g = load_graph(opts, writer);
    const LinearCode code = cut_space(g);
    writer.report()["n"] = code.length();
    writer.report()["k"] = code.dimension();
    writer.report()["alpha"] = nullptr;
    json rows = json::array();
    for (const auto &row : code.generators().rows)
        rows.push_back(row.to_string());
    writer.report()["result"] = json{{"vertices", g.num_vertices()},
                                     {"edges", g.num_edges()},
                                     {"components", g.component_count()},
                                     {"dimension", code.dimension()},
                                     {"generator_rows", rows}};
    if (!opts.code_out_path.empty()) {
        std::ofstream out(opts.code_out_path, std::ios::binary);
        if (!out)
            throw Error(Errc::io_error, "cannot open '" + opts.code_out_path +
                                            "' for writing");
        out << serialize_code(code);
    }
    return writer.finish(0);
}

int cmd_thin(const Options &opts) {
    ReportWriter writer("thin", opts);
    const Graph g = load_graph(opts, writer);
    const Alpha alpha = Alpha::parse(opts.alpha_text);
    writer.report()["n"] = g.num_edges();
    writer.report()["k"] = g.num_vertices() - g.component_count();
    writer.report()["alpha"] = alpha.to_string();
    const BitVector subgraph = parse_subset_spec(opts.set_spec, g.num_edges());
    const ThinReport report = is_thin(g, subgraph, alpha, opts.max_k);
    json r{{"thin", report.thin},
           {"subgraph", indices_json(subgraph)},
           {"size", subgraph.weight()}};
    if (report.witness_cut) {
        json side = json::array();
        for (std::uint32_t v : *report.witness_cut)
            side.push_back(v);
        r["witness_cut"] = side;
        r["witness_edges"] = indices_json(*report.witness_edges);
    }
    writer.report()["result"] = std::move(r);
    return writer.finish(0);
}

int cmd_count_thin(const Options &opts) {
    ReportWriter writer("count-thin", opts);
    const Graph g = load_graph(opts, writer);
    const Alpha alpha = Alpha::parse(opts.alpha_text);
    const CensusReport report =
        count_thin(g, alpha, opts.threads, opts.max_n, opts.max_k);
    writer.report()["n"] = report.n;
    writer.report()["k"] = report.k;
    writer.report()["alpha"] = alpha.to_string();
    writer.report()["result"] =
        json{{"count", std::to_string(report.count)},
             {"lower_bound", std::to_string(report.lower_bound)},
             {"min_size", report.min_size},
             {"exhaustive", report.exhaustive},
             {"vertices", g.num_vertices()},
             {"components", g.component_count()},
             {"histogram", histogram_json(report)}};
    return writer.finish(0, histogram_csv(report));
}

int cmd_find_thin(const Options &opts) {
    ReportWriter writer("find-thin", opts);
    const Graph g = load_graph(opts, writer);
    const FindThinResult result =
        find_thin(g, opts.ell, parse_mode(opts.mode), opts.restarts, opts.seed,
                  opts.max_n, opts.max_k);
    writer.report()["n"] = g.num_edges();
    writer.report()["k"] = g.num_vertices() - g.component_count();
    writer.report()["alpha"] = result.report.alpha.to_string();
    writer.report()["result"] =
        json{{"subgraph", indices_json(result.subgraph)},
             {"size", result.subgraph.weight()},
             {"size_lower_bound", result.size_lower_bound},
             {"thin", result.report.thin},
             {"trace", trace_json(result.trace)}};
    return writer.finish(0);
}

int cmd_hitting(const Options &opts) {
    ReportWriter writer("hitting", opts);
    const LinearCode code = load_code(opts, writer);
    put_code_header(writer.report(), code, Alpha(1, 2));
    if (!opts.set_spec.empty()) {
        const BitVector subset =
            parse_subset_spec(opts.set_spec, code.length());
        writer.report()["result"] =
            json{{"set", indices_json(subset)},
                 {"hitting", is_hitting_set(code, subset, opts.max_k)}};
        return writer.finish(0);
    }
    const HittingSetReport report =
        disjoint_hitting_sets(code, opts.seed, opts.max_k);
    json sets = json::array();
    for (const auto &s : report.sets)
        sets.push_back(indices_json(s));
    writer.report()["result"] = json{{"d", report.sets.size()}, {"sets", sets}};
    return writer.finish(0);
}

int cmd_conjecture(const Options &opts) {
    ReportWriter writer("conjecture", opts);
    const LinearCode code = load_code(opts, writer);
    const Alpha alpha = Alpha::parse(opts.alpha_text);
    put_code_header(writer.report(), code, alpha);
    const ProperSearchResult result = proper_sparsifier_search(
        code, alpha, opts.trials, opts.seed, opts.max_n, opts.max_k);
    json r{{"found", result.witness.has_value()},
           {"exhaustive", result.exhaustive},
           {"definitive", result.exhaustive && !result.witness.has_value()},
           {"examined", std::to_string(result.examined)}};
    if (result.witness) {
        r["set"] = indices_json(*result.witness);
        r["size"] = result.witness->weight();
    }
    writer.report()["result"] = std::move(r);
    // A miss only fails the run when the search was not exhaustive.
    const int exit_code = result.witness || result.exhaustive ? 0 : 3;
    return writer.finish(exit_code);
}

int cmd_connectivity(const Options &opts) {
    ReportWriter writer("connectivity", opts);
    const Graph g = load_graph(opts, writer);
    writer.report()["n"] = g.num_edges();
    writer.report()["k"] = g.num_vertices() - g.component_count();
    writer.report()["alpha"] = nullptr;
    writer.report()["result"] =
        json{{"edge_connectivity", edge_connectivity(g, opts.max_k)},
             {"connected", g.component_count() <= 1}};
    return writer.finish(0);
}

int error_exit_code(Errc code) {
    switch (code) {
    case Errc::parse_error:
    case Errc::io_error:
    case Errc::domain_error:
    case Errc::length_mismatch: return 1;
    case Errc::dimension_too_large:
    case Errc::length_too_large: return 2;
    case Errc::not_found: return 3;
    case Errc::theorem_violation: return 4;
    }
    return 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"unweighted one-sided sparsifiers of binary codes and "
                 "thin subgraphs"};
    app.require_subcommand(1);

    Options opts;

    auto add_common = [&](CLI::App *sub, bool code, bool graph) {
        if (code)
            sub->add_option("--code", opts.code_path, "code file");
        if (graph)
            sub->add_option("--graph", opts.graph_path, "graph file");
        sub->add_option("--alpha", opts.alpha_text, "threshold p/q");
        sub->add_option("--ell", opts.ell, "rounds (alpha = 1 - 2^-ell)");
        sub->add_option("--mode", opts.mode, "exact|heuristic");
        sub->add_option("--restarts", opts.restarts, "heuristic restarts");
        sub->add_option("--trials", opts.trials, "sample count");
        sub->add_option("--seed", opts.seed, "RNG seed (default 0)");
        sub->add_option("--threads", opts.threads, "worker threads");
        sub->add_option("--max-n", opts.max_n, "subset enumeration cap");
        sub->add_option("--max-k", opts.max_k, "codeword enumeration cap");
        sub->add_option("--format", opts.format, "json|csv");
        sub->add_option("--out", opts.out_path, "also write the report here");
        return sub;
    };
    auto add_set = [&](CLI::App *sub) {
        sub->add_option("--set", opts.set_spec,
                        "1-indexed comma list or @file");
    };

    add_set(add_common(app.add_subcommand("verify", "check a sparsifier"),
                       true, false));
    add_set(add_common(app.add_subcommand("maximize", "coset local search"),
                       true, false));
    add_common(app.add_subcommand("census", "exact sparsifier count"), true,
               false);
    add_common(app.add_subcommand("min-size", "true minimum sparsifier"), true,
               false);
    add_common(app.add_subcommand("small", "sparsifier within n(1/2+eps)"),
               true, false);
    add_common(app.add_subcommand("iterate", "iterated (1-2^-ell)-sparsifier"),
               true, false);
    add_common(app.add_subcommand("montecarlo", "random-subset density"), true,
               false);
    {
        auto *sub = add_common(
            app.add_subcommand("bounds", "entropy bounds calculator"), true,
            false);
        sub->add_option("-n,--n", opts.bounds_n, "code length");
        sub->add_option("-k,--k", opts.bounds_k, "code dimension");
    }
    {
        auto *sub = add_common(
            app.add_subcommand("cut-space", "cut space of a graph"), false,
            true);
        sub->add_option("--code-out", opts.code_out_path,
                        "write the cut space as a code file");
    }
    add_set(add_common(app.add_subcommand("thin", "check alpha-thinness"),
                       false, true));
    add_common(app.add_subcommand("count-thin", "exact thin-subgraph count"),
               false, true);
    add_common(app.add_subcommand("find-thin", "find a 2^-ell-thin subgraph"),
               false, true);
    add_set(add_common(
        app.add_subcommand("hitting", "hitting-set check (--set) or greedy "
                                      "disjoint hitting sets"),
        true, false));
    add_common(
        app.add_subcommand("conjecture", "proper sparsifier search harness"),
        true, false);
    add_common(app.add_subcommand("connectivity", "edge connectivity"), false,
               true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("verify")) return cmd_verify(opts);
        if (app.got_subcommand("maximize")) return cmd_maximize(opts);
        if (app.got_subcommand("census")) return cmd_census(opts);
        if (app.got_subcommand("min-size")) return cmd_min_size(opts);
        if (app.got_subcommand("small")) return cmd_small(opts);
        if (app.got_subcommand("iterate")) return cmd_iterate(opts);
        if (app.got_subcommand("montecarlo")) return cmd_montecarlo(opts);
        if (app.got_subcommand("bounds")) return cmd_bounds(opts);
        if (app.got_subcommand("cut-space")) return cmd_cut_space(opts);
        if (app.got_subcommand("thin")) return cmd_thin(opts);
        if (app.got_subcommand("count-thin")) return cmd_count_thin(opts);
        if (app.got_subcommand("find-thin")) return cmd_find_thin(opts);
        if (app.got_subcommand("hitting")) return cmd_hitting(opts);
        if (app.got_subcommand("conjecture")) return cmd_conjecture(opts);
        if (app.got_subcommand("connectivity")) return cmd_connectivity(opts);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const Error &e) {
        const int code = error_exit_code(e.code());
        if (e.code() == Errc::theorem_violation ||
            e.code() == Errc::not_found) {
            // Machine-readable witness / failure report on stdout.
            json failure{{"error", errc_name(e.code())},
                         {"message", e.what()}};
            json details = json::object();
            for (const auto &[key, value] : e.details())
                details[key] = value;
            failure["details"] = std::move(details);
            failure["version"] = kVersion;
            std::cout << failure.dump(2) << "\n";
        }
        std::cerr << errc_name(e.code()) << ": " << e.what() << "\n";
        return code;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
