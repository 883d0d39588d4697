#include "sparsecode/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "sparsecode/rng.hpp"

namespace sparsecode {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

} // namespace

Graph::Graph(std::size_t num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
    UnionFind uf(num_vertices_);
    std::size_t merges = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge &e = edges_[i];
        if (e.u >= num_vertices_ || e.v >= num_vertices_)
            throw Error(Errc::domain_error,
                        "edge " + std::to_string(i + 1) +
                            " has an endpoint outside [0, " +
                            std::to_string(num_vertices_) + ")");
        if (e.u == e.v)
            throw Error(Errc::domain_error,
                        "edge " + std::to_string(i + 1) + " is a self-loop");
        if (uf.unite(e.u, e.v))
            ++merges;
    }
    components_ = num_vertices_ - merges;
}

LinearCode cut_space(const Graph &g) {
    const std::size_t m = g.num_edges();
    std::vector<BitVector> rows;
    rows.reserve(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        BitVector delta(m);
        for (std::size_t i = 0; i < m; ++i)
            if (g.edges()[i].u == v || g.edges()[i].v == v)
                delta.set(i, true);
        rows.push_back(std::move(delta));
    }
    LinearCode code(Gf2Matrix(m, std::move(rows)));
    const std::size_t expected =
        g.num_vertices() - g.component_count();
    if (code.dimension() != expected)
        throw std::logic_error(
            "cut space rank " + std::to_string(code.dimension()) +
            " differs from |V| - r = " + std::to_string(expected));
    return code;
}

namespace {

// Recovers a vertex side S with delta(S) = cut: contract all non-cut edges,
// then 2-color across the cut edges. The coloring exists exactly because
// `cut` lies in the cut space.
std::vector<std::uint32_t> vertex_side_of_cut(const Graph &g,
                                              const BitVector &cut) {
    UnionFind uf(g.num_vertices());
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (!cut.get(i))
            uf.unite(g.edges()[i].u, g.edges()[i].v);

    std::vector<std::vector<std::size_t>> adj(g.num_vertices());
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (cut.get(i)) {
            const std::size_t a = uf.find(g.edges()[i].u);
            const std::size_t b = uf.find(g.edges()[i].v);
            adj[a].push_back(b);
            adj[b].push_back(a);
        }

    std::vector<int> color(g.num_vertices(), -1);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        const std::size_t root = uf.find(v);
        if (color[root] != -1)
            continue;
        color[root] = 0;
        std::queue<std::size_t> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const std::size_t x = frontier.front();
            frontier.pop();
            for (std::size_t y : adj[x])
                if (color[y] == -1) {
                    color[y] = 1 - color[x];
                    frontier.push(y);
                } else if (color[y] == color[x]) {
                    throw std::logic_error(
                        "cut witness is not two-colorable; vector is "
                        "outside the cut space");
                }
        }
    }

    std::vector<std::uint32_t> side;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (color[uf.find(v)] == 1)
            side.push_back(static_cast<std::uint32_t>(v));
    return side;
}

} // namespace

ThinReport is_thin(const Graph &g, const BitVector &subgraph,
                   const Alpha &alpha, std::size_t max_dimension) {
    if (subgraph.length() != g.num_edges())
        throw Error(Errc::length_mismatch,
                    "subgraph indicator length " +
                        std::to_string(subgraph.length()) +
                        " does not match edge count " +
                        std::to_string(g.num_edges()));
    const LinearCode code = cut_space(g);

    ThinReport report;
    report.alpha = alpha;
    report.subgraph = subgraph;
    for (const auto &c : code.codewords(max_dimension)) {
        if (c.is_zero())
            continue;
        // |T cap cut| <= alpha |cut|, i.e. q wt <= p wt in integers.
        const std::uint64_t held = subgraph.and_weight(c);
        const std::uint64_t cut_size = c.weight();
        if (alpha.den() * held > alpha.num() * cut_size) {
            report.thin = false;
            report.witness_edges = c;
            report.witness_cut = vertex_side_of_cut(g, c);
            return report;
        }
    }
    return report;
}

bool is_thin_vertex_oracle(const Graph &g, const BitVector &subgraph,
                           const Alpha &alpha, std::size_t max_vertices) {
    if (g.num_vertices() > max_vertices ||
        g.num_vertices() > kHardEnumerationLimit)
        throw Error(Errc::length_too_large,
                    "vertex-subset oracle limited to " +
                        std::to_string(max_vertices) + " vertices");
    const std::uint64_t total = std::uint64_t{1} << g.num_vertices();
    for (std::uint64_t side = 1; side + 1 < total; ++side) {
        std::uint64_t in_cut = 0, in_sub = 0;
        for (std::size_t i = 0; i < g.num_edges(); ++i) {
            const Edge &e = g.edges()[i];
            const bool crosses =
                (((side >> e.u) ^ (side >> e.v)) & 1u) != 0;
            if (crosses) {
                ++in_cut;
                if (subgraph.get(i))
                    ++in_sub;
            }
        }
        if (alpha.den() * in_sub > alpha.num() * in_cut)
            return false;
    }
    return true;
}

CensusReport count_thin(const Graph &g, const Alpha &alpha, unsigned threads,
                        std::size_t max_length, std::size_t max_dimension) {
    const LinearCode code = cut_space(g);
    CensusReport dual = count_sparsifiers(code, alpha.complement(), threads,
                                          max_length, max_dimension);
    // T <-> E \ T is a bijection between alpha-thin subgraphs and
    // (1-alpha)-sparsifiers, so only the size bookkeeping flips.
    CensusReport report = dual;
    report.alpha = alpha;
    const std::size_t n = report.n;
    for (std::size_t s = 0; s <= n; ++s)
        report.size_histogram[s] = dual.size_histogram[n - s];
    report.min_size = n + 1;
    for (std::size_t s = 0; s <= n; ++s)
        if (report.size_histogram[s] != 0) {
            report.min_size = s;
            break;
        }
    return report;
}

FindThinResult find_thin(const Graph &g, unsigned ell, SearchMode mode,
                         unsigned restarts, std::uint64_t seed,
                         std::size_t max_length, std::size_t max_dimension) {
    const LinearCode code = cut_space(g);
    FindThinResult result;
    result.trace = iterated_sparsifier(code, ell, mode, restarts, seed,
                                       max_length, max_dimension);

    const std::size_t m = g.num_edges();
    result.subgraph = BitVector(m);
    for (std::size_t i = 0; i < m; ++i)
        if (!result.trace.final_set.get(i))
            result.subgraph.set(i, true);

    const double c_const = std::sqrt(0.6931471805599453) * (1.0 + std::sqrt(2.0));
    const double dim_bound =
        static_cast<double>(g.num_vertices() >= 1 ? g.num_vertices() - 1 : 0);
    result.size_lower_bound =
        std::ldexp(static_cast<double>(m), -static_cast<int>(ell)) -
        c_const * std::sqrt(static_cast<double>(m) * dim_bound);

    const Alpha thin_alpha = result.trace.alpha.complement(); // 2^-ell
    result.report = is_thin(g, result.subgraph, thin_alpha, max_dimension);
    if (!result.report.thin)
        throw Error(Errc::theorem_violation,
                    "find_thin produced a subgraph that fails the thinness "
                    "check at alpha = " +
                        thin_alpha.to_string());
    if (result.size_lower_bound > 0.0 &&
        static_cast<double>(result.subgraph.weight()) + 1e-9 <
            std::ceil(result.size_lower_bound))
        throw Error(Errc::theorem_violation,
                    "find_thin result smaller than the |E|/2^ell - "
                    "c sqrt(|E| (|V|-1)) bound",
                    {{"size", std::to_string(result.subgraph.weight())},
                     {"bound", std::to_string(result.size_lower_bound)}});
    return result;
}

bool is_hitting_set(const LinearCode &code, const BitVector &subset,
                    std::size_t max_dimension) {
    if (subset.length() != code.length())
        throw Error(Errc::length_mismatch,
                    "subset length does not match code length");
    for (const auto &c : code.codewords(max_dimension)) {
        if (c.is_zero())
            continue;
        if (!c.intersects(subset))
            return false;
    }
    return true;
}

namespace {

// First nonzero codeword (Gray order) disjoint from `covered_by`, or nullopt.
std::optional<BitVector> first_unhit_codeword(const LinearCode &code,
                                              const BitVector &subset,
                                              std::size_t max_dimension) {
    for (const auto &c : code.codewords(max_dimension)) {
        if (c.is_zero())
            continue;
        if (!c.intersects(subset))
            return c;
    }
    return std::nullopt;
}

} // namespace

HittingSetReport disjoint_hitting_sets(const LinearCode &code,
                                       std::uint64_t seed,
                                       std::size_t max_dimension) {
    check_dimension_cap(code.dimension(), max_dimension);
    HittingSetReport report;
    if (code.dimension() == 0)
        return report;

    const std::size_t n = code.length();
    BitVector available = BitVector::ones(n);
    SplitMix64 gen(mix64(seed));

    while (true) {
        // Grow: repeatedly hit the first uncovered codeword with a seeded
        // choice among its available coordinates.
        BitVector candidate(n);
        std::vector<std::size_t> added;
        bool stuck = false;
        while (auto unhit = first_unhit_codeword(code, candidate, max_dimension)) {
            std::vector<std::size_t> options;
            for (std::size_t i : unhit->set_indices())
                if (available.get(i) && !candidate.get(i))
                    options.push_back(i);
            if (options.empty()) {
                stuck = true;
                break;
            }
            const std::size_t pick =
                options[static_cast<std::size_t>(gen.next() % options.size())];
            candidate.set(pick, true);
            added.push_back(pick);
        }
        if (stuck)
            break;

        // Prune to a minimal hitting set, newest additions first.
        for (auto it = added.rbegin(); it != added.rend(); ++it) {
            candidate.set(*it, false);
            if (!is_hitting_set(code, candidate, max_dimension))
                candidate.set(*it, true);
        }

        for (std::size_t i : candidate.set_indices())
            available.set(i, false);
        report.sets.push_back(std::move(candidate));
    }
    return report;
}

ProperSearchResult proper_sparsifier_search(const LinearCode &code,
                                            const Alpha &alpha,
                                            std::uint64_t trials,
                                            std::uint64_t seed,
                                            std::size_t max_length,
                                            std::size_t max_dimension) {
    check_dimension_cap(code.dimension(), max_dimension);
    const std::size_t n = code.length();

    auto is_proper = [&](const BitVector &subset) {
        for (const auto &c : code.codewords(max_dimension)) {
            if (c.is_zero())
                continue;
            const std::uint64_t w = c.weight();
            const std::uint64_t wp = c.and_weight(subset);
            if (alpha.den() * wp < alpha.num() * w || wp >= w)
                return false;
        }
        return true;
    };

    ProperSearchResult result;
    if (n <= std::min(max_length, kHardEnumerationLimit)) {
        result.exhaustive = true;
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t i = 0; i < total; ++i) {
            const std::uint64_t mask = i ^ (i >> 1);
            BitVector subset(n);
            for (std::uint64_t m = mask; m != 0; m &= m - 1)
                subset.set(static_cast<std::size_t>(std::countr_zero(m)), true);
            ++result.examined;
            if (is_proper(subset)) {
                result.witness = std::move(subset);
                return result;
            }
        }
        return result;
    }

    result.exhaustive = false;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 gen = stream_for(seed, t);
        BitVector subset = random_subset(n, gen);
        ++result.examined;
        if (is_proper(subset)) {
            result.witness = std::move(subset);
            return result;
        }
    }
    return result;
}

std::size_t edge_connectivity(const Graph &g, std::size_t max_dimension) {
    if (g.num_vertices() <= 1)
        return 0;
    if (g.component_count() > 1)
        return 0;
    const LinearCode code = cut_space(g);
    std::size_t best = g.num_edges() + 1;
    for (const auto &c : code.codewords(max_dimension)) {
        if (c.is_zero())
            continue;
        best = std::min(best, c.weight());
    }
    return best;
}

} // namespace sparsecode
