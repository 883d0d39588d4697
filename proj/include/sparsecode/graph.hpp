#ifndef SPARSECODE_GRAPH_HPP
#define SPARSECODE_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sparsecode/sparsifier.hpp"

namespace sparsecode {

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    friend bool operator==(const Edge &, const Edge &) = default;
};

// Undirected multigraph; edge i (0-based) is coordinate i of the cut space.
// Self-loops are rejected: a loop lies in no cut, so its coordinate would be
// silently degenerate.
class Graph {
  public:
    Graph(std::size_t num_vertices, std::vector<Edge> edges);

    std::size_t num_vertices() const noexcept { return num_vertices_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge> &edges() const noexcept { return edges_; }
    std::size_t component_count() const noexcept { return components_; }

  private:
    std::size_t num_vertices_;
    std::vector<Edge> edges_;
    std::size_t components_;
};

// The code over F_2^E spanned by the vertex cuts delta(v). Its dimension is
// checked against |V| - (number of components); a mismatch is an internal
// error.
LinearCode cut_space(const Graph &g);

struct ThinReport {
    Alpha alpha{0, 1};
    BitVector subgraph;
    bool thin = true;
    // A vertex side S with |T(S, S-bar)| > alpha |E(S, S-bar)|, recovered
    // from the violating cut-space codeword.
    std::optional<std::vector<std::uint32_t>> witness_cut;
    std::optional<BitVector> witness_edges;
};

// T is alpha-thin iff it holds at most an alpha fraction of every cut;
// checked against the nonzero cut-space codewords.
ThinReport is_thin(const Graph &g, const BitVector &subgraph,
                   const Alpha &alpha,
                   std::size_t max_dimension = kDefaultMaxDimension);

// Cross-validation oracle: enumerates vertex subsets directly instead of
// cut-space codewords. Exponential in |V|; meant for small graphs.
bool is_thin_vertex_oracle(const Graph &g, const BitVector &subgraph,
                           const Alpha &alpha,
                           std::size_t max_vertices = 16);

// Exact thin-subgraph census via the complement bijection: T is alpha-thin
// iff E \ T is a (1-alpha)-sparsifier of the cut space. Histogram and
// min_size are reported in terms of |T|.
CensusReport count_thin(const Graph &g, const Alpha &alpha,
                        unsigned threads = 1,
                        std::size_t max_length = kDefaultMaxLength,
                        std::size_t max_dimension = kDefaultMaxDimension);

struct FindThinResult {
    BitVector subgraph; // T, the complement of the iterated sparsifier
    ThinReport report;  // verified at alpha = 2^-ell
    IterationTrace trace;
    double size_lower_bound = 0.0; // |E|/2^ell - c sqrt(|E| (|V|-1))
};

FindThinResult find_thin(const Graph &g, unsigned ell, SearchMode mode,
                         unsigned restarts, std::uint64_t seed,
                         std::size_t max_length = kDefaultMaxLength,
                         std::size_t max_dimension = kDefaultMaxDimension);

// Every nonzero codeword has at least one coordinate in S.
bool is_hitting_set(const LinearCode &code, const BitVector &subset,
                    std::size_t max_dimension = kDefaultMaxDimension);

struct HittingSetReport {
    std::vector<BitVector> sets; // pairwise disjoint, each a verified hitting set
};

// Greedy lower bound on the number of disjoint hitting sets: grow a hitting
// set one coordinate at a time (seeded choice among the ones that hit the
// first uncovered codeword), prune it to a minimal one, remove it, repeat.
// The zero code has no nonzero codeword to hit and reports d = 0.
HittingSetReport disjoint_hitting_sets(const LinearCode &code,
                                       std::uint64_t seed,
                                       std::size_t max_dimension = kDefaultMaxDimension);

struct ProperSearchResult {
    std::optional<BitVector> witness;
    bool exhaustive = false; // true: a miss certifies nonexistence
    std::uint64_t examined = 0;
};

// Search for S with alpha wt(c) <= wt(c_S) < wt(c) for every nonzero
// codeword. Exhaustive (Gray order over all subsets) when n fits the cap,
// otherwise seeded random sampling.
ProperSearchResult proper_sparsifier_search(const LinearCode &code,
                                            const Alpha &alpha,
                                            std::uint64_t trials,
                                            std::uint64_t seed,
                                            std::size_t max_length = kDefaultMaxLength,
                                            std::size_t max_dimension = kDefaultMaxDimension);

// Minimum weight over nonzero cut-space codewords; 0 for a disconnected
// graph (and, by convention, for a graph with fewer than two vertices).
std::size_t edge_connectivity(const Graph &g,
                              std::size_t max_dimension = kDefaultMaxDimension);

} // namespace sparsecode

#endif
