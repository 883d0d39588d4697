#include <doctest.h>

#include <random>
#include <set>

#include "sparsecode/graph.hpp"
#include "test_util.hpp"

using namespace sparsecode;

namespace {

BitVector edge_subset(std::size_t m, std::initializer_list<std::size_t> one_based) {
    BitVector v(m);
    for (std::size_t i : one_based)
        v.set(i - 1, true);
    return v;
}

// Union-find connectivity of (V, S): the oracle for hitting-set duality.
bool spans_connected(const Graph &g, const BitVector &subset) {
    std::vector<std::size_t> parent(g.num_vertices());
    for (std::size_t v = 0; v < parent.size(); ++v)
        parent[v] = v;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (subset.get(i))
            parent[find(g.edges()[i].u)] = find(g.edges()[i].v);
    for (std::size_t v = 1; v < g.num_vertices(); ++v)
        if (find(v) != find(0))
            return false;
    return true;
}

Graph triangle() { return testutil::complete_graph(3); }

BitVector mask_vector(std::uint64_t mask, std::size_t n) {
    BitVector v(n);
    for (std::size_t b = 0; b < n; ++b)
        if ((mask >> b) & 1u)
            v.set(b, true);
    return v;
}

} // namespace

TEST_CASE("graph construction validates") {
    CHECK_THROWS_AS(Graph(2, {Edge{0, 0}}), Error);   // self-loop
    CHECK_THROWS_AS(Graph(2, {Edge{0, 2}}), Error);   // out of range
    const Graph parallel(2, {Edge{0, 1}, Edge{0, 1}});
    CHECK(parallel.num_edges() == 2);
    CHECK(parallel.component_count() == 1);
    CHECK(Graph(4, {Edge{0, 1}}).component_count() == 3);
}

TEST_CASE("cut space basics") {
    SUBCASE("single edge") {
        const LinearCode code = cut_space(Graph(2, {Edge{0, 1}}));
        CHECK(code.length() == 1);
        CHECK(code.dimension() == 1);
    }
    SUBCASE("triangle with edge order 12, 13, 23") {
        const LinearCode code = cut_space(triangle());
        CHECK(code.dimension() == 2);
        std::set<BitVector> words;
        for (const auto &c : code.codewords())
            words.insert(c);
        CHECK(words == std::set<BitVector>{BitVector::from_string("000"),
                                           BitVector::from_string("110"),
                                           BitVector::from_string("101"),
                                           BitVector::from_string("011")});
    }
    SUBCASE("rank is |V| - components on random graphs") {
        std::mt19937_64 rng(21);
        for (int rep = 0; rep < 50; ++rep) {
            const std::size_t vertices = 2 + rng() % 8;
            std::vector<Edge> edges;
            const std::size_t m = rng() % 12;
            for (std::size_t i = 0; i < m; ++i) {
                const auto a = static_cast<std::uint32_t>(rng() % vertices);
                auto b = static_cast<std::uint32_t>(rng() % vertices);
                while (b == a)
                    b = static_cast<std::uint32_t>(rng() % vertices);
                edges.push_back(Edge{a, b});
            }
            const Graph g(vertices, edges);
            // cut_space asserts the rank internally; recheck here anyway.
            CHECK(cut_space(g).dimension() ==
                  g.num_vertices() - g.component_count());
        }
    }
}

TEST_CASE("is_thin on the triangle") {
    const Graph g = triangle();
    CHECK(is_thin(g, edge_subset(3, {1}), Alpha(1, 2)).thin);

    const ThinReport bad = is_thin(g, edge_subset(3, {1, 2}), Alpha(1, 2));
    CHECK(!bad.thin);
    REQUIRE(bad.witness_cut.has_value());
    REQUIRE(bad.witness_edges.has_value());
    // The witness vertex side must actually violate.
    std::uint64_t in_cut = 0, in_sub = 0;
    std::vector<bool> side(g.num_vertices(), false);
    for (std::uint32_t v : *bad.witness_cut)
        side[v] = true;
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (side[g.edges()[i].u] != side[g.edges()[i].v]) {
            ++in_cut;
            if (bad.subgraph.get(i))
                ++in_sub;
        }
    CHECK(2 * in_sub > in_cut);

    CHECK(is_thin(g, BitVector(3), Alpha(0, 1)).thin); // empty T, any alpha
}

TEST_CASE("thin check agrees with the vertex-subset oracle") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t vertices = 2 + rng() % 5;
        const Graph g = testutil::random_connected_graph(
            vertices, rng() % 5, rng);
        const std::size_t m = g.num_edges();
        if (m > 10)
            continue;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            const BitVector t = mask_vector(mask, m);
            CHECK(is_thin(g, t, Alpha(1, 2)).thin ==
                  is_thin_vertex_oracle(g, t, Alpha(1, 2)));
        }
    }
}

TEST_CASE("thin/sparsifier duality over all subsets") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t vertices = 2 + rng() % 6;
        const Graph g =
            testutil::random_connected_graph(vertices, rng() % 6, rng);
        const std::size_t m = g.num_edges();
        if (m > 12)
            continue;
        const LinearCode code = cut_space(g);
        for (const Alpha &alpha : {Alpha(1, 2), Alpha(1, 3), Alpha(2, 3)}) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m);
                 ++mask) {
                const BitVector t = mask_vector(mask, m);
                BitVector complement = BitVector::ones(m);
                complement.xor_with(t);
                CHECK(is_thin(g, t, alpha).thin ==
                      verify(code, complement, alpha.complement()).pass);
            }
        }
    }
}

TEST_CASE("duality on sampled subsets of a larger graph") {
    std::mt19937_64 rng(28);
    const Graph g = testutil::random_connected_graph(8, 11, rng); // |E| = 18
    const LinearCode code = cut_space(g);
    for (int trial = 0; trial < 500; ++trial) {
        const BitVector t = testutil::random_vector(g.num_edges(), rng);
        BitVector complement = BitVector::ones(g.num_edges());
        complement.xor_with(t);
        CHECK(is_thin(g, t, Alpha(1, 2)).thin ==
              verify(code, complement, Alpha(1, 2)).pass);
    }
}

TEST_CASE("count_thin") {
    SUBCASE("triangle: empty set and the three singletons") {
        const CensusReport report = count_thin(triangle(), Alpha(1, 2));
        CHECK(report.count == 4);
        CHECK(report.lower_bound == 2); // 2^{3-2}
        CHECK(report.size_histogram[0] == 1);
        CHECK(report.size_histogram[1] == 3);
        CHECK(report.size_histogram[2] == 0);
        CHECK(report.min_size == 0);
    }
    SUBCASE("K4: exact count 10, floor 8") {
        const CensusReport report =
            count_thin(testutil::complete_graph(4), Alpha(1, 2));
        CHECK(report.count == 10); // 1 empty + 6 singletons + 3 matchings
        CHECK(report.lower_bound == 8);
        CHECK(report.size_histogram[0] == 1);
        CHECK(report.size_histogram[1] == 6);
        CHECK(report.size_histogram[2] == 3);
        CHECK(report.size_histogram[3] == 0);
    }
    SUBCASE("edgeless graph: only the empty subgraph") {
        const CensusReport report = count_thin(Graph(3, {}), Alpha(1, 2));
        CHECK(report.count == 1);
    }
    SUBCASE("count matches a direct is_thin sweep") {
        std::mt19937_64 rng(24);
        for (int rep = 0; rep < 10; ++rep) {
            const Graph g = testutil::random_connected_graph(
                2 + rng() % 5, rng() % 4, rng);
            const std::size_t m = g.num_edges();
            if (m > 10)
                continue;
            std::uint64_t expected = 0;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m);
                 ++mask)
                if (is_thin(g, mask_vector(mask, m), Alpha(1, 2)).thin)
                    ++expected;
            CHECK(count_thin(g, Alpha(1, 2)).count == expected);
        }
    }
}

TEST_CASE("find_thin") {
    SUBCASE("K4, ell = 1: a perfect matching, the maximum thin subgraph") {
        const Graph g = testutil::complete_graph(4);
        const FindThinResult result =
            find_thin(g, 1, SearchMode::exact, 0, 0);
        CHECK(result.report.thin);
        CHECK(result.subgraph.weight() == 2);
        // Exhaustive oracle: no 1/2-thin subgraph of K4 has more edges.
        std::size_t max_thin = 0;
        for (std::uint64_t mask = 0; mask < 64; ++mask) {
            const BitVector t = mask_vector(mask, 6);
            if (is_thin(g, t, Alpha(1, 2)).thin)
                max_thin = std::max<std::size_t>(max_thin, t.weight());
        }
        CHECK(max_thin == 2);
        // The found matching: two disjoint edges.
        const auto idx = result.subgraph.set_indices();
        REQUIRE(idx.size() == 2);
        const Edge a = g.edges()[idx[0]], b = g.edges()[idx[1]];
        CHECK(a.u != b.u);
        CHECK(a.v != b.v);
        CHECK(a.u != b.v);
        CHECK(a.v != b.u);
    }
    SUBCASE("tree, ell = 1: verification still holds") {
        const Graph tree(5, {Edge{0, 1}, Edge{1, 2}, Edge{2, 3}, Edge{3, 4}});
        const FindThinResult result = find_thin(tree, 1, SearchMode::exact, 0, 0);
        CHECK(result.report.thin);
        // Every edge of a tree is a bridge, so only the empty set is thin.
        CHECK(result.subgraph.weight() == 0);
    }
    SUBCASE("triangle, ell = 2: necessarily empty") {
        const FindThinResult result =
            find_thin(triangle(), 2, SearchMode::exact, 0, 0);
        CHECK(result.report.thin);
        CHECK(result.subgraph.weight() == 0);
    }
}

TEST_CASE("hitting sets") {
    const Graph g = triangle();
    const LinearCode code = cut_space(g);
    SUBCASE("a spanning tree hits every cut") {
        CHECK(is_hitting_set(code, edge_subset(3, {1, 2})));
    }
    SUBCASE("the empty set misses (k >= 1)") {
        CHECK(!is_hitting_set(code, BitVector(3)));
    }
    SUBCASE("hitting iff connected, against the union-find oracle") {
        std::mt19937_64 rng(25);
        for (int rep = 0; rep < 30; ++rep) {
            const Graph h = testutil::random_connected_graph(
                2 + rng() % 6, rng() % 6, rng);
            const LinearCode cuts = cut_space(h);
            for (int trial = 0; trial < 50; ++trial) {
                const BitVector s =
                    testutil::random_vector(h.num_edges(), rng);
                CHECK(is_hitting_set(cuts, s) == spans_connected(h, s));
            }
        }
    }
}

TEST_CASE("disjoint hitting sets") {
    SUBCASE("K4 has two edge-disjoint spanning trees") {
        const Graph g = testutil::complete_graph(4);
        const LinearCode code = cut_space(g);
        // Independent exhibit: two disjoint trees, both verified hitting.
        // Edges: 1=(0,1) 2=(0,2) 3=(0,3) 4=(1,2) 5=(1,3) 6=(2,3).
        const BitVector tree1 = edge_subset(6, {1, 4, 6}); // path 0-1-2-3
        const BitVector tree2 = edge_subset(6, {2, 3, 5}); // star-ish 2-0-3, 1-3
        CHECK(is_hitting_set(code, tree1));
        CHECK(is_hitting_set(code, tree2));
        CHECK(!tree1.intersects(tree2));

        const HittingSetReport report = disjoint_hitting_sets(code, 0);
        CHECK(report.sets.size() >= 2);
    }
    SUBCASE("results are disjoint verified hitting sets") {
        std::mt19937_64 rng(26);
        for (int rep = 0; rep < 20; ++rep) {
            const Graph g = testutil::random_connected_graph(
                2 + rng() % 6, rng() % 8, rng);
            const LinearCode code = cut_space(g);
            const HittingSetReport report =
                disjoint_hitting_sets(code, rng());
            BitVector used(code.length());
            for (const auto &s : report.sets) {
                CHECK(is_hitting_set(code, s));
                // For a cut space, hitting means spanning-connected.
                CHECK(spans_connected(g, s));
                CHECK(!used.intersects(s));
                used.xor_with(s);
            }
            CHECK(report.sets.size() >= 1); // connected: a tree exists
        }
    }
    SUBCASE("a tree yields exactly one hitting set") {
        const Graph tree(4, {Edge{0, 1}, Edge{1, 2}, Edge{2, 3}});
        const HittingSetReport report =
            disjoint_hitting_sets(cut_space(tree), 7);
        CHECK(report.sets.size() == 1);
        CHECK(report.sets[0] == BitVector::ones(3)); // all bridges required
    }
    SUBCASE("zero code: d = 0 by convention") {
        CHECK(disjoint_hitting_sets(LinearCode::zero(5), 0).sets.empty());
    }
}

TEST_CASE("proper sparsifier search") {
    SUBCASE("repetition code: first Gray-order witness is {1,2}") {
        const LinearCode rep(
            Gf2Matrix(3, {BitVector::from_string("111")}));
        const ProperSearchResult result =
            proper_sparsifier_search(rep, Alpha(1, 2), 0, 0);
        CHECK(result.exhaustive);
        REQUIRE(result.witness.has_value());
        CHECK(result.witness->weight() == 2);
        CHECK(*result.witness == edge_subset(3, {1, 2}));
    }
    SUBCASE("full code: definitive NOT_FOUND") {
        std::vector<BitVector> rows;
        for (std::size_t i = 0; i < 4; ++i) {
            BitVector r(4);
            r.set(i, true);
            rows.push_back(r);
        }
        const LinearCode full(Gf2Matrix(4, std::move(rows)));
        const ProperSearchResult result =
            proper_sparsifier_search(full, Alpha(1, 2), 0, 0);
        CHECK(result.exhaustive);
        CHECK(!result.witness.has_value());
        CHECK(result.examined == 16);
    }
    SUBCASE("Hamming [7,4] at alpha = 1/2: pinned NOT_FOUND") {
        const LinearCode ham(
            Gf2Matrix(7, {BitVector::from_string("1000110"),
                          BitVector::from_string("0100101"),
                          BitVector::from_string("0010011"),
                          BitVector::from_string("0001111")}));
        const ProperSearchResult result =
            proper_sparsifier_search(ham, Alpha(1, 2), 0, 0);
        CHECK(result.exhaustive);
        CHECK(!result.witness.has_value());

        // Independent oracle: rescan all 128 subsets with naive loops.
        bool any = false;
        for (std::uint64_t mask = 0; mask < 128 && !any; ++mask) {
            const BitVector s = mask_vector(mask, 7);
            bool ok = true;
            for (const auto &c : testutil::naive_span(ham)) {
                if (c.is_zero())
                    continue;
                const std::size_t w = testutil::naive_weight(c);
                std::size_t wp = 0;
                for (std::size_t i = 0; i < 7; ++i)
                    if (c.get(i) && s.get(i))
                        ++wp;
                if (2 * wp < w || wp >= w) {
                    ok = false;
                    break;
                }
            }
            any = ok;
        }
        CHECK(!any);
    }
    SUBCASE("random mode searches when n exceeds the cap") {
        std::mt19937_64 rng(27);
        const LinearCode code = testutil::random_code(30, 2, rng);
        const ProperSearchResult result =
            proper_sparsifier_search(code, Alpha(1, 2), 50, 3, 12);
        CHECK(!result.exhaustive);
        if (result.witness) {
            for (const auto &c : code.codewords()) {
                if (c.is_zero())
                    continue;
                const std::size_t w = c.weight();
                const std::size_t wp = c.and_weight(*result.witness);
                CHECK(2 * wp >= w);
                CHECK(wp < w);
            }
        }
    }
}

TEST_CASE("edge connectivity") {
    CHECK(edge_connectivity(testutil::complete_graph(4)) == 3);
    CHECK(edge_connectivity(Graph(3, {Edge{0, 1}, Edge{1, 2}})) == 1);
    CHECK(edge_connectivity(Graph(4, {Edge{0, 1}, Edge{2, 3}})) == 0);
    CHECK(edge_connectivity(Graph(1, {})) == 0); // trivial graph convention
    // Parallel edges double the cut.
    CHECK(edge_connectivity(Graph(2, {Edge{0, 1}, Edge{0, 1}})) == 2);
}
