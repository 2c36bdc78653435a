#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sosforge/graph.hpp"

#include <random>

using namespace sosforge;

namespace {

// independent oracle: exact chromatic number by branch and bound
bool colorable(const CubeGraph& g, int limit, std::vector<int>& col, int v) {
    if (v == g.vertices) return true;
    for (int c = 0; c < limit; ++c) {
        bool ok = true;
        for (int u : g.adj[v])
            if (col[u] == c) {
                ok = false;
                break;
            }
        if (!ok) continue;
        col[v] = c;
        if (colorable(g, limit, col, v + 1)) return true;
        col[v] = -1;
    }
    return false;
}

int chromatic_number(const CubeGraph& g) {
    for (int limit = 1; limit <= g.vertices; ++limit) {
        std::vector<int> col(g.vertices, -1);
        if (colorable(g, limit, col, 0)) return limit;
    }
    return g.vertices;
}

bool proper(const CubeGraph& g, const Coloring& c) {
    for (auto [a, b] : g.edges)
        if (c.color[a] == c.color[b]) return false;
    return true;
}

Partition uniform_partition(int side_count) {
    // side_count x side_count unit squares tiling a square box
    int level = 0;
    while ((1 << level) < side_count) ++level;
    REQUIRE((1 << level) == side_count);
    double extent = static_cast<double>(side_count);
    Partition p({0.0, 0.0}, extent, 1.25, 0.05,
                Box{{0.0, 0.0}, {extent, extent}});
    for (int i = 0; i < side_count; ++i)
        for (int j = 0; j < side_count; ++j) p.add_cube({level, {i, j}, 1.0});
    p.finalize();
    return p;
}

}  // namespace

TEST_CASE("adjacency-grid") {
    Partition p = uniform_partition(4);
    CubeGraph g = adjacency_graph(p);
    CHECK(g.vertices == 16);
    // closed squares: interior cell touches all 8 neighbours
    int deg_hist[9] = {0};
    for (int v = 0; v < g.vertices; ++v) {
        REQUIRE(g.degree(v) <= 8);
        ++deg_hist[g.degree(v)];
    }
    CHECK(deg_hist[3] == 4);  // corners
    CHECK(deg_hist[5] == 8);  // edges
    CHECK(deg_hist[8] == 4);  // interior
    CHECK(g.has_edge(0, 5));  // diagonal touch counts
}

TEST_CASE("adjacency-mixed-levels") {
    // one unit square next to four half-squares stacked beside it
    Partition p({0.0, 0.0}, 2.0, 1.25, 0.05, Box{{0.0, 0.0}, {2.0, 2.0}});
    p.add_cube({1, {0, 0}, 1.0});  // [0,1]^2
    p.add_cube({2, {2, 0}, 1.0});  // [1,1.5]x[0,0.5]
    p.add_cube({2, {2, 1}, 1.0});  // [1,1.5]x[0.5,1]
    p.add_cube({2, {3, 0}, 1.0});  // [1.5,2]x[0,0.5] -- not touching the big one
    p.add_cube({2, {2, 2}, 1.0});  // [1,1.5]x[1,1.5] -- corner touch
    p.finalize();
    CubeGraph g = adjacency_graph(p);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(0, 2));
    CHECK_FALSE(g.has_edge(0, 3));
    CHECK(g.has_edge(0, 4));
    CHECK(g.has_edge(1, 3));
}

TEST_CASE("degree-bound") {
    Partition p = uniform_partition(8);
    CubeGraph g = adjacency_graph(p);
    CHECK(degree_certificate(g, 2));  // 4^2 - 2^2 = 12
    for (int v = 0; v < g.vertices; ++v) CHECK(g.degree(v) <= 12);

    CubeGraph star = CubeGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK_FALSE(degree_certificate(star, 1));  // 4 - 2 = 2 < 3
    CHECK(degree_certificate(star, 2));
}

TEST_CASE("greedy-coloring") {
    CubeGraph tri = CubeGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    Coloring ct = welsh_powell_color(tri);
    CHECK(ct.classes == 3);
    CHECK(proper(tri, ct));

    CubeGraph path = CubeGraph::from_edges(3, {{0, 1}, {1, 2}});
    Coloring cp = welsh_powell_color(path);
    CHECK(cp.classes == 2);
    CHECK(proper(path, cp));

    CubeGraph empty = CubeGraph::from_edges(5, {});
    CHECK(welsh_powell_color(empty).classes == 1);
}

TEST_CASE("saturation-coloring") {
    CubeGraph tri = CubeGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    Coloring ct = dsatur_color(tri);
    CHECK(ct.classes == 3);
    CHECK(proper(tri, ct));

    CubeGraph path = CubeGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    Coloring cp = dsatur_color(path);
    CHECK(cp.classes == 2);
    CHECK(proper(path, cp));

    // a crown graph trips the degree-sweep greedy but not the saturation one
    std::vector<std::pair<int, int>> crown;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) crown.emplace_back(i, 4 + j);
    CubeGraph cg = CubeGraph::from_edges(8, crown);
    Coloring cc = dsatur_color(cg);
    CHECK(proper(cg, cc));
    CHECK(cc.classes == 2);

    CHECK(dsatur_color(CubeGraph::from_edges(5, {})).classes == 1);
}

TEST_CASE("nine-color-planar") {
    // uniform 2-D partitions color like the 3x3 torus pattern: <= 9 classes
    for (int side : {4, 8, 16}) {
        Partition p = uniform_partition(side);
        CubeGraph g = adjacency_graph(p);
        Coloring c = welsh_powell_color(g);
        CHECK(proper(g, c));
        CHECK(c.classes <= 9);
        CHECK(c.classes >= 4);
    }
}

TEST_CASE("structure-witness-examples") {
    // star K_{1,3}: center sees three degree-1 leaves; each leaf has one
    // neighbour (the center, degree 3 >= 1), so alpha_1 is present at a leaf
    CubeGraph star = CubeGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    auto w1 = alpha_s_structure_present(star, 1);
    REQUIRE(w1.has_value());
    CHECK(w1->w.size() == 1);

    // a single edge has no vertex with two qualifying neighbours
    CubeGraph edge = CubeGraph::from_edges(2, {{0, 1}});
    CHECK_FALSE(alpha_s_structure_present(edge, 2).has_value());

    // triangle: any vertex has two adjacent equal-degree neighbours
    CubeGraph tri = CubeGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    auto w2 = alpha_s_structure_present(tri, 2);
    REQUIRE(w2.has_value());
    CHECK(w2->z.empty());  // the pair is adjacent, no witness needed

    CHECK_THROWS_AS(alpha_s_structure_present(tri, 0), std::invalid_argument);
}

TEST_CASE("structure-absence-chromatic") {
    // absence of the s-fan pattern forces the greedy sweep to use <= s classes;
    // cross-checked against the exact chromatic number on random graphs
    std::mt19937 rng(20260824);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);  // 3..12 vertices
        double density = 0.15 + 0.5 * (rng() % 100) / 100.0;
        std::vector<std::pair<int, int>> edges;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if ((rng() % 1000) < density * 1000) edges.emplace_back(a, b);
        CubeGraph g = CubeGraph::from_edges(n, std::move(edges));
        Coloring c = welsh_powell_color(g);
        REQUIRE(proper(g, c));
        int chi = chromatic_number(g);
        REQUIRE(c.classes >= chi);
        for (int s = 1; s <= 5; ++s) {
            if (!alpha_s_structure_present(g, s).has_value()) {
                REQUIRE(c.classes <= s);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);  // the vacuous branch never carried the test
}

TEST_CASE("graph-json-roundtrip") {
    CubeGraph g = CubeGraph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}, {0, 2}});
    Coloring c = welsh_powell_color(g);
    auto [g2, c2] = graph_from_json(graph_to_json(g, &c));
    CHECK(g2.edges == g.edges);
    CHECK(g2.vertices == g.vertices);
    CHECK(c2.color == c.color);
    CHECK(c2.classes == c.classes);
    CHECK_THROWS_AS(CubeGraph::from_edges(2, {{1, 1}}), std::invalid_argument);
}
