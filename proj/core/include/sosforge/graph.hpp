#pragma once

#include "sosforge/whitney.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sosforge {

/// Undirected graph on cube ids; edge iff the closed cubes intersect.
struct CubeGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
    std::vector<std::vector<int>> adj;

    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int a, int b) const;

    static CubeGraph from_edges(int vertices, std::vector<std::pair<int, int>> edges);
};

/// Exact adjacency via integer interval overlap on the dyadic lattice.
CubeGraph adjacency_graph(const Partition& p);

struct Coloring {
    std::vector<int> color;
    int classes = 0;
};

/// Greedy sweep coloring: vertices by decreasing degree (ties by id), each
/// color class grown as a maximal independent set before the next one opens.
Coloring welsh_powell_color(const CubeGraph& g);

/// Saturation-guided greedy coloring; tends to reach the clique number on
/// locally clustered graphs and is used to recombine overlapping terms.
Coloring dsatur_color(const CubeGraph& g);

/// Certificate that the coloring above needs at most s classes fails: the
/// vertex pattern whose absence forces class count <= s.
struct StructureWitness {
    int v = -1;
    std::vector<int> w;
    std::vector<std::tuple<int, int, int>> z;  // (i, j, z) for non-adjacent w_i, w_j
};

std::optional<StructureWitness> alpha_s_structure_present(const CubeGraph& g, int s);

/// Max degree <= 4^n - 2^n for a graph built from an n-dimensional partition.
bool degree_certificate(const CubeGraph& g, int n);

std::string graph_to_json(const CubeGraph& g, const Coloring* c = nullptr);
std::pair<CubeGraph, Coloring> graph_from_json(const std::string& text);

}  // namespace sosforge
