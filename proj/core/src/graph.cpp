#include "sosforge/graph.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace sosforge {

bool CubeGraph::has_edge(int a, int b) const {
    const auto& na = adj[a];
    return std::find(na.begin(), na.end(), b) != na.end();
}

CubeGraph CubeGraph::from_edges(int vertices, std::vector<std::pair<int, int>> edges) {
    CubeGraph g;
    g.vertices = vertices;
    g.adj.resize(vertices);
    for (auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument("graph: self-loop");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [a, b] : edges) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    g.edges = std::move(edges);
    return g;
}

namespace {

// Closed-interval overlap of two dyadic cubes, exact in integers: both
// intervals are mapped to the finer of the two lattices.
bool cubes_touch(const DyadicCube& a, const DyadicCube& b) {
    int lm = std::max(a.level, b.level);
    for (std::size_t i = 0; i < a.index.size(); ++i) {
        std::int64_t alo = a.index[i] << (lm - a.level);
        std::int64_t ahi = (a.index[i] + 1) << (lm - a.level);
        std::int64_t blo = b.index[i] << (lm - b.level);
        std::int64_t bhi = (b.index[i] + 1) << (lm - b.level);
        if (ahi < blo || bhi < alo) return false;
    }
    return true;
}

}  // namespace

CubeGraph adjacency_graph(const Partition& p) {
    const auto& cubes = p.cubes();
    int n = p.dim();
    int count = static_cast<int>(cubes.size());

    // Bucket cubes by level, then probe each cube's closure against the
    // candidate cells of every level (ranges computed in integer arithmetic).
    std::map<int, std::map<std::vector<std::int64_t>, int>> by_level;
    for (int i = 0; i < count; ++i) by_level[cubes[i].level][cubes[i].index] = i;

    std::vector<std::pair<int, int>> edges;
    std::vector<std::int64_t> probe(n);
    for (int i = 0; i < count; ++i) {
        const DyadicCube& q = cubes[i];
        for (const auto& [level, cells] : by_level) {
            std::vector<std::int64_t> lo(n), hi(n);
            std::size_t total = 1;
            for (int a = 0; a < n; ++a) {
                if (level >= q.level) {
                    lo[a] = (q.index[a] << (level - q.level)) - 1;
                    hi[a] = ((q.index[a] + 1) << (level - q.level));
                } else {
                    // Coarser lattice: cells whose closure can touch ours.
                    std::int64_t shift = q.level - level;
                    std::int64_t mask = (std::int64_t{1} << shift) - 1;
                    lo[a] = ((q.index[a] + mask) >> shift) - 1;
                    hi[a] = (q.index[a] + 1) >> shift;
                }
                total *= static_cast<std::size_t>(hi[a] - lo[a] + 1);
            }
            if (total > cells.size() * 4 + 64) {
                // Sparse level: scan it directly instead of probing cells.
                for (const auto& [idx, jid] : cells)
                    if (jid > i && cubes_touch(q, cubes[jid])) edges.emplace_back(i, jid);
                continue;
            }
            for (std::size_t m = 0; m < total; ++m) {
                std::size_t t = m;
                for (int a = 0; a < n; ++a) {
                    std::size_t span = static_cast<std::size_t>(hi[a] - lo[a] + 1);
                    probe[a] = lo[a] + static_cast<std::int64_t>(t % span);
                    t /= span;
                }
                auto it = cells.find(probe);
                if (it == cells.end() || it->second <= i) continue;
                if (cubes_touch(q, cubes[it->second])) edges.emplace_back(i, it->second);
            }
        }
    }
    return CubeGraph::from_edges(count, std::move(edges));
}

Coloring welsh_powell_color(const CubeGraph& g) {
    std::vector<int> order(g.vertices);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    Coloring c;
    c.color.assign(g.vertices, -1);
    int assigned = 0;
    int cls = 0;
    while (assigned < g.vertices) {
        for (int v : order) {
            if (c.color[v] != -1) continue;
            bool free = true;
            for (int u : g.adj[v])
                if (c.color[u] == cls) {
                    free = false;
                    break;
                }
            if (free) {
                c.color[v] = cls;
                ++assigned;
            }
        }
        ++cls;
    }
    c.classes = cls;
    return c;
}

Coloring dsatur_color(const CubeGraph& g) {
    Coloring c;
    c.color.assign(g.vertices, -1);
    std::vector<std::set<int>> nbr_colors(g.vertices);
    for (int done = 0; done < g.vertices; ++done) {
        int pick = -1;
        for (int v = 0; v < g.vertices; ++v) {
            if (c.color[v] != -1) continue;
            if (pick == -1 ||
                nbr_colors[v].size() > nbr_colors[pick].size() ||
                (nbr_colors[v].size() == nbr_colors[pick].size() &&
                 g.degree(v) > g.degree(pick)))
                pick = v;
        }
        int col = 0;
        while (nbr_colors[pick].count(col)) ++col;
        c.color[pick] = col;
        c.classes = std::max(c.classes, col + 1);
        for (int u : g.adj[pick]) nbr_colors[u].insert(col);
    }
    return c;
}

std::optional<StructureWitness> alpha_s_structure_present(const CubeGraph& g, int s) {
    if (s < 1) throw std::invalid_argument("structure: s must be >= 1");
    if (g.vertices > 2000) throw std::invalid_argument("structure: graph too large");

    for (int v = 0; v < g.vertices; ++v) {
        std::vector<int> candidates;
        for (int u : g.adj[v])
            if (g.degree(u) >= g.degree(v)) candidates.push_back(u);
        if (static_cast<int>(candidates.size()) < s) continue;

        std::vector<int> pick(s);
        std::vector<char> used(candidates.size(), 0);
        // Enumerate ordered s-tuples: the witness requirement for a
        // non-adjacent pair depends on which member carries the later label,
        // so combinations in one fixed order are not enough.
        std::function<std::optional<StructureWitness>(int)> rec =
            [&](int depth) -> std::optional<StructureWitness> {
            if (depth == s) {
                StructureWitness w;
                w.v = v;
                w.w = pick;
                for (int j = 1; j < s; ++j)
                    for (int i = 0; i < j; ++i) {
                        if (g.has_edge(pick[i], pick[j])) continue;
                        int found = -1;
                        for (int z : g.adj[pick[j]]) {
                            if (z == v) continue;
                            if (std::find(pick.begin(), pick.end(), z) != pick.end())
                                continue;
                            if (g.degree(z) < g.degree(pick[j])) continue;
                            if (g.has_edge(pick[i], z)) continue;
                            found = z;
                            break;
                        }
                        if (found < 0) return std::nullopt;
                        w.z.emplace_back(i, j, found);
                    }
                return w;
            }
            for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
                if (used[c]) continue;
                used[c] = 1;
                pick[depth] = candidates[c];
                auto w = rec(depth + 1);
                used[c] = 0;
                if (w) return w;
            }
            return std::nullopt;
        };
        if (auto w = rec(0)) return w;
    }
    return std::nullopt;
}

bool degree_certificate(const CubeGraph& g, int n) {
    std::int64_t bound = 1;
    for (int i = 0; i < n; ++i) bound *= 4;
    std::int64_t minus = 1;
    for (int i = 0; i < n; ++i) minus *= 2;
    bound -= minus;
    for (int v = 0; v < g.vertices; ++v)
        if (g.degree(v) > bound) return false;
    return true;
}

std::string graph_to_json(const CubeGraph& g, const Coloring* c) {
    nlohmann::json j;
    j["edges"] = nlohmann::json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    if (c)
        j["colors"] = c->color;
    else
        j["colors"] = nlohmann::json::array();
    return j.dump();
}

std::pair<CubeGraph, Coloring> graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::pair<int, int>> edges;
    int vertices = 0;
    for (const auto& e : j.at("edges")) {
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        vertices = std::max({vertices, edges.back().first + 1, edges.back().second + 1});
    }
    Coloring c;
    c.color = j.at("colors").get<std::vector<int>>();
    vertices = std::max(vertices, static_cast<int>(c.color.size()));
    for (int v : c.color) c.classes = std::max(c.classes, v + 1);
    return {CubeGraph::from_edges(vertices, std::move(edges)), c};
}

}  // namespace sosforge
