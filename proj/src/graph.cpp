#include "dlda/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "dlda/errors.hpp"

namespace dlda {

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n, 0);
    for (const auto& [i, j] : edges) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

void Graph::validate() const {
    if (n < 1) throw ConfigError("Graph: node count must be positive");
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n) throw ConfigError("Graph: edge endpoint out of range");
        if (i == j) throw ConfigError("Graph: self-loop");
        const auto e = std::minmax(i, j);
        if (!seen.insert({e.first, e.second}).second) throw ConfigError("Graph: duplicate edge");
    }
}

namespace {

void normalize_edges(Graph& g) {
    for (auto& [i, j] : g.edges) {
        if (i > j) std::swap(i, j);
    }
    std::sort(g.edges.begin(), g.edges.end());
}

}  // namespace

Graph complete_graph(int n) {
    if (n < 2) throw ConfigError("complete_graph: need at least 2 nodes");
    Graph g;
    g.n = n;
    g.edges.reserve(n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    }
    return g;
}

Graph watts_strogatz(int n, int k, double p, Rng& rng) {
    if (k < 2 || k % 2 != 0) throw ConfigError("watts_strogatz: k must be even and >= 2");
    if (n <= k) throw ConfigError("watts_strogatz: need n > k");
    if (p < 0.0 || p > 1.0) throw ConfigError("watts_strogatz: p must lie in [0, 1]");

    constexpr int kRetryBudget = 100;
    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        std::set<std::pair<int, int>> edge_set;
        const auto key = [](int a, int b) {
            return std::pair<int, int>{std::min(a, b), std::max(a, b)};
        };

        for (int i = 0; i < n; ++i) {
            for (int j = 1; j <= k / 2; ++j) edge_set.insert(key(i, (i + j) % n));
        }

        // Rewire the far endpoint of each lattice edge with probability p.
        for (int i = 0; i < n; ++i) {
            for (int j = 1; j <= k / 2; ++j) {
                const auto old_edge = key(i, (i + j) % n);
                if (rng.uniform01() >= p) continue;
                if (edge_set.count(old_edge) == 0) continue;  // already rewired away

                int target = -1;
                for (int tries = 0; tries < 8 * n; ++tries) {
                    const int cand = (int)rng.below((std::uint64_t)n);
                    if (cand == i || edge_set.count(key(i, cand))) continue;
                    target = cand;
                    break;
                }
                if (target < 0) continue;  // node saturated, keep the lattice edge

                edge_set.erase(old_edge);
                edge_set.insert(key(i, target));
            }
        }

        Graph g;
        g.n = n;
        g.edges.assign(edge_set.begin(), edge_set.end());
        if (is_connected(g)) return g;
    }
    throw GenerationError("watts_strogatz: no connected graph within " +
                          std::to_string(kRetryBudget) + " attempts");
}

bool is_connected(const Graph& graph) {
    if (graph.n <= 0) return false;
    if (graph.n == 1) return true;

    std::vector<std::vector<int>> adj(graph.n);
    for (const auto& [i, j] : graph.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }

    std::vector<char> seen(graph.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == graph.n;
}

void save_graph(std::ostream& os, const Graph& graph) {
    os << "n=" << graph.n << "\n";
    for (const auto& [i, j] : graph.edges) os << i << ' ' << j << "\n";
}

Graph load_graph(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("n=", 0) != 0) {
        throw IoError("graph file: expected 'n=<int>' header");
    }
    Graph g;
    try {
        g.n = std::stoi(header.substr(2));
    } catch (const std::exception&) {
        throw IoError("graph file: bad node count '" + header + "'");
    }

    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, j = 0;
        if (!(ls >> i >> j)) throw IoError("graph file: bad edge line '" + line + "'");
        g.edges.emplace_back(i, j);
    }
    normalize_edges(g);
    g.validate();
    return g;
}

}  // namespace dlda
