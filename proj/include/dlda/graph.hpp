#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "dlda/rng.hpp"

namespace dlda {

// Undirected simple graph over n agents. Edges are stored as (i, j) with
// i < j, sorted and deduplicated.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    std::vector<int> degrees() const;
    void validate() const;
};

Graph complete_graph(int n);

// Ring lattice over n nodes where each node connects to its k nearest
// neighbors, then each lattice edge's far endpoint is rewired with
// probability p (self-loops and duplicates rejected). The edge count stays
// n*k/2. Regenerates from scratch until connected, up to a retry budget.
Graph watts_strogatz(int n, int k, double p, Rng& rng);

bool is_connected(const Graph& graph);

void save_graph(std::ostream& os, const Graph& graph);
Graph load_graph(std::istream& is);

}  // namespace dlda
