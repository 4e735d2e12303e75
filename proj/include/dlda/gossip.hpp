#pragma once

#include <span>

#include "dlda/graph.hpp"
#include "dlda/types.hpp"

namespace dlda {

struct AveragingMatrix {
    Matrix w;  // symmetric, doubly stochastic
};

// The matrix realizing one pairwise average between nodes i and j:
// I - (e_i - e_j)(e_i - e_j)^T / 2. A symmetric doubly stochastic projection.
Matrix pairwise_averaging_matrix(int n, int i, int j);

// Expectation of the per-step averaging matrix under uniform edge sampling:
// I - (1/|E|) * sum_{(i,j) in E} (e_i - e_j)(e_i - e_j)^T / 2.
AveragingMatrix expected_averaging_matrix(const Graph& graph);

struct SpectralGapResult {
    double lambda2;  // second largest eigenvalue of the expected averaging matrix
    double gap;      // 1 - lambda2; governs consensus speed
};

SpectralGapResult spectral_gap(const Graph& graph);

// Replaces stats[i] and stats[j] by their entrywise mean. Conserves the
// network sum up to floating-point rounding of one addition per entry.
void apply_pairwise_average(std::span<SufficientStats> stats, int i, int j);

}  // namespace dlda
