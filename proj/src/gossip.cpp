#include "dlda/gossip.hpp"

#include <Eigen/Eigenvalues>
#include <string>

#include "dlda/errors.hpp"

namespace dlda {

Matrix pairwise_averaging_matrix(int n, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
        throw ConfigError("pairwise_averaging_matrix: invalid node pair");
    }
    Matrix w = Matrix::Identity(n, n);
    w(i, i) = 0.5;
    w(j, j) = 0.5;
    w(i, j) = 0.5;
    w(j, i) = 0.5;
    return w;
}

AveragingMatrix expected_averaging_matrix(const Graph& graph) {
    graph.validate();
    if (!is_connected(graph)) {
        throw ConfigError("expected_averaging_matrix: graph must be connected");
    }
    const int n = graph.n;
    const double m = (double)graph.edge_count();

    Matrix w = Matrix::Identity(n, n);
    for (const auto& [i, j] : graph.edges) {
        w(i, i) -= 0.5 / m;
        w(j, j) -= 0.5 / m;
        w(i, j) += 0.5 / m;
        w(j, i) += 0.5 / m;
    }
    return AveragingMatrix{std::move(w)};
}

SpectralGapResult spectral_gap(const Graph& graph) {
    const AveragingMatrix expected = expected_averaging_matrix(graph);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(expected.w);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("spectral_gap: eigendecomposition failed");
    }
    const auto& ev = solver.eigenvalues();  // ascending
    const int n = graph.n;
    const double top = ev[n - 1];
    if (std::abs(top - 1.0) > 1e-9) {
        throw NumericalError("spectral_gap: top eigenvalue is " + std::to_string(top) +
                             ", expected 1");
    }
    const double lambda2 = ev[n - 2];
    return SpectralGapResult{lambda2, 1.0 - lambda2};
}

void apply_pairwise_average(std::span<SufficientStats> stats, int i, int j) {
    const int n = (int)stats.size();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
        throw ConfigError("apply_pairwise_average: invalid node pair");
    }
    Matrix mean = 0.5 * (stats[i].counts + stats[j].counts);
    stats[j].counts = mean;
    stats[i].counts = std::move(mean);
}

}  // namespace dlda
