#pragma once

#include <span>
#include <vector>

#include "dlda/exec.hpp"
#include "dlda/rng.hpp"
#include "dlda/types.hpp"

namespace dlda {

inline constexpr double kDefaultSmoothing = 1e-8;

struct GeneratedDoc {
    Document doc;
    HiddenState hidden;
};

// Samples `n_docs` documents from the LDA generative process: per document
// theta ~ Dirichlet(prior), length ~ Poisson(mean_length) resampled while 0,
// then topic ~ Multinomial(theta) and word ~ Multinomial(beta[topic]) per
// position. The returned hidden states carry the ground truth.
std::vector<GeneratedDoc> generate_corpus(int n_docs, const TopicMatrix& topics,
                                          const DirichletParams& prior, double mean_length,
                                          Rng& rng);

struct EStepConfig {
    enum class Method { Gibbs, Exact };
    Method method = Method::Gibbs;
    int sweeps = 50;
    int burn_in = 25;
    ExecMode exec = ExecMode::Serial;
};

// Collapsed Gibbs chain over the topic assignments of one document (theta
// integrated out). Position n is resampled with probability proportional to
// beta[k][x_n] * (c_k^{-n} + alpha_k). Assignments are initialized from the
// prior-weighted word likelihood. Post-burn-in sweeps accumulate each
// position's conditional topic distribution (Rao-Blackwellized counts); the
// result sums to the document length.
SufficientStats gibbs_estep(const Document& doc, const TopicMatrix& topics,
                            const DirichletParams& prior, int sweeps, int burn_in, Rng& rng);

// Exact posterior expectation of the assignment counts, by enumerating all
// K^L assignment vectors. Guarded by K^L <= 10^6. Serves as the oracle the
// Gibbs chain is validated against.
SufficientStats exact_estep(const Document& doc, const TopicMatrix& topics,
                            const DirichletParams& prior);

// Dispatches on cfg.method. Exact mode ignores the rng.
SufficientStats estep(const Document& doc, const TopicMatrix& topics, const DirichletParams& prior,
                      const EStepConfig& cfg, Rng& rng);

// Per-document expected counts averaged over a batch. Parallel over documents
// when cfg.exec is OpenMP: each document gets a stream derived from one draw
// of `rng` and its batch index, and partial results are reduced in batch
// order, so serial and parallel results are bit-identical.
SufficientStats batch_estep_mean(std::span<const Document> batch, const TopicMatrix& topics,
                                 const DirichletParams& prior, const EStepConfig& cfg, Rng& rng);

// Maximum-likelihood topic matrix for the given statistics:
// beta[k][v] = (counts[k][v] + smoothing) / sum_v' (counts[k][v'] + smoothing).
TopicMatrix m_step(const SufficientStats& stats, double smoothing);

// One online EM step: (1 - rho) * current + rho * batch_estep_mean(batch).
SufficientStats goem_update(const SufficientStats& current, std::span<const Document> batch,
                            const TopicMatrix& topics, const DirichletParams& prior, double rho,
                            const EStepConfig& cfg, Rng& rng);

}  // namespace dlda
