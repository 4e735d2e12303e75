#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dlda/errors.hpp"

namespace dlda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dirichlet concentration over the K topics; held fixed during training.
struct DirichletParams {
    Vector alpha;

    int n_topics() const { return static_cast<int>(alpha.size()); }
    double sum() const { return alpha.sum(); }

    void validate() const {
        if (alpha.size() == 0) throw ConfigError("DirichletParams: alpha is empty");
        for (int k = 0; k < alpha.size(); ++k) {
            if (!(alpha[k] > 0.0)) throw ConfigError("DirichletParams: alpha must be strictly positive");
        }
    }

    static DirichletParams symmetric(int n_topics, double value) {
        DirichletParams p{Vector::Constant(n_topics, value)};
        p.validate();
        return p;
    }
};

// K x V matrix; each row is a distribution over the vocabulary.
struct TopicMatrix {
    Matrix beta;

    int n_topics() const { return static_cast<int>(beta.rows()); }
    int vocab_size() const { return static_cast<int>(beta.cols()); }

    void validate(double row_sum_tol = 1e-9) const {
        if (beta.rows() == 0 || beta.cols() == 0) throw ConfigError("TopicMatrix: empty matrix");
        if ((beta.array() < 0.0).any()) throw ConfigError("TopicMatrix: negative entry");
        for (int k = 0; k < beta.rows(); ++k) {
            if (std::abs(beta.row(k).sum() - 1.0) > row_sum_tol) {
                throw ConfigError("TopicMatrix: row " + std::to_string(k) + " does not sum to 1");
            }
        }
    }
};

// One observation: a nonempty sequence of word indices in [0, V).
struct Document {
    std::vector<int> words;

    int length() const { return static_cast<int>(words.size()); }

    void validate(int vocab_size) const {
        if (words.empty()) throw DataError("Document: empty document");
        for (int w : words) {
            if (w < 0 || w >= vocab_size) {
                throw DataError("Document: word index " + std::to_string(w) + " outside [0, " +
                                std::to_string(vocab_size) + ")");
            }
        }
    }
};

// Ground-truth latent variables of a generated document.
struct HiddenState {
    std::vector<int> z;  // per-word topic assignments
    Vector theta;        // topic proportions drawn for the document
};

// K x V matrix of expected topic-word assignment counts. This is the object
// the online updates and the gossip averaging act on.
struct SufficientStats {
    Matrix counts;

    int n_topics() const { return static_cast<int>(counts.rows()); }
    int vocab_size() const { return static_cast<int>(counts.cols()); }
    double total() const { return counts.sum(); }

    void validate() const {
        if (counts.rows() == 0 || counts.cols() == 0) throw ConfigError("SufficientStats: empty matrix");
        if ((counts.array() < 0.0).any()) throw NumericalError("SufficientStats: negative entry");
        if (!counts.allFinite()) throw NumericalError("SufficientStats: non-finite entry");
    }

    static SufficientStats zero(int n_topics, int vocab_size) {
        return SufficientStats{Matrix::Zero(n_topics, vocab_size)};
    }
};

}  // namespace dlda
