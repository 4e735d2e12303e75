#include "dlda/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace dlda {

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw IoError("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    return is;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
}

double parse_double(const std::string& token, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string(what) + ": bad number '" + token + "'");
    }
}

long parse_long(const std::string& token, const char* what) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(token, &pos);
        if (pos != token.size()) throw std::invalid_argument(token);
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string(what) + ": bad integer '" + token + "'");
    }
}

}  // namespace

void save_corpus(std::ostream& os, std::span<const Document> docs, int vocab_size, int n_topics) {
    os << "V=" << vocab_size << " K=" << n_topics << "\n";
    for (const auto& doc : docs) {
        for (std::size_t i = 0; i < doc.words.size(); ++i) {
            if (i) os << ' ';
            os << doc.words[i];
        }
        os << "\n";
    }
}

CorpusFile load_corpus(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw IoError("corpus: missing header");

    CorpusFile corpus;
    if (std::sscanf(header.c_str(), "V=%d K=%d", &corpus.vocab_size, &corpus.n_topics) != 2) {
        throw IoError("corpus: expected header 'V=<int> K=<int>', got '" + header + "'");
    }
    if (corpus.vocab_size < 1 || corpus.n_topics < 1) throw IoError("corpus: nonpositive V or K");

    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Document doc;
        std::istringstream ls(line);
        int word = 0;
        while (ls >> word) doc.words.push_back(word);
        if (!ls.eof()) throw IoError("corpus: bad document line '" + line + "'");
        doc.validate(corpus.vocab_size);
        corpus.docs.push_back(std::move(doc));
    }
    return corpus;
}

void save_corpus_file(const std::filesystem::path& path, std::span<const Document> docs,
                      int vocab_size, int n_topics) {
    auto os = open_output(path);
    save_corpus(os, docs, vocab_size, n_topics);
}

CorpusFile load_corpus_file(const std::filesystem::path& path) {
    auto is = open_input(path);
    return load_corpus(is);
}

void save_matrix(std::ostream& os, const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << format_double(m(r, c));
        }
        os << "\n";
    }
}

Matrix load_matrix(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string token;
        while (ls >> token) row.push_back(parse_double(token, "matrix"));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError("matrix: ragged rows");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("matrix: no data");

    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

void save_matrix_file(const std::filesystem::path& path, const Matrix& m) {
    auto os = open_output(path);
    save_matrix(os, m);
}

Matrix load_matrix_file(const std::filesystem::path& path) {
    auto is = open_input(path);
    return load_matrix(is);
}

std::string csv_row(const TrajectoryRow& row) {
    std::ostringstream os;
    os << row.iter << ',' << row.mode << ',' << row.graph << ',' << row.seed << ','
       << format_double(row.consensus_gap) << ',' << format_double(row.lp_rel_error) << ','
       << format_double(row.beta_distance) << ',' << format_double(row.lp) << ','
       << format_double(row.lp_star) << ',' << format_double(row.lp_abs_gap) << ','
       << row.docs_processed;
    return os.str();
}

std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& path) {
    auto is = open_input(path);
    std::string line;
    if (!std::getline(is, line)) throw IoError("csv: empty file '" + path.string() + "'");
    if (line != kCsvHeader) throw IoError("csv: unexpected header in '" + path.string() + "'");

    std::vector<TrajectoryRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 11) throw IoError("csv: bad row '" + line + "'");

        TrajectoryRow row;
        row.iter = parse_long(fields[0], "csv iter");
        row.mode = fields[1];
        row.graph = fields[2];
        row.seed = (std::uint64_t)parse_long(fields[3], "csv seed");
        row.consensus_gap = parse_double(fields[4], "csv consensus_gap");
        row.lp_rel_error = parse_double(fields[5], "csv lp_rel_error");
        row.beta_distance = parse_double(fields[6], "csv beta_distance");
        row.lp = parse_double(fields[7], "csv lp");
        row.lp_star = parse_double(fields[8], "csv lp_star");
        row.lp_abs_gap = parse_double(fields[9], "csv lp_abs_gap");
        row.docs_processed = parse_long(fields[10], "csv docs_processed");
        rows.push_back(std::move(row));
    }
    return rows;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
    auto os = open_output(path);
    os << "iter=" << ckpt.iter << "\n";
    os << "docs_processed=" << ckpt.docs_processed << "\n";
    os << "engine_rng=" << ckpt.engine_rng_state << "\n";
    os << "nodes=" << ckpt.nodes.size() << "\n";
    for (const auto& node : ckpt.nodes) {
        os << "node=" << node.node_id << " clock=" << node.local_clock << " rows="
           << node.stats.rows() << " cols=" << node.stats.cols() << " rng=" << node.rng_state
           << "\n";
        save_matrix(os, node.stats);
    }
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    auto is = open_input(path);
    const auto expect = [&](const char* prefix) {
        std::string line;
        if (!std::getline(is, line) || line.rfind(prefix, 0) != 0) {
            throw IoError("checkpoint: expected '" + std::string(prefix) + "...' in '" +
                          path.string() + "'");
        }
        return line.substr(std::string(prefix).size());
    };

    Checkpoint ckpt;
    ckpt.iter = parse_long(expect("iter="), "checkpoint iter");
    ckpt.docs_processed = parse_long(expect("docs_processed="), "checkpoint docs");
    ckpt.engine_rng_state = expect("engine_rng=");
    const long n_nodes = parse_long(expect("nodes="), "checkpoint node count");

    for (long i = 0; i < n_nodes; ++i) {
        std::string line;
        if (!std::getline(is, line)) throw IoError("checkpoint: truncated node header");

        Checkpoint::Node node;
        long rows = 0, cols = 0;
        char rng_buf[256] = {0};
        if (std::sscanf(line.c_str(), "node=%d clock=%ld rows=%ld cols=%ld rng=%255[^\n]",
                        &node.node_id, &node.local_clock, &rows, &cols, rng_buf) != 5) {
            throw IoError("checkpoint: bad node header '" + line + "'");
        }
        node.rng_state = rng_buf;
        node.stats = Matrix(rows, cols);
        for (long r = 0; r < rows; ++r) {
            if (!std::getline(is, line)) throw IoError("checkpoint: truncated stats");
            std::istringstream ls(line);
            std::string token;
            for (long c = 0; c < cols; ++c) {
                if (!(ls >> token)) throw IoError("checkpoint: short stats row");
                node.stats(r, c) = parse_double(token, "checkpoint stats");
            }
        }
        ckpt.nodes.push_back(std::move(node));
    }
    return ckpt;
}

Checkpoint make_checkpoint(long iter, long docs_processed, const Rng& engine_rng,
                           std::span<const NodeState> nodes) {
    Checkpoint ckpt;
    ckpt.iter = iter;
    ckpt.docs_processed = docs_processed;
    ckpt.engine_rng_state = engine_rng.state_string();
    for (const auto& node : nodes) {
        ckpt.nodes.push_back(
            {node.node_id, node.local_clock, node.rng.state_string(), node.stats.counts});
    }
    return ckpt;
}

}  // namespace dlda
