#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlda/errors.hpp"

namespace dlda {

// Flat "key = value" configuration text, nested keys dotted
// ("schedule.kappa = 0.6"). Lines starting with '#' and blank lines are
// skipped. Insertion order is preserved so a store serializes byte-stably.
class KeyValueStore {
public:
    void set(const std::string& key, const std::string& value);
    void set_long(const std::string& key, long value);
    void set_double(const std::string& key, double value);

    bool contains(const std::string& key) const;
    std::optional<std::string> find(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    long get_long(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    long get_long_or(const std::string& key, long fallback) const;
    double get_double_or(const std::string& key, double fallback) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string serialize() const;
    static KeyValueStore parse(const std::string& text);
    static KeyValueStore load_file(const std::filesystem::path& path);
    void save_file(const std::filesystem::path& path) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace dlda
