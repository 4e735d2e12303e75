#include "dlda/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dlda {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void KeyValueStore::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void KeyValueStore::set_long(const std::string& key, long value) {
    set(key, std::to_string(value));
}

void KeyValueStore::set_double(const std::string& key, double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw ConfigError("set_double: conversion failed");
    set(key, std::string(buf, ptr));
}

bool KeyValueStore::contains(const std::string& key) const {
    return find(key).has_value();
}

std::optional<std::string> KeyValueStore::find(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::string KeyValueStore::get_string(const std::string& key) const {
    const auto v = find(key);
    if (!v) throw ConfigError("missing config key '" + key + "'");
    return *v;
}

long KeyValueStore::get_long(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const long out = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad integer '" + v + "'");
    }
}

double KeyValueStore::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad number '" + v + "'");
    }
}

std::uint64_t KeyValueStore::get_u64(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const std::uint64_t out = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad unsigned integer '" + v + "'");
    }
}

std::string KeyValueStore::get_string_or(const std::string& key, const std::string& fallback) const {
    return find(key).value_or(fallback);
}

long KeyValueStore::get_long_or(const std::string& key, long fallback) const {
    return contains(key) ? get_long(key) : fallback;
}

double KeyValueStore::get_double_or(const std::string& key, double fallback) const {
    return contains(key) ? get_double(key) : fallback;
}

std::string KeyValueStore::serialize() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) os << k << " = " << v << "\n";
    return os.str();
}

KeyValueStore KeyValueStore::parse(const std::string& text) {
    KeyValueStore store;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        store.set(key, value);
    }
    return store;
}

KeyValueStore KeyValueStore::load_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return parse(buffer.str());
}

void KeyValueStore::save_file(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write config '" + path.string() + "'");
    os << serialize();
}

}  // namespace dlda
