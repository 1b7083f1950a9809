#include "hyperrob/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hyperrob {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::InvalidConfig,
                        "config line " + std::to_string(line_number) + " is not key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw Error(ErrorCode::InvalidConfig,
                        "config line " + std::to_string(line_number) + " has an empty key");
        }
        cfg.entries_[key] = value;
    }
    return cfg;
}

void KeyValueConfig::apply_overrides(const std::string& overrides) {
    std::string normalized = overrides;
    std::replace(normalized.begin(), normalized.end(), ',', '\n');
    KeyValueConfig extra = parse_text(normalized);
    for (const auto& [key, value] : extra.entries_) entries_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& value = it->second;
    double parsed = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::InvalidConfig, key + " is not a number: " + value);
    }
    return parsed;
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& value = it->second;
    std::int64_t parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::InvalidConfig, key + " is not an integer: " + value);
    }
    return parsed;
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& value = it->second;
    std::uint64_t parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::InvalidConfig, key + " is not an unsigned integer: " + value);
    }
    return parsed;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw Error(ErrorCode::InvalidConfig, key + " is not a boolean: " + it->second);
}

void KeyValueConfig::require_known(const std::map<std::string, int>& known) const {
    for (const auto& [key, value] : entries_) {
        if (!known.count(key)) {
            throw Error(ErrorCode::InvalidConfig, "unknown config key: " + key);
        }
    }
}

} // namespace hyperrob
