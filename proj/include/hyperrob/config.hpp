#ifndef HYPERROB_CONFIG_HPP
#define HYPERROB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "hyperrob/error.hpp"

namespace hyperrob {

/**
 * Flat key-value configuration: one `key = value` per line, `#` comments.
 * Typed getters validate and throw InvalidConfig on malformed values or,
 * via require_known, on keys outside an allowed set.
 */
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse_file(const std::string& path); // IoError
    static KeyValueConfig parse_text(const std::string& text);

    /// Applies `key=value` pairs separated by commas or newlines on top of
    /// the current entries. Empty or null-ish input is a no-op.
    void apply_overrides(const std::string& overrides);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Throws InvalidConfig naming the first key not in `known`.
    void require_known(const std::map<std::string, int>& known) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace hyperrob

#endif // HYPERROB_CONFIG_HPP
