#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace orpg {

// Raised for anything the user can fix in the config or on the command
// line; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Flat key-value document with dotted sections:
//   profile.kind = sinusoidal     # trailing comments allowed
// Keys may not repeat. Typed getters record which keys were read so the
// caller can reject unknown ones afterwards.
class KeyValueDocument {
  public:
    static KeyValueDocument parse(const std::string& text);
    static KeyValueDocument parse_file(const std::string& path);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_int_or(const std::string& key, long fallback) const;
    bool get_bool_or(const std::string& key, bool fallback) const;

    /// Line number of a key (for diagnostics).
    int line_of(const std::string& key) const;

    /// Throws ConfigError naming the first present key never read.
    void reject_unknown_keys() const;

    /// A copy with one key overridden (used by scan expansion).
    KeyValueDocument with_value(const std::string& key, const std::string& value) const;

    std::vector<std::string> keys() const;

  private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, Entry> entries_;
    mutable std::set<std::string> consumed_;

    const Entry& require(const std::string& key) const;
};

}  // namespace orpg
