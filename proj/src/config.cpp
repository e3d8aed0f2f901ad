#include "orpg/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace orpg {

namespace {

std::string trim(const std::string& s) {
    size_t lo = 0, hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

bool valid_key(const std::string& key) {
    if (key.empty() || key.front() == '.' || key.back() == '.') return false;
    for (char c : key) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'))
            return false;
    }
    return true;
}

}  // namespace

KeyValueDocument KeyValueDocument::parse(const std::string& text) {
    KeyValueDocument doc;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": malformed key '" + key + "'");
        }
        if (value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": key '" +
                              key + "' has no value");
        }
        if (!doc.entries_.emplace(key, Entry{value, line_no}).second) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": duplicate key '" + key + "'");
        }
    }
    return doc;
}

KeyValueDocument KeyValueDocument::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

bool KeyValueDocument::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

const KeyValueDocument::Entry& KeyValueDocument::require(
    const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing key '" + key + "'");
    consumed_.insert(key);
    return it->second;
}

std::string KeyValueDocument::get_string(const std::string& key) const {
    return require(key).value;
}

double KeyValueDocument::get_double(const std::string& key) const {
    const Entry& entry = require(key);
    char* end = nullptr;
    const double v = std::strtod(entry.value.c_str(), &end);
    if (end == entry.value.c_str() || *end != '\0') {
        throw ConfigError("config line " + std::to_string(entry.line) + ": key '" +
                          key + "': expected a number, got '" + entry.value + "'");
    }
    return v;
}

long KeyValueDocument::get_int(const std::string& key) const {
    const Entry& entry = require(key);
    char* end = nullptr;
    const long v = std::strtol(entry.value.c_str(), &end, 10);
    if (end == entry.value.c_str() || *end != '\0') {
        throw ConfigError("config line " + std::to_string(entry.line) + ": key '" +
                          key + "': expected an integer, got '" + entry.value + "'");
    }
    return v;
}

bool KeyValueDocument::get_bool(const std::string& key) const {
    const Entry& entry = require(key);
    if (entry.value == "true" || entry.value == "1") return true;
    if (entry.value == "false" || entry.value == "0") return false;
    throw ConfigError("config line " + std::to_string(entry.line) + ": key '" +
                      key + "': expected true/false, got '" + entry.value + "'");
}

std::string KeyValueDocument::get_string_or(const std::string& key,
                                            const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}
double KeyValueDocument::get_double_or(const std::string& key,
                                       double fallback) const {
    return has(key) ? get_double(key) : fallback;
}
long KeyValueDocument::get_int_or(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}
bool KeyValueDocument::get_bool_or(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

int KeyValueDocument::line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
}

void KeyValueDocument::reject_unknown_keys() const {
    for (const auto& [key, entry] : entries_) {
        if (!consumed_.count(key)) {
            throw ConfigError("unknown key '" + key + "' at line " +
                              std::to_string(entry.line));
        }
    }
}

KeyValueDocument KeyValueDocument::with_value(const std::string& key,
                                              const std::string& value) const {
    KeyValueDocument doc = *this;
    doc.consumed_.clear();
    doc.entries_[key] = Entry{value, line_of(key)};
    return doc;
}

std::vector<std::string> KeyValueDocument::keys() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [key, entry] : entries_) out.push_back(key);
    return out;
}

}  // namespace orpg
