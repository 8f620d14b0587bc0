#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cdg {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered `key = value` store parsed from line-oriented text. `#` starts a
// comment, blank lines are skipped, duplicate keys are rejected. Typed
// getters mark keys consumed; finish() throws naming every key that was
// never consumed, so a misspelled setting fails loudly instead of being
// silently ignored.
class Config {
public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return find(key) != nullptr; }
    // insert or override (command-line flags funnel through here)
    void set(const std::string& key, const std::string& value);

    std::string get_string(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key, double fallback);
    int get_int(const std::string& key, int fallback);
    bool get_bool(const std::string& key, bool fallback);

    void finish() const; // throws ConfigError listing unconsumed keys
    bool empty() const { return entries_.empty(); }

private:
    struct Entry {
        std::string key, value;
        mutable bool used = false;
    };
    std::vector<Entry> entries_;
    const Entry* find(const std::string& key) const;
};

} // namespace cdg
