#include "cdg/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cdg {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return from_string(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Config Config::from_string(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected `key = value`, got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty value for key `" +
                              key + "`");
        if (c.find(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key `" + key +
                              "`");
        c.entries_.push_back({key, value, false});
    }
    return c;
}

const Config::Entry* Config::find(const std::string& key) const {
    for (const Entry& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

void Config::set(const std::string& key, const std::string& value) {
    for (Entry& e : entries_)
        if (e.key == key) {
            e.value = value;
            e.used = false;
            return;
        }
    entries_.push_back({key, value, false});
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
    const Entry* e = find(key);
    if (!e) return fallback;
    e->used = true;
    return e->value;
}

double Config::get_double(const std::string& key, double fallback) {
    const Entry* e = find(key);
    if (!e) return fallback;
    e->used = true;
    char* end = nullptr;
    const double v = std::strtod(e->value.c_str(), &end);
    if (end == e->value.c_str() || *end != '\0')
        throw ConfigError("key `" + key + "`: not a number: " + e->value);
    return v;
}

int Config::get_int(const std::string& key, int fallback) {
    const Entry* e = find(key);
    if (!e) return fallback;
    e->used = true;
    char* end = nullptr;
    const long v = std::strtol(e->value.c_str(), &end, 10);
    if (end == e->value.c_str() || *end != '\0')
        throw ConfigError("key `" + key + "`: not an integer: " + e->value);
    return static_cast<int>(v);
}

bool Config::get_bool(const std::string& key, bool fallback) {
    const Entry* e = find(key);
    if (!e) return fallback;
    e->used = true;
    const std::string& v = e->value;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key `" + key + "`: not a boolean: " + v);
}

void Config::finish() const {
    std::string bad;
    for (const Entry& e : entries_)
        if (!e.used) bad += (bad.empty() ? "" : ", ") + e.key;
    if (!bad.empty()) throw ConfigError("unknown config keys: " + bad);
}

} // namespace cdg
