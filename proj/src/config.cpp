#include "fraclan/config.hpp"

#include "fraclan/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fraclan {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

}  // namespace

ConfigMap ConfigMap::parse_file(const std::string& path) {
    try {
        return parse_string(read_file(path));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

ConfigMap ConfigMap::parse_string(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        cfg.values_[full] = trim(line.substr(eq + 1));
    }
    return cfg;
}

void ConfigMap::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must be key=value: " + assignment);
    values_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

bool ConfigMap::has(const std::string& key) const {
    const bool present = values_.count(key) > 0;
    if (present) accessed_.insert(key);
    return present;
}

std::string ConfigMap::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    accessed_.insert(key);
    return it->second;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double ConfigMap::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": not a number: " + v);
    }
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int ConfigMap::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return int(d);
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": not an integer: " + v);
    }
}

int ConfigMap::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t ConfigMap::get_u64(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": not an unsigned integer: " + v);
    }
}

std::uint64_t ConfigMap::get_u64(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? get_u64(key) : fallback;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    std::string v = get_string(key);
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key " + key + ": not a boolean: " + v);
}

std::vector<double> ConfigMap::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_csv(get_string(key))) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("key " + key + ": not a number: " + item);
        }
    }
    return out;
}

std::vector<double> ConfigMap::get_double_list(const std::string& key,
                                               const std::vector<double>& fallback) const {
    return has(key) ? get_double_list(key) : fallback;
}

std::vector<int> ConfigMap::get_int_list(const std::string& key) const {
    std::vector<int> out;
    for (const auto& item : split_csv(get_string(key))) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("key " + key + ": not an integer: " + item);
        }
    }
    return out;
}

std::vector<int> ConfigMap::get_int_list(const std::string& key,
                                         const std::vector<int>& fallback) const {
    return has(key) ? get_int_list(key) : fallback;
}

std::vector<std::string> ConfigMap::unused_keys() const {
    std::vector<std::string> out;
    for (const auto& [key, value] : values_)
        if (!accessed_.count(key)) out.push_back(key);
    return out;
}

}  // namespace fraclan
