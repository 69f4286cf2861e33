#ifndef FRACLAN_CONFIG_HPP
#define FRACLAN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <set>
#include <string>
#include <vector>

namespace fraclan {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key-value configuration with INI-style sections; keys are addressed as
// "section.key".  Access is tracked so unknown (misspelled) keys can be
// rejected after a command has read everything it understands.
class ConfigMap {
public:
    static ConfigMap parse_file(const std::string& path);
    static ConfigMap parse_string(const std::string& text);

    // "section.key=value"; creates or replaces.
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated lists.
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<int> get_int_list(const std::string& key) const;
    std::vector<int> get_int_list(const std::string& key,
                                  const std::vector<int>& fallback) const;

    // Keys present in the file but never read; a nonempty result after
    // command parsing is a config error.
    std::vector<std::string> unused_keys() const;

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> accessed_;
};

}  // namespace fraclan

#endif
