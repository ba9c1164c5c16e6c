#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

// Run configuration; file format is line-based `key = value`, lists
// comma-separated, '#' starts a comment.
struct RunConfig {
    std::vector<std::string> ledgers;
    std::string output_dir = ".";
    int jobs = 1;
    unsigned long long seed = 20240601;
    bool cache = false;
    std::string cache_file = "bbw-cache.jsonl";
    bool external_exclusions = true;
    bool order_two_exclusion = true;
    bool normalize = false;  // strip timing from reports (byte-stable output)
    std::string format = "json";
};

inline void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto as_bool = [&](const std::string& v) {
        if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
        if (v == "off" || v == "false" || v == "0" || v == "no") return false;
        throw std::invalid_argument("config: bad boolean '" + v + "' for " + key);
    };
    if (key == "ledger" || key == "ledgers") {
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t a = item.find_first_not_of(" \t");
            size_t b = item.find_last_not_of(" \t");
            if (a != std::string::npos) cfg.ledgers.push_back(item.substr(a, b - a + 1));
        }
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "jobs") {
        cfg.jobs = std::stoi(value);
        if (cfg.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    } else if (key == "seed") {
        cfg.seed = std::stoull(value);
    } else if (key == "cache") {
        cfg.cache = as_bool(value);
    } else if (key == "cache_file") {
        cfg.cache_file = value;
    } else if (key == "external_exclusions") {
        cfg.external_exclusions = as_bool(value);
    } else if (key == "order_two_exclusion") {
        cfg.order_two_exclusion = as_bool(value);
    } else if (key == "normalize") {
        cfg.normalize = as_bool(value);
    } else if (key == "format") {
        if (value != "json" && value != "md") throw std::invalid_argument("config: format json|md");
        cfg.format = value;
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t a = line.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
        auto strip = [](std::string s) {
            size_t x = s.find_first_not_of(" \t\r\n");
            if (x == std::string::npos) return std::string();
            size_t y = s.find_last_not_of(" \t\r\n");
            return s.substr(x, y - x + 1);
        };
        apply_config_line(cfg, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return cfg;
}

}  // namespace fano
