#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fano/bbw.hpp"

namespace fano {

// On-disk persistence of the (space, weight) -> cohomology memo as JSON
// lines.  Corrupt lines are skipped: a damaged cache degrades to recompute,
// never to failure.

inline size_t cache_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return 0;
    size_t loaded = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            nlohmann::json j = nlohmann::json::parse(line);
            std::string key = j.at("key").get<std::string>();
            CohomTable t;
            for (auto& [deg, val] : j.at("dims").items())
                t.dims[std::stoi(deg)] = Int(val.get<std::string>());
            detail::bbw_memo().store(key, t);
            ++loaded;
        } catch (...) {
            // skip corrupt line
        }
    }
    return loaded;
}

inline size_t cache_save(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) return 0;
    size_t written = 0;
    detail::bbw_memo().for_each([&](const std::string& key, const CohomTable& t) {
        nlohmann::json j;
        j["key"] = key;
        nlohmann::json dims = nlohmann::json::object();
        for (const auto& [d, v] : t.dims) dims[std::to_string(d)] = v.str();
        j["dims"] = dims;
        out << j.dump() << '\n';
        ++written;
    });
    return written;
}

}  // namespace fano
