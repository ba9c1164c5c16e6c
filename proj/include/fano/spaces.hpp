#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fano {

// The three families of GL-flag varieties the toolkit computes on:
//
//   Projective{n}   P^n  = P(V), dim V = n+1, Levi blocks (1, n)
//   Grassmann{n}    G(2,n), rank-2 quotient convention, Levi blocks (2, n-2)
//   Incidence{n}    Gamma(n) = {(point, line) : point in line} in P^{n-1} x G(2,n),
//                   the partial flag with Levi blocks (1, 1, n-2)
enum class SpaceKind { Projective, Grassmann, Incidence };

struct Space {
    SpaceKind kind;
    int n;  // P^n; or the GL rank for G(2,n) and Gamma(n)

    static Space projective(int n) { return {SpaceKind::Projective, n}; }
    static Space grassmann(int n) { return {SpaceKind::Grassmann, n}; }
    static Space incidence(int n) { return {SpaceKind::Incidence, n}; }

    int total_rank() const { return kind == SpaceKind::Projective ? n + 1 : n; }

    std::vector<int> blocks() const {
        switch (kind) {
            case SpaceKind::Projective: return {1, n};
            case SpaceKind::Grassmann: return {2, n - 2};
            case SpaceKind::Incidence: return {1, 1, n - 2};
        }
        throw std::logic_error("Space::blocks");
    }

    // dim G/P = sum_{i<j} b_i b_j for Levi blocks b
    int dim() const {
        auto b = blocks();
        int d = 0;
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j) d += b[i] * b[j];
        return d;
    }

    std::string id() const {
        switch (kind) {
            case SpaceKind::Projective: return "P" + std::to_string(n);
            case SpaceKind::Grassmann: return "G2" + std::to_string(n);
            case SpaceKind::Incidence: return "Gamma" + std::to_string(n);
        }
        throw std::logic_error("Space::id");
    }

    bool operator==(const Space& o) const { return kind == o.kind && n == o.n; }
    bool operator<(const Space& o) const {
        return kind != o.kind ? kind < o.kind : n < o.n;
    }
};

inline Space parse_space(const std::string& s) {
    if (s == "P5") return Space::projective(5);
    if (s == "G26") return Space::grassmann(6);
    if (s == "G25") return Space::grassmann(5);
    if (s == "G24") return Space::grassmann(4);
    if (s == "Gamma6") return Space::incidence(6);
    if (s.size() > 1 && s[0] == 'P') return Space::projective(std::stoi(s.substr(1)));
    if (s.size() > 2 && s.substr(0, 2) == "G2") return Space::grassmann(std::stoi(s.substr(2)));
    if (s.size() > 5 && s.substr(0, 5) == "Gamma") return Space::incidence(std::stoi(s.substr(5)));
    throw std::invalid_argument("unknown space id: " + s);
}

}  // namespace fano
