#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/laurent.hpp"
#include "fano/numeric.hpp"

namespace fano {

// Integer weight of a GL(n) torus, one entry per variable.
struct Weight {
    std::vector<long long> e;

    Weight() = default;
    explicit Weight(std::vector<long long> v) : e(std::move(v)) {}
    Weight(std::initializer_list<long long> v) : e(v) {}

    size_t size() const { return e.size(); }
    long long operator[](size_t i) const { return e[i]; }
    bool operator==(const Weight& o) const { return e == o.e; }
    bool operator<(const Weight& o) const { return e < o.e; }

    bool non_increasing() const {
        for (size_t i = 0; i + 1 < e.size(); ++i)
            if (e[i] < e[i + 1]) return false;
        return true;
    }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (size_t i = 0; i < e.size(); ++i) {
            if (i) os << ',';
            os << e[i];
        }
        os << ')';
        return os.str();
    }
};

inline Weight rho(size_t n) {
    std::vector<long long> r(n);
    for (size_t i = 0; i < n; ++i) r[i] = static_cast<long long>(n - 1 - i);
    return Weight(std::move(r));
}

// Outcome of the rho-shifted sort that drives Borel-Weil-Bott: either the
// shifted weight is singular (a repeated entry, all cohomology vanishes) or
// it is regular with a unique concentration degree.
struct RhoSortResult {
    bool singular = false;
    int degree = 0;     // number of inversions of lambda + rho
    Weight dominant;    // sort_desc(lambda + rho) - rho
};

inline RhoSortResult rho_sort(const Weight& lambda) {
    const size_t n = lambda.size();
    std::vector<long long> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = lambda[i] + static_cast<long long>(n - 1 - i);

    std::vector<long long> sorted(v);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (size_t i = 0; i + 1 < n; ++i)
        if (sorted[i] == sorted[i + 1]) return RhoSortResult{true, 0, Weight{}};

    int inv = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (v[i] < v[j]) ++inv;

    std::vector<long long> dom(n);
    for (size_t i = 0; i < n; ++i) dom[i] = sorted[i] - static_cast<long long>(n - 1 - i);
    return RhoSortResult{false, inv, Weight(std::move(dom))};
}

// Weyl dimension formula for GL(n):  prod_{i<j} (mu_i - mu_j + j - i)/(j - i).
inline Int weyl_dimension(const Weight& mu) {
    if (!mu.non_increasing()) throw std::invalid_argument("weyl_dimension: weight not dominant");
    Int num(1), den(1);
    const long long n = static_cast<long long>(mu.size());
    for (long long i = 0; i < n; ++i)
        for (long long j = i + 1; j < n; ++j) {
            num *= Int(mu.e[static_cast<size_t>(i)] - mu.e[static_cast<size_t>(j)] + j - i);
            den *= Int(j - i);
        }
    return exact_div(num, den);
}

// ---------------------------------------------------------------------------
// Partitions and the Littlewood-Richardson product.

using Partition = std::vector<long long>;

inline bool is_partition(const Partition& p) {
    for (size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] < p[i + 1]) return false;
    return p.empty() || p.back() >= 0;
}

inline Partition trim(Partition p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

inline std::string partition_str(const Partition& p) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    os << ')';
    return os.str();
}

// Decompose a symmetric polynomial with non-negative Schur coefficients into
// Schur functions over a single block of `rows` variables, greedily peeling
// the lexicographically largest monomial (always a highest weight).
inline std::map<Partition, Int> schur_decompose_block(Laurent chi, int rows) {
    std::map<Partition, Int> out;
    while (!chi.is_zero()) {
        auto it = std::prev(chi.terms().end());
        Exponent top = it->first;
        Int mult = it->second;
        Partition lam(top.begin(), top.end());
        if (!is_partition(lam) || mult <= 0)
            throw std::logic_error("schur_decompose_block: input is not a genuine character");
        std::vector<long long> lamv(lam.begin(), lam.end());
        chi -= schur_char(rows, 0, rows, lamv).scaled(mult);
        out[trim(lam)] += mult;
    }
    return out;
}

// Littlewood-Richardson expansion of s_mu * s_nu, truncated to partitions
// with at most `rows` rows.  Implemented through the character ring: the
// product is expanded in `rows` variables, where longer partitions vanish
// identically, and peeled back into Schur functions.
inline std::map<Partition, Int> lr_multiply(const Partition& mu, const Partition& nu, int rows) {
    if (rows < 1) throw std::invalid_argument("lr_multiply: rows must be >= 1");
    if (!is_partition(mu) || !is_partition(nu))
        throw std::invalid_argument("lr_multiply: inputs must be partitions");
    auto pad = [rows](Partition p) {
        if (static_cast<int>(p.size()) > rows) {
            // rows beyond the window only matter if nonzero
            for (size_t i = static_cast<size_t>(rows); i < p.size(); ++i)
                if (p[i] != 0) return std::pair<bool, Partition>{false, {}};
            p.resize(static_cast<size_t>(rows));
        } else {
            p.resize(static_cast<size_t>(rows), 0);
        }
        return std::pair<bool, Partition>{true, std::move(p)};
    };
    auto [oka, pmu] = pad(mu);
    auto [okb, pnu] = pad(nu);
    if (!oka || !okb) return {};  // a factor already vanishes in this many rows
    Laurent prod = schur_char(rows, 0, rows, std::vector<long long>(pmu.begin(), pmu.end())) *
                   schur_char(rows, 0, rows, std::vector<long long>(pnu.begin(), pnu.end()));
    return schur_decompose_block(prod, rows);
}

}  // namespace fano
