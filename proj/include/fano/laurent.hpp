#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "fano/numeric.hpp"

namespace fano {

// Exponent vector of a monomial, one slot per torus variable.
using Exponent = std::vector<int>;

// Sparse Laurent polynomial with integer coefficients in a fixed number of
// variables.  Characters of homogeneous bundles live here.
class Laurent {
public:
    explicit Laurent(int nvars) : nvars_(nvars) {}

    static Laurent zero(int nvars) { return Laurent(nvars); }

    static Laurent one(int nvars) {
        Laurent f(nvars);
        f.terms_[Exponent(static_cast<size_t>(nvars), 0)] = 1;
        return f;
    }

    static Laurent monomial(int nvars, Exponent e, Int c = Int(1)) {
        if (static_cast<int>(e.size()) != nvars)
            throw std::invalid_argument("Laurent::monomial: exponent arity mismatch");
        Laurent f(nvars);
        if (c != 0) f.terms_[std::move(e)] = std::move(c);
        return f;
    }

    int nvars() const { return nvars_; }
    const std::map<Exponent, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Laurent& operator+=(const Laurent& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Laurent& operator-=(const Laurent& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        a.check(b);
        Laurent r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    Laurent scaled(const Int& c) const {
        Laurent r(nvars_);
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }

    // x_i -> x_i^{-1}
    Laurent dual() const {
        Laurent r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponent d(e);
            for (auto& v : d) v = -v;
            r.terms_[std::move(d)] = c;
        }
        return r;
    }

    // Adams operation: x_i -> x_i^k
    Laurent adams(int k) const {
        Laurent r(nvars_);
        for (const auto& [e, c] : terms_) {
            Exponent d(e);
            for (auto& v : d) v *= k;
            r.add_term(d, c);
        }
        return r;
    }

    // Sum of coefficients = rank of the corresponding bundle.
    Int rank() const {
        Int s(0);
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    bool operator==(const Laurent& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    // Term-wise exact division by an integer (used by the lambda-ring recurrences).
    Laurent divided(long long k) const {
        Laurent r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = exact_div(c, Int(k));
        return r;
    }

private:
    void check(const Laurent& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("Laurent: variable arity mismatch");
    }

    void add_term(const Exponent& e, const Int& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int nvars_;
    std::map<Exponent, Int> terms_;
};

// Complete symmetric functions via the Newton recurrence
//   k h_k = sum_{j=1..k} p_j h_{k-j}
// valid in any lambda-ring, so duals (virtual ranks) are handled uniformly.
inline Laurent sym_power(const Laurent& f, int k) {
    if (k < 0) throw std::invalid_argument("sym_power: negative arity");
    std::vector<Laurent> h;
    h.push_back(Laurent::one(f.nvars()));
    for (int d = 1; d <= k; ++d) {
        Laurent acc = Laurent::zero(f.nvars());
        for (int j = 1; j <= d; ++j) acc += f.adams(j) * h[static_cast<size_t>(d - j)];
        h.push_back(acc.divided(d));
    }
    return h[static_cast<size_t>(k)];
}

//   k e_k = sum_{j=1..k} (-1)^{j-1} p_j e_{k-j}
inline Laurent wedge_power(const Laurent& f, int k) {
    if (k < 0) throw std::invalid_argument("wedge_power: negative arity");
    std::vector<Laurent> e;
    e.push_back(Laurent::one(f.nvars()));
    for (int d = 1; d <= k; ++d) {
        Laurent acc = Laurent::zero(f.nvars());
        for (int j = 1; j <= d; ++j) {
            Laurent term = f.adams(j) * e[static_cast<size_t>(d - j)];
            if (j % 2 == 0) term = term.scaled(Int(-1));
            acc += term;
        }
        e.push_back(acc.divided(d));
    }
    return e[static_cast<size_t>(k)];
}

// h_d in the variable window [offset, offset+size).
inline Laurent complete_homogeneous(int nvars, int offset, int size, long long d) {
    if (d < 0) return Laurent::zero(nvars);
    if (d == 0) return Laurent::one(nvars);
    // DP over variables: h(v, d) = h(v-1, d) + x_v h(v, d-1)
    std::vector<Laurent> row(static_cast<size_t>(d) + 1, Laurent::zero(nvars));
    row[0] = Laurent::one(nvars);
    for (int v = 0; v < size; ++v) {
        Exponent xe(static_cast<size_t>(nvars), 0);
        xe[static_cast<size_t>(offset + v)] = 1;
        Laurent x = Laurent::monomial(nvars, xe);
        for (long long k = 1; k <= d; ++k)
            row[static_cast<size_t>(k)] += x * row[static_cast<size_t>(k - 1)];
    }
    return row[static_cast<size_t>(d)];
}

namespace detail {

inline Laurent det_laurent(std::vector<std::vector<Laurent>>& m, size_t n, int nvars) {
    if (n == 0) return Laurent::one(nvars);
    if (n == 1) return m[0][0];
    Laurent acc = Laurent::zero(nvars);
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Laurent>> minor;
        minor.reserve(n - 1);
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Laurent> row;
            row.reserve(n - 1);
            for (size_t c = 1; c < n; ++c) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Laurent term = m[i][0] * det_laurent(minor, n - 1, nvars);
        if (i % 2 == 1) term = term.scaled(Int(-1));
        acc += term;
    }
    return acc;
}

}  // namespace detail

// Schur character s_lambda in the variable window [offset, offset+size).
// lambda is non-increasing with arbitrary sign; negative tails are absorbed
// into a determinant twist before the Jacobi-Trudi determinant.
inline Laurent schur_char(int nvars, int offset, int size, std::vector<long long> lambda) {
    if (static_cast<int>(lambda.size()) != size)
        throw std::invalid_argument("schur_char: lambda length must equal block size");
    for (size_t i = 0; i + 1 < lambda.size(); ++i)
        if (lambda[i] < lambda[i + 1]) throw std::invalid_argument("schur_char: lambda not dominant");
    if (size == 0) return Laurent::one(nvars);

    long long twist = lambda.back();
    for (auto& v : lambda) v -= twist;

    if (size == 1) {
        Exponent e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(offset)] = static_cast<int>(lambda[0] + twist);
        return Laurent::monomial(nvars, e);
    }

    std::vector<std::vector<Laurent>> jt(
        static_cast<size_t>(size), std::vector<Laurent>(static_cast<size_t>(size), Laurent::zero(nvars)));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            jt[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                complete_homogeneous(nvars, offset, size, lambda[static_cast<size_t>(i)] - i + j);
    Laurent s = detail::det_laurent(jt, static_cast<size_t>(size), nvars);

    if (twist != 0) {
        Exponent e(static_cast<size_t>(nvars), 0);
        for (int v = 0; v < size; ++v) e[static_cast<size_t>(offset + v)] = static_cast<int>(twist);
        s = s * Laurent::monomial(nvars, e);
    }
    return s;
}

}  // namespace fano
