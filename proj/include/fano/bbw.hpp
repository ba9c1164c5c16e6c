#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/numeric.hpp"
#include "fano/spaces.hpp"
#include "fano/weights.hpp"

namespace fano {

// Cohomology of an irreducible homogeneous bundle, computed by Borel-Weil-Bott:
// add rho, reject repeated entries (singular: everything vanishes), otherwise
// concentrate in the inversion-count degree with the Weyl dimension.
//
// Weight dictionary (normative for this toolkit, pinned by the calibration
// suite in calibrate() below):
//
//   Gamma(n):  N^s (x) R^t (x) Sigma^mu(M)  <->  (t, s, mu_1, ..., mu_{n-2})
//   G(2,n):    Sigma^{(a,b)}Q (x) Sigma^mu(M)  <->  (a, b, mu_1, ..., mu_{n-2})
//   P^n:       O(k) (x) Sigma^mu(K)  <->  (k, mu_1, ..., mu_n),
//              so Omega^p(k) = Wedge^p(K)(k-p) <-> (k-p, 1^p, 0^{n-p})
//
// with rho = (r-1, ..., 1, 0) on the total rank r.

struct CohomTable {
    enum class Status { Exact, UpperBound };
    std::map<int, Int> dims;  // absent degree means dimension zero
    Status status = Status::Exact;

    Int dim(int i) const {
        auto it = dims.find(i);
        return it == dims.end() ? Int(0) : it->second;
    }
    bool all_zero() const { return dims.empty(); }
    Int euler() const {
        Int chi(0);
        for (const auto& [d, v] : dims) chi += (d % 2 == 0) ? v : -v;
        return chi;
    }
    bool operator==(const CohomTable& o) const { return dims == o.dims; }

    std::string str() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (const auto& [d, v] : dims) {
            if (!first) os << ", ";
            first = false;
            os << d << ": " << v.str();
        }
        os << '}';
        return os.str();
    }
};

inline bool block_dominant(const Space& sp, const Weight& w) {
    if (static_cast<int>(w.size()) != sp.total_rank()) return false;
    int off = 0;
    for (int b : sp.blocks()) {
        for (int i = 0; i + 1 < b; ++i)
            if (w[static_cast<size_t>(off + i)] < w[static_cast<size_t>(off + i + 1)]) return false;
        off += b;
    }
    return true;
}

namespace detail {

// Optional memo shared by all threads; concurrent readers, last-write-wins.
class BbwMemo {
public:
    std::optional<CohomTable> find(const std::string& key) const {
        std::shared_lock lk(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    void store(const std::string& key, const CohomTable& t) {
        std::unique_lock lk(mu_);
        map_[key] = t;
    }
    void clear() {
        std::unique_lock lk(mu_);
        map_.clear();
    }
    size_t size() const {
        std::shared_lock lk(mu_);
        return map_.size();
    }
    template <typename F>
    void for_each(F&& f) const {
        std::shared_lock lk(mu_);
        for (const auto& [k, v] : map_) f(k, v);
    }

private:
    mutable std::shared_mutex mu_;
    std::map<std::string, CohomTable> map_;
};

inline BbwMemo& bbw_memo() {
    static BbwMemo memo;
    return memo;
}

inline std::string memo_key(const Space& sp, const Weight& w) {
    return sp.id() + '|' + w.str();
}

}  // namespace detail

inline CohomTable line_cohomology(const Space& sp, const Weight& w, bool use_memo = true) {
    if (!block_dominant(sp, w))
        throw std::invalid_argument("line_cohomology: weight " + w.str() +
                                    " is not block-dominant on " + sp.id());
    const std::string key = detail::memo_key(sp, w);
    if (use_memo)
        if (auto hit = detail::bbw_memo().find(key)) return *hit;

    CohomTable t;
    RhoSortResult rs = rho_sort(w);
    if (!rs.singular) t.dims[rs.degree] = weyl_dimension(rs.dominant);
    if (use_memo) detail::bbw_memo().store(key, t);
    return t;
}

// Classical closed-form table for H^q(P^n, Omega^p(k)).
inline CohomTable bott_formula(int n, int p, int k) {
    if (p < 0 || p > n) throw std::invalid_argument("bott_formula: need 0 <= p <= n");
    CohomTable t;
    if (k > p) {
        Int d = binomial(k + n - p, k) * binomial(k - 1, p);
        if (d != 0) t.dims[0] = d;
    } else if (k == 0) {
        t.dims[p] = 1;
    } else if (k < p - n) {
        Int d = binomial(-k + p, -k) * binomial(-k - 1, n - p);
        if (d != 0) t.dims[n] = d;
    }
    return t;
}

// ---------------------------------------------------------------------------
// Symbolic evaluation over one integer parameter.

struct IntInterval {
    std::optional<long long> lo, hi;  // inclusive; nullopt = unbounded

    static IntInterval all() { return {}; }
    static IntInterval at_most(long long k) { return {std::nullopt, k}; }
    static IntInterval at_least(long long k) { return {k, std::nullopt}; }
    static IntInterval between(long long a, long long b) { return {a, b}; }
    static IntInterval point(long long a) { return {a, a}; }

    bool bounded() const { return lo && hi; }
    bool empty() const { return lo && hi && *lo > *hi; }
    bool contains(long long t) const { return (!lo || t >= *lo) && (!hi || t <= *hi); }

    std::string str() const {
        std::ostringstream os;
        os << '[' << (lo ? std::to_string(*lo) : "-inf") << ',' << (hi ? std::to_string(*hi) : "+inf")
           << ']';
        return os.str();
    }
};

// One piece of a symbolic verdict: on `range` the shifted weight is either
// singular (everything vanishes) or regular with constant concentration
// degree; the dimension varies polynomially and can be read off at any point.
struct SymbolicPiece {
    IntInterval range;
    bool singular = false;
    int degree = 0;
    long long sample = 0;  // a point of the range where the piece was evaluated
};

struct ParamVerdict {
    std::vector<SymbolicPiece> intervals;
    bool complete = true;

    bool vanishes_in_degree(int i) const {
        for (const auto& p : intervals)
            if (!p.singular && p.degree == i) return false;
        return true;
    }
    bool all_zero() const {
        for (const auto& p : intervals)
            if (!p.singular) return false;
        return true;
    }
    // First range whose concentration degree is i, if any.
    std::optional<SymbolicPiece> witness_for_degree(int i) const {
        for (const auto& p : intervals)
            if (!p.singular && p.degree == i) return p;
        return std::nullopt;
    }
};

// Exact cohomology pattern of the affine family  base + t * coeff  over the
// (possibly unbounded) integer domain.  Entries of coeff must lie in
// {-1, 0, 1}.  Breakpoints are the finitely many places where two entries of
// lambda(t) + rho collide or cross; between them the inversion count is
// constant, so sampling one interior point per interval is exact.  Unbounded
// domains are never sampled pointwise beyond the breakpoint horizon.
inline ParamVerdict symbolic_line_cohomology(const Space& sp, const Weight& base,
                                             const std::vector<int>& coeff, IntInterval domain) {
    const size_t r = static_cast<size_t>(sp.total_rank());
    if (base.size() != r || coeff.size() != r)
        throw std::invalid_argument("symbolic_line_cohomology: arity mismatch");
    for (int c : coeff)
        if (c < -1 || c > 1)
            throw std::invalid_argument("symbolic_line_cohomology: t-coefficients must be 0 or +-1");
    if (domain.empty()) throw std::invalid_argument("symbolic_line_cohomology: empty domain");

    // Block-dominance must hold for every t in the domain: within a block the
    // coefficient must be constant wherever order could flip.
    {
        int off = 0;
        for (int b : sp.blocks()) {
            for (int i = 0; i + 1 < b; ++i) {
                size_t a = static_cast<size_t>(off + i), bb = a + 1;
                if (coeff[a] != coeff[bb])
                    throw std::invalid_argument(
                        "symbolic_line_cohomology: parameter breaks block-dominance");
                if (base[a] < base[bb])
                    throw std::invalid_argument("symbolic_line_cohomology: weight not block-dominant");
            }
            off += b;
        }
    }

    ParamVerdict out;

    // v_i(t) = base_i + rho_i + c_i t
    std::vector<long long> v0(r);
    for (size_t i = 0; i < r; ++i) v0[i] = base[i] + static_cast<long long>(r - 1 - i);

    // A pair with equal coefficients and equal constants is singular for all t.
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j)
            if (coeff[i] == coeff[j] && v0[i] == v0[j]) {
                out.intervals.push_back(SymbolicPiece{domain, true, 0,
                                                      domain.lo ? *domain.lo : (domain.hi ? *domain.hi : 0)});
                return out;
            }

    // Candidate cut points: integers bracketing each crossing t* = (v0_j - v0_i)/(c_i - c_j).
    std::vector<long long> cuts;
    for (size_t i = 0; i < r; ++i)
        for (size_t j = i + 1; j < r; ++j) {
            if (coeff[i] == coeff[j]) continue;
            long long num = v0[j] - v0[i];
            long long den = coeff[i] - coeff[j];  // in {-2,-1,1,2}
            // floor and ceil of num/den
            long long q = num / den;
            long long rmd = num % den;
            long long fl = (rmd != 0 && ((rmd < 0) != (den < 0))) ? q - 1 : q;
            long long ce = (rmd == 0) ? q : fl + 1;
            cuts.push_back(fl);
            cuts.push_back(ce);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<long long> inner;
    for (long long c : cuts)
        if (domain.contains(c)) inner.push_back(c);

    auto eval_at = [&](long long t) {
        std::vector<long long> lam(r);
        for (size_t i = 0; i < r; ++i) lam[i] = base[i] + coeff[i] * t;
        return rho_sort(Weight(std::move(lam)));
    };
    auto push = [&](IntInterval range, long long sample) {
        if (range.empty()) return;
        RhoSortResult rs = eval_at(sample);
        SymbolicPiece p{range, rs.singular, rs.degree, sample};
        // merge with the previous piece when the pattern is identical and adjacent
        if (!out.intervals.empty()) {
            SymbolicPiece& q = out.intervals.back();
            bool adjacent = q.range.hi && range.lo && *q.range.hi + 1 == *range.lo;
            bool same = q.singular == p.singular && (q.singular || q.degree == p.degree);
            if (adjacent && same) {
                q.range.hi = range.hi;
                return;
            }
        }
        out.intervals.push_back(p);
    };

    if (inner.empty()) {
        long long sample = domain.lo ? *domain.lo : (domain.hi ? *domain.hi : 0);
        if (!cuts.empty()) {
            // domain lies entirely on one side of all cuts
            if (domain.lo && *domain.lo > cuts.back())
                sample = *domain.lo;
            else if (domain.hi && *domain.hi < cuts.front())
                sample = *domain.hi;
        }
        push(domain, sample);
        return out;
    }

    // left tail
    if (!domain.lo || *domain.lo < inner.front()) {
        IntInterval left{domain.lo, inner.front() - 1};
        long long sample = left.hi ? *left.hi : 0;
        push(left, sample);
    }
    for (size_t k = 0; k < inner.size(); ++k) {
        push(IntInterval::point(inner[k]), inner[k]);
        if (k + 1 < inner.size() && inner[k] + 1 <= inner[k + 1] - 1) {
            push(IntInterval::between(inner[k] + 1, inner[k + 1] - 1), inner[k] + 1);
        }
    }
    // right tail
    if (!domain.hi || *domain.hi > inner.back()) {
        IntInterval right{inner.back() + 1, domain.hi};
        push(right, inner.back() + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Calibration: the weight dictionary above is a convention, not a theorem.
// These six values pin it; they must all hold before the dictionary is
// trusted (the verify driver and the unit suite both run this).
struct CalibrationResult {
    bool ok = true;
    std::vector<std::string> failures;
};

inline CalibrationResult calibrate() {
    CalibrationResult res;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            res.ok = false;
            res.failures.push_back(what);
        }
    };
    Space g = Space::grassmann(6), gamma = Space::incidence(6);
    expect(line_cohomology(gamma, Weight{1, 0, 0, 0, 0, 0}).dim(0) == 6, "h^0(Gamma,R) == 6");
    expect(line_cohomology(gamma, Weight{-7, -5, 0, 0, 0, 0}).dim(9) == 1,
           "h^9(Gamma, N^-5 R^-7) == 1");
    expect(line_cohomology(gamma, Weight{-1, 1, 0, 0, 0, 0}).dim(1) == 1, "h^1(Gamma, N R^-1) == 1");
    expect(line_cohomology(g, Weight{1, 1, 0, 0, 0, 0}).dim(0) == 15, "h^0(G, Wedge2 Q) == 15");
    expect(line_cohomology(gamma, Weight{0, 0, 0, 0, 0, -1}).dim(0) == 6, "h^0(Gamma, Dual(M)) == 6");
    expect(line_cohomology(gamma, Weight{0, 0, 1, 0, 0, 0}).all_zero(), "h^*(Gamma, M) == 0");
    return res;
}

}  // namespace fano
