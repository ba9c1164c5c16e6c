#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/numeric.hpp"
#include "fano/rng.hpp"

namespace fano {

// ---------------------------------------------------------------------------
// Exact arithmetic in Q(omega), omega a primitive cube root of unity,
// omega^2 = -1 - omega.

struct Cyclo {
    Rat a, b;  // a + b*omega

    Cyclo() : a(0), b(0) {}
    Cyclo(long long x) : a(x), b(0) {}
    Cyclo(Rat x) : a(std::move(x)), b(0) {}
    Cyclo(Rat x, Rat y) : a(std::move(x)), b(std::move(y)) {}

    static Cyclo omega() { return Cyclo(Rat(0), Rat(1)); }
    static Cyclo omega_sq() { return Cyclo(Rat(-1), Rat(-1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const Cyclo& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo operator+(const Cyclo& o) const { return {a + o.a, b + o.b}; }
    Cyclo operator-(const Cyclo& o) const { return {a - o.a, b - o.b}; }
    Cyclo operator-() const { return {-a, -b}; }

    Cyclo operator*(const Cyclo& o) const {
        // (a1 + b1 w)(a2 + b2 w),  w^2 = -1 - w
        return {a * o.a - b * o.b, a * o.b + b * o.a - b * o.b};
    }

    Cyclo conj() const { return {a - b, -b}; }  // omega -> omega^2

    Rat norm() const { return a * a - a * b + b * b; }

    Cyclo inverse() const {
        Rat n = norm();
        if (n == 0) throw std::domain_error("Cyclo: inverse of zero");
        Cyclo c = conj();
        return {c.a / n, c.b / n};
    }

    Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

    std::string str() const {
        std::ostringstream os;
        os << a;
        if (b != 0) os << (b > 0 ? "+" : "") << b << "w";
        return os.str();
    }
};

using CycVec = std::vector<Cyclo>;
using CycMat = std::vector<std::vector<Cyclo>>;

inline CycMat cyc_identity(size_t n) {
    CycMat m(n, CycVec(n));
    for (size_t i = 0; i < n; ++i) m[i][i] = Cyclo(1);
    return m;
}

inline CycVec mat_vec(const CycMat& m, const CycVec& v) {
    CycVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        Cyclo acc;
        for (size_t j = 0; j < v.size(); ++j) {
            if (m[i][j].is_zero() || v[j].is_zero()) continue;
            acc = acc + m[i][j] * v[j];
        }
        r[i] = acc;
    }
    return r;
}

inline CycMat mat_mul(const CycMat& x, const CycMat& y) {
    size_t n = x.size(), m = y[0].size(), k = y.size();
    CycMat r(n, CycVec(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (x[i][t].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] = r[i][j] + x[i][t] * y[t][j];
        }
    return r;
}

inline bool mat_equal(const CycMat& x, const CycMat& y) { return x == y; }

// ---------------------------------------------------------------------------
// The A2 Milnor lattice and its Picard-Lefschetz operators.
//
// Sign conventions: Gram [[2,-1],[-1,2]] on the distinguished basis, and
// T(z) = z - <z,Delta> Delta.  These are the unique choices (up to
// simultaneous conjugation) making each T an involutive isometry and the
// composite T_1 T_2 an operator of order three; validate_conventions()
// asserts this at startup.

inline long long milnor_number(const std::vector<long long>& exponents) {
    long long mu = 1;
    for (long long a : exponents) {
        if (a < 2) throw std::invalid_argument("milnor_number: exponents must be >= 2");
        mu *= (a - 1);
    }
    return mu;
}

struct MilnorLattice {
    long long gram[2][2];

    Int det() const { return Int(gram[0][0]) * gram[1][1] - Int(gram[0][1]) * gram[1][0]; }
};

inline MilnorLattice a2_lattice() { return MilnorLattice{{{2, -1}, {-1, 2}}}; }

// Picard-Lefschetz reflection in the basis cycle Delta_k (k = 0 or 1):
// z -> z - <z, Delta_k> Delta_k
inline CycVec pl_reflect(const CycVec& z, size_t k, const MilnorLattice& L = a2_lattice()) {
    if (z.size() != 2 || k > 1) throw std::invalid_argument("pl_reflect: dimension mismatch");
    Cyclo pairing = z[0] * Cyclo(L.gram[0][k]) + z[1] * Cyclo(L.gram[1][k]);
    CycVec r = z;
    r[k] = r[k] - pairing;
    return r;
}

// r = T_1 T_2 as an integer 2x2 matrix (columns are images of the basis)
struct LocalMonodromy {
    long long m[2][2];
};

inline LocalMonodromy local_monodromy(const MilnorLattice& L = a2_lattice()) {
    auto apply = [&](size_t k, const CycVec& z) { return pl_reflect(z, k, L); };
    CycVec e1{Cyclo(1), Cyclo(0)}, e2{Cyclo(0), Cyclo(1)};
    CycVec c1 = apply(0, apply(1, e1));
    CycVec c2 = apply(0, apply(1, e2));
    auto as_ll = [](const Cyclo& c) {
        if (c.b != 0 || denominator(c.a) != 1)
            throw std::logic_error("local_monodromy: non-integral entry");
        return numerator(c.a).convert_to<long long>();
    };
    return LocalMonodromy{{{as_ll(c1[0]), as_ll(c2[0])}, {as_ll(c1[1]), as_ll(c2[1])}}};
}

// exact eigenvectors of r for omega and omega^2
inline std::pair<CycVec, CycVec> eigenbasis(const LocalMonodromy& r) {
    auto kernel_vector = [&](const Cyclo& ev) {
        // (r - ev I) v = 0; rows of the 2x2 system
        Cyclo a = Cyclo(r.m[0][0]) - ev, b = Cyclo(r.m[0][1]);
        Cyclo c = Cyclo(r.m[1][0]), d = Cyclo(r.m[1][1]) - ev;
        CycVec v = (!a.is_zero() || !b.is_zero()) ? CycVec{-b, a} : CycVec{-d, c};
        if (v[0].is_zero() && v[1].is_zero()) throw std::logic_error("eigenbasis: zero kernel vector");
        // verify both rows annihilate
        Cyclo r1 = a * v[0] + b * v[1];
        Cyclo r2 = c * v[0] + d * v[1];
        if (!r1.is_zero() || !r2.is_zero()) throw std::logic_error("eigenbasis: not in kernel");
        return v;
    };
    CycVec vw = kernel_vector(Cyclo::omega());
    CycVec vw2 = kernel_vector(Cyclo::omega_sq());
    // kernel of (r - ev) is exactly one-dimensional: check independence
    Cyclo det2 = vw[0] * vw2[1] - vw[1] * vw2[0];
    if (det2.is_zero()) throw std::logic_error("eigenbasis: eigenvectors are dependent");
    return {vw, vw2};
}

inline bool validate_conventions() {
    MilnorLattice L = a2_lattice();
    if (L.det() != 3) return false;
    // reflections are involutions
    CycVec z{Cyclo(3, Rat(1, 2)), Cyclo(Rat(-2, 7), Rat(5))};
    for (size_t k = 0; k < 2; ++k)
        if (pl_reflect(pl_reflect(z, k, L), k, L) != z) return false;
    // the composite has order three and trace -1
    LocalMonodromy r = local_monodromy(L);
    if (r.m[0][0] + r.m[1][1] != -1) return false;
    long long sq[2][2], cu[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            sq[i][j] = r.m[i][0] * r.m[0][j] + r.m[i][1] * r.m[1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            cu[i][j] = sq[i][0] * r.m[0][j] + sq[i][1] * r.m[1][j];
    return cu[0][0] == 1 && cu[1][1] == 1 && cu[0][1] == 0 && cu[1][0] == 0;
}

// ---------------------------------------------------------------------------
// The assembled global representation: m copies of the local block, each
// local operator r_i acting as the identity off its block, plus transport
// operators identifying block 1 with block j (scalar one).

struct GlobalRep {
    int m = 1;
    std::vector<CycMat> local_ops;  // r_1 .. r_m, each 2m x 2m
    std::vector<CycMat> transports;  // block swaps (1 j)
    std::vector<std::vector<long long>> gram;  // orthogonal sum of the A2 forms

    size_t dim() const { return static_cast<size_t>(2 * m); }
};

inline GlobalRep build_global(int m) {
    if (m < 1) throw std::invalid_argument("build_global: m must be >= 1");
    GlobalRep rep;
    rep.m = m;
    const size_t n = rep.dim();
    LocalMonodromy r = local_monodromy();
    MilnorLattice L = a2_lattice();

    rep.gram.assign(n, std::vector<long long>(n, 0));
    for (int b = 0; b < m; ++b)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                rep.gram[static_cast<size_t>(2 * b + i)][static_cast<size_t>(2 * b + j)] = L.gram[i][j];

    for (int b = 0; b < m; ++b) {
        CycMat op = cyc_identity(n);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                op[static_cast<size_t>(2 * b + i)][static_cast<size_t>(2 * b + j)] = Cyclo(r.m[i][j]);
        rep.local_ops.push_back(std::move(op));
    }
    for (int b = 1; b < m; ++b) {
        CycMat t = cyc_identity(n);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                t[static_cast<size_t>(i)][static_cast<size_t>(j)] = Cyclo(0);
                t[static_cast<size_t>(2 * b + i)][static_cast<size_t>(2 * b + j)] = Cyclo(0);
                t[static_cast<size_t>(i)][static_cast<size_t>(2 * b + j)] = (i == j) ? Cyclo(1) : Cyclo(0);
                t[static_cast<size_t>(2 * b + i)][static_cast<size_t>(j)] = (i == j) ? Cyclo(1) : Cyclo(0);
            }
        }
        rep.transports.push_back(std::move(t));
    }
    return rep;
}

inline std::vector<CycMat> generators(const GlobalRep& rep) {
    std::vector<CycMat> g = rep.local_ops;
    g.insert(g.end(), rep.transports.begin(), rep.transports.end());
    return g;
}

inline bool preserves_form(const GlobalRep& rep, const CycMat& op) {
    const size_t n = rep.dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            // <op e_i, op e_j> = <e_i, e_j>
            Cyclo acc;
            for (size_t a = 0; a < n; ++a)
                for (size_t b = 0; b < n; ++b)
                    acc = acc + op[a][i] * op[b][j] * Cyclo(rep.gram[a][b]);
            if (acc != Cyclo(rep.gram[i][j])) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over Q(omega): row-echelon span with growth.

struct CycSpan {
    size_t dim;
    std::vector<CycVec> basis;          // echelonized rows
    std::vector<size_t> pivots;

    explicit CycSpan(size_t d) : dim(d) {}

    size_t rank() const { return basis.size(); }

    // reduce v against the basis; returns the residue
    CycVec reduce(CycVec v) const {
        for (size_t k = 0; k < basis.size(); ++k) {
            const Cyclo c = v[pivots[k]];  // copy: the loop below overwrites v[pivots[k]]
            if (!c.is_zero()) {
                for (size_t j = 0; j < dim; ++j) {
                    if (basis[k][j].is_zero()) continue;
                    v[j] = v[j] - c * basis[k][j];
                }
            }
        }
        return v;
    }

    bool contains(const CycVec& v) const {
        for (const Cyclo& c : reduce(v))
            if (!c.is_zero()) return false;
        return true;
    }

    // returns true if v enlarged the span
    bool insert(CycVec v) {
        v = reduce(std::move(v));
        size_t p = dim;
        for (size_t j = 0; j < dim; ++j)
            if (!v[j].is_zero()) {
                p = j;
                break;
            }
        if (p == dim) return false;
        Cyclo inv = v[p].inverse();
        for (size_t j = 0; j < dim; ++j)
            if (!v[j].is_zero()) v[j] = v[j] * inv;
        // back-substitute into existing rows
        for (size_t k = 0; k < basis.size(); ++k) {
            const Cyclo c = basis[k][p];
            if (!c.is_zero())
                for (size_t j = 0; j < dim; ++j) {
                    if (v[j].is_zero()) continue;
                    basis[k][j] = basis[k][j] - c * v[j];
                }
        }
        basis.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }
};

// smallest invariant subspace containing v under the full generator set;
// worklist over spanning vectors, so each generator touches each spanning
// vector once
inline CycSpan invariant_closure(const GlobalRep& rep, const CycVec& v) {
    CycSpan span(rep.dim());
    std::vector<CycMat> gens = generators(rep);
    std::vector<CycVec> queue;
    if (span.insert(v)) queue.push_back(span.basis.back());
    while (!queue.empty()) {
        CycVec w = std::move(queue.back());
        queue.pop_back();
        for (const CycMat& g : gens) {
            if (span.insert(mat_vec(g, w))) queue.push_back(span.basis.back());
        }
    }
    return span;
}

inline bool subspace_invariant(const GlobalRep& rep, const std::vector<CycVec>& basis) {
    CycSpan span(rep.dim());
    for (const auto& b : basis) span.insert(b);
    for (const CycMat& g : generators(rep))
        for (const auto& b : basis)
            if (!span.contains(mat_vec(g, b))) return false;
    return true;
}

// the two eigenvector families delta_w^i, delta_{w^2}^i
struct EigenFamilies {
    std::vector<CycVec> h_w, h_w2;
};

inline EigenFamilies eigen_families(const GlobalRep& rep) {
    auto [vw, vw2] = eigenbasis(local_monodromy());
    EigenFamilies fam;
    const size_t n = rep.dim();
    for (int b = 0; b < rep.m; ++b) {
        CycVec ew(n), ew2(n);
        for (int i = 0; i < 2; ++i) {
            ew[static_cast<size_t>(2 * b + i)] = vw[static_cast<size_t>(i)];
            ew2[static_cast<size_t>(2 * b + i)] = vw2[static_cast<size_t>(i)];
        }
        fam.h_w.push_back(std::move(ew));
        fam.h_w2.push_back(std::move(ew2));
    }
    return fam;
}

// The two invariant subspaces H_w and H_{w^2}; their invariance and trivial
// intersection are checked exactly before returning.
inline std::vector<std::vector<CycVec>> decompose_rep(const GlobalRep& rep) {
    EigenFamilies fam = eigen_families(rep);
    for (const auto& basis : {fam.h_w, fam.h_w2})
        if (!subspace_invariant(rep, basis))
            throw std::logic_error("decompose_rep: eigenspace family is not invariant");
    CycSpan both(rep.dim());
    size_t r = 0;
    for (const auto& v : fam.h_w)
        if (both.insert(v)) ++r;
    for (const auto& v : fam.h_w2)
        if (both.insert(v)) ++r;
    if (r != rep.dim()) throw std::logic_error("decompose_rep: subspaces do not sum directly");
    return {fam.h_w, fam.h_w2};
}

// seeded random vector with small rational coordinates, guaranteed nonzero
inline CycVec random_vector(Rng& rng, size_t dim) {
    for (;;) {
        CycVec v(dim);
        bool nonzero = false;
        for (size_t i = 0; i < dim; ++i) {
            long long a = rng.int_in(-3, 3), b = rng.int_in(-3, 3);
            v[i] = Cyclo(Rat(a), Rat(b));
            if (a || b) nonzero = true;
        }
        if (nonzero) return v;
    }
}

}  // namespace fano
