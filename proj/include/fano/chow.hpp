#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fano/bundles.hpp"
#include "fano/numeric.hpp"
#include "fano/spaces.hpp"
#include "fano/weights.hpp"

namespace fano {

// ---------------------------------------------------------------------------
// Chow ring of G(2,n) presented by the Chern classes c1, c2 of the rank-2
// quotient bundle Q.  Classes are integer polynomials in (c1, c2); reduction
// modulo the presentation ideal happens inside integrate(), where the class
// is re-expanded in the Schur basis and truncated to the 2 x (n-2) box.

// polynomial in c1 (degree 1) and c2 (degree 2)
struct ChowClass {
    std::map<std::pair<int, int>, Int> terms;  // (a, b) -> coeff of c1^a c2^b

    static ChowClass zero() { return {}; }
    static ChowClass constant(Int c) {
        ChowClass r;
        if (c != 0) r.terms[{0, 0}] = std::move(c);
        return r;
    }
    static ChowClass monomial(int a, int b, Int c = Int(1)) {
        ChowClass r;
        if (c != 0) r.terms[{a, b}] = std::move(c);
        return r;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const ChowClass& o) const { return terms == o.terms; }

    ChowClass& operator+=(const ChowClass& o) {
        for (const auto& [e, c] : o.terms) add(e.first, e.second, c);
        return *this;
    }
    friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }

    friend ChowClass operator*(const ChowClass& a, const ChowClass& b) {
        ChowClass r;
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms)
                r.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
        return r;
    }
    ChowClass& operator*=(const ChowClass& o) { return *this = *this * o; }

    ChowClass scaled(const Int& k) const {
        ChowClass r;
        for (const auto& [e, c] : terms) r.add(e.first, e.second, c * k);
        return r;
    }

    // homogeneous part of degree d (deg c1 = 1, deg c2 = 2)
    ChowClass graded_part(int d) const {
        ChowClass r;
        for (const auto& [e, c] : terms)
            if (e.first + 2 * e.second == d) r.add(e.first, e.second, c);
        return r;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e.first + 2 * e.second);
        return d;
    }

    bool homogeneous_of_degree(int d) const {
        for (const auto& [e, c] : terms)
            if (e.first + 2 * e.second != d) return false;
        return !terms.empty() || d < 0;
    }

    ChowClass truncated(int maxdeg) const {
        ChowClass r;
        for (const auto& [e, c] : terms)
            if (e.first + 2 * e.second <= maxdeg) r.add(e.first, e.second, c);
        return r;
    }

    void add(int a, int b, const Int& c) {
        if (c == 0) return;
        auto key = std::make_pair(a, b);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << c.str();
            if (e.first) os << "*c1^" << e.first;
            if (e.second) os << "*c2^" << e.second;
        }
        return os.str();
    }
};

// multiplicative inverse of a series with constant term 1, up to degree maxdeg
inline ChowClass series_inverse(const ChowClass& f, int maxdeg) {
    ChowClass g = ChowClass::constant(Int(1));
    ChowClass tail = f;
    tail.terms.erase({0, 0});
    ChowClass power = ChowClass::constant(Int(1));
    for (int k = 1; k <= maxdeg; ++k) {
        power = (power * tail).truncated(maxdeg);
        if (power.is_zero()) break;
        g += (k % 2 == 0) ? power : power.scaled(Int(-1));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Chern classes by the splitting principle.  The Chern roots of a
// Q-construction are read off its character: a monomial x1^p x2^q contributes
// the root p*alpha + q*beta, where alpha, beta are the roots of Q, and the
// root multiset is symmetric under alpha <-> beta, so the product of the
// paired factors is expressible in c1 = alpha + beta, c2 = alpha*beta.

inline std::vector<ChowClass> chern(const ExprPtr& expr, const Space& sp) {
    if (sp.kind != SpaceKind::Grassmann) throw std::invalid_argument("chern: need a Grassmannian");
    Laurent chi = character(expr, sp);
    // roots must involve the Q-block only
    std::vector<std::pair<int, int>> roots;
    for (const auto& [e, c] : chi.terms()) {
        for (size_t i = 2; i < e.size(); ++i)
            if (e[i] != 0)
                throw std::invalid_argument("chern: class depends on the subbundle block");
        if (c <= 0) throw std::invalid_argument("chern: virtual character");
        for (Int k = 0; k < c; ++k) roots.emplace_back(e[0], e[1]);
    }

    ChowClass total = ChowClass::constant(Int(1));
    std::map<std::pair<int, int>, int> bag;
    for (auto& r : roots) bag[r]++;
    while (!bag.empty()) {
        auto [root, cnt] = *bag.begin();
        auto [p, q] = root;
        if (p == q) {
            // (1 + p(alpha+beta)) per root
            ChowClass f = ChowClass::constant(Int(1));
            f.add(1, 0, Int(p));
            for (int i = 0; i < cnt; ++i) total *= f;
            bag.erase(bag.begin());
        } else {
            auto mirror = std::make_pair(q, p);
            auto mit = bag.find(mirror);
            if (mit == bag.end() || mit->second != cnt)
                throw std::logic_error("chern: root multiset not symmetric");
            // (1 + p a + q b)(1 + q a + p b) = 1 + (p+q)c1 + pq(c1^2 - 2c2) + (p^2+q^2)c2
            ChowClass f = ChowClass::constant(Int(1));
            f.add(1, 0, Int(p + q));
            f.add(2, 0, Int(p * q));
            f.add(0, 1, Int(p * p + q * q) - Int(2 * p * q));
            for (int i = 0; i < cnt; ++i) total *= f;
            bag.erase(mirror);
            bag.erase(root);
        }
    }

    long long rank = to_ll(bundle_rank(expr, sp));
    std::vector<ChowClass> out;
    for (int d = 0; d <= rank; ++d) out.push_back(total.graded_part(d));
    return out;
}

inline ChowClass total_chern(const ExprPtr& expr, const Space& sp) {
    ChowClass t;
    for (const auto& part : chern(expr, sp)) t += part;
    return t;
}

// ---------------------------------------------------------------------------
// Integration: expand in the Schur basis of two variables, truncate to the
// 2 x (n-2) box (this is the reduction modulo the presentation ideal), and
// read off the coefficient of the point class sigma_{(n-2, n-2)}.

inline Int integrate(const ChowClass& cls, const Space& sp) {
    if (sp.kind != SpaceKind::Grassmann) throw std::invalid_argument("integrate: need a Grassmannian");
    const int top = sp.dim();
    if (cls.is_zero()) return Int(0);
    if (!cls.homogeneous_of_degree(top))
        throw std::invalid_argument("integrate: class is not homogeneous of top degree " +
                                    std::to_string(top));
    // c1 -> x + y, c2 -> xy
    Laurent chi = Laurent::zero(2);
    Laurent e1 = Laurent::monomial(2, {1, 0}) + Laurent::monomial(2, {0, 1});
    Laurent e2 = Laurent::monomial(2, {1, 1});
    for (const auto& [e, c] : cls.terms) {
        Laurent term = Laurent::one(2).scaled(c);
        for (int i = 0; i < e.first; ++i) term *= e1;
        for (int i = 0; i < e.second; ++i) term *= e2;
        chi += term;
    }
    Int result(0);
    const long long box = sp.n - 2;
    for (const auto& [lam, mult] : schur_decompose_block(chi, 2)) {
        Partition p = lam;
        p.resize(2, 0);
        if (p[0] == box && p[1] == box) result += mult;
        // partitions escaping the box die in the quotient ring
    }
    return result;
}

// ---------------------------------------------------------------------------
// Topological Euler characteristic of the Fano scheme of lines on a cubic
// hypersurface, as the integral over G(2,n) of c_top(T_F) c_top(Sym3 Q) with
// 0 -> T_F -> T_G|_F -> Sym3(Q)|_F -> 0 and c(T_G) = c(Dual(M) (x) Q).
//
// c(Dual(M) (x) Q) is computed with the splitting principle applied to M:
// with P(u) = sum_k (-1)^k c_k(M) (1+u)^{m-k}, m = rank M, the class is
// P(alpha) P(beta), evaluated by reducing P modulo u^2 - c1 u + c2.

namespace detail {

struct QLin {  // u + v * q  modulo  q^2 - c1 q + c2
    ChowClass u, v;

    static QLin constant(ChowClass c) { return {std::move(c), ChowClass::zero()}; }

    friend QLin operator*(const QLin& a, const QLin& b) {
        ChowClass c1 = ChowClass::monomial(1, 0);
        ChowClass c2 = ChowClass::monomial(0, 1);
        ChowClass uu = a.u * b.u;
        ChowClass cross = a.u * b.v + a.v * b.u;
        ChowClass vv = a.v * b.v;
        // q^2 = c1 q - c2
        return {uu + (vv * c2).scaled(Int(-1)), cross + vv * c1};
    }
};

}  // namespace detail

inline ChowClass tangent_chern_grassmann(const Space& sp) {
    if (sp.kind != SpaceKind::Grassmann) throw std::invalid_argument("need a Grassmannian");
    const int m = sp.n - 2;
    const int maxdeg = sp.dim();
    // c(M) = 1 / c(Q), truncated
    ChowClass cQ = ChowClass::constant(Int(1));
    cQ.add(1, 0, Int(1));
    cQ.add(0, 1, Int(1));
    ChowClass cM = series_inverse(cQ, maxdeg);
    std::vector<ChowClass> ck(static_cast<size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) ck[static_cast<size_t>(k)] = cM.graded_part(k);

    // P(q) = sum_k (-1)^k c_k(M) (1+q)^{m-k}
    detail::QLin one_plus_q{ChowClass::constant(Int(1)), ChowClass::constant(Int(1))};
    std::vector<detail::QLin> pow(static_cast<size_t>(m) + 1);
    pow[0] = detail::QLin::constant(ChowClass::constant(Int(1)));
    for (int j = 1; j <= m; ++j) pow[static_cast<size_t>(j)] = pow[static_cast<size_t>(j - 1)] * one_plus_q;

    detail::QLin P{ChowClass::zero(), ChowClass::zero()};
    for (int k = 0; k <= m; ++k) {
        ChowClass c = (k % 2 == 0) ? ck[static_cast<size_t>(k)] : ck[static_cast<size_t>(k)].scaled(Int(-1));
        P.u += pow[static_cast<size_t>(m - k)].u * c;
        P.v += pow[static_cast<size_t>(m - k)].v * c;
    }
    // P(alpha) P(beta) = u^2 + u v c1 + v^2 c2
    ChowClass c1 = ChowClass::monomial(1, 0);
    ChowClass c2 = ChowClass::monomial(0, 1);
    return (P.u * P.u + P.u * P.v * c1 + P.v * P.v * c2).truncated(maxdeg);
}

inline Int chi_top_fano(const Space& sp) {
    if (sp.kind != SpaceKind::Grassmann || sp.n < 4)
        throw std::invalid_argument("chi_top_fano: need G(2,n) with n >= 4");
    ExprPtr sym3q = parse_bundle("Sym3(Q)");
    const int dimF = sp.dim() - 4;
    if (dimF < 0) throw std::invalid_argument("chi_top_fano: Fano scheme is empty");

    ChowClass ctopE = chern(sym3q, sp)[4];
    ChowClass cTG = tangent_chern_grassmann(sp);
    ChowClass cE_inv = series_inverse(total_chern(sym3q, sp), sp.dim());
    ChowClass cTF = (cTG * cE_inv).truncated(sp.dim()).graded_part(dimF);
    if (dimF == 0) cTF = ChowClass::constant(Int(1));
    return integrate(cTF * ctopE, sp);
}

// Riemann-Roch on a surface for the hyperplane system: h^0 = D.D/2 + chi(O).
inline Int rr_surface(long long self_int, long long chi_O) {
    if (self_int % 2 != 0) throw std::invalid_argument("rr_surface: self-intersection must be even");
    return Int(self_int / 2 + chi_O);
}

}  // namespace fano
