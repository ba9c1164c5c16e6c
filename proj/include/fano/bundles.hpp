#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fano/bbw.hpp"
#include "fano/laurent.hpp"
#include "fano/spaces.hpp"
#include "fano/weights.hpp"

namespace fano {

// ---------------------------------------------------------------------------
// Bundle expression AST.
//
// Grammar:
//   expr := term ('*' term)*
//   term := atom ('^' exponent)?
//   atom := SYM | 'Sym' INT '(' expr ')' | 'Wedge' INT '(' expr ')'
//         | 'Dual(' expr ')' | '(' expr ')'
//   SYM  := 'Q' | 'M' | 'N' | 'R' | 'K' | 'E' | 'Omega' | 'O(' INT ')'
//   exponent := INT | IDENT          (IDENT = an integer parameter)
//
// Whitespace-insensitive.  E abbreviates Dual(Sym3(Q)); on P^n, Omega is the
// cotangent bundle K(-1) and K its rank-n twist.

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(size_t pos, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
};

struct BundleExpr;
using ExprPtr = std::shared_ptr<const BundleExpr>;

struct ExponentSpec {
    long long value = 1;
    std::string param;  // non-empty: the exponent is this parameter (coefficient +1)

    bool symbolic() const { return !param.empty(); }
};

struct BundleExpr {
    enum class Kind { Symbol, Pow, Dual, Tensor, Sum, Sym, Wedge };

    Kind kind;
    char symbol = 0;        // Symbol: one of Q M N R K E W(=Omega) O
    long long o_twist = 0;  // Symbol 'O': the twist k of O(k)
    int arity = 0;          // Sym / Wedge
    ExponentSpec exp;       // Pow
    std::vector<ExprPtr> children;

    static ExprPtr make_symbol(char s, long long twist = 0) {
        auto e = std::make_shared<BundleExpr>();
        e->kind = Kind::Symbol;
        e->symbol = s;
        e->o_twist = twist;
        return e;
    }
    static ExprPtr make_pow(ExprPtr base, ExponentSpec x) {
        auto e = std::make_shared<BundleExpr>();
        e->kind = Kind::Pow;
        e->exp = std::move(x);
        e->children = {std::move(base)};
        return e;
    }
    static ExprPtr make_dual(ExprPtr c) {
        auto e = std::make_shared<BundleExpr>();
        e->kind = Kind::Dual;
        e->children = {std::move(c)};
        return e;
    }
    static ExprPtr make_tensor(std::vector<ExprPtr> cs) {
        if (cs.size() == 1) return cs[0];
        auto e = std::make_shared<BundleExpr>();
        e->kind = Kind::Tensor;
        e->children = std::move(cs);
        return e;
    }
    static ExprPtr make_sum(std::vector<ExprPtr> cs) {
        auto e = std::make_shared<BundleExpr>();
        e->kind = Kind::Sum;
        e->children = std::move(cs);
        return e;
    }
    static ExprPtr make_sym(int k, ExprPtr c) {
        auto e = std::make_shared<BundleExpr>();
        e->kind = Kind::Sym;
        e->arity = k;
        e->children = {std::move(c)};
        return e;
    }
    static ExprPtr make_wedge(int k, ExprPtr c) {
        auto e = std::make_shared<BundleExpr>();
        e->kind = Kind::Wedge;
        e->arity = k;
        e->children = {std::move(c)};
        return e;
    }
};

inline std::string expr_str(const ExprPtr& e) {
    switch (e->kind) {
        case BundleExpr::Kind::Symbol:
            if (e->symbol == 'O') return "O(" + std::to_string(e->o_twist) + ")";
            if (e->symbol == 'W') return "Omega";
            return std::string(1, e->symbol);
        case BundleExpr::Kind::Pow: {
            std::string x = e->exp.symbolic() ? e->exp.param : std::to_string(e->exp.value);
            return expr_str(e->children[0]) + "^" + x;
        }
        case BundleExpr::Kind::Dual:
            return "Dual(" + expr_str(e->children[0]) + ")";
        case BundleExpr::Kind::Sym:
            return "Sym" + std::to_string(e->arity) + "(" + expr_str(e->children[0]) + ")";
        case BundleExpr::Kind::Wedge:
            return "Wedge" + std::to_string(e->arity) + "(" + expr_str(e->children[0]) + ")";
        case BundleExpr::Kind::Tensor: {
            std::string s;
            for (size_t i = 0; i < e->children.size(); ++i) {
                if (i) s += "*";
                const auto& c = e->children[i];
                bool paren = c->kind == BundleExpr::Kind::Tensor || c->kind == BundleExpr::Kind::Sum;
                s += paren ? "(" + expr_str(c) + ")" : expr_str(c);
            }
            return s;
        }
        case BundleExpr::Kind::Sum: {
            std::string s = "(";
            for (size_t i = 0; i < e->children.size(); ++i) {
                if (i) s += "+";
                s += expr_str(e->children[i]);
            }
            return s + ")";
        }
    }
    return "?";
}

namespace detail {

class BundleParser {
public:
    explicit BundleParser(const std::string& text) : s_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    ExprPtr expr() {
        std::vector<ExprPtr> factors{term()};
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                factors.push_back(term());
            } else {
                break;
            }
        }
        return BundleExpr::make_tensor(std::move(factors));
    }

    ExprPtr term() {
        ExprPtr a = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            ExponentSpec x;
            if (std::isalpha(static_cast<unsigned char>(peek()))) {
                x.param = ident();
            } else {
                x.value = integer();
            }
            return BundleExpr::make_pow(std::move(a), std::move(x));
        }
        return a;
    }

    ExprPtr atom() {
        skip_ws();
        size_t here = pos_;
        if (peek() == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected a bundle atom");
        std::string name = ident();
        if (name == "Sym" || name == "Wedge") {
            long long k = integer();
            if (k < 0) fail("Sym/Wedge arity must be non-negative");
            expect('(');
            ExprPtr c = expr();
            expect(')');
            return name == "Sym" ? BundleExpr::make_sym(static_cast<int>(k), c)
                                 : BundleExpr::make_wedge(static_cast<int>(k), c);
        }
        // SymN(...) written without a break, e.g. "Sym3(Q)": handled above since
        // ident() stops at digits; "Dual" next.
        if (name == "Dual") {
            expect('(');
            ExprPtr c = expr();
            expect(')');
            return BundleExpr::make_dual(c);
        }
        if (name == "Omega") return BundleExpr::make_symbol('W');
        if (name == "O") {
            expect('(');
            long long k = integer();
            expect(')');
            return BundleExpr::make_symbol('O', k);
        }
        if (name.size() == 1 && std::string("QMNRKE").find(name[0]) != std::string::npos)
            return BundleExpr::make_symbol(name[0]);
        pos_ = here;
        fail("unknown symbol '" + name + "'");
        return nullptr;
    }

    std::string ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected identifier");
        return s_.substr(start, pos_ - start);
    }

    long long integer() {
        skip_ws();
        size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
            fail("expected integer");
        return std::stoll(s_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_bundle(const std::string& text) { return detail::BundleParser(text).parse(); }

// ---------------------------------------------------------------------------
// Characters.

struct SymbolError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Character of a tautological symbol on a space; unknown combinations throw.
inline Laurent symbol_character(const Space& sp, char sym, long long o_twist) {
    const int r = sp.total_rank();
    auto var = [&](int i, int p = 1) {
        Exponent e(static_cast<size_t>(r), 0);
        e[static_cast<size_t>(i)] = p;
        return Laurent::monomial(r, std::move(e));
    };
    auto block_sum = [&](int off, int size) {
        Laurent f = Laurent::zero(r);
        for (int i = 0; i < size; ++i) f += var(off + i);
        return f;
    };
    switch (sp.kind) {
        case SpaceKind::Projective:
            switch (sym) {
                case 'O': return var(0, static_cast<int>(o_twist));
                case 'K': return block_sum(1, sp.n);
                case 'W': return block_sum(1, sp.n) * var(0, -1);  // Omega = K(-1)
                default: throw SymbolError(std::string("symbol '") + sym + "' not defined on " + sp.id());
            }
        case SpaceKind::Grassmann:
            switch (sym) {
                case 'Q': return var(0) + var(1);
                case 'M': return block_sum(2, sp.n - 2);
                case 'E': return sym_power(var(0) + var(1), 3).dual();
                case 'W': return (var(0) + var(1)).dual() * block_sum(2, sp.n - 2);
                default: throw SymbolError(std::string("symbol '") + sym + "' not defined on " + sp.id());
            }
        case SpaceKind::Incidence:
            switch (sym) {
                case 'R': return var(0);
                case 'N': return var(1);
                case 'Q': return var(0) + var(1);
                case 'M': return block_sum(2, sp.n - 2);
                case 'E': return sym_power(var(0) + var(1), 3).dual();
                case 'K': return var(1) + block_sum(2, sp.n - 2);  // pullback of K on P^{n-1}
                default: throw SymbolError(std::string("symbol '") + sym + "' not defined on " + sp.id());
            }
    }
    throw SymbolError("bad space");
}

// Symbols whose weight filtration is a genuine extension on the space: their
// graded pieces bound cohomology from above but need not compute it.
inline bool extension_symbol(const Space& sp, char sym) {
    if (sp.kind != SpaceKind::Incidence) return false;
    return sym == 'Q' || sym == 'E' || sym == 'K';
}

using ParamValues = std::map<std::string, long long>;

inline Laurent character(const ExprPtr& e, const Space& sp, const ParamValues& params = {}) {
    switch (e->kind) {
        case BundleExpr::Kind::Symbol:
            return symbol_character(sp, e->symbol, e->o_twist);
        case BundleExpr::Kind::Dual:
            return character(e->children[0], sp, params).dual();
        case BundleExpr::Kind::Sym:
            return sym_power(character(e->children[0], sp, params), e->arity);
        case BundleExpr::Kind::Wedge:
            return wedge_power(character(e->children[0], sp, params), e->arity);
        case BundleExpr::Kind::Sum: {
            Laurent f = Laurent::zero(sp.total_rank());
            for (const auto& c : e->children) f += character(c, sp, params);
            return f;
        }
        case BundleExpr::Kind::Tensor: {
            Laurent f = Laurent::one(sp.total_rank());
            for (const auto& c : e->children) f *= character(c, sp, params);
            return f;
        }
        case BundleExpr::Kind::Pow: {
            long long k = e->exp.value;
            if (e->exp.symbolic()) {
                auto it = params.find(e->exp.param);
                if (it == params.end())
                    throw std::invalid_argument("unbound parameter '" + e->exp.param + "'");
                k = it->second;
            }
            Laurent base = character(e->children[0], sp, params);
            if (base.terms().size() == 1 && base.terms().begin()->second == 1) {
                // line bundle: any integer power
                Exponent x = base.terms().begin()->first;
                for (auto& v : x) v = static_cast<int>(v * k);
                return Laurent::monomial(sp.total_rank(), std::move(x));
            }
            if (k < 0) throw std::invalid_argument("negative power of a higher-rank bundle");
            Laurent f = Laurent::one(sp.total_rank());
            for (long long i = 0; i < k; ++i) f *= base;
            return f;
        }
    }
    throw std::logic_error("character: bad node");
}

inline bool uses_extension_symbol(const ExprPtr& e, const Space& sp) {
    if (e->kind == BundleExpr::Kind::Symbol) return extension_symbol(sp, e->symbol);
    for (const auto& c : e->children)
        if (uses_extension_symbol(c, sp)) return true;
    return false;
}

inline void collect_params(const ExprPtr& e, std::vector<std::string>& out) {
    if (e->kind == BundleExpr::Kind::Pow && e->exp.symbolic()) {
        if (std::find(out.begin(), out.end(), e->exp.param) == out.end()) out.push_back(e->exp.param);
    }
    for (const auto& c : e->children) collect_params(c, out);
}

// ---------------------------------------------------------------------------
// Decomposition into irreducible Levi weights of the associated graded.

struct GradedPieces {
    std::vector<std::pair<Weight, Int>> pieces;  // (block-dominant weight, multiplicity)
};

// Rank of the irreducible Levi module with highest weight w on sp.
inline Int piece_rank(const Space& sp, const Weight& w) {
    Int r(1);
    int off = 0;
    for (int b : sp.blocks()) {
        std::vector<long long> lam(w.e.begin() + off, w.e.begin() + off + b);
        r *= weyl_dimension(Weight(std::move(lam)));
        off += b;
    }
    return r;
}

// Character of the irreducible Levi module with highest weight w.
inline Laurent piece_character(const Space& sp, const Weight& w) {
    const int r = sp.total_rank();
    Laurent f = Laurent::one(r);
    int off = 0;
    for (int b : sp.blocks()) {
        std::vector<long long> lam(w.e.begin() + off, w.e.begin() + off + b);
        f *= schur_char(r, off, b, lam);
        off += b;
    }
    return f;
}

// Greedy highest-weight extraction: the lexicographically largest monomial of
// a genuine character is always a highest weight; peel and repeat.
inline std::vector<std::pair<Weight, Int>> decompose_character(Laurent chi, const Space& sp) {
    std::vector<std::pair<Weight, Int>> out;
    while (!chi.is_zero()) {
        auto it = std::prev(chi.terms().end());
        Weight w(std::vector<long long>(it->first.begin(), it->first.end()));
        Int mult = it->second;
        if (mult <= 0 || !block_dominant(sp, w))
            throw std::logic_error("decompose: character is not a genuine bundle character");
        chi -= piece_character(sp, w).scaled(mult);
        out.emplace_back(std::move(w), std::move(mult));
    }
    return out;
}

inline GradedPieces decompose(const ExprPtr& e, const Space& sp, const ParamValues& params = {}) {
    GradedPieces g;
    g.pieces = decompose_character(character(e, sp, params), sp);
    return g;
}

inline Int bundle_rank(const ExprPtr& e, const Space& sp, const ParamValues& params = {}) {
    return character(e, sp, params).rank();
}

}  // namespace fano
