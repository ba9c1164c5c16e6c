#pragma once

#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include "fano/bbw.hpp"
#include "fano/bundles.hpp"
#include "fano/spaces.hpp"

namespace fano {

// ---------------------------------------------------------------------------
// Assembled cohomology of a bundle expression.
//
// The table is the sum over the irreducible pieces of the associated graded.
// On spaces where every legal symbol factors through the Levi (P^n, G(2,n),
// and {N,R,M}-expressions on Gamma) the expression is a direct sum of its
// pieces and the table is exact.  When a filtered symbol (Q, E, K on Gamma)
// is involved, spectral-sequence differentials connect adjacent total
// degrees, so the table is exact only when the support has no two degrees at
// distance one; otherwise it is an upper bound (still sound for vanishing).

inline CohomTable cohomology_table(const ExprPtr& e, const Space& sp, const ParamValues& params = {}) {
    GradedPieces g = decompose(e, sp, params);
    CohomTable t;
    for (const auto& [w, m] : g.pieces) {
        CohomTable piece = line_cohomology(sp, w);
        for (const auto& [d, v] : piece.dims) t.dims[d] += v * m;
    }
    for (auto it = t.dims.begin(); it != t.dims.end();)
        it = (it->second == 0) ? t.dims.erase(it) : std::next(it);
    if (uses_extension_symbol(e, sp)) {
        for (auto it = t.dims.begin(); it != t.dims.end(); ++it) {
            auto nx = std::next(it);
            if (nx != t.dims.end() && nx->first == it->first + 1) {
                t.status = CohomTable::Status::UpperBound;
                break;
            }
        }
    }
    return t;
}

// Euler characteristic; exact for every expression since chi is additive
// across filtrations.
inline Int euler_char(const ExprPtr& e, const Space& sp, const ParamValues& params = {}) {
    GradedPieces g = decompose(e, sp, params);
    Int chi(0);
    for (const auto& [w, m] : g.pieces) chi += m * line_cohomology(sp, w).euler();
    return chi;
}

// ---------------------------------------------------------------------------
// Claims and verdicts.

struct ClaimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeSet {
    enum class Mode { All, List, Complement };
    Mode mode = Mode::All;
    std::set<int> degrees;

    std::vector<int> resolve(int dim) const {
        std::vector<int> out;
        switch (mode) {
            case Mode::All:
                for (int i = 0; i <= dim; ++i) out.push_back(i);
                break;
            case Mode::List:
                out.assign(degrees.begin(), degrees.end());
                break;
            case Mode::Complement:
                for (int i = 0; i <= dim; ++i)
                    if (!degrees.count(i)) out.push_back(i);
                break;
        }
        return out;
    }

    std::string str() const {
        if (mode == Mode::All) return "all";
        std::ostringstream os;
        if (mode == Mode::Complement) os << "not{";
        bool first = true;
        for (int d : degrees) {
            if (!first) os << ',';
            first = false;
            os << d;
        }
        if (mode == Mode::Complement) os << '}';
        return os.str();
    }
};

struct Expectation {
    bool vanish = true;
    Int dimension;  // meaningful when !vanish
};

struct VanishClaim {
    std::string id;
    Space space = Space::incidence(6);
    ExprPtr expr;
    std::string expr_text;
    std::map<std::string, IntInterval> params;
    DegreeSet degrees;
    Expectation expect;
    std::string ref;
};

struct Witness {
    std::map<std::string, long long> params;
    Weight piece;
    int degree = 0;
    Int dimension;

    std::string str() const {
        std::ostringstream os;
        os << "piece " << piece.str() << " in degree " << degree << " has dimension "
           << dimension.str();
        if (!params.empty()) {
            os << " at ";
            bool first = true;
            for (const auto& [k, v] : params) {
                if (!first) os << ", ";
                first = false;
                os << k << '=' << v;
            }
        }
        return os.str();
    }
};

struct Verdict {
    enum class Kind { Proven, Refuted, Inconclusive };
    Kind kind = Kind::Proven;
    std::optional<Witness> witness;

    static const char* name(Kind k) {
        switch (k) {
            case Kind::Proven: return "proven";
            case Kind::Refuted: return "refuted";
            case Kind::Inconclusive: return "inconclusive";
        }
        return "?";
    }
    std::string str() const { return name(kind); }
};

namespace detail {

// Per-parameter uniform weight shift contributed by Pow(atom, param) factors.
// Parameters may only sit on rank-one atoms inside a tensor chain.
inline void line_shifts(const ExprPtr& e, const Space& sp, int mult,
                        std::map<std::string, std::vector<long long>>& out) {
    switch (e->kind) {
        case BundleExpr::Kind::Symbol:
            return;
        case BundleExpr::Kind::Tensor:
            for (const auto& c : e->children) line_shifts(c, sp, mult, out);
            return;
        case BundleExpr::Kind::Dual:
            line_shifts(e->children[0], sp, -mult, out);
            return;
        case BundleExpr::Kind::Pow: {
            const auto& base = e->children[0];
            std::vector<std::string> inner;
            collect_params(base, inner);
            if (!inner.empty()) throw ClaimError("parameter nested under a power");
            if (e->exp.symbolic()) {
                Laurent chi = character(base, sp, {});
                if (chi.terms().size() != 1 || chi.terms().begin()->second != 1)
                    throw ClaimError("parameter exponent on a bundle of rank > 1");
                const Exponent& x = chi.terms().begin()->first;
                auto& shift = out.try_emplace(e->exp.param,
                                              std::vector<long long>(x.size(), 0)).first->second;
                for (size_t i = 0; i < x.size(); ++i) shift[i] += static_cast<long long>(mult) * x[i];
            }
            return;
        }
        case BundleExpr::Kind::Sym:
        case BundleExpr::Kind::Wedge:
        case BundleExpr::Kind::Sum: {
            std::vector<std::string> inner;
            for (const auto& c : e->children) collect_params(c, inner);
            if (!inner.empty()) throw ClaimError("parameter nested under Sym/Wedge/Sum");
            return;
        }
    }
}

}  // namespace detail

// The vanishing prover.  Domination is one-sided: a vanishing associated
// graded forces H^i = 0, a nonzero graded piece only yields Inconclusive.
// Refuted is reserved for dimension expectations contradicted by an exact
// table.
inline Verdict vanish_check(const VanishClaim& claim) {
    const Space& sp = claim.space;
    const int dim = sp.dim();

    std::vector<std::string> used;
    collect_params(claim.expr, used);
    for (const auto& p : used) {
        auto it = claim.params.find(p);
        if (it == claim.params.end())
            throw ClaimError("claim " + claim.id + ": parameter '" + p + "' has no domain");
        if (it->second.empty())
            throw ClaimError("claim " + claim.id + ": parameter '" + p + "' has empty domain");
    }

    std::vector<int> degrees = claim.degrees.resolve(dim);
    if (degrees.empty()) return Verdict{Verdict::Kind::Proven, std::nullopt};  // vacuous

    std::vector<std::pair<std::string, IntInterval>> bounded;
    std::optional<std::pair<std::string, IntInterval>> unbounded;
    for (const auto& p : used) {
        const IntInterval& dom = claim.params.at(p);
        if (dom.bounded()) {
            bounded.emplace_back(p, dom);
        } else {
            if (unbounded) throw ClaimError("claim " + claim.id + ": more than one unbounded parameter");
            unbounded = {p, dom};
        }
    }

    // graded pieces of the core (all parameters at 0) plus per-parameter shifts
    ParamValues zeros;
    for (const auto& p : used) zeros[p] = 0;
    GradedPieces core = decompose(claim.expr, sp, zeros);
    std::map<std::string, std::vector<long long>> shifts;
    detail::line_shifts(claim.expr, sp, 1, shifts);

    if (!claim.expect.vanish) {
        // dimension expectation: require fully bounded parameters
        if (unbounded)
            throw ClaimError("claim " + claim.id + ": dimension expectation with unbounded parameter");
        if (degrees.size() != 1)
            throw ClaimError("claim " + claim.id + ": dimension expectation needs a single degree");
    }

    // enumerate bounded assignments
    std::vector<std::map<std::string, long long>> assignments{{}};
    for (const auto& [name, dom] : bounded) {
        std::vector<std::map<std::string, long long>> next;
        for (const auto& a : assignments)
            for (long long v = *dom.lo; v <= *dom.hi; ++v) {
                auto b = a;
                b[name] = v;
                next.push_back(std::move(b));
            }
        assignments = std::move(next);
    }

    for (const auto& assign : assignments) {
        // weight of each piece after the bounded shifts
        std::vector<Weight> base;
        base.reserve(core.pieces.size());
        std::vector<Int> mults;
        for (const auto& [w, m] : core.pieces) {
            std::vector<long long> v = w.e;
            for (const auto& [name, value] : assign) {
                auto it = shifts.find(name);
                if (it == shifts.end()) continue;
                for (size_t i = 0; i < v.size(); ++i) v[i] += it->second[i] * value;
            }
            base.emplace_back(std::move(v));
            mults.push_back(m);
        }

        if (!unbounded) {
            if (claim.expect.vanish) {
                for (size_t k = 0; k < base.size(); ++k) {
                    CohomTable t = line_cohomology(sp, base[k]);
                    for (int i : degrees)
                        if (t.dim(i) != 0) {
                            Witness w{assign, base[k], i, t.dim(i) * mults[k]};
                            return Verdict{Verdict::Kind::Inconclusive, w};
                        }
                }
            } else {
                ParamValues values(assign.begin(), assign.end());
                CohomTable total = cohomology_table(claim.expr, sp, values);
                int i = degrees[0];
                Int got = total.dim(i);
                if (total.status == CohomTable::Status::Exact) {
                    if (got != claim.expect.dimension)
                        return Verdict{Verdict::Kind::Refuted, Witness{assign, Weight{}, i, got}};
                } else {
                    return Verdict{Verdict::Kind::Inconclusive, Witness{assign, Weight{}, i, got}};
                }
            }
            continue;
        }

        // one unbounded parameter: symbolic breakpoint analysis per piece
        const auto& [pname, pdom] = *unbounded;
        auto shifted_coeff = shifts.count(pname) ? shifts.at(pname)
                                                 : std::vector<long long>(base.empty() ? 0 : base[0].size(), 0);
        for (size_t k = 0; k < base.size(); ++k) {
            std::vector<int> coeff(shifted_coeff.size());
            for (size_t i = 0; i < coeff.size(); ++i) {
                if (shifted_coeff[i] < -1 || shifted_coeff[i] > 1)
                    throw ClaimError("claim " + claim.id + ": non-affine (|coefficient| > 1) dependence");
                coeff[i] = static_cast<int>(shifted_coeff[i]);
            }
            ParamVerdict pv = symbolic_line_cohomology(sp, base[k], coeff, pdom);
            for (int i : degrees) {
                if (auto piece = pv.witness_for_degree(i)) {
                    auto wparams = assign;
                    wparams[pname] = piece->sample;
                    std::vector<long long> wv = base[k].e;
                    for (size_t j = 0; j < wv.size(); ++j) wv[j] += coeff[j] * piece->sample;
                    Weight ww{std::move(wv)};
                    Int d = line_cohomology(sp, ww).dim(i) * mults[k];
                    return Verdict{Verdict::Kind::Inconclusive, Witness{wparams, ww, i, d}};
                }
            }
        }
    }
    return Verdict{Verdict::Kind::Proven, std::nullopt};
}

// ---------------------------------------------------------------------------
// Koszul resolution of the zero locus of a regular section.
//
// For a rank-r section bundle S with E = Dual(S), the complex
//   Wedge^r E (x) C -> ... -> E (x) C -> C  resolves  C|_F .
// Term j contributes H^q(term_j) to H^{q-j}(F, C|_F); the antidiagonal sum is
// exact when the support pattern forbids every differential
// d_k : (j, q) -> (j - k, q - k + 1).

struct KoszulResult {
    CohomTable table;
    bool exact = false;
    // degree -> list of (term j, ambient degree q, dimension)
    std::map<int, std::vector<std::tuple<int, int, Int>>> contributions;
};

inline KoszulResult koszul_cohomology(const Space& sp, const ExprPtr& section, const ExprPtr& coeff) {
    long long r = to_ll(bundle_rank(section, sp));
    if (r > sp.dim()) throw std::invalid_argument("koszul_cohomology: section rank exceeds dim(space)");

    KoszulResult res;
    std::vector<std::pair<int, int>> support;
    bool terms_exact = true;
    for (int j = 0; j <= static_cast<int>(r); ++j) {
        ExprPtr term = BundleExpr::make_tensor(
            {BundleExpr::make_wedge(j, BundleExpr::make_dual(section)), coeff});
        CohomTable t = cohomology_table(term, sp);
        if (t.status != CohomTable::Status::Exact) terms_exact = false;
        for (const auto& [q, v] : t.dims) {
            support.emplace_back(j, q);
            res.table.dims[q - j] += v;
            res.contributions[q - j].emplace_back(j, q, v);
        }
    }
    for (auto it = res.table.dims.begin(); it != res.table.dims.end();)
        it = (it->second == 0) ? res.table.dims.erase(it) : std::next(it);

    bool no_differentials = true;
    for (const auto& [j1, q1] : support)
        for (const auto& [j2, q2] : support) {
            int k = j1 - j2;
            if (k >= 1 && q2 == q1 - k + 1) no_differentials = false;
        }
    res.exact = terms_exact && no_differentials;
    res.table.status = res.exact ? CohomTable::Status::Exact : CohomTable::Status::UpperBound;
    return res;
}

// ---------------------------------------------------------------------------
// Ledger files: one claim per line,
//   claim <id> | space=<id> | bundle=<expr> | params=<spec> | degrees=<spec>
//         | expect=<vanish|dim:d> | ref="<locator>"

namespace detail {

inline std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline IntInterval parse_interval(const std::string& text, const std::string& where) {
    std::string s = strip(text);
    if (s == "all") return IntInterval::all();
    if (s.size() > 4 && s.front() == '(' && s.back() == ')') {
        std::string body = strip(s.substr(1, s.size() - 2));
        if (body.rfind("<=", 0) == 0) return IntInterval::at_most(std::stoll(strip(body.substr(2))));
        if (body.rfind(">=", 0) == 0) return IntInterval::at_least(std::stoll(strip(body.substr(2))));
    }
    if (s.size() > 2 && s.front() == '[' && s.back() == ']') {
        std::string body = s.substr(1, s.size() - 2);
        size_t comma = body.find(',');
        if (comma != std::string::npos) {
            IntInterval iv = IntInterval::between(std::stoll(strip(body.substr(0, comma))),
                                                  std::stoll(strip(body.substr(comma + 1))));
            if (iv.empty()) throw ClaimError(where + ": empty parameter domain " + s);
            return iv;
        }
    }
    throw ClaimError(where + ": bad interval '" + s + "'");
}

}  // namespace detail

inline VanishClaim parse_claim_line(const std::string& line, const std::string& where) {
    using detail::strip;
    VanishClaim c;
    std::vector<std::string> fields;
    {
        std::stringstream ss(line);
        std::string piece;
        while (std::getline(ss, piece, '|')) fields.push_back(strip(piece));
    }
    if (fields.empty() || fields[0].rfind("claim", 0) != 0)
        throw ClaimError(where + ": line must start with 'claim <id>'");
    c.id = strip(fields[0].substr(5));
    if (c.id.empty()) throw ClaimError(where + ": missing claim id");

    bool have_space = false, have_bundle = false, have_expect = false;
    for (size_t i = 1; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        size_t eq = f.find('=');
        if (eq == std::string::npos) throw ClaimError(where + ": bad field '" + f + "'");
        std::string key = strip(f.substr(0, eq));
        std::string val = strip(f.substr(eq + 1));
        if (key == "space") {
            c.space = parse_space(val);
            have_space = true;
        } else if (key == "bundle") {
            c.expr_text = val;
            try {
                c.expr = parse_bundle(val);
            } catch (const ParseError& e) {
                throw ClaimError(where + ": " + e.what());
            }
            have_bundle = true;
        } else if (key == "params") {
            if (val == "none" || val == "-" || val.empty()) continue;
            // split on commas outside brackets ([lo,hi] carries one inside)
            std::vector<std::string> parts;
            int depth = 0;
            std::string cur;
            for (char ch : val) {
                if (ch == '[' || ch == '(') ++depth;
                if (ch == ']' || ch == ')') --depth;
                if (ch == ',' && depth == 0) {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            if (!strip(cur).empty()) parts.push_back(cur);
            for (std::string one : parts) {
                one = strip(one);
                size_t in = one.find(" in ");
                if (in == std::string::npos) throw ClaimError(where + ": bad param '" + one + "'");
                std::string name = strip(one.substr(0, in));
                c.params[name] = detail::parse_interval(one.substr(in + 4), where);
            }
        } else if (key == "degrees") {
            if (val == "all") {
                c.degrees.mode = DegreeSet::Mode::All;
            } else {
                std::string body = val;
                if (val.rfind("not{", 0) == 0 && val.back() == '}') {
                    c.degrees.mode = DegreeSet::Mode::Complement;
                    body = val.substr(4, val.size() - 5);
                } else {
                    c.degrees.mode = DegreeSet::Mode::List;
                }
                std::stringstream ds(body);
                std::string d;
                while (std::getline(ds, d, ',')) c.degrees.degrees.insert(std::stoi(strip(d)));
            }
        } else if (key == "expect") {
            if (val == "vanish") {
                c.expect.vanish = true;
            } else if (val.rfind("dim:", 0) == 0) {
                c.expect.vanish = false;
                c.expect.dimension = Int(val.substr(4));
            } else {
                throw ClaimError(where + ": bad expect '" + val + "'");
            }
            have_expect = true;
        } else if (key == "ref") {
            std::string v = val;
            if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
            c.ref = v;
        } else {
            throw ClaimError(where + ": unknown field '" + key + "'");
        }
    }
    if (!have_space || !have_bundle || !have_expect)
        throw ClaimError(where + ": claim needs space, bundle and expect fields");
    return c;
}

inline std::vector<VanishClaim> parse_ledger(std::istream& in, const std::string& filename) {
    std::vector<VanishClaim> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip(line);
        if (s.empty() || s[0] == '#') continue;
        out.push_back(parse_claim_line(s, filename + ":" + std::to_string(lineno)));
    }
    return out;
}

inline std::vector<VanishClaim> load_ledger(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ClaimError("cannot open ledger file: " + path);
    return parse_ledger(in, path);
}

// ---------------------------------------------------------------------------
// Batch verification: claims are independent; results are merged by input
// order so the aggregate is deterministic regardless of the thread count.

struct ClaimResult {
    std::string id;
    std::optional<Verdict> verdict;  // empty on error
    std::string error;
    long long micros = 0;
};

inline std::vector<ClaimResult> verify_ledger(const std::vector<VanishClaim>& claims, int jobs = 1) {
    std::vector<ClaimResult> results(claims.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= claims.size()) return;
            ClaimResult& r = results[k];
            r.id = claims[k].id;
            auto t0 = std::chrono::steady_clock::now();
            try {
                r.verdict = vanish_check(claims[k]);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
            auto t1 = std::chrono::steady_clock::now();
            r.micros = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

}  // namespace fano
