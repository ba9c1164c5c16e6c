#pragma once

#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fano/bbw.hpp"
#include "fano/bundles.hpp"
#include "fano/cache.hpp"
#include "fano/chow.hpp"
#include "fano/cohom.hpp"
#include "fano/config.hpp"
#include "fano/lattice.hpp"
#include "fano/monodromy.hpp"
#include "fano/rng.hpp"
#include "fano/spaces.hpp"

namespace fano {

inline constexpr const char* kToolkitName = "fanolines";
inline constexpr const char* kToolkitVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Built-in verification suites with pinned expected values.  `verify`
// succeeds only if every ledger claim is Proven and every check below holds.

struct Check {
    std::string name;
    bool ok;
    std::string expected, got;
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    void expect(const std::string& what, bool cond, const std::string& want, const std::string& have) {
        checks.push_back({what, cond, want, have});
    }
    template <typename T, typename U>
    void expect_eq(const std::string& what, const T& want, const U& have) {
        std::ostringstream w, h;
        w << want;
        h << have;
        checks.push_back({what, w.str() == h.str(), w.str(), h.str()});
    }
};

inline SuiteResult suite_calibration() {
    SuiteResult s{"calibration", {}};
    CalibrationResult c = calibrate();
    s.expect("weight dictionary calibration", c.ok, "all six pins hold",
             c.ok ? "all six pins hold" : c.failures.front());
    s.expect("monodromy sign conventions", validate_conventions(), "order-3 composite", "checked");
    return s;
}

inline SuiteResult suite_koszul() {
    SuiteResult s{"koszul", {}};
    Space g26 = Space::grassmann(6), g25 = Space::grassmann(5);
    ExprPtr sym3 = parse_bundle("Sym3(Q)");
    ExprPtr O = parse_bundle("Wedge0(Q)");  // the trivial bundle
    ExprPtr omega = parse_bundle("Omega");

    KoszulResult f4 = koszul_cohomology(g26, sym3, O);
    s.expect_eq("fano-cubic4 h^0(O)", Int(1), f4.table.dim(0));
    s.expect_eq("fano-cubic4 h^1(O)", Int(0), f4.table.dim(1));
    s.expect_eq("fano-cubic4 h^2(O)", Int(1), f4.table.dim(2));
    s.expect_eq("fano-cubic4 h^3(O)", Int(0), f4.table.dim(3));
    s.expect_eq("fano-cubic4 h^4(O) [derived]", Int(1), f4.table.dim(4));
    s.expect_eq("fano-cubic4 chi(O) [derived]", Int(3), f4.table.euler());
    s.expect("fano-cubic4 status", f4.exact, "exact", f4.exact ? "exact" : "bounds-only");

    KoszulResult f4o = koszul_cohomology(g26, sym3, omega);
    s.expect_eq("fano-cubic4 h^0(Omega^1 restricted)", Int(0), f4o.table.dim(0));

    KoszulResult f3 = koszul_cohomology(g25, sym3, O);
    s.expect_eq("fano-cubic3 h^0(O)", Int(1), f3.table.dim(0));
    s.expect_eq("fano-cubic3 h^1(O)", Int(5), f3.table.dim(1));
    s.expect("fano-cubic3 status", f3.exact, "exact", f3.exact ? "exact" : "bounds-only");
    return s;
}

inline SuiteResult suite_chow() {
    SuiteResult s{"chow", {}};
    s.expect_eq("lines on a cubic surface", Int(27),
                integrate(chern(parse_bundle("Sym3(Q)"), Space::grassmann(4))[4], Space::grassmann(4)));
    s.expect_eq("chi_top Fano scheme, G(2,4)", Int(27), chi_top_fano(Space::grassmann(4)));
    s.expect_eq("chi_top Fano surface, G(2,5)", Int(27), chi_top_fano(Space::grassmann(5)));
    s.expect_eq("chi_top Fano fourfold, G(2,6) [derived]", Int(324), chi_top_fano(Space::grassmann(6)));

    // Betti chain of the Fano surface: b1 from h^{0,1}, b2 from chi_top
    KoszulResult f3 = koszul_cohomology(Space::grassmann(5), parse_bundle("Sym3(Q)"),
                                        parse_bundle("Wedge0(Q)"));
    Int h01 = f3.table.dim(1);
    Int b1 = 2 * h01;
    Int chi = chi_top_fano(Space::grassmann(5));
    Int b2 = chi - 2 + 2 * b1;
    s.expect_eq("fano surface b1", Int(10), b1);
    s.expect_eq("fano surface b2", Int(45), b2);
    s.expect_eq("lefschetz alternating sum", Int(27), Int(1) - b1 + b2 - b1 + Int(1));
    s.expect_eq("riemann-roch h^0(O(1)) on the (2,3) surface", Int(5), rr_surface(6, 2));
    return s;
}

inline SuiteResult suite_serre(unsigned long long seed) {
    SuiteResult s{"serre-duality", {}};
    Space gamma = Space::incidence(6);
    Rng rng(seed ^ 0x5e77eull);
    int bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
        long long t = rng.int_in(-10, 10), sv = rng.int_in(-10, 10);
        Weight L{t, sv, 0, 0, 0, 0};
        Weight dual{-7 - t, -5 - sv, 0, 0, 0, 0};  // omega (x) L^{-1}
        CohomTable a = line_cohomology(gamma, L), b = line_cohomology(gamma, dual);
        for (int i = 0; i <= 9; ++i)
            if (a.dim(i) != b.dim(9 - i)) ++bad;
    }
    s.expect_eq("500 random line bundles: h^i(L) = h^{9-i}(omega (x) L^v)", 0, bad);
    return s;
}

inline SuiteResult suite_bott() {
    SuiteResult s{"bott", {}};
    int bad = 0;
    Space p5 = Space::projective(5);
    for (int p = 0; p <= 5; ++p)
        for (int k = -12; k <= 12; ++k) {
            CohomTable closed = bott_formula(5, p, k);
            std::vector<long long> w{k - p};
            for (int i = 0; i < 5; ++i) w.push_back(i < p ? 1 : 0);
            CohomTable bbw = line_cohomology(p5, Weight(std::move(w)));
            if (!(closed == bbw)) ++bad;
        }
    s.expect_eq("Omega^p(k) grid p in [0,5], k in [-12,12]", 0, bad);
    return s;
}

// random unimodular Gram + primitive sublattice, used by the glue suite
inline bool random_glue_instance(Rng& rng, IntLattice& L_out, IMat& sub_out) {
    int n = static_cast<int>(rng.int_in(2, 4));
    IMat g0(static_cast<size_t>(n), static_cast<size_t>(n));
    if (rng.below(2) == 0) {
        for (int i = 0; i < n; ++i) g0(static_cast<size_t>(i), static_cast<size_t>(i)) = 1;
    } else {
        // hyperbolic plane padded by +-1 squares
        g0(0, 1) = g0(1, 0) = 1;
        for (int i = 2; i < n; ++i)
            g0(static_cast<size_t>(i), static_cast<size_t>(i)) = rng.below(2) ? 1 : -1;
    }
    // random unimodular base change by shear moves
    IMat t = IMat::identity(static_cast<size_t>(n));
    for (int moves = 0; moves < 6; ++moves) {
        size_t i = rng.below(static_cast<uint64_t>(n)), j = rng.below(static_cast<uint64_t>(n));
        if (i == j) continue;
        Int f(rng.int_in(-2, 2));
        for (size_t c = 0; c < static_cast<size_t>(n); ++c) t(i, c) += f * t(j, c);
    }
    IMat gram = t * g0 * t.transpose();
    IntLattice L(gram);

    int k = static_cast<int>(rng.int_in(1, n - 1));
    IMat raw(static_cast<size_t>(k), static_cast<size_t>(n));
    for (size_t i = 0; i < raw.rows; ++i)
        for (size_t j = 0; j < raw.cols; ++j) raw(i, j) = Int(rng.int_in(-3, 3));
    // saturate: rows of V spanning the same rational span
    SnfResult s = smith_normal_form(raw);
    size_t rank = 0;
    for (size_t i = 0; i < std::min(s.d.rows, s.d.cols); ++i)
        if (s.d(i, i) != 0) ++rank;
    if (rank != static_cast<size_t>(k)) return false;
    IMat vinv = unimodular_inverse(s.v);
    IMat sub(static_cast<size_t>(k), static_cast<size_t>(n));
    for (size_t i = 0; i < sub.rows; ++i)
        for (size_t j = 0; j < sub.cols; ++j) sub(i, j) = vinv(i, j);
    // need a nondegenerate sublattice
    if (det(sub * gram * sub.transpose()) == 0) return false;
    L_out = L;
    sub_out = sub;
    return true;
}

inline SuiteResult suite_lattice(unsigned long long seed, const ClassifyOptions& opts) {
    SuiteResult s{"lattice", {}};

    s.expect_eq("neg_id_test (3)", false, neg_id_test(IntLattice::from({{3}})));
    bool neg_all = true, excl_all = true;
    for (long long n = 2; n <= 10; ++n) {
        neg_all = neg_all && !neg_id_test(IntLattice::from({{3, 0}, {0, 2 * n}}));
        excl_all = excl_all && exclude_order_two({IMat::from({{3, 0}, {0, 2 * n}}), 0}).excluded;
    }
    s.expect("neg_id_test (3)+(2n), n in [2,10]", neg_all, "Id != -Id throughout", neg_all ? "ok" : "fail");
    s.expect("order-two excluded on (3)+(2n), n in [2,10]", excl_all, "excluded", excl_all ? "ok" : "fail");
    s.expect("order-two excluded on (3)", exclude_order_two({IMat::from({{3}}), 0}).excluded, "excluded",
             "checked");

    Rng rng(seed ^ 0x1a77ull);
    int done = 0, good = 0;
    while (done < 200) {
        IntLattice L(IMat::identity(1));
        IMat sub;
        if (!random_glue_instance(rng, L, sub)) continue;
        ++done;
        if (glue_verify(L, sub).ok) ++good;
    }
    s.expect_eq("glue lemma on 200 seeded primitive sublattices", 200, good);

    PhiClassification c1 = classify_aut(1, opts);
    PhiClassification c2 = classify_aut(2, opts);
    auto set_str = [](const std::set<long long>& x) {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (long long v : x) {
            if (!first) os << ',';
            first = false;
            os << v;
        }
        os << '}';
        return os.str();
    };
    if (opts.order_two_exclusion && opts.external_exclusions) {
        s.expect_eq("classify_aut(1) final", std::string("{1,3}"), set_str(c1.final_set));
        s.expect_eq("classify_aut(2) final", std::string("{1}"), set_str(c2.final_set));
    }
    s.expect_eq("classify_aut(1) flagged extras", std::string("4 6"), [&] {
        std::ostringstream os;
        for (size_t i = 0; i < c1.flagged_extras.size(); ++i) {
            if (i) os << ' ';
            os << c1.flagged_extras[i];
        }
        return os.str();
    }());
    bool ext_tagged = false;
    for (const auto& e : c1.exclusions)
        if (e.m == 46 && e.reason == "external-citation") ext_tagged = true;
    if (opts.external_exclusions)
        s.expect("removal of 46 tagged external-citation", ext_tagged, "tagged", ext_tagged ? "tagged" : "missing");
    return s;
}

inline SuiteResult suite_monodromy(unsigned long long seed) {
    SuiteResult s{"monodromy", {}};
    s.expect("sign conventions / order three", validate_conventions(), "(T1 T2)^3 = Id", "checked");

    LocalMonodromy r = local_monodromy();
    auto [vw, vw2] = eigenbasis(r);
    auto apply = [&](const CycVec& v) {
        return CycVec{Cyclo(r.m[0][0]) * v[0] + Cyclo(r.m[0][1]) * v[1],
                      Cyclo(r.m[1][0]) * v[0] + Cyclo(r.m[1][1]) * v[1]};
    };
    bool ew = apply(vw) == CycVec{Cyclo::omega() * vw[0], Cyclo::omega() * vw[1]};
    bool ew2 = apply(vw2) == CycVec{Cyclo::omega_sq() * vw2[0], Cyclo::omega_sq() * vw2[1]};
    s.expect("eigenvalues are the primitive cube roots", ew && ew2, "r v = w v exactly", "checked");

    bool dims_ok = true, closures_ok = true;
    Rng rng(seed ^ 0x310b41ull);
    for (int m = 1; m <= 8; ++m) {
        GlobalRep rep = build_global(m);
        for (const CycMat& g : generators(rep))
            if (!preserves_form(rep, g)) dims_ok = false;
        auto subs = decompose_rep(rep);
        if (subs.size() != 2 || subs[0].size() != static_cast<size_t>(m) ||
            subs[1].size() != static_cast<size_t>(m))
            dims_ok = false;
        CycSpan hw(rep.dim()), hw2(rep.dim());
        for (const auto& v : subs[0]) hw.insert(v);
        for (const auto& v : subs[1]) hw2.insert(v);
        for (int trial = 0; trial < 125; ++trial) {
            CycVec v = random_vector(rng, rep.dim());
            CycSpan closure = invariant_closure(rep, v);
            bool contains_w = true, contains_w2 = true;
            for (const auto& b : hw.basis)
                if (!closure.contains(b)) contains_w = false;
            for (const auto& b : hw2.basis)
                if (!closure.contains(b)) contains_w2 = false;
            if (!contains_w && !contains_w2) closures_ok = false;
        }
    }
    s.expect("two invariant m-dimensional eigenspace families, m in [1,8]", dims_ok,
             "exactly two, isometric generators", dims_ok ? "ok" : "fail");
    s.expect("1000 seeded closures contain H_w or H_{w^2}", closures_ok, "all 1000", closures_ok ? "ok" : "fail");
    return s;
}

// ---------------------------------------------------------------------------
// Full run.

struct Report {
    nlohmann::json j;
    bool ok = false;
};

inline nlohmann::json claim_json(const VanishClaim& c, const ClaimResult& r, bool normalize) {
    nlohmann::json out;
    out["id"] = r.id;
    out["space"] = c.space.id();
    out["bundle"] = c.expr_text;
    out["degrees"] = c.degrees.str();
    out["expect"] = c.expect.vanish ? "vanish" : ("dim:" + c.expect.dimension.str());
    out["ref"] = c.ref;
    if (!c.params.empty()) {
        nlohmann::json p = nlohmann::json::object();
        for (const auto& [k, iv] : c.params) p[k] = iv.str();
        out["params"] = p;
    }
    if (r.verdict) {
        out["verdict"] = r.verdict->str();
        if (r.verdict->witness) out["witness"] = r.verdict->witness->str();
    } else {
        out["verdict"] = "error";
        out["error"] = r.error;
    }
    if (!normalize) out["micros"] = r.micros;
    return out;
}

inline Report run_verify(const RunConfig& cfg) {
    Report rep;
    rep.j["toolkit"] = {{"name", kToolkitName}, {"version", kToolkitVersion}};
    rep.j["config"] = {{"seed", cfg.seed},
                       {"jobs", cfg.jobs},
                       {"external_exclusions", cfg.external_exclusions},
                       {"order_two_exclusion", cfg.order_two_exclusion}};

    if (cfg.cache) cache_load(cfg.cache_file);

    bool ok = true;
    size_t proven = 0, total = 0;
    nlohmann::json claims = nlohmann::json::array();
    for (const auto& path : cfg.ledgers) {
        std::vector<VanishClaim> ledger = load_ledger(path);
        std::vector<ClaimResult> results = verify_ledger(ledger, cfg.jobs);
        for (size_t i = 0; i < ledger.size(); ++i) {
            nlohmann::json cj = claim_json(ledger[i], results[i], cfg.normalize);
            cj["file"] = path;
            claims.push_back(cj);
            ++total;
            bool good = results[i].verdict && results[i].verdict->kind == Verdict::Kind::Proven;
            if (good) ++proven;
            ok = ok && good;
        }
    }
    rep.j["claims"] = claims;

    ClassifyOptions copts{cfg.order_two_exclusion, cfg.external_exclusions};
    std::vector<SuiteResult> suites;
    suites.push_back(suite_calibration());
    suites.push_back(suite_koszul());
    suites.push_back(suite_chow());
    suites.push_back(suite_serre(cfg.seed));
    suites.push_back(suite_bott());
    suites.push_back(suite_lattice(cfg.seed, copts));
    suites.push_back(suite_monodromy(cfg.seed));

    nlohmann::json sj = nlohmann::json::object();
    size_t suites_passed = 0;
    for (const auto& s : suites) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : s.checks)
            checks.push_back({{"name", c.name}, {"ok", c.ok}, {"expected", c.expected}, {"got", c.got}});
        sj[s.name] = {{"ok", s.ok()}, {"checks", checks}};
        if (s.ok()) ++suites_passed;
        ok = ok && s.ok();
    }
    rep.j["suites"] = sj;

    // self-contained module summaries
    {
        nlohmann::json summaries;
        auto koszul_block = [](const Space& sp) {
            KoszulResult r = koszul_cohomology(sp, parse_bundle("Sym3(Q)"), parse_bundle("Wedge0(Q)"));
            nlohmann::json h = nlohmann::json::object();
            for (const auto& [d, v] : r.table.dims) h["h0" + std::to_string(d)] = v.str();
            return nlohmann::json{{"hodge_h0q", h},
                                  {"chi_O", r.table.euler().str()},
                                  {"status", r.exact ? "exact" : "bounds-only"}};
        };
        summaries["hodge"] = {{"fano-cubic4", koszul_block(Space::grassmann(6))},
                              {"fano-cubic3", koszul_block(Space::grassmann(5))}};
        summaries["euler"] = {{"G24", chi_top_fano(Space::grassmann(4)).str()},
                              {"G25", chi_top_fano(Space::grassmann(5)).str()},
                              {"G26", chi_top_fano(Space::grassmann(6)).str()}};
        auto trace = [&](int rank) {
            PhiClassification c = classify_aut(rank, copts);
            nlohmann::json ex = nlohmann::json::array();
            for (const auto& e : c.exclusions)
                ex.push_back({{"m", e.m}, {"reason", e.reason}, {"detail", e.detail}});
            return nlohmann::json{
                {"rank_t", c.rank_t},
                {"allowed_phi", c.allowed_phi},
                {"phi_preimage", std::vector<long long>(c.phi_preimage.begin(), c.phi_preimage.end())},
                {"exclusions", ex},
                {"final", std::vector<long long>(c.final_set.begin(), c.final_set.end())},
                {"flagged_extras", c.flagged_extras},
                {"sigma_character", c.sigma_character}};
        };
        summaries["classification"] = {{"rank_mp_1", trace(1)}, {"rank_mp_2", trace(2)}};
        summaries["monodromy"] = {{"points_checked", "1..8"},
                                  {"closure_trials", 1000},
                                  {"invariant_subspaces_per_rep", 2}};
        rep.j["summaries"] = summaries;
    }
    rep.j["summary"] = {{"claims_total", total},
                        {"claims_proven", proven},
                        {"suites_total", suites.size()},
                        {"suites_passed", suites_passed},
                        {"ok", ok}};
    rep.ok = ok;

    if (cfg.cache) cache_save(cfg.cache_file);
    return rep;
}

inline std::string report_markdown(const Report& rep) {
    std::ostringstream md;
    md << "# " << kToolkitName << " verification report\n\n";
    const auto& sum = rep.j["summary"];
    md << "- claims proven: " << sum["claims_proven"] << " / " << sum["claims_total"] << "\n";
    md << "- suites passed: " << sum["suites_passed"] << " / " << sum["suites_total"] << "\n";
    md << "- overall: " << (rep.ok ? "PASS" : "FAIL") << "\n\n";

    md << "## Vanishing ledger\n\n";
    md << "| claim | space | bundle | params | degrees | expect | verdict | ref |\n";
    md << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& c : rep.j["claims"]) {
        std::string params;
        if (c.contains("params")) {
            for (auto& [k, v] : c["params"].items()) {
                if (!params.empty()) params += ", ";
                params += k + " in " + v.get<std::string>();
            }
        }
        md << "| " << c["id"].get<std::string>() << " | " << c["space"].get<std::string>() << " | `"
           << c["bundle"].get<std::string>() << "` | " << params << " | "
           << c["degrees"].get<std::string>() << " | " << c["expect"].get<std::string>() << " | "
           << c["verdict"].get<std::string>() << " | " << c["ref"].get<std::string>() << " |\n";
    }
    md << "\n## Suites\n\n";
    for (auto& [name, s] : rep.j["suites"].items()) {
        md << "### " << name << (s["ok"].get<bool>() ? " - PASS" : " - FAIL") << "\n\n";
        for (const auto& c : s["checks"])
            md << "- " << (c["ok"].get<bool>() ? "[x] " : "[ ] ") << c["name"].get<std::string>()
               << " (expected " << c["expected"].get<std::string>() << ", got "
               << c["got"].get<std::string>() << ")\n";
        md << "\n";
    }
    return md.str();
}

}  // namespace fano
