// fanolines: exact-arithmetic verification toolkit for the cohomology,
// lattice and monodromy computations behind the Fano variety of lines of a
// cubic fourfold.  Subcommands:
//
//   verify     run the vanishing ledgers plus all built-in suites
//   cohom      cohomology table of a bundle expression
//   hodge      Hodge-number block of a Fano variety of lines
//   euler      topological Euler characteristic of a Fano scheme of lines
//   lattice    discriminant groups and the automorphism-order classifier
//   monodromy  local/global monodromy decomposition report
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fano/bbw.hpp"
#include "fano/bundles.hpp"
#include "fano/chow.hpp"
#include "fano/cohom.hpp"
#include "fano/config.hpp"
#include "fano/lattice.hpp"
#include "fano/monodromy.hpp"
#include "fano/runner.hpp"

namespace {

int cmd_verify(const fano::RunConfig& cfg, const std::string& report_path_in) {
    fano::Report rep = fano::run_verify(cfg);
    std::string payload =
        cfg.format == "md" ? fano::report_markdown(rep) : rep.j.dump(2) + "\n";
    std::string report_path = report_path_in;
    if (!report_path.empty() && report_path != "-" &&
        std::filesystem::path(report_path).is_relative() && cfg.output_dir != ".")
        report_path = (std::filesystem::path(cfg.output_dir) / report_path).string();
    if (report_path.empty() || report_path == "-") {
        std::cout << payload;
    } else {
        std::filesystem::path p(report_path);
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        std::ofstream out(p);
        if (!out) {
            std::cerr << "cannot write report to " << report_path << "\n";
            return 1;
        }
        out << payload;
        std::cout << (rep.ok ? "PASS" : "FAIL") << " ("
                  << rep.j["summary"]["claims_proven"] << "/" << rep.j["summary"]["claims_total"]
                  << " claims proven, " << rep.j["summary"]["suites_passed"] << "/"
                  << rep.j["summary"]["suites_total"] << " suites passed); report written to "
                  << report_path << "\n";
    }
    return rep.ok ? 0 : 1;
}

int cmd_cohom(const std::string& space_id, const std::string& bundle,
              const std::vector<std::string>& params, int degree, bool has_degree) {
    fano::Space sp = fano::parse_space(space_id);
    fano::ExprPtr expr = fano::parse_bundle(bundle);
    fano::ParamValues values;
    for (const auto& p : params) {
        size_t eq = p.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--param expects name=value");
        values[p.substr(0, eq)] = std::stoll(p.substr(eq + 1));
    }
    fano::CohomTable t = fano::cohomology_table(expr, sp, values);
    nlohmann::json j;
    j["space"] = sp.id();
    j["bundle"] = bundle;
    j["status"] = t.status == fano::CohomTable::Status::Exact ? "exact" : "upper-bound";
    nlohmann::json dims = nlohmann::json::object();
    for (const auto& [d, v] : t.dims) dims[std::to_string(d)] = v.str();
    j["dims"] = dims;
    j["euler"] = fano::euler_char(expr, sp, values).str();
    if (has_degree) j["requested_degree"] = {{"i", degree}, {"dim", t.dim(degree).str()}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_hodge(const std::string& variety) {
    fano::Space sp = variety == "fano-cubic4" ? fano::Space::grassmann(6)
                     : variety == "fano-cubic3"
                         ? fano::Space::grassmann(5)
                         : throw std::invalid_argument("--variety fano-cubic4|fano-cubic3");
    fano::ExprPtr sym3 = fano::parse_bundle("Sym3(Q)");
    fano::KoszulResult structure = fano::koszul_cohomology(sp, sym3, fano::parse_bundle("Wedge0(Q)"));
    nlohmann::json j;
    j["variety"] = variety;
    j["space"] = sp.id();
    nlohmann::json h = nlohmann::json::object();
    for (const auto& [d, v] : structure.table.dims) h["h0" + std::to_string(d)] = v.str();
    j["hodge_h0q"] = h;
    j["status"] = structure.exact ? "exact" : "bounds-only";
    j["chi_O"] = structure.table.euler().str();
    if (variety == "fano-cubic4") {
        fano::KoszulResult omega =
            fano::koszul_cohomology(sp, sym3, fano::parse_bundle("Omega"));
        j["h0_Omega1"] = omega.table.dim(0).str();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_euler(const std::string& space_id) {
    fano::Space sp = fano::parse_space(space_id);
    nlohmann::json j;
    j["space"] = sp.id();
    j["chi_top_fano_scheme"] = fano::chi_top_fano(sp).str();
    std::cout << j.dump(2) << "\n";
    return 0;
}

nlohmann::json classification_json(const fano::PhiClassification& c) {
    nlohmann::json j;
    j["rank_mp"] = c.rank_mp;
    j["rank_t"] = c.rank_t;
    j["allowed_phi"] = c.allowed_phi;
    j["phi_preimage"] = std::vector<long long>(c.phi_preimage.begin(), c.phi_preimage.end());
    nlohmann::json ex = nlohmann::json::array();
    for (const auto& e : c.exclusions)
        ex.push_back({{"m", e.m}, {"reason", e.reason}, {"detail", e.detail}});
    j["exclusions"] = ex;
    j["final"] = std::vector<long long>(c.final_set.begin(), c.final_set.end());
    j["flagged_extras"] = c.flagged_extras;
    j["sigma_character"] = c.sigma_character;
    return j;
}

int cmd_lattice_classify(int rank_mp, bool no_external, bool no_exclusions) {
    fano::ClassifyOptions opts;
    if (no_external) opts.external_exclusions = false;
    if (no_exclusions) {
        opts.external_exclusions = false;
        opts.order_two_exclusion = false;
    }
    std::cout << classification_json(fano::classify_aut(rank_mp, opts)).dump(2) << "\n";
    return 0;
}

int cmd_lattice_disc(const std::string& gram_json) {
    nlohmann::json g = nlohmann::json::parse(gram_json);
    std::vector<std::vector<long long>> rows;
    for (const auto& r : g) rows.push_back(r.get<std::vector<long long>>());
    fano::DiscriminantGroup d = fano::discriminant_group(fano::IntLattice::from(rows));
    nlohmann::json j;
    j["group"] = d.str();
    std::vector<std::string> factors;
    for (const auto& f : d.invariant_factors) factors.push_back(f.str());
    j["invariant_factors"] = factors;
    j["order"] = d.order().str();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_monodromy(int points, int trials, unsigned long long seed) {
    if (!fano::validate_conventions()) {
        std::cerr << "monodromy sign conventions failed the startup self-test\n";
        return 1;
    }
    fano::GlobalRep rep = fano::build_global(points);
    auto subs = fano::decompose_rep(rep);
    fano::Rng rng(seed);
    int contained = 0;
    fano::CycSpan hw(rep.dim()), hw2(rep.dim());
    for (const auto& v : subs[0]) hw.insert(v);
    for (const auto& v : subs[1]) hw2.insert(v);
    for (int t = 0; t < trials; ++t) {
        fano::CycVec v = fano::random_vector(rng, rep.dim());
        fano::CycSpan closure = fano::invariant_closure(rep, v);
        bool cw = true, cw2 = true;
        for (const auto& b : hw.basis)
            if (!closure.contains(b)) cw = false;
        for (const auto& b : hw2.basis)
            if (!closure.contains(b)) cw2 = false;
        if (cw || cw2) ++contained;
    }
    nlohmann::json j;
    j["points"] = points;
    j["dim"] = 2 * points;
    j["invariant_subspaces"] = {{"count", subs.size()},
                                {"dims", {subs[0].size(), subs[1].size()}}};
    j["local_order_three"] = true;
    j["trials"] = trials;
    j["closures_containing_eigenspace"] = contained;
    j["seed"] = seed;
    j["ok"] = contained == trials;
    std::cout << j.dump(2) << "\n";
    return contained == trials ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for Fano varieties of lines on cubic hypersurfaces"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run ledgers and built-in suites");
    std::vector<std::string> ledgers;
    std::string report_path, format = "json", config_path;
    int jobs = 1;
    unsigned long long seed = 20240601ull;
    bool normalize = false, no_external = false, cache = false;
    std::string cache_file;
    verify->add_option("--ledger", ledgers, "ledger file(s)");
    verify->add_option("--jobs", jobs, "parallel claim evaluation");
    verify->add_option("--seed", seed, "seed for the randomized suites");
    verify->add_option("--report", report_path, "report output path ('-' for stdout)");
    verify->add_option("--format", format, "json|md")->check(CLI::IsMember({"json", "md"}));
    verify->add_option("--config", config_path, "key = value configuration file");
    verify->add_flag("--normalize", normalize, "omit timings (byte-stable reports)");
    verify->add_flag("--no-external-exclusions", no_external, "keep externally-cited orders");
    verify->add_flag("--cache", cache, "persist the cohomology memo on disk");
    verify->add_option("--cache-file", cache_file, "cache path (JSON lines)");

    // cohom
    auto* cohom = app.add_subcommand("cohom", "cohomology of a bundle expression");
    std::string space_id = "Gamma6", bundle_text;
    std::vector<std::string> params;
    int degree = 0;
    cohom->add_option("--space", space_id, "P5|G26|G25|G24|Gamma6")->required();
    cohom->add_option("--bundle", bundle_text, "bundle expression")->required();
    cohom->add_option("--param", params, "parameter assignment name=value");
    auto* degree_opt = cohom->add_option("--degree", degree, "report one degree");

    // hodge
    auto* hodge = app.add_subcommand("hodge", "Hodge-number block of a Fano variety of lines");
    std::string variety;
    hodge->add_option("--variety", variety, "fano-cubic4|fano-cubic3")->required();

    // euler
    auto* euler = app.add_subcommand("euler", "Euler characteristic of the Fano scheme of lines");
    std::string euler_space;
    euler->add_option("--space", euler_space, "G24|G25|G26")->required();

    // lattice
    auto* lattice = app.add_subcommand("lattice", "lattice computations");
    lattice->require_subcommand(1);
    auto* classify = lattice->add_subcommand("classify", "automorphism-order classifier");
    int rank_mp = 1;
    bool cls_no_external = false, cls_no_exclusions = false;
    classify->add_option("--rank-mp", rank_mp, "middle Picard rank (1 or 2)")->required();
    classify->add_flag("--no-external-exclusions", cls_no_external,
                       "skip externally-cited removals (23, 46)");
    classify->add_flag("--no-exclusions", cls_no_exclusions, "skip every removal");
    auto* disc = lattice->add_subcommand("disc", "discriminant group of a Gram matrix");
    std::string gram_json;
    disc->add_option("--gram", gram_json, "Gram matrix as a JSON array of rows")->required();

    // monodromy
    auto* mono = app.add_subcommand("monodromy", "monodromy decomposition report");
    int points = 1, trials = 100;
    unsigned long long mono_seed = 20240601ull;
    mono->add_option("--points", points, "number of singular points m")->required();
    mono->add_option("--trials", trials, "random closure trials");
    mono->add_option("--seed", mono_seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            fano::RunConfig cfg;
            if (!config_path.empty()) cfg = fano::load_config(config_path);
            if (!ledgers.empty()) cfg.ledgers = ledgers;
            if (verify->count("--jobs")) cfg.jobs = jobs;
            if (verify->count("--seed")) cfg.seed = seed;
            if (verify->count("--format")) cfg.format = format;
            if (normalize) cfg.normalize = true;
            if (no_external) cfg.external_exclusions = false;
            if (cache) cfg.cache = true;
            if (!cache_file.empty()) cfg.cache_file = cache_file;
            if (cfg.ledgers.empty()) {
                cfg.ledgers = {"data/vanishing_incidence.ledger", "data/restriction_chains.ledger"};
            }
            return cmd_verify(cfg, report_path);
        }
        if (cohom->parsed())
            return cmd_cohom(space_id, bundle_text, params, degree, degree_opt->count() > 0);
        if (hodge->parsed()) return cmd_hodge(variety);
        if (euler->parsed()) return cmd_euler(euler_space);
        if (classify->parsed()) return cmd_lattice_classify(rank_mp, cls_no_external, cls_no_exclusions);
        if (disc->parsed()) return cmd_lattice_disc(gram_json);
        if (mono->parsed()) return cmd_monodromy(points, trials, mono_seed);
    } catch (const fano::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fano::ClaimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
