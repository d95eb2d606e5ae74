#include "fpaut/cli.hpp"

#include <fstream>
#include <map>
#include <numeric>

namespace fpaut::cli {

Config parse_config(const json& j) {
    Config cfg;
    cfg.group.free_rank = j.at("free_rank").get<int>();
    for (const json& f : j.at("factors"))
        cfg.group.factors.push_back(FactorSpec{f.get<std::vector<long long>>()});
    const json& exps = j.at("exponents");
    if (exps.contains("uniform"))
        cfg.subgroup = SubgroupSpec::uniform(exps.at("uniform").get<long long>());
    else if (exps.contains("per_factor"))
        cfg.subgroup =
            SubgroupSpec::per_factor(exps.at("per_factor").get<std::vector<long long>>());
    else
        throw std::invalid_argument("exponents must be \"uniform\" or \"per_factor\"");
    if (j.contains("options")) {
        const json& o = j.at("options");
        cfg.options.max_probe_len = o.value("max_probe_len", 2);
        cfg.options.probe_generator_cap = o.value("probe_generator_cap", std::size_t{0});
        if (o.contains("free_exponents"))
            cfg.options.sampling.free_exponents =
                o.at("free_exponents").get<std::vector<long long>>();
    }
    FreeProduct G(cfg.group);  // validates the group
    G.check_subgroup_spec(cfg.subgroup);
    return cfg;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j = json::parse(in);
    return parse_config(j);
}

namespace {

json suite_summary(const std::vector<RelationReport>& reports) {
    std::map<std::string, std::map<std::string, long long>> counts;
    for (const RelationReport& r : reports) {
        auto& fam = counts[r.family];
        ++fam["instances"];
        if (r.holds_exact) ++fam["exact"];
        if (r.conjugator && !r.holds_exact) ++fam["mod_inner"];
        if (r.conjugator_in_n && *r.conjugator_in_n) ++fam["conjugator_in_N"];
    }
    json out = json::object();
    for (auto& [fam, c] : counts) {
        json rec;
        for (auto& [k, v] : c) rec[k] = v;
        out[fam] = std::move(rec);
    }
    return out;
}

}  // namespace

CmdResult cmd_relations(const Config& cfg, const std::string& level) {
    CmdResult res;
    if (level != "exact" && level != "inn" && level != "innN") {
        res.exit_code = kUsageError;
        res.message = "unknown level: " + level;
        return res;
    }
    FreeProduct G(cfg.group);
    RelationSuite suite = enumerate_relations(G, cfg.subgroup, cfg.options.sampling);

    if (level == "innN") {
        long long k = G.positions() - 1;
        for (int pos = 1; pos <= G.positions(); ++pos)
            if (std::gcd(cfg.subgroup.exponent_at(pos), k) != 1) {
                res.exit_code = kUsageError;
                res.message = "exponent not coprime to n-1";
                return res;
            }
    }

    std::vector<RelationReport> reports;
    bool ok = true;
    json items = json::array();
    for (const RelationInstance& inst : suite.instances) {
        if (level == "exact" && inst.level != RelationLevel::Exact) continue;
        RelationReport rep = verify_relation(G, inst, cfg.subgroup);
        if (inst.level == RelationLevel::Exact) {
            ok = ok && rep.holds_exact;
        } else {
            ok = ok && rep.conjugator.has_value() &&
                 (!rep.matches_predicted || *rep.matches_predicted);
        }
        items.push_back(relation_report_to_json(G, rep));
        reports.push_back(std::move(rep));
    }
    res.output["group"] = group_to_json(G);
    res.output["N"] = subgroup_to_json(cfg.subgroup);
    res.output["level"] = level;
    res.output["skipped_families"] = suite.skipped_families;
    res.output["reports"] = std::move(items);
    res.output["summary"] = suite_summary(reports);

    if (level == "innN") {
        SplittingReport split = verify_splitting(G, cfg.subgroup, suite.instances);
        res.output["splitting"] = splitting_report_to_json(G, split);
        ok = ok && split.all_passed();
    }
    res.exit_code = ok ? kOk : kVerificationFailed;
    return res;
}

CmdResult cmd_cover(const Config& cfg, bool emit_dot) {
    CmdResult res;
    FreeProduct G(cfg.group);
    CoverGraph C(G, cfg.subgroup);
    res.output = cover_summary_to_json(G, cfg.subgroup, C);
    if (emit_dot) {
        if (is_free_cover(G, cfg.subgroup)) {
            FreeBasis B(C);
            res.dot = cover_to_dot(B);
        } else {
            // no spanning-tree styling without a free action; plain edges
            std::string dot = "graph cover {\n";
            for (const CoverVertex& v : C.vertices()) dot += "  \"" + v.name + "\";\n";
            for (const CoverEdge& e : C.edges())
                dot += "  \"" + C.vertices()[static_cast<std::size_t>(e.src)].name +
                       "\" -- \"" + C.vertices()[static_cast<std::size_t>(e.dst)].name +
                       "\";\n";
            dot += "}\n";
            res.dot = std::move(dot);
        }
    }
    return res;
}

CmdResult cmd_embed(const Config& cfg) {
    CmdResult res;
    FreeProduct G(cfg.group);
    const SubgroupSpec& N = cfg.subgroup;
    long long k = G.positions() - 1;
    for (int pos = 1; pos <= G.positions(); ++pos)
        if (std::gcd(N.exponent_at(pos), k) != 1) {
            res.exit_code = kUsageError;
            res.message = "exponent not coprime to n-1";
            return res;
        }
    if (!is_free_cover(G, N)) {
        res.exit_code = kUsageError;
        res.message = "N does not act freely (some invariant factor does not divide r)";
        return res;
    }
    if (G.positions() < 2) {
        res.exit_code = kUsageError;
        res.message = "embedding needs n >= 2";
        return res;
    }

    CoverGraph C(G, N);
    FreeBasis B(C);
    LiftParams P = make_lift_params(G, N);
    RelationSuite suite = enumerate_relations(G, N, cfg.options.sampling);
    SplittingReport split = verify_splitting(G, N, suite.instances);

    res.output["group"] = group_to_json(G);
    res.output["N"] = subgroup_to_json(N);
    res.output["m"] = B.size();
    json basis = json::array();
    for (const Word& w : B.words()) basis.push_back(word_to_json(G, w));
    res.output["basis"] = std::move(basis);

    bool ok = split.all_passed();
    json gens = json::array();
    for (const GenAut& g : standard_generators(G)) {
        FreeGroupAut f = embed_generator(G, N, g, B, P);
        ok = ok && f.verified;
        json rec;
        rec["generator"] = genaut_to_json(G, g);
        rec["image"] = free_aut_to_json(f);
        gens.push_back(std::move(rec));
    }
    res.output["generator_images"] = std::move(gens);
    res.output["splitting"] = splitting_report_to_json(G, split);

    InjectivityReport probe =
        injectivity_probe(G, B, cfg.options.max_probe_len, cfg.options.probe_generator_cap);
    json pj;
    pj["skipped"] = probe.skipped;
    if (probe.skipped) pj["reason"] = probe.skip_reason;
    pj["words_checked"] = probe.words_checked;
    pj["violations"] = probe.violations.size();
    res.output["injectivity_probe"] = std::move(pj);
    ok = ok && probe.violations.empty();

    res.exit_code = ok ? kOk : kVerificationFailed;
    return res;
}

CmdResult cmd_wn(int n) {
    CmdResult res;
    if (n < 2 || n % 2 != 0) {
        res.exit_code = kUsageError;
        res.message = "n-1 even: hypothesis of the corollary fails";
        return res;
    }
    WnReport rep = out_wn_report(n);
    GroupSpec spec;
    spec.free_rank = 0;
    spec.factors.assign(static_cast<std::size_t>(n), FactorSpec{{2}});
    FreeProduct G(spec);

    res.output["n"] = rep.n;
    res.output["m"] = rep.expected_rank;
    res.output["rank"] = rep.rank;
    res.output["rank_ok"] = rep.rank_ok;
    res.output["splitting"] = splitting_report_to_json(G, rep.splitting);
    json gens = json::array();
    for (const auto& [name, f] : rep.generator_images) {
        json rec;
        rec["generator"] = name;
        rec["image"] = free_aut_to_json(f);
        gens.push_back(std::move(rec));
    }
    res.output["generator_images"] = std::move(gens);
    res.exit_code = rep.all_passed() ? kOk : kVerificationFailed;
    return res;
}

CmdResult cmd_w3f4(int max_len) {
    CmdResult res;
    if (max_len < 0) {
        res.exit_code = kUsageError;
        res.message = "max length must be non-negative";
        return res;
    }
    W3Report rep = w3_into_out_f4(max_len);
    res.output["squares_ok"] = rep.squares_ok;
    res.output["equivariance_ok"] = rep.equivariance_ok;
    res.output["out0_relations_ok"] = rep.out0_relations_ok;
    res.output["probes_checked"] = rep.probes_checked;
    res.output["probe_violations"] = rep.probe_violations;
    json gens = json::array();
    for (const auto& [name, f] : rep.generator_images) {
        json rec;
        rec["generator"] = name;
        rec["image"] = free_aut_to_json(f);
        gens.push_back(std::move(rec));
    }
    res.output["generator_images"] = std::move(gens);
    res.exit_code = rep.all_passed() ? kOk : kVerificationFailed;
    return res;
}

}  // namespace fpaut::cli
