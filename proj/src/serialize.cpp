#include "fpaut/serialize.hpp"

#include <numeric>
#include <stdexcept>

namespace fpaut {

json word_to_json(const FreeProduct& G, const Word& w) {
    json out = json::array();
    for (const Syllable& s : w.syllables) {
        if (G.is_free_position(s.pos))
            out.push_back(json::array({s.pos, s.payload[0]}));
        else
            out.push_back(json::array({s.pos, s.payload}));
    }
    return out;
}

Word word_from_json(const FreeProduct& G, const json& j) {
    std::vector<Syllable> raw;
    for (const json& item : j) {
        if (!item.is_array() || item.size() != 2)
            throw std::invalid_argument("syllable must be a [position, payload] pair");
        Syllable s;
        s.pos = item[0].get<int>();
        if (item[1].is_array())
            s.payload = item[1].get<std::vector<long long>>();
        else
            s.payload = {item[1].get<long long>()};
        raw.push_back(std::move(s));
    }
    Word w = G.normalize(raw);
    return w;
}

json images_to_json(const FreeProduct& G, const GeneratorImages& I) {
    json out;
    json free_part = json::array();
    for (const Word& w : I.free_images) free_part.push_back(word_to_json(G, w));
    json factor_part = json::array();
    for (const auto& gens : I.factor_images) {
        json block = json::array();
        for (const Word& w : gens) block.push_back(word_to_json(G, w));
        factor_part.push_back(std::move(block));
    }
    out["free"] = std::move(free_part);
    out["factors"] = std::move(factor_part);
    return out;
}

namespace {

const char* kind_name(GenAut::Kind k) {
    switch (k) {
        case GenAut::Kind::FactorAut: return "factor_aut";
        case GenAut::Kind::Permutation: return "permutation";
        case GenAut::Kind::DehnTwist: return "dehn_twist";
        case GenAut::Kind::RightTransvection: return "right_transvection";
        case GenAut::Kind::LeftTransvection: return "left_transvection";
        case GenAut::Kind::Reflection: return "reflection";
    }
    return "";
}

}  // namespace

json genaut_to_json(const FreeProduct& G, const GenAut& g) {
    json out;
    out["kind"] = kind_name(g.kind);
    out["i"] = g.i;
    switch (g.kind) {
        case GenAut::Kind::FactorAut:
            out["matrix"] = g.matrix;
            break;
        case GenAut::Kind::Permutation:
            out["j"] = g.j;
            break;
        case GenAut::Kind::DehnTwist:
        case GenAut::Kind::RightTransvection:
        case GenAut::Kind::LeftTransvection:
            out["j"] = g.j;
            out["gamma"] = word_to_json(G, Word{{g.gamma}});
            break;
        case GenAut::Kind::Reflection:
            break;
    }
    return out;
}

GenAut genaut_from_json(const FreeProduct& G, const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    int i = j.at("i").get<int>();
    if (kind == "factor_aut")
        return make_factor_aut(G, i, j.at("matrix").get<FactorMatrix>());
    if (kind == "permutation") return make_permutation(G, i, j.at("j").get<int>());
    if (kind == "reflection") return make_reflection(G, i);
    Word gamma = word_from_json(G, j.at("gamma"));
    int jj = j.at("j").get<int>();
    if (kind == "dehn_twist") return make_dehn_twist(G, i, jj, gamma);
    if (kind == "right_transvection") return make_right_transvection(G, i, jj, gamma);
    if (kind == "left_transvection") return make_left_transvection(G, i, jj, gamma);
    throw std::invalid_argument("unknown generator kind: " + kind);
}

json autword_to_json(const FreeProduct& G, const AutWord& A) {
    json out = json::array();
    for (const AutLetter& l : A.letters) {
        json rec = genaut_to_json(G, l.gen);
        rec["sign"] = l.sign;
        out.push_back(std::move(rec));
    }
    return out;
}

AutWord autword_from_json(const FreeProduct& G, const json& j) {
    AutWord A;
    for (const json& rec : j) {
        int sign = rec.value("sign", 1);
        if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
        A.letters.push_back(AutLetter{genaut_from_json(G, rec), sign});
    }
    return A;
}

json relation_report_to_json(const FreeProduct& G, const RelationReport& r) {
    json out;
    out["family"] = r.family;
    out["params"] = r.params;
    out["holds_exact"] = r.holds_exact;
    if (r.conjugator) out["conjugator"] = word_to_json(G, *r.conjugator);
    if (r.conjugator_in_n) out["conjugator_in_N"] = *r.conjugator_in_n;
    if (r.matches_predicted) out["matches_predicted"] = *r.matches_predicted;
    return out;
}

json free_aut_to_json(const FreeGroupAut& f) {
    json out;
    out["m"] = f.m;
    out["images"] = f.letter_images;
    out["verified"] = f.verified;
    return out;
}

json splitting_report_to_json(const FreeProduct& G, const SplittingReport& r) {
    json items = json::array();
    for (const SplittingItem& it : r.items) {
        json rec;
        rec["family"] = it.family;
        rec["params"] = it.params;
        rec["passed"] = it.passed;
        if (it.conjugator) rec["conjugator"] = word_to_json(G, *it.conjugator);
        if (it.matches_predicted) rec["matches_predicted"] = *it.matches_predicted;
        items.push_back(std::move(rec));
    }
    json out;
    out["instances"] = r.items.size();
    out["failures"] = r.failures;
    out["predicted_mismatches"] = r.predicted_mismatches;
    out["items"] = std::move(items);
    return out;
}

json cover_summary_to_json(const FreeProduct& G, const SubgroupSpec& N,
                           const CoverGraph& C) {
    json out;
    out["group"] = group_to_json(G);
    out["N"] = subgroup_to_json(N);
    out["quotient_order"] = C.quotient().order();
    out["vertices"] = C.vertices().size();
    out["edges"] = C.edges().size();
    bool fc = is_free_cover(G, N);
    out["free_cover"] = fc;
    out["contractible"] = is_contractible_cover(G, N);
    if (fc) {
        out["rank"] = cover_rank(C);
        FreeBasis B(C);
        json words = json::array();
        for (const Word& w : B.words()) words.push_back(word_to_json(G, w));
        out["basis"] = std::move(words);
    } else {
        // non-free: report the stabiliser labels r_i G_i per factor fibre
        json labels = json::array();
        for (int pos = G.free_rank() + 1; pos <= G.positions(); ++pos) {
            json rec;
            rec["position"] = pos;
            std::vector<long long> stab;
            for (long long m : G.factor(pos).invariant_factors) {
                long long g = std::gcd(N.exponent_at(pos), m);
                stab.push_back(m / g);  // order of r G_i component
            }
            rec["stabiliser_component_orders"] = stab;
            labels.push_back(std::move(rec));
        }
        out["vertex_labels"] = std::move(labels);
    }
    return out;
}

json group_to_json(const FreeProduct& G) {
    json out;
    out["free_rank"] = G.free_rank();
    json factors = json::array();
    for (const auto& f : G.spec().factors) factors.push_back(f.invariant_factors);
    out["factors"] = std::move(factors);
    return out;
}

json subgroup_to_json(const SubgroupSpec& N) {
    json out;
    if (N.mode == SubgroupSpec::Mode::Uniform)
        out["uniform"] = N.exponents[0];
    else
        out["per_factor"] = N.exponents;
    return out;
}

}  // namespace fpaut
