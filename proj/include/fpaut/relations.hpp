#ifndef FPAUT_RELATIONS_HPP
#define FPAUT_RELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fpaut/automorphism.hpp"
#include "fpaut/group.hpp"

namespace fpaut {

enum class RelationLevel { Exact, ModInn, ModInnN };

/// One instance of a presentation relation: lhs = rhs at the given level.
/// Families (1)-(23) hold exactly in Aut(G); family (0) holds modulo
/// Inn(G) with predicted witness gamma^{-1}.
struct RelationInstance {
    std::string family;  // "0" .. "23"
    std::string params;  // human-readable index/element tuple
    AutWord lhs;
    AutWord rhs;
    RelationLevel level = RelationLevel::Exact;
    std::optional<Word> predicted_conjugator;
};

struct RelationReport {
    std::string family;
    std::string params;
    bool holds_exact = false;
    std::optional<Word> conjugator;           // inner witness of lhs rhs^{-1}
    std::optional<bool> conjugator_in_n;
    std::optional<bool> matches_predicted;
};

/// Controls the element ranges of the enumeration.  Finite factors are
/// always exhausted; free letters contribute the listed exponents.
struct Sampling {
    std::vector<long long> free_exponents = {1, -1};
};

struct RelationSuite {
    std::vector<RelationInstance> instances;
    std::vector<std::string> skipped_families;  // need structure G lacks
};

/// Every Fuchs-Rabinovich relation instance admissible for G, plus the
/// Out(G) relation (0).  Families needing free letters are skipped (and
/// recorded) when d = 0; families needing permutations or nontrivial factor
/// automorphisms contribute nothing when those generators do not exist.
RelationSuite enumerate_relations(const FreeProduct& G, const SubgroupSpec& N,
                                  const Sampling& sampling = {});

/// A documented stock of Nielsen relations among the free-letter generators
/// rho_ij, lambda_ij, tau_i, omega_ij (family "12").  The list is not
/// normative: every member is checked extensionally like any other
/// instance, so the suite is self-verifying.  Empty when d < 2.
std::vector<RelationInstance> nielsen_relation_suite(const FreeProduct& G,
                                                     const Sampling& sampling = {});

RelationReport verify_relation(const FreeProduct& G, const RelationInstance& inst,
                               const SubgroupSpec& N);

}  // namespace fpaut

#endif
