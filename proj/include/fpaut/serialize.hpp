#ifndef FPAUT_SERIALIZE_HPP
#define FPAUT_SERIALIZE_HPP

#include <json.hpp>

#include "fpaut/automorphism.hpp"
#include "fpaut/covering.hpp"
#include "fpaut/embedding.hpp"
#include "fpaut/group.hpp"
#include "fpaut/relations.hpp"
#include "fpaut/restriction.hpp"

namespace fpaut {

using json = nlohmann::ordered_json;

/// Words travel as [[position, payload], ...] with an integer payload on
/// free positions and an integer vector on finite ones.
json word_to_json(const FreeProduct& G, const Word& w);
Word word_from_json(const FreeProduct& G, const json& j);

json images_to_json(const FreeProduct& G, const GeneratorImages& I);

json genaut_to_json(const FreeProduct& G, const GenAut& g);
GenAut genaut_from_json(const FreeProduct& G, const json& j);
json autword_to_json(const FreeProduct& G, const AutWord& A);
AutWord autword_from_json(const FreeProduct& G, const json& j);

json relation_report_to_json(const FreeProduct& G, const RelationReport& r);
json free_aut_to_json(const FreeGroupAut& f);
json splitting_report_to_json(const FreeProduct& G, const SplittingReport& r);
json cover_summary_to_json(const FreeProduct& G, const SubgroupSpec& N,
                           const CoverGraph& C);

json group_to_json(const FreeProduct& G);
json subgroup_to_json(const SubgroupSpec& N);

}  // namespace fpaut

#endif
