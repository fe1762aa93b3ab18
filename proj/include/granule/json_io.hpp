// granule/json_io.hpp — stable JSON shapes for CLI output.
//
// Shapes (fields always present, null when absent):
//   Decision    {"verdict": "entailed"|"not_entailed", "vacuous": bool,
//                "proof": <proof>|null, "countermodel": <model>|null}
//   SatResult   {"verdict": "sat"|"unsat", "model": <model>|null,
//                "proof": <proof>|null}
//   Classify    {"vector": [tri, tri, tri], "relations": [name...]}
//   <proof>     {"rule": "...", "consequent": "..."|"FALSE", "children": [...]}
//               axiom leaves: {"rule": "axiom", "consequent": "..."}
//               TRUE leaves:  {"rule": "true", "consequent": "TRUE"}
//   <model>     {"mode": "...", "patterns": [[granule...], ...]}

#ifndef GRANULE_JSON_IO_HPP
#define GRANULE_JSON_IO_HPP

#include <json.hpp>

#include "engine.hpp"
#include "proof.hpp"
#include "semantics.hpp"

namespace granule {

inline nlohmann::json to_json(const ProofTree& t)
{
    nlohmann::json j;
    switch (t.kind()) {
    case ProofTree::Kind::Axiom:
        j["rule"] = "axiom";
        j["consequent"] = to_string(*t.consequent());
        return j;
    case ProofTree::Kind::True:
        j["rule"] = "true";
        j["consequent"] = "TRUE";
        return j;
    case ProofTree::Kind::Rule:
        break;
    }
    j["rule"] = to_string(t.rule_id());
    j["consequent"] = t.consequent() ? to_string(*t.consequent()) : "FALSE";
    nlohmann::json children = nlohmann::json::array();
    for (const auto& c : t.children())
        children.push_back(to_json(c));
    j["children"] = std::move(children);
    return j;
}

inline nlohmann::json to_json(const AtomModel& m)
{
    nlohmann::json patterns = nlohmann::json::array();
    for (const auto& p : m.inhabited()) {
        nlohmann::json members = nlohmann::json::array();
        if (p.bottom_flag())
            members.push_back(kBottomToken);
        for (const auto& g : p.named())
            members.push_back(g.name());
        if (p.top_flag())
            members.push_back(kTopToken);
        patterns.push_back(std::move(members));
    }
    return nlohmann::json{{"mode", to_string(m.mode())}, {"patterns", std::move(patterns)}};
}

inline nlohmann::json to_json(const Decision& d)
{
    nlohmann::json j;
    j["verdict"] = d.entailed ? "entailed" : "not_entailed";
    j["vacuous"] = d.vacuous;
    j["proof"] = d.proof ? to_json(*d.proof) : nlohmann::json(nullptr);
    j["countermodel"] = d.countermodel ? to_json(*d.countermodel) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json to_json(const SatResult& r)
{
    nlohmann::json j;
    j["verdict"] = r.satisfiable ? "sat" : "unsat";
    j["model"] = r.model ? to_json(*r.model) : nlohmann::json(nullptr);
    j["proof"] = r.proof ? to_json(*r.proof) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json classification_json(const StateVector& v)
{
    nlohmann::json relations = nlohmann::json::array();
    for (Rcc5Relation r : rcc5_classify(v))
        relations.push_back(to_string(r));
    return nlohmann::json{{"vector", {to_string(v.sub12), to_string(v.sub21), to_string(v.disj)}},
                          {"relations", std::move(relations)}};
}

} // namespace granule

#endif // GRANULE_JSON_IO_HPP
