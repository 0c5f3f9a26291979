// JSON encoding of library results (nlohmann/json).
//
// Lattices and forms are encoded as strings in the form grammar; embeddings
// as arrays of integer coordinate arrays.

#ifndef ESCALATOR_SERIALIZE_HPP
#define ESCALATOR_SERIALIZE_HPP

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "escalator/criterion.hpp"
#include "escalator/escalation.hpp"
#include "escalator/grammar.hpp"
#include "escalator/representation.hpp"

namespace escalator {

using Json = nlohmann::ordered_json;

inline Json to_json(const GramLattice& l) { return format_form(l); }
inline Json to_json(const BinaryForm& f) { return format_form(f); }

inline Json to_json(const Embedding& e) {
  Json arr = Json::array();
  for (const auto& v : e.vectors) arr.push_back(v);
  return arr;
}

inline Json to_json(const std::optional<Embedding>& e) { return e ? to_json(*e) : Json(nullptr); }

inline Json to_json(const FormSet& s) {
  Json arr = Json::array();
  for (const auto& f : s) arr.push_back(to_json(f));
  return arr;
}

inline Json to_json(const MemberVerdict& v) {
  return {{"form", to_json(v.form)}, {"present", v.present()}, {"embedding", to_json(v.embedding)}};
}

inline Json to_json(const std::vector<MemberVerdict>& vs) {
  Json arr = Json::array();
  for (const auto& v : vs) arr.push_back(to_json(v));
  return arr;
}

inline Json to_json(const WitnessReport& r) {
  return {{"witness", to_json(r.witness)},
          {"target", to_json(r.target)},
          {"members", to_json(r.members)},
          {"member_verdicts", to_json(r.member_verdicts)},
          {"truancy_verdict", r.truancy_verdict},
          {"target_embedding", to_json(r.target_embedding)},
          {"recipe", recipe_name(r.recipe)},
          {"pass", r.pass}};
}

inline Json to_json(const SearchOutcome& s) {
  return {{"caps", {{"rank_cap", s.caps.rank_cap}, {"entry_cap", s.caps.entry_cap}}},
          {"found", s.found ? to_json(*s.found) : Json(nullptr)},
          {"exhausted", !s.found.has_value()},
          {"candidates_scanned", s.candidates},
          {"classes_scanned", s.classes}};
}

inline Json to_json(const Truant& t) {
  if (const Int* k = std::get_if<Int>(&t)) return *k;
  return to_json(std::get<BinaryForm>(t));
}

inline Json to_json(const EscalationNode& n) {
  Json kids = Json::array();
  for (const auto& c : n.children) kids.push_back(to_json(c));
  return {{"lattice", to_json(n.lattice)},
          {"depth", n.depth},
          {"truant", n.truant ? to_json(*n.truant) : Json(nullptr)},
          {"truncated", n.truncated},
          {"exhausted", n.exhausted},
          {"children", kids}};
}

// Decoding -------------------------------------------------------------------

inline Embedding embedding_from_json(const Json& j) {
  Embedding e;
  for (const auto& v : j) e.vectors.push_back(v.get<Vec>());
  return e;
}

inline std::optional<Embedding> optional_embedding_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return embedding_from_json(j);
}

inline Recipe recipe_from_name(const std::string& name) {
  for (Recipe r : {Recipe::DropOneOne, Recipe::DropTwoThree, Recipe::DropThreeThreeMirror, Recipe::DropTwoOneE,
                   Recipe::External, Recipe::Search})
    if (recipe_name(r) == name) return r;
  throw Error("unknown recipe tag: " + name);
}

inline WitnessReport witness_report_from_json(const Json& j) {
  WitnessReport r;
  r.witness = parse_form(j.at("witness").get<std::string>());
  r.target = parse_binary(j.at("target").get<std::string>());
  for (const auto& m : j.at("members")) r.members.insert(parse_binary(m.get<std::string>()));
  for (const auto& v : j.at("member_verdicts"))
    r.member_verdicts.push_back(
        {parse_binary(v.at("form").get<std::string>()), optional_embedding_from_json(v.at("embedding"))});
  r.truancy_verdict = j.at("truancy_verdict").get<bool>();
  r.target_embedding = optional_embedding_from_json(j.at("target_embedding"));
  r.recipe = recipe_from_name(j.at("recipe").get<std::string>());
  r.pass = j.at("pass").get<bool>();
  return r;
}

}  // namespace escalator

#endif  // ESCALATOR_SERIALIZE_HPP
