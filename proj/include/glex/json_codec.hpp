#pragma once

// JSON shapes shared by the HTTP server and the remote client.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glex/anaphora.hpp"
#include "glex/entry.hpp"
#include "glex/error.hpp"
#include "glex/hierarchy.hpp"

namespace glex::json {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw BadRequest(std::string("missing field '") + name + "'");
  return j.at(name);
}

inline std::string string_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) throw BadRequest(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

inline std::optional<Predicate> opt_predicate(const json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  if (!j.at(name).is_string())
    throw BadRequest(std::string("field '") + name + "' must be a predicate string");
  return parse_predicate(j.at(name).get<std::string>());
}

inline std::vector<TypedArg> arg_list(const json& j, const char* name) {
  std::vector<TypedArg> out;
  if (!j.contains(name) || j.at(name).is_null()) return out;
  if (!j.at(name).is_array())
    throw BadRequest(std::string("field '") + name + "' must be an array");
  for (const auto& a : j.at(name)) {
    if (!a.is_string()) throw BadRequest(std::string("'") + name + "' items must be strings");
    out.push_back(parse_typed_arg(a.get<std::string>()));
  }
  return out;
}

}  // namespace detail

inline json to_json(const EntryKey& k) { return {{"lemma", k.lemma}, {"sense", k.sense}}; }

inline EntryKey key_from_json(const json& j) {
  const json& s = detail::field(j, "sense");
  if (!s.is_number_integer()) throw BadRequest("field 'sense' must be an integer");
  return {detail::string_field(j, "lemma"), s.get<int>()};
}

inline json to_json(const LexicalEntry& e) {
  json j = {{"lemma", e.lemma},
            {"sense", e.sense},
            {"cat", e.cat},
            {"gender", std::string(to_string(e.gender))},
            {"elision", e.elision},
            {"lexicalType", e.lexical_type.str()}};
  j["args"] = json::array();
  for (const auto& a : e.args) j["args"].push_back(render_arg(a));
  j["events"] = json::array();
  for (const auto& a : e.events) j["events"].push_back(render_arg(a));

  const auto& q = e.qualia;
  json qj = json::object();
  if (q.formal) qj["formal"] = render_predicate(*q.formal);
  qj["const"] = json::array();
  for (const auto& p : q.constitutive) qj["const"].push_back(render_predicate(p));
  json telic = json::object();
  if (q.telic_state) telic["state"] = render_predicate(*q.telic_state);
  if (q.telic_trigger) telic["trigger"] = render_predicate(*q.telic_trigger);
  if (q.telic_result) telic["result"] = render_predicate(*q.telic_result);
  qj["telic"] = telic;
  if (q.agentive) qj["agentive"] = render_predicate(*q.agentive);
  j["qualia"] = qj;
  return j;
}

inline LexicalEntry entry_from_json(const json& j) {
  if (!j.is_object()) throw BadRequest("entry must be a JSON object");
  LexicalEntry e;
  EntryKey k = key_from_json(j);
  e.lemma = k.lemma;
  e.sense = k.sense;
  e.cat = detail::string_field(j, "cat");
  auto g = parse_gender(detail::string_field(j, "gender"));
  if (!g) throw BadRequest("gender must be m or f");
  e.gender = *g;
  if (j.contains("elision")) {
    if (!j.at("elision").is_boolean()) throw BadRequest("elision must be a boolean");
    e.elision = j.at("elision").get<bool>();
  }
  std::string type = detail::string_field(j, "lexicalType");
  if (!is_type_name(type)) throw BadRequest("invalid lexicalType '" + type + "'");
  e.lexical_type = TypeName(type);
  e.args = detail::arg_list(j, "args");
  e.events = detail::arg_list(j, "events");

  if (j.contains("qualia") && !j.at("qualia").is_null()) {
    const json& q = j.at("qualia");
    if (!q.is_object()) throw BadRequest("qualia must be an object");
    e.qualia.formal = detail::opt_predicate(q, "formal");
    e.qualia.agentive = detail::opt_predicate(q, "agentive");
    if (q.contains("const") && !q.at("const").is_null()) {
      if (!q.at("const").is_array()) throw BadRequest("qualia.const must be an array");
      for (const auto& p : q.at("const")) {
        if (!p.is_string()) throw BadRequest("qualia.const items must be strings");
        e.qualia.constitutive.push_back(parse_predicate(p.get<std::string>()));
      }
    }
    if (q.contains("telic") && !q.at("telic").is_null()) {
      const json& t = q.at("telic");
      if (!t.is_object()) throw BadRequest("qualia.telic must be an object");
      e.qualia.telic_state = detail::opt_predicate(t, "state");
      e.qualia.telic_trigger = detail::opt_predicate(t, "trigger");
      e.qualia.telic_result = detail::opt_predicate(t, "result");
    }
  }
  return e;
}

inline json to_json(const ValidationReport& r) {
  json problems = json::array();
  for (const auto& p : r.problems)
    problems.push_back({{"key", p.key}, {"path", p.path}, {"message", p.message}});
  return {{"ok", r.ok()}, {"problems", problems}};
}

inline ValidationReport report_from_json(const json& j) {
  ValidationReport r;
  if (!j.is_object() || !j.contains("problems") || !j.at("problems").is_array())
    return r;
  for (const auto& p : j.at("problems"))
    r.add(p.value("key", ""), p.value("path", ""), p.value("message", ""));
  return r;
}

inline json to_json(const TypeHierarchy& h) {
  json types = json::array();
  for (const auto& n : h.nodes())
    types.push_back({{"name", n}, {"parents", h.parents(n)}});
  return {{"root", h.root().str()}, {"types", types}};
}

inline TypeHierarchy hierarchy_from_json(const json& j) {
  TypeHierarchy::ParentMap m;
  for (const auto& t : detail::field(j, "types")) {
    std::set<std::string> ps;
    for (const auto& p : detail::field(t, "parents")) ps.insert(p.get<std::string>());
    m.emplace(detail::string_field(t, "name"), std::move(ps));
  }
  return TypeHierarchy::from_parents(std::move(m));
}

inline json to_json(const AnaphoraVerdict& v) {
  json variants = json::array();
  for (const auto& var : v.variants)
    variants.push_back({{"kind", std::string(to_string(var.kind))},
                        {"sentence", var.sentence},
                        {"valid", var.valid},
                        {"rendered", var.rendered()}});
  return {{"category", std::string(to_string(v.category))},
          {"licensing",
           {{"definite", v.licensing.definite},
            {"possessive", v.licensing.possessive},
            {"demonstrative", v.licensing.demonstrative}}},
          {"variants", variants},
          {"diagnostics", v.diagnostics}};
}

inline AnaphoraVerdict verdict_from_json(const json& j) {
  AnaphoraVerdict v{};
  std::string cat = detail::string_field(j, "category");
  bool known = false;
  for (auto c : kRelationCategories)
    if (to_string(c) == cat) {
      v.category = c;
      known = true;
    }
  if (!known) throw BadRequest("unknown relation category '" + cat + "'");
  const json& l = detail::field(j, "licensing");
  v.licensing = {l.at("definite").get<bool>(), l.at("possessive").get<bool>(),
                 l.at("demonstrative").get<bool>()};
  const json& vars = detail::field(j, "variants");
  if (!vars.is_array() || vars.size() != 3) throw BadRequest("expected three variants");
  for (std::size_t i = 0; i < 3; ++i)
    v.variants[i] = Variant{kDeterminerKinds[i],
                            vars[i].at("sentence").get<std::string>(),
                            vars[i].at("valid").get<bool>()};
  v.diagnostics = j.value("diagnostics", std::vector<std::string>{});
  return v;
}

}  // namespace glex::json
