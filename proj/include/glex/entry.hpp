#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "glex/error.hpp"
#include "glex/hierarchy.hpp"
#include "glex/predicate.hpp"

namespace glex {

struct EntryKey {
  std::string lemma;
  int sense = 1;

  // Byte order on lemma, then numeric sense.
  auto operator<=>(const EntryKey&) const = default;
  bool operator==(const EntryKey&) const = default;

  std::string str() const { return lemma + "#" + std::to_string(sense); }
};

enum class Gender { Masculine, Feminine };

inline std::string_view to_string(Gender g) {
  return g == Gender::Masculine ? "m" : "f";
}

inline std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "m") return Gender::Masculine;
  if (s == "f") return Gender::Feminine;
  return std::nullopt;
}

struct QualiaStructure {
  std::optional<Predicate> formal;
  std::vector<Predicate> constitutive;  // part_of relations
  std::optional<Predicate> telic_state;
  std::optional<Predicate> telic_trigger;
  std::optional<Predicate> telic_result;
  std::optional<Predicate> agentive;

  bool empty() const {
    return !formal && constitutive.empty() && !telic_state && !telic_trigger &&
           !telic_result && !agentive;
  }
  bool has_telic() const { return telic_state || telic_trigger || telic_result; }

  bool operator==(const QualiaStructure&) const = default;
};

struct LexicalEntry {
  std::string lemma;
  int sense = 1;
  std::string cat = "N";
  Gender gender = Gender::Masculine;
  bool elision = false;
  TypeName lexical_type;
  std::vector<TypedArg> args;  // args[0] is the distinguished variable
  std::vector<TypedArg> events;
  QualiaStructure qualia;

  EntryKey key() const { return {lemma, sense}; }

  bool operator==(const LexicalEntry&) const = default;
};

inline constexpr std::string_view kEntryClass = "glEntry";

inline const std::set<std::string, std::less<>>& default_containment_predicates() {
  static const std::set<std::string, std::less<>> names{"contain"};
  return names;
}

using NameSet = std::set<std::string, std::less<>>;

namespace detail {

inline std::vector<std::string> render_all(const std::vector<TypedArg>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) out.push_back(render_arg(a));
  return out;
}

inline std::vector<std::string> render_opt(const std::optional<Predicate>& p) {
  if (!p) return {};
  return {render_predicate(*p)};
}

// argN / eventN, 1-based; returns 0 when `s` is not of that shape.
inline std::size_t indexed(std::string_view s, std::string_view prefix) {
  if (s.size() <= prefix.size() || s.substr(0, prefix.size()) != prefix)
    return 0;
  std::size_t n = 0;
  for (char c : s.substr(prefix.size())) {
    if (c < '0' || c > '9') return 0;
    n = n * 10 + static_cast<std::size_t>(c - '0');
    if (n > 1000000) return 0;
  }
  return (s[prefix.size()] == '0') ? 0 : n;
}

}  // namespace detail

// Rendered values at a dot-separated attribute path. Accepts both the nested
// names (qualia.telic.trigger) and the flat persistence names (telicTrigger).
// An absent role yields an empty list; an unknown attribute is BadPath.
inline std::vector<std::string> feature_at_path(const LexicalEntry& e,
                                                std::string_view path) {
  using detail::render_opt;
  const auto& q = e.qualia;
  if (path == "entryClass") return {std::string(kEntryClass)};
  if (path == "lemma") return {e.lemma};
  if (path == "sense") return {std::to_string(e.sense)};
  if (path == "cat") return {e.cat};
  if (path == "gender") return {std::string(to_string(e.gender))};
  if (path == "elision") return {e.elision ? "true" : "false"};
  if (path == "lexicalType") return {e.lexical_type.str()};
  if (path == "args") return detail::render_all(e.args);
  if (path == "events") return detail::render_all(e.events);
  if (path == "qualia.formal" || path == "formal") return render_opt(q.formal);
  if (path == "qualia.const" || path == "const") {
    std::vector<std::string> out;
    for (const auto& p : q.constitutive) out.push_back(render_predicate(p));
    return out;
  }
  if (path == "qualia.telic.state" || path == "telicState")
    return render_opt(q.telic_state);
  if (path == "qualia.telic.trigger" || path == "telicTrigger")
    return render_opt(q.telic_trigger);
  if (path == "qualia.telic.result" || path == "telicResult")
    return render_opt(q.telic_result);
  if (path == "qualia.agentive" || path == "agentive")
    return render_opt(q.agentive);
  if (std::size_t n = detail::indexed(path, "arg")) {
    if (n <= e.args.size()) return {render_arg(e.args[n - 1])};
    return {};
  }
  if (std::size_t n = detail::indexed(path, "event")) {
    if (n <= e.events.size()) return {render_arg(e.events[n - 1])};
    return {};
  }
  throw BadPath("unknown attribute path '" + std::string(path) + "'");
}

namespace detail {

inline bool valid_lemma(std::string_view s) {
  if (s.empty() || s.front() == ' ' || s.back() == ' ') return false;
  for (unsigned char c : s) {
    if (c < 0x20 || c == 0x7f) return false;
    if (c == ',' || c == '=' || c == '/' || c == '<' || c == '>' ||
        c == '&' || c == '"' || c == '#' || c == '*')
      return false;
  }
  return true;
}

inline bool valid_cat(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

}  // namespace detail

// Checks every entry invariant against a hierarchy. Problems are data.
inline ValidationReport validate_entry(
    const LexicalEntry& e, const TypeHierarchy& h,
    const NameSet& containment = default_containment_predicates()) {
  ValidationReport r;
  const std::string key = e.key().str();

  if (!detail::valid_lemma(e.lemma))
    r.add(key, "lemma", "lemma must be non-empty single-line text without ,=/<>&\"#*");
  if (e.sense < 1) r.add(key, "sense", "sense must be a positive integer");
  if (!detail::valid_cat(e.cat)) r.add(key, "cat", "category must be a token");
  if (!h.contains(e.lexical_type.str()))
    r.add(key, "lexical_type",
          "type '" + e.lexical_type.str() + "' not in hierarchy");

  // Declared variables and their types.
  std::map<std::string, TypeName> declared;
  auto declare = [&](const std::vector<TypedArg>& list, const std::string& base,
                     bool want_event) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& a = list[i];
      std::string path = base + "[" + std::to_string(i) + "]";
      if (!h.contains(a.type.str()))
        r.add(key, path + ".type", "type '" + a.type.str() + "' not in hierarchy");
      if (want_event && !a.is_event())
        r.add(key, path, "'" + a.var + "' is not an event variable");
      if (!declared.emplace(a.var, a.type).second)
        r.add(key, path, "variable '" + a.var + "' declared twice");
    }
  };
  declare(e.args, "args", false);
  declare(e.events, "events", true);

  struct Role {
    std::string path;
    const Predicate* pred;
  };
  std::vector<Role> roles;
  const auto& q = e.qualia;
  if (q.formal) roles.push_back({"qualia.formal", &*q.formal});
  for (std::size_t i = 0; i < q.constitutive.size(); ++i)
    roles.push_back({"qualia.const[" + std::to_string(i) + "]", &q.constitutive[i]});
  if (q.telic_state) roles.push_back({"qualia.telic.state", &*q.telic_state});
  if (q.telic_trigger) roles.push_back({"qualia.telic.trigger", &*q.telic_trigger});
  if (q.telic_result) roles.push_back({"qualia.telic.result", &*q.telic_result});
  if (q.agentive) roles.push_back({"qualia.agentive", &*q.agentive});

  for (std::size_t i = 0; i < q.constitutive.size(); ++i)
    if (q.constitutive[i].name != "part_of")
      r.add(key, "qualia.const[" + std::to_string(i) + "]",
            "constitutive predicate must be part_of, got '" +
                q.constitutive[i].name + "'");
  if (q.telic_state && !containment.contains(q.telic_state->name))
    r.add(key, "qualia.telic.state",
          "'" + q.telic_state->name + "' is not a containment predicate");

  // Undeclared variables are local to one predicate; declared ones must
  // unify with their declaration everywhere they occur.
  std::map<std::string, std::string> local_owner;
  for (const auto& role : roles) {
    std::set<std::string> seen;
    for (std::size_t j = 0; j < role.pred->args.size(); ++j) {
      const auto& a = role.pred->args[j];
      std::string path = role.path + ".args[" + std::to_string(j) + "]";
      if (!seen.insert(a.var).second)
        r.add(key, path, "variable '" + a.var + "' repeated");
      if (!h.contains(a.type.str())) {
        r.add(key, path, "type '" + a.type.str() + "' not in hierarchy");
        continue;
      }
      if (auto d = declared.find(a.var); d != declared.end()) {
        if (h.contains(d->second.str()) &&
            !h.unify(d->second.str(), a.type.str()))
          r.add(key, path,
                "type '" + a.type.str() + "' of '" + a.var +
                    "' does not unify with declared type '" + d->second.str() +
                    "'");
        continue;
      }
      auto [it, fresh] = local_owner.emplace(a.var, role.path);
      if (!fresh && it->second != role.path)
        r.add(key, path,
              "undeclared variable '" + a.var + "' shared with " + it->second);
    }
  }
  return r;
}

}  // namespace glex
