#pragma once

// LDIF-style lexicon documents.
//
//   dn: type=liquid
//   parent: physical
//
//   dn: lemma=cidre,sense=1
//   entryClass: glEntry
//   lemma: cidre
//   ...
//
// One record per type node (topological order), then one per entry sorted by
// key. Records are separated by a single blank line. Values are always
// single-line, so LDIF base64 and continuation lines are not supported.

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "glex/error.hpp"
#include "glex/lexicon.hpp"
#include "glex/predicate.hpp"

namespace glex {

namespace detail {

inline void ldif_line(std::string& out, std::string_view attr,
                      std::string_view value) {
  out.append(attr).append(": ").append(value).push_back('\n');
}

inline void ldif_opt(std::string& out, std::string_view attr,
                     const std::optional<Predicate>& p) {
  if (p) ldif_line(out, attr, render_predicate(*p));
}

}  // namespace detail

inline std::string export_ldif_entry(const LexicalEntry& e) {
  using detail::ldif_line;
  std::string out;
  ldif_line(out, "dn", "lemma=" + e.lemma + ",sense=" + std::to_string(e.sense));
  ldif_line(out, "entryClass", kEntryClass);
  ldif_line(out, "lemma", e.lemma);
  ldif_line(out, "sense", std::to_string(e.sense));
  ldif_line(out, "cat", e.cat);
  ldif_line(out, "gender", to_string(e.gender));
  ldif_line(out, "elision", e.elision ? "true" : "false");
  ldif_line(out, "lexicalType", e.lexical_type.str());
  for (std::size_t i = 0; i < e.args.size(); ++i)
    ldif_line(out, "arg" + std::to_string(i + 1), render_arg(e.args[i]));
  for (std::size_t i = 0; i < e.events.size(); ++i)
    ldif_line(out, "event" + std::to_string(i + 1), render_arg(e.events[i]));
  const auto& q = e.qualia;
  detail::ldif_opt(out, "formal", q.formal);
  for (const auto& p : q.constitutive) ldif_line(out, "const", render_predicate(p));
  detail::ldif_opt(out, "telicState", q.telic_state);
  detail::ldif_opt(out, "telicTrigger", q.telic_trigger);
  detail::ldif_opt(out, "telicResult", q.telic_result);
  detail::ldif_opt(out, "agentive", q.agentive);
  return out;
}

inline std::string export_ldif(const Lexicon& lex) {
  std::vector<std::string> records;
  for (const auto& name : lex.hierarchy.nodes()) {
    std::string rec;
    detail::ldif_line(rec, "dn", "type=" + name);
    for (const auto& p : lex.hierarchy.parents(name))
      detail::ldif_line(rec, "parent", p);
    records.push_back(std::move(rec));
  }
  for (const auto& [key, e] : lex.entries) records.push_back(export_ldif_entry(e));

  std::string out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i) out.push_back('\n');
    out += records[i];
  }
  return out;
}

namespace detail {

struct LdifAttr {
  std::string name;
  std::string value;
  std::size_t line;
};

struct LdifRecord {
  std::string dn;
  std::size_t line = 0;
  std::vector<LdifAttr> attrs;
};

inline std::vector<LdifRecord> split_ldif(std::string_view text) {
  std::vector<LdifRecord> records;
  std::optional<LdifRecord> cur;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      if (cur) records.push_back(std::move(*cur));
      cur.reset();
      continue;
    }
    if (line.front() == '#') continue;
    if (line.front() == ' ')
      throw ParseError(lineno, "continuation lines are not supported");

    std::size_t colon = line.find(": ");
    if (colon == std::string_view::npos || colon == 0)
      throw ParseError(lineno, "expected 'attribute: value'");
    std::string attr(line.substr(0, colon));
    std::string value(line.substr(colon + 2));
    if (value.empty()) throw ParseError(lineno, "empty value for '" + attr + "'");

    if (!cur) {
      if (attr != "dn") throw ParseError(lineno, "record must start with dn");
      cur = LdifRecord{value, lineno, {}};
    } else {
      if (attr == "dn") throw ParseError(lineno, "dn inside record");
      cur->attrs.push_back({attr, value, lineno});
    }
  }
  if (cur) records.push_back(std::move(*cur));
  return records;
}

inline std::optional<int> parse_sense(std::string_view s) {
  if (s.empty() || s.size() > 9 || s[0] == '0') return std::nullopt;
  int n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size() || n < 1) return std::nullopt;
  return n;
}

inline std::optional<EntryKey> parse_entry_dn(std::string_view dn) {
  constexpr std::string_view head = "lemma=";
  constexpr std::string_view mid = ",sense=";
  if (dn.substr(0, head.size()) != head) return std::nullopt;
  std::size_t m = dn.rfind(mid);
  if (m == std::string_view::npos || m < head.size()) return std::nullopt;
  auto sense = parse_sense(dn.substr(m + mid.size()));
  if (!sense) return std::nullopt;
  return EntryKey{std::string(dn.substr(head.size(), m - head.size())), *sense};
}

inline Predicate predicate_at(const std::string& text, std::size_t line) {
  try {
    return parse_predicate(text);
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

inline TypedArg arg_at(const std::string& text, std::size_t line) {
  try {
    return parse_typed_arg(text);
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

inline TypeName type_at(const std::string& text, std::size_t line) {
  if (!is_type_name(text)) throw ParseError(line, "invalid type name '" + text + "'");
  return TypeName(text);
}

// Fills `slot` once; a second occurrence of a single-valued attribute fails.
template <typename T>
void set_once(std::optional<T>& slot, T value, const LdifAttr& a) {
  if (slot) throw ParseError(a.line, "attribute '" + a.name + "' repeated");
  slot = std::move(value);
}

inline std::vector<TypedArg> contiguous(std::map<std::size_t, TypedArg>& m,
                                        const std::string& what,
                                        std::size_t line) {
  std::vector<TypedArg> out;
  std::size_t expect = 1;
  for (auto& [i, a] : m) {
    if (i != expect)
      throw ParseError(line, what + " numbering must be contiguous from 1");
    out.push_back(std::move(a));
    ++expect;
  }
  return out;
}

inline LexicalEntry ldif_entry(const LdifRecord& rec, const EntryKey& key) {
  LexicalEntry e;
  std::optional<std::string> entry_class, lemma, cat, lexical_type;
  std::optional<int> sense;
  std::optional<Gender> gender;
  std::optional<bool> elision;
  std::map<std::size_t, TypedArg> args, events;

  for (const auto& a : rec.attrs) {
    const std::string& v = a.value;
    if (a.name == "entryClass") {
      if (v != kEntryClass)
        throw ParseError(a.line, "entryClass must be " + std::string(kEntryClass));
      set_once(entry_class, v, a);
    } else if (a.name == "lemma") {
      set_once(lemma, v, a);
    } else if (a.name == "sense") {
      auto s = parse_sense(v);
      if (!s) throw ParseError(a.line, "sense must be a positive integer");
      set_once(sense, *s, a);
    } else if (a.name == "cat") {
      set_once(cat, v, a);
    } else if (a.name == "gender") {
      auto g = parse_gender(v);
      if (!g) throw ParseError(a.line, "gender must be m or f, got '" + v + "'");
      set_once(gender, *g, a);
    } else if (a.name == "elision") {
      if (v != "true" && v != "false")
        throw ParseError(a.line, "elision must be true or false");
      set_once(elision, v == "true", a);
    } else if (a.name == "lexicalType") {
      set_once(lexical_type, type_at(v, a.line).str(), a);
    } else if (a.name == "formal") {
      set_once(e.qualia.formal, predicate_at(v, a.line), a);
    } else if (a.name == "const") {
      e.qualia.constitutive.push_back(predicate_at(v, a.line));
    } else if (a.name == "telicState") {
      set_once(e.qualia.telic_state, predicate_at(v, a.line), a);
    } else if (a.name == "telicTrigger") {
      set_once(e.qualia.telic_trigger, predicate_at(v, a.line), a);
    } else if (a.name == "telicResult") {
      set_once(e.qualia.telic_result, predicate_at(v, a.line), a);
    } else if (a.name == "agentive") {
      set_once(e.qualia.agentive, predicate_at(v, a.line), a);
    } else if (std::size_t n = indexed(a.name, "arg")) {
      if (!args.emplace(n, arg_at(v, a.line)).second)
        throw ParseError(a.line, "attribute '" + a.name + "' repeated");
    } else if (std::size_t n = indexed(a.name, "event")) {
      if (!events.emplace(n, arg_at(v, a.line)).second)
        throw ParseError(a.line, "attribute '" + a.name + "' repeated");
    } else {
      throw ParseError(a.line, "unknown attribute '" + a.name + "'");
    }
  }

  auto need = [&](bool present, const char* name) {
    if (!present)
      throw ParseError(rec.line, std::string("missing attribute '") + name + "'");
  };
  need(entry_class.has_value(), "entryClass");
  need(lemma.has_value(), "lemma");
  need(sense.has_value(), "sense");
  need(cat.has_value(), "cat");
  need(gender.has_value(), "gender");
  need(lexical_type.has_value(), "lexicalType");
  if (*lemma != key.lemma || *sense != key.sense)
    throw ParseError(rec.line, "dn does not match lemma/sense attributes");

  e.lemma = *lemma;
  e.sense = *sense;
  e.cat = *cat;
  e.gender = *gender;
  e.elision = elision.value_or(false);
  e.lexical_type = TypeName(*lexical_type);
  e.args = contiguous(args, "arg", rec.line);
  e.events = contiguous(events, "event", rec.line);
  return e;
}

// Shared tail of both importers: build the hierarchy, then validate every
// entry against it. All-or-nothing.
inline Lexicon assemble_lexicon(TypeHierarchy::ParentMap types,
                                std::map<EntryKey, LexicalEntry> entries,
                                const NameSet& containment) {
  Lexicon lex{TypeHierarchy::from_parents(std::move(types)), std::move(entries)};
  auto report = lex.validate(containment);
  if (!report.ok()) throw ValidationFailed(std::move(report));
  return lex;
}

}  // namespace detail

inline Lexicon import_ldif(
    std::string_view text,
    const NameSet& containment = default_containment_predicates()) {
  TypeHierarchy::ParentMap types;
  std::map<EntryKey, LexicalEntry> entries;

  for (const auto& rec : detail::split_ldif(text)) {
    if (rec.dn.starts_with("type=")) {
      std::string name = rec.dn.substr(5);
      detail::type_at(name, rec.line);
      std::set<std::string> parents;
      for (const auto& a : rec.attrs) {
        if (a.name != "parent")
          throw ParseError(a.line, "unknown attribute '" + a.name + "' in type record");
        parents.insert(detail::type_at(a.value, a.line).str());
      }
      if (!types.emplace(name, std::move(parents)).second)
        throw DuplicateKey("duplicate record 'dn: " + rec.dn + "' at line " +
                           std::to_string(rec.line));
      continue;
    }
    auto key = detail::parse_entry_dn(rec.dn);
    if (!key) throw ParseError(rec.line, "malformed dn '" + rec.dn + "'");
    if (entries.contains(*key))
      throw DuplicateKey("duplicate record 'dn: " + rec.dn + "' at line " +
                         std::to_string(rec.line));
    entries.emplace(*key, detail::ldif_entry(rec, *key));
  }
  return detail::assemble_lexicon(std::move(types), std::move(entries), containment);
}

}  // namespace glex
