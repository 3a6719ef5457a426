#pragma once

// Anaphoric reference to the modifier of an endocentric compound
// (N2 à/de N1). The head's qualia structure determines how N1 relates to N2;
// the relation determines which determiners may introduce an anaphor to N1.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glex/entry.hpp"
#include "glex/error.hpp"
#include "glex/french.hpp"
#include "glex/hierarchy.hpp"
#include "glex/lexicon.hpp"

namespace glex {

enum class RelationCategory { ContainState, PartOf, TelicTrigger, TelicResult, Agentive };

inline constexpr RelationCategory kRelationCategories[] = {
    RelationCategory::ContainState, RelationCategory::PartOf,
    RelationCategory::TelicTrigger, RelationCategory::TelicResult,
    RelationCategory::Agentive};

inline std::string_view to_string(RelationCategory c) {
  switch (c) {
    case RelationCategory::ContainState: return "ContainState";
    case RelationCategory::PartOf: return "PartOf";
    case RelationCategory::TelicTrigger: return "TelicTrigger";
    case RelationCategory::TelicResult: return "TelicResult";
    case RelationCategory::Agentive: return "Agentive";
  }
  return "";
}

struct Licensing {
  bool definite = false;
  bool possessive = false;
  bool demonstrative = false;

  bool operator[](DeterminerKind k) const {
    switch (k) {
      case DeterminerKind::Definite: return definite;
      case DeterminerKind::Possessive: return possessive;
      case DeterminerKind::Demonstrative: return demonstrative;
    }
    return false;
  }

  bool operator==(const Licensing&) const = default;
};

// Which anaphoric determiners each relation admits. The demonstrative is
// never licensed; the possessive only for part-of and telic-result relations.
inline Licensing licensing(RelationCategory c) {
  switch (c) {
    case RelationCategory::ContainState: return {true, false, false};
    case RelationCategory::PartOf: return {true, true, false};
    case RelationCategory::TelicTrigger: return {true, false, false};
    case RelationCategory::TelicResult: return {true, true, false};
    case RelationCategory::Agentive: return {true, false, false};
  }
  return {};
}

struct RelationMatch {
  RelationCategory category;
  // Other probes that also matched; the first probe in order wins.
  std::vector<std::string> diagnostics;
};

namespace detail {

struct ProbeResult {
  bool matched = false;
  std::string reason;
};

inline ProbeResult slot_matches(const TypeHierarchy& h, const TypedArg& slot,
                                const LexicalEntry& modifier,
                                const std::string& where) {
  if (h.unify(slot.type.str(), modifier.lexical_type.str()))
    return {true, where + " slot " + slot.var + ":" + slot.type.str() +
                      " accepts " + modifier.lexical_type.str()};
  return {false, where + " slot " + slot.var + ":" + slot.type.str() +
                     " does not unify with " + modifier.lexical_type.str()};
}

inline ProbeResult probe(RelationCategory c, const LexicalEntry& head,
                         const LexicalEntry& modifier, const TypeHierarchy& h,
                         const NameSet& containment) {
  const auto& q = head.qualia;
  switch (c) {
    case RelationCategory::ContainState: {
      if (!q.telic_state) return {false, "ContainState: no telic state"};
      if (!containment.contains(q.telic_state->name))
        return {false, "ContainState: '" + q.telic_state->name +
                           "' is not a containment predicate"};
      auto ind = q.telic_state->individual_args();
      if (ind.empty()) return {false, "ContainState: no individual argument"};
      return slot_matches(h, ind.back(), modifier, "ContainState: last");
    }
    case RelationCategory::PartOf: {
      if (q.constitutive.empty()) return {false, "PartOf: no constitutive relation"};
      std::string reasons;
      for (const auto& p : q.constitutive) {
        if (p.name != "part_of") continue;
        auto ind = p.individual_args();
        if (ind.empty()) continue;
        auto r = slot_matches(h, ind.front(), modifier, "PartOf: first");
        if (r.matched) return r;
        if (!reasons.empty()) reasons += "; ";
        reasons += r.reason;
      }
      return {false, reasons.empty() ? "PartOf: no usable part_of argument" : reasons};
    }
    case RelationCategory::TelicTrigger: {
      if (!q.telic_trigger) return {false, "TelicTrigger: no telic trigger"};
      auto ind = q.telic_trigger->individual_args();
      if (ind.size() < 2)
        return {false, "TelicTrigger: fewer than two individual arguments"};
      return slot_matches(h, ind[1], modifier, "TelicTrigger: second");
    }
    case RelationCategory::TelicResult: {
      if (!q.telic_result) return {false, "TelicResult: no telic result"};
      auto ind = q.telic_result->individual_args();
      if (ind.empty()) return {false, "TelicResult: no individual argument"};
      return slot_matches(h, ind.front(), modifier, "TelicResult: first");
    }
    case RelationCategory::Agentive: {
      if (!q.agentive) return {false, "Agentive: no agentive"};
      std::string_view self = head.args.empty() ? "" : head.args.front().var;
      std::string reasons;
      for (const auto& a : q.agentive->individual_args()) {
        if (a.var == self) continue;
        auto r = slot_matches(h, a, modifier, "Agentive:");
        if (r.matched) return r;
        if (!reasons.empty()) reasons += "; ";
        reasons += r.reason;
      }
      return {false, reasons.empty() ? "Agentive: no argument besides the head" : reasons};
    }
  }
  return {};
}

}  // namespace detail

// Probes ContainState, PartOf, TelicTrigger, TelicResult, Agentive in that
// order; the first whose slot type unifies with the modifier's type wins.
inline RelationMatch detect_relation_detailed(
    const LexicalEntry& head, const LexicalEntry& modifier,
    const TypeHierarchy& h,
    const NameSet& containment = default_containment_predicates()) {
  std::optional<RelationCategory> found;
  std::vector<std::string> reasons;
  std::vector<std::string> also;
  for (auto c : kRelationCategories) {
    auto r = detail::probe(c, head, modifier, h, containment);
    if (!r.matched) {
      reasons.push_back(r.reason);
    } else if (!found) {
      found = c;
    } else {
      also.push_back("ambiguous: also matches " + std::string(to_string(c)) +
                     " (" + r.reason + ")");
    }
  }
  if (!found) throw NoRelation(head.lemma, modifier.lemma, std::move(reasons));
  return {*found, std::move(also)};
}

inline RelationCategory detect_relation(
    const LexicalEntry& head, const LexicalEntry& modifier,
    const TypeHierarchy& h,
    const NameSet& containment = default_containment_predicates()) {
  return detect_relation_detailed(head, modifier, h, containment).category;
}

struct AnalyzedWord {
  LexicalEntry entry;
  Number number;
};

// Lemma lookup for an inflected surface form: exact match is singular,
// otherwise one trailing s/x is stripped and the match is plural. With
// several senses, the lowest sense wins.
inline AnalyzedWord analyze_surface(std::string_view surface, const Lexicon& lex) {
  if (surface.empty()) throw UnknownWord("empty word");
  auto lookup = [&](std::string_view lemma) -> const LexicalEntry* {
    auto it = lex.entries.lower_bound(EntryKey{std::string(lemma), 0});
    if (it != lex.entries.end() && it->first.lemma == lemma) return &it->second;
    return nullptr;
  };
  if (const auto* e = lookup(surface)) return {*e, Number::Singular};
  std::string tried = "'" + std::string(surface) + "'";
  char last = surface.back();
  if (surface.size() > 1 && (last == 's' || last == 'x')) {
    std::string_view stem = surface.substr(0, surface.size() - 1);
    if (const auto* e = lookup(stem)) return {*e, Number::Plural};
    tried += " and '" + std::string(stem) + "'";
  }
  throw UnknownWord("unknown word '" + std::string(surface) + "' (tried " + tried + ")");
}

struct Variant {
  DeterminerKind kind;
  std::string sentence;
  bool valid;

  std::string rendered() const { return valid ? sentence : "* " + sentence; }

  bool operator==(const Variant&) const = default;
};

struct AnaphoraVerdict {
  RelationCategory category;
  Licensing licensing;
  std::array<Variant, 3> variants;  // Definite, Possessive, Demonstrative
  std::vector<std::string> diagnostics;
};

struct AnaphoraOptions {
  Number possessor_number = Number::Singular;
  NameSet containment = default_containment_predicates();
};

namespace detail {

// Splits a template on its %s placeholders; exactly three are required.
inline std::array<std::string, 4> split_template(std::string_view tpl) {
  std::array<std::string, 4> parts;
  std::size_t n = 0, start = 0;
  for (std::size_t pos = tpl.find("%s"); pos != std::string_view::npos;
       pos = tpl.find("%s", start)) {
    if (n == 3)
      throw BadTemplate("template has more than three %s placeholders");
    parts[n++] = std::string(tpl.substr(start, pos - start));
    start = pos + 2;
  }
  if (n != 3)
    throw BadTemplate("template needs exactly three %s placeholders, found " +
                      std::to_string(n));
  parts[3] = std::string(tpl.substr(start));
  return parts;
}

inline bool starts_sentence(std::string_view before) {
  std::size_t end = before.find_last_not_of(" \t\n");
  if (end == std::string_view::npos) return true;
  char c = before[end];
  return c == '.' || c == '!' || c == '?';
}

}  // namespace detail

// Fills "head / determiner / modifier" into the template once per determiner
// kind and marks each sentence with its licensing.
inline AnaphoraVerdict generate_variants(std::string_view head_surface,
                                         std::string_view modifier_surface,
                                         std::string_view tpl,
                                         const AnaphoraOptions& options,
                                         const Lexicon& lex) {
  auto parts = detail::split_template(tpl);
  auto head = analyze_surface(head_surface, lex);
  auto modifier = analyze_surface(modifier_surface, lex);
  auto match = detect_relation_detailed(head.entry, modifier.entry,
                                        lex.hierarchy, options.containment);

  AgreementFeatures f{modifier.entry.gender, modifier.number,
                      modifier.entry.elision, options.possessor_number};
  std::string before = parts[0] + std::string(head_surface) + parts[1];
  bool capitalize = detail::starts_sentence(before);

  AnaphoraVerdict v{match.category, licensing(match.category), {}, match.diagnostics};
  for (std::size_t i = 0; i < 3; ++i) {
    DeterminerKind kind = kDeterminerKinds[i];
    std::string det = realize_determiner(kind, f);
    if (capitalize) det[0] = static_cast<char>(det[0] - 'a' + 'A');
    std::string between = parts[2];
    if (det.back() == '\'') {
      std::size_t keep = between.find_first_not_of(' ');
      between.erase(0, keep == std::string::npos ? between.size() : keep);
    }
    std::string sentence =
        before + det + between + std::string(modifier_surface) + parts[3];
    v.variants[i] = Variant{kind, std::move(sentence), v.licensing[kind]};
  }
  return v;
}

}  // namespace glex
