#pragma once

#include <string>
#include <string_view>

#include "glex/entry.hpp"

namespace glex {

enum class Number { Singular, Plural };

inline std::string_view to_string(Number n) {
  return n == Number::Singular ? "sg" : "pl";
}

inline std::optional<Number> parse_number(std::string_view s) {
  if (s == "sg") return Number::Singular;
  if (s == "pl") return Number::Plural;
  return std::nullopt;
}

enum class DeterminerKind { Definite, Possessive, Demonstrative };

inline constexpr DeterminerKind kDeterminerKinds[] = {
    DeterminerKind::Definite, DeterminerKind::Possessive,
    DeterminerKind::Demonstrative};

inline std::string_view to_string(DeterminerKind k) {
  switch (k) {
    case DeterminerKind::Definite: return "Definite";
    case DeterminerKind::Possessive: return "Possessive";
    case DeterminerKind::Demonstrative: return "Demonstrative";
  }
  return "";
}

struct AgreementFeatures {
  Gender gender = Gender::Masculine;
  Number number = Number::Singular;
  bool elision = false;
  Number possessor_number = Number::Singular;
};

// Determiner agreeing with the anaphoric noun. Elision only bites in the
// singular: l'olive but les olives, cet arbre but ces arbres.
inline std::string realize_determiner(DeterminerKind kind,
                                      const AgreementFeatures& f) {
  const bool masc = f.gender == Gender::Masculine;
  const bool plural = f.number == Number::Plural;
  switch (kind) {
    case DeterminerKind::Definite:
      if (plural) return "les";
      if (f.elision) return "l'";
      return masc ? "le" : "la";
    case DeterminerKind::Possessive:
      if (f.possessor_number == Number::Plural) return plural ? "leurs" : "leur";
      if (plural) return "ses";
      return (masc || f.elision) ? "son" : "sa";
    case DeterminerKind::Demonstrative:
      if (plural) return "ces";
      if (masc) return f.elision ? "cet" : "ce";
      return "cette";
  }
  return {};
}

}  // namespace glex
