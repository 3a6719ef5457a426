#pragma once

#include <map>
#include <string>

#include "glex/entry.hpp"
#include "glex/hierarchy.hpp"

namespace glex {

struct Lexicon {
  TypeHierarchy hierarchy;
  std::map<EntryKey, LexicalEntry> entries;

  ValidationReport validate(
      const NameSet& containment = default_containment_predicates()) const {
    ValidationReport r;
    for (const auto& [key, e] : entries) {
      if (key != e.key())
        r.add(key.str(), "lemma", "entry stored under a different key");
      r.append(validate_entry(e, hierarchy, containment));
    }
    return r;
  }

  const LexicalEntry* find(const EntryKey& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  }

  bool operator==(const Lexicon&) const = default;
};

}  // namespace glex
