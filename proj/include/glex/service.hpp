#pragma once

// The lexicon directory service: sessions, role checks and an in-memory
// store published as immutable snapshots. Readers grab the current snapshot
// and never block writers for longer than a pointer copy; writers are
// serialised, build a new snapshot and swap it in.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <sodium.h>

#include "glex/anaphora.hpp"
#include "glex/auth.hpp"
#include "glex/config.hpp"
#include "glex/entry.hpp"
#include "glex/error.hpp"
#include "glex/lexicon.hpp"
#include "glex/persistence.hpp"

namespace glex {

// Senses of one lemma, ascending. The first is stored inline so the common
// single-sense lookup touches one hash node.
struct SenseList {
  int first = 0;
  std::vector<int> more;

  std::size_t size() const { return first ? 1 + more.size() : 0; }
};

struct Snapshot {
  Lexicon lexicon;
  std::unordered_map<std::string, SenseList> by_lemma;
  std::uint64_t generation = 0;

  Snapshot(Lexicon lex, std::uint64_t gen) : lexicon(std::move(lex)), generation(gen) {
    by_lemma.reserve(lexicon.entries.size());
    for (const auto& [key, e] : lexicon.entries) {
      auto& senses = by_lemma[key.lemma];
      if (!senses.first) senses.first = key.sense;
      else senses.more.push_back(key.sense);
    }
  }
};

struct ImportSummary {
  std::size_t entries = 0;
  std::size_t types = 0;
};

// Hex SHA-256 of the entry's canonical LDIF record; used as an ETag.
inline std::string entry_hash(const LexicalEntry& e) {
  ensure_sodium();
  std::string rec = export_ldif_entry(e);
  unsigned char digest[crypto_hash_sha256_BYTES];
  crypto_hash_sha256(digest, reinterpret_cast<const unsigned char*>(rec.data()),
                     rec.size());
  char hex[sizeof digest * 2 + 1];
  sodium_bin2hex(hex, sizeof hex, digest, sizeof digest);
  return hex;
}

// Filter forms: exact lemma, lemma prefix ("pre*", "*" for all), or
// attribute equality ("cat=N"). lexicalType=T matches every entry whose type
// is subsumed by T.
inline std::vector<EntryKey> search_snapshot(const Snapshot& snap,
                                             std::string_view filter) {
  if (filter.empty()) throw BadFilter("empty filter");
  std::vector<EntryKey> out;
  const auto& entries = snap.lexicon.entries;

  if (auto eq = filter.find('='); eq != std::string_view::npos) {
    std::string_view attr = filter.substr(0, eq);
    std::string_view value = filter.substr(eq + 1);
    if (value.empty()) throw BadFilter("empty value in filter");
    static const std::set<std::string_view> attrs{"lemma", "sense", "cat", "gender",
                                                  "elision", "lexicalType"};
    if (!attrs.contains(attr))
      throw BadFilter("cannot filter on '" + std::string(attr) + "'");
    if (attr == "lexicalType") {
      const auto& h = snap.lexicon.hierarchy;
      if (!h.contains(value)) return out;
      for (const auto& [key, e] : entries)
        if (h.subtype(e.lexical_type.str(), value)) out.push_back(key);
      return out;
    }
    for (const auto& [key, e] : entries) {
      auto values = feature_at_path(e, attr);
      if (!values.empty() && values.front() == value) out.push_back(key);
    }
    return out;
  }

  if (auto star = filter.find('*'); star != std::string_view::npos) {
    if (star + 1 != filter.size()) throw BadFilter("'*' is only allowed at the end");
    std::string prefix(filter.substr(0, star));
    for (auto it = entries.lower_bound(EntryKey{prefix, 0});
         it != entries.end() && it->first.lemma.starts_with(prefix); ++it)
      out.push_back(it->first);
    return out;
  }

  if (auto it = snap.by_lemma.find(std::string(filter)); it != snap.by_lemma.end()) {
    out.push_back({it->first, it->second.first});
    for (int s : it->second.more) out.push_back({it->first, s});
  }
  return out;
}

class LexiconService {
 public:
  LexiconService(ServerConfig config, Lexicon initial, Clock clock = system_clock())
      : config_(std::move(config)),
        sessions_(config_.users, config_.session_ttl, clock) {
    auto report = initial.validate(config_.containment_predicates);
    if (!report.ok()) throw ValidationFailed(std::move(report));
    snap_ = std::make_shared<const Snapshot>(std::move(initial), 0);
  }

  const ServerConfig& config() const { return config_; }

  Session bind(const std::string& username, std::string_view password) {
    return sessions_.bind(username, password);
  }

  // Resolves a bearer token. Without auth, anonymous callers are readers;
  // a presented token must still be valid.
  Principal authenticate(const std::optional<std::string>& token) {
    if (token) {
      if (auto p = sessions_.lookup(*token)) return *p;
      throw Unauthorized("invalid or expired session");
    }
    if (config_.auth_required) throw Unauthorized("authentication required");
    return Principal{"", Role::Reader};
  }

  std::shared_ptr<const Snapshot> snapshot() const {
    std::shared_lock lock(mu_);
    return snap_;
  }

  std::vector<EntryKey> search(const Principal&, std::string_view filter) const {
    return search_snapshot(*snapshot(), filter);
  }

  LexicalEntry fetch(const Principal&, const EntryKey& key) const {
    auto snap = snapshot();
    const auto* e = snap->lexicon.find(key);
    if (!e) throw NotFound("no entry " + key.str());
    return *e;
  }

  std::vector<std::string> feature(const Principal& p, const EntryKey& key,
                                   std::string_view path) const {
    return feature_at_path(fetch(p, key), path);
  }

  TypeHierarchy types(const Principal&) const { return snapshot()->lexicon.hierarchy; }

  std::string export_document(const Principal&, Format f) const {
    return export_lexicon(snapshot()->lexicon, f);
  }

  // if_match, when given, must equal the current entry_hash of the stored
  // entry; a mismatch (or a missing entry) is a Conflict.
  EntryKey upsert(const Principal& p, LexicalEntry entry,
                  const std::optional<std::string>& if_match = std::nullopt) {
    require_editor(p);
    EntryKey key = entry.key();
    mutate([&](const Lexicon& cur) {
      auto report = validate_entry(entry, cur.hierarchy, config_.containment_predicates);
      if (!report.ok()) throw ValidationFailed(std::move(report));
      if (if_match) {
        const auto* existing = cur.find(key);
        if (!existing || entry_hash(*existing) != *if_match)
          throw Conflict("entry " + key.str() + " changed since it was fetched");
      }
      Lexicon next = cur;
      next.entries.insert_or_assign(key, entry);
      return next;
    });
    return key;
  }

  void remove(const Principal& p, const EntryKey& key) {
    require_editor(p);
    mutate([&](const Lexicon& cur) {
      if (!cur.find(key)) throw NotFound("no entry " + key.str());
      Lexicon next = cur;
      next.entries.erase(key);
      return next;
    });
  }

  ImportSummary import_document(const Principal& p, Format f, std::string_view doc) {
    require_editor(p);
    Lexicon lex = import_lexicon(doc, f, config_.containment_predicates);
    ImportSummary summary{lex.entries.size(), lex.hierarchy.size()};
    mutate([&](const Lexicon&) { return std::move(lex); });
    return summary;
  }

  AnaphoraVerdict validate_anaphora(const Principal&, std::string_view head,
                                    std::string_view modifier, std::string_view tpl,
                                    Number possessor_number) const {
    AnaphoraOptions opts{possessor_number, config_.containment_predicates};
    return generate_variants(head, modifier, tpl, opts, snapshot()->lexicon);
  }

  // Writes the current lexicon to lexicon_path as LDIF (no-op without a path).
  void flush() const {
    std::lock_guard lock(write_mu_);
    write_out(snapshot()->lexicon);
  }

 private:
  static void require_editor(const Principal& p) {
    if (p.role != Role::Editor) throw Forbidden("editor role required");
  }

  // Serialised read-modify-write. The new lexicon is persisted before it is
  // published, so a failed write leaves the store untouched.
  template <typename F>
  void mutate(F&& change) {
    std::lock_guard lock(write_mu_);
    auto cur = snapshot();
    Lexicon next = change(cur->lexicon);
    write_out(next);
    auto snap = std::make_shared<const Snapshot>(std::move(next), cur->generation + 1);
    std::unique_lock swap(mu_);
    snap_ = std::move(snap);
  }

  void write_out(const Lexicon& lex) const {
    if (config_.lexicon_path.empty()) return;
    std::string tmp = config_.lexicon_path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << export_ldif(lex);
      out.flush();
      if (!out) throw Error("IoError", "cannot write '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, config_.lexicon_path, ec);
    if (ec)
      throw Error("IoError", "cannot replace '" + config_.lexicon_path + "': " + ec.message());
  }

  ServerConfig config_;
  SessionStore sessions_;
  mutable std::shared_mutex mu_;
  mutable std::mutex write_mu_;
  std::shared_ptr<const Snapshot> snap_;
};

}  // namespace glex
