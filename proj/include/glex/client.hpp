#pragma once

// Client library: the same read/write surface over either a running server
// (http://host:port) or a local lexicon file answered in-process.

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "glex/anaphora.hpp"
#include "glex/error.hpp"
#include "glex/json_codec.hpp"
#include "glex/persistence.hpp"
#include "glex/pretty.hpp"
#include "glex/service.hpp"

namespace glex {

struct Credentials {
  std::string username;
  std::string password;
};

namespace detail {

inline std::string percent_encode(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    bool plain = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                 (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' || c == '~';
    if (plain) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

// Re-raises a server error body as the matching exception type.
[[noreturn]] inline void rethrow_remote(int status, const std::string& body) {
  auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("error"))
    throw Error("HttpError", "HTTP " + std::to_string(status) + ": " + body);
  std::string kind = j.at("error").get<std::string>();
  std::string detail = j.value("detail", "");
  if (kind == "ValidationFailed")
    throw ValidationFailed(json::report_from_json(j.value("report", nlohmann::json{})));
  if (kind == "NoRelation")
    throw NoRelation(j.value("head", ""), j.value("modifier", ""),
                     j.value("reasons", std::vector<std::string>{}));
  if (kind == "SyntaxError")
    throw SyntaxError(j.value("offset", std::size_t{0}), j.value("message", detail));
  if (kind == "ParseError")
    throw ParseError(j.value("line", std::size_t{0}), j.value("message", detail));
#define GLEX_RETHROW(Name) \
  if (kind == #Name) throw Name(detail);
  GLEX_RETHROW(DuplicateVariable)
  GLEX_RETHROW(UnknownType)
  GLEX_RETHROW(DuplicateType)
  GLEX_RETHROW(InvalidArgument)
  GLEX_RETHROW(BadPath)
  GLEX_RETHROW(DuplicateKey)
  GLEX_RETHROW(NotFound)
  GLEX_RETHROW(Forbidden)
  GLEX_RETHROW(Unauthorized)
  GLEX_RETHROW(AuthFailed)
  GLEX_RETHROW(BadFilter)
  GLEX_RETHROW(BadRequest)
  GLEX_RETHROW(Conflict)
  GLEX_RETHROW(UnknownWord)
  GLEX_RETHROW(BadTemplate)
#undef GLEX_RETHROW
  throw Error(kind, detail);
}

}  // namespace detail

class Connection {
 public:
  enum class Mode { Remote, LocalFile };

  // "http://host:port" connects to a server; anything else (optionally
  // prefixed with "file:") is a lexicon file loaded in-process.
  static Connection connect(const std::string& address,
                            const std::optional<Credentials>& credentials = std::nullopt) {
    if (address.starts_with("http://")) return Connection(address, credentials);
    std::string path = address.starts_with("file:") ? address.substr(5) : address;
    Lexicon lex;
    try {
      lex = load_lexicon_file(path);
    } catch (const NotFound& e) {
      throw ConnectFailed(e.what());
    }
    ServerConfig cfg;
    cfg.auth_required = false;
    return Connection(std::make_unique<LexiconService>(std::move(cfg), std::move(lex)));
  }

  Mode mode() const { return local_ ? Mode::LocalFile : Mode::Remote; }
  const std::optional<std::string>& token() const { return token_; }

  std::vector<EntryKey> search_word(std::string_view word) {
    if (word.empty()) throw BadFilter("empty filter");
    if (local_) return local_->search(owner(), word);
    auto j = get_json("/entries?filter=" + detail::percent_encode(word));
    std::vector<EntryKey> out;
    for (const auto& k : j.at("keys")) out.push_back(json::key_from_json(k));
    return out;
  }

  LexicalEntry get_features(const EntryKey& key) {
    if (local_) return local_->fetch(owner(), key);
    return json::entry_from_json(get_json(entry_path(key)));
  }

  std::vector<std::string> get_feature_value(const EntryKey& key, std::string_view path) {
    if (local_) return local_->feature(owner(), key, path);
    auto j = get_json(entry_path(key) + "/features/" + detail::percent_encode(path));
    return j.at("values").get<std::vector<std::string>>();
  }

  TypeHierarchy types() {
    if (local_) return local_->types(owner());
    return json::hierarchy_from_json(get_json("/types"));
  }

  std::string save_lexicon(Format f) {
    if (local_) return local_->export_document(owner(), f);
    return request("GET", "/lexicon/export?format=" + format_name(f), "", "");
  }

  void save_lexicon(Format f, std::ostream& sink) { sink << save_lexicon(f); }

  ImportSummary restore_lexicon(Format f, std::string_view document) {
    if (local_) return local_->import_document(owner(), f, document);
    auto body = request("POST", "/lexicon/import?format=" + format_name(f),
                        std::string(document),
                        f == Format::Xml ? "application/xml" : "text/plain");
    auto j = nlohmann::json::parse(body);
    return {j.at("entries").get<std::size_t>(), j.at("types").get<std::size_t>()};
  }

  AnaphoraVerdict validate_anaphora(std::string_view head, std::string_view modifier,
                                    std::string_view tpl,
                                    Number possessor_number = Number::Singular) {
    if (local_) return local_->validate_anaphora(owner(), head, modifier, tpl, possessor_number);
    nlohmann::json body = {{"head", head},
                           {"modifier", modifier},
                           {"template", tpl},
                           {"possessor_number", std::string(to_string(possessor_number))}};
    auto out = request("POST", "/anaphora/validate", body.dump(), "application/json");
    return json::verdict_from_json(nlohmann::json::parse(out));
  }

  EntryKey put_entry(const LexicalEntry& e, const std::optional<std::string>& if_match = {}) {
    if (local_) return local_->upsert(owner(), e, if_match);
    httplib::Headers extra;
    if (if_match) extra.emplace("If-Match", "\"" + *if_match + "\"");
    request("PUT", entry_path(e.key()), json::to_json(e).dump(), "application/json", extra);
    return e.key();
  }

  void delete_entry(const EntryKey& key) {
    if (local_) return local_->remove(owner(), key);
    request("DELETE", entry_path(key), "", "");
  }

 private:
  explicit Connection(std::unique_ptr<LexiconService> local) : local_(std::move(local)) {}

  Connection(const std::string& address, const std::optional<Credentials>& credentials)
      : http_(std::make_unique<httplib::Client>(address)) {
    http_->set_url_encode(false);
    http_->set_connection_timeout(5);
    http_->set_read_timeout(30);
    if (credentials) {
      nlohmann::json body = {{"username", credentials->username},
                             {"password", credentials->password}};
      auto out = request("POST", "/session", body.dump(), "application/json");
      token_ = nlohmann::json::parse(out).at("token").get<std::string>();
    } else {
      get_json("/types");
    }
  }

  static Principal owner() { return Principal{"local", Role::Editor}; }

  static std::string format_name(Format f) { return f == Format::Xml ? "xml" : "ldif"; }

  static std::string entry_path(const EntryKey& key) {
    return "/entries/" + detail::percent_encode(key.lemma) + "/" + std::to_string(key.sense);
  }

  nlohmann::json get_json(const std::string& path) {
    return nlohmann::json::parse(request("GET", path, "", ""));
  }

  std::string request(const std::string& method, const std::string& path,
                      const std::string& body, const std::string& content_type,
                      httplib::Headers headers = {}) {
    if (token_) headers.emplace("Authorization", "Bearer " + *token_);
    httplib::Result res;
    if (method == "GET") res = http_->Get(path, headers);
    else if (method == "POST") res = http_->Post(path, headers, body, content_type);
    else if (method == "PUT") res = http_->Put(path, headers, body, content_type);
    else res = http_->Delete(path, headers);
    if (!res)
      throw ConnectFailed("request to server failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) detail::rethrow_remote(res->status, res->body);
    return res->body;
  }

  std::unique_ptr<LexiconService> local_;
  std::unique_ptr<httplib::Client> http_;
  std::optional<std::string> token_;
};

}  // namespace glex
