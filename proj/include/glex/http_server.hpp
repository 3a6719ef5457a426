#pragma once

// HTTP/JSON front end for LexiconService.
//
//   POST   /session                              {username,password} -> {token,expires}
//   GET    /entries?filter=F                     -> {keys:[{lemma,sense}]}
//   GET    /entries/{lemma}/{sense}              -> entry (ETag: content hash)
//   PUT    /entries/{lemma}/{sense}              entry [If-Match] -> {lemma,sense}
//   DELETE /entries/{lemma}/{sense}
//   GET    /entries/{lemma}/{sense}/features/{path} -> {values:[...]}
//   GET    /lexicon/export?format=ldif|xml       -> document
//   POST   /lexicon/import?format=ldif|xml       document -> {entries,types}
//   POST   /anaphora/validate                    {head,modifier,template,possessor_number}
//   GET    /types                                -> {root,types:[{name,parents}]}
//
// Errors are {error, detail} with extra fields for structured errors.

#include <chrono>
#include <functional>
#include <optional>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "glex/error.hpp"
#include "glex/json_codec.hpp"
#include "glex/persistence.hpp"
#include "glex/service.hpp"

namespace glex {

inline int http_status(const Error& e) {
  const std::string& k = e.kind();
  if (k == "AuthFailed" || k == "Unauthorized") return 401;
  if (k == "Forbidden") return 403;
  if (k == "NotFound" || k == "UnknownWord") return 404;
  if (k == "Conflict") return 409;
  if (k == "ValidationFailed" || k == "NoRelation") return 422;
  if (k == "IoError") return 500;
  return 400;
}

inline nlohmann::json error_body(const Error& e) {
  nlohmann::json j = {{"error", e.kind()}, {"detail", e.what()}};
  if (const auto* v = dynamic_cast<const ValidationFailed*>(&e))
    j["report"] = json::to_json(v->report());
  if (const auto* n = dynamic_cast<const NoRelation*>(&e)) {
    j["head"] = n->head();
    j["modifier"] = n->modifier();
    j["reasons"] = n->reasons();
  }
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) {
    j["offset"] = s->offset();
    j["message"] = s->message();
  }
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    j["line"] = p->line();
    j["message"] = p->message();
  }
  return j;
}

class HttpServer {
 public:
  explicit HttpServer(LexiconService& service) : service_(service) { routes(); }

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Blocks until stop().
  bool listen(const std::string& host, int port) { return server_.listen(host, port); }

  // Binds an ephemeral port; pair with listen_after_bind() on another thread.
  int bind_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  bool listen_after_bind() { return server_.listen_after_bind(); }

  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  bool is_running() const { return server_.is_running(); }

 private:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  static void send_json(httplib::Response& res, const nlohmann::json& j, int status = 200) {
    res.status = status;
    res.set_content(j.dump(), "application/json; charset=utf-8");
  }

  // Wraps a handler with error-to-JSON mapping.
  Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const Error& e) {
        send_json(res, error_body(e), http_status(e));
      } catch (const nlohmann::json::exception& e) {
        send_json(res, {{"error", "BadRequest"}, {"detail", e.what()}}, 400);
      } catch (const std::exception& e) {
        send_json(res, {{"error", "Internal"}, {"detail", e.what()}}, 500);
      }
    };
  }

  Principal principal(const httplib::Request& req) {
    std::optional<std::string> token;
    if (req.has_header("Authorization")) {
      std::string h = req.get_header_value("Authorization");
      constexpr std::string_view bearer = "Bearer ";
      if (!h.starts_with(bearer)) throw Unauthorized("expected a Bearer token");
      token = h.substr(bearer.size());
    }
    return service_.authenticate(token);
  }

  static EntryKey key_from(const httplib::Request& req) {
    const std::string& sense = req.matches[2];
    if (sense.size() > 9 || sense.empty() || sense[0] == '0')
      throw NotFound("no entry " + std::string(req.matches[1]) + "#" + sense);
    return {req.matches[1], std::stoi(sense)};
  }

  static Format format_from(const httplib::Request& req) {
    auto f = parse_format(req.get_param_value("format"));
    if (!f) throw BadFilter("format must be ldif or xml");
    return *f;
  }

  static nlohmann::json parse_body(const httplib::Request& req) {
    auto j = nlohmann::json::parse(req.body, nullptr, false);
    if (j.is_discarded()) throw BadRequest("request body is not valid JSON");
    return j;
  }

  void routes() {
    namespace js = glex::json;
    using nlohmann::json;
    constexpr const char* kEntry = R"(/entries/([^/]+)/([0-9]+))";

    server_.Post("/session", guarded([this](const auto& req, auto& res) {
      json body = parse_body(req);
      if (!body.is_object() || !body.contains("username") || !body.contains("password"))
        throw BadRequest("username and password required");
      Session s = service_.bind(body.at("username").get<std::string>(),
                                body.at("password").get<std::string>());
      auto expires = std::chrono::duration_cast<std::chrono::seconds>(
                         s.expires.time_since_epoch()).count();
      send_json(res, {{"token", s.token},
                      {"expires", expires},
                      {"role", std::string(to_string(s.role))}});
    }));

    server_.Get("/entries", guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      if (!req.has_param("filter")) throw BadFilter("filter parameter required");
      json keys = json::array();
      for (const auto& k : service_.search(p, req.get_param_value("filter")))
        keys.push_back(js::to_json(k));
      send_json(res, {{"keys", keys}});
    }));

    server_.Get(std::string(kEntry) + "/features/([^/]+)",
                guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      send_json(res, {{"values", service_.feature(p, key_from(req), std::string(req.matches[3]))}});
    }));

    server_.Get(kEntry, guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      LexicalEntry e = service_.fetch(p, key_from(req));
      res.set_header("ETag", "\"" + entry_hash(e) + "\"");
      send_json(res, js::to_json(e));
    }));

    server_.Put(kEntry, guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      EntryKey key = key_from(req);
      LexicalEntry e = js::entry_from_json(parse_body(req));
      if (e.key() != key) throw BadRequest("body key does not match the URL");
      std::optional<std::string> if_match;
      if (req.has_header("If-Match")) {
        std::string tag = req.get_header_value("If-Match");
        if (tag.size() >= 2 && tag.front() == '"' && tag.back() == '"')
          tag = tag.substr(1, tag.size() - 2);
        if_match = tag;
      }
      service_.upsert(p, std::move(e), if_match);
      send_json(res, js::to_json(key));
    }));

    server_.Delete(kEntry, guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      EntryKey key = key_from(req);
      service_.remove(p, key);
      send_json(res, js::to_json(key));
    }));

    server_.Get("/lexicon/export", guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      Format f = format_from(req);
      res.set_content(service_.export_document(p, f),
                      f == Format::Xml ? "application/xml; charset=utf-8"
                                       : "text/plain; charset=utf-8");
    }));

    server_.Post("/lexicon/import", guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      Format f = format_from(req);
      ImportSummary s = service_.import_document(p, f, req.body);
      send_json(res, {{"entries", s.entries}, {"types", s.types}});
    }));

    server_.Post("/anaphora/validate", guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      json body = parse_body(req);
      if (!body.is_object()) throw BadRequest("expected a JSON object");
      Number possessor = Number::Singular;
      if (body.contains("possessor_number")) {
        auto n = parse_number(body.at("possessor_number").get<std::string>());
        if (!n) throw BadRequest("possessor_number must be sg or pl");
        possessor = *n;
      }
      auto v = service_.validate_anaphora(p, body.at("head").get<std::string>(),
                                          body.at("modifier").get<std::string>(),
                                          body.at("template").get<std::string>(),
                                          possessor);
      send_json(res, js::to_json(v));
    }));

    server_.Get("/types", guarded([this](const auto& req, auto& res) {
      Principal p = principal(req);
      send_json(res, js::to_json(service_.types(p)));
    }));

    if (!service_.config().ui_dir.empty())
      server_.set_mount_point("/ui", service_.config().ui_dir);
  }

  LexiconService& service_;
  httplib::Server server_;
};

}  // namespace glex
