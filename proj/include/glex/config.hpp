#pragma once

#include <chrono>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "glex/entry.hpp"
#include "glex/error.hpp"
#include "glex/persistence.hpp"

namespace glex {

enum class Role { Reader, Editor };

inline std::string_view to_string(Role r) { return r == Role::Reader ? "reader" : "editor"; }

struct User {
  std::string username;
  std::string password_hash;  // libsodium argon2id string ($argon2id$...)
  Role role = Role::Reader;
};

struct ServerConfig {
  std::string listen = "127.0.0.1:8389";
  std::vector<User> users;
  bool auth_required = true;
  NameSet containment_predicates = default_containment_predicates();
  std::string lexicon_path;  // empty: in-memory only, no flush
  std::chrono::seconds session_ttl{3600};
  std::string ui_dir;  // static assets served under /ui when set
};

// host:port; the port is required.
inline std::pair<std::string, int> split_listen(const std::string& listen) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == listen.size())
    throw InvalidArgument("listen must be host:port, got '" + listen + "'");
  int port = 0;
  for (char c : listen.substr(colon + 1)) {
    if (c < '0' || c > '9') throw InvalidArgument("bad port in '" + listen + "'");
    port = port * 10 + (c - '0');
    if (port > 65535) throw InvalidArgument("bad port in '" + listen + "'");
  }
  return {listen.substr(0, colon), port};
}

// JSON config keyed by the ServerConfig field names. Unknown keys are errors.
inline ServerConfig parse_config(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");

  static const std::set<std::string> known{"listen",         "users",
                                           "auth_required",  "containment_predicates",
                                           "lexicon_path",   "session_ttl",
                                           "ui_dir"};
  ServerConfig c;
  try {
    for (const auto& [k, v] : j.items()) {
      if (!known.contains(k)) throw InvalidArgument("unknown config key '" + k + "'");
    }
    if (j.contains("listen")) c.listen = j.at("listen").get<std::string>();
    split_listen(c.listen);
    if (j.contains("auth_required")) c.auth_required = j.at("auth_required").get<bool>();
    if (j.contains("lexicon_path")) c.lexicon_path = j.at("lexicon_path").get<std::string>();
    if (j.contains("ui_dir")) c.ui_dir = j.at("ui_dir").get<std::string>();
    if (j.contains("session_ttl")) {
      auto ttl = j.at("session_ttl").get<long long>();
      if (ttl <= 0) throw InvalidArgument("session_ttl must be positive");
      c.session_ttl = std::chrono::seconds(ttl);
    }
    if (j.contains("containment_predicates")) {
      c.containment_predicates.clear();
      for (const auto& n : j.at("containment_predicates"))
        c.containment_predicates.insert(n.get<std::string>());
      if (c.containment_predicates.empty())
        throw InvalidArgument("containment_predicates must not be empty");
    }
    if (j.contains("users")) {
      std::set<std::string> seen;
      for (const auto& u : j.at("users")) {
        User user;
        user.username = u.at("username").get<std::string>();
        user.password_hash = u.at("password_hash").get<std::string>();
        std::string role = u.at("role").get<std::string>();
        if (role == "reader") user.role = Role::Reader;
        else if (role == "editor") user.role = Role::Editor;
        else throw InvalidArgument("role must be reader or editor, got '" + role + "'");
        if (user.username.empty()) throw InvalidArgument("empty username");
        if (!user.password_hash.starts_with("$argon2id$"))
          throw InvalidArgument("password_hash for '" + user.username +
                                "' must be an argon2id hash");
        if (!seen.insert(user.username).second)
          throw InvalidArgument("duplicate user '" + user.username + "'");
        c.users.push_back(std::move(user));
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  return c;
}

inline ServerConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const NotFound& e) {
    throw InvalidArgument(e.what());
  }
  return parse_config(text);
}

}  // namespace glex
