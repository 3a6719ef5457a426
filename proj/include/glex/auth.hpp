#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <sodium.h>

#include "glex/config.hpp"
#include "glex/error.hpp"

namespace glex {

using Clock = std::function<std::chrono::system_clock::time_point()>;

inline Clock system_clock() {
  return [] { return std::chrono::system_clock::now(); };
}

inline void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialisation failed");
}

enum class HashCost { Interactive, Minimal };

// argon2id; Minimal is for tests and throwaway configs.
inline std::string hash_password(std::string_view password,
                                 HashCost cost = HashCost::Interactive) {
  ensure_sodium();
  char out[crypto_pwhash_STRBYTES];
  auto ops = cost == HashCost::Interactive ? crypto_pwhash_OPSLIMIT_INTERACTIVE
                                           : crypto_pwhash_OPSLIMIT_MIN;
  auto mem = cost == HashCost::Interactive ? crypto_pwhash_MEMLIMIT_INTERACTIVE
                                           : crypto_pwhash_MEMLIMIT_MIN;
  if (crypto_pwhash_str_alg(out, password.data(), password.size(), ops, mem,
                            crypto_pwhash_ALG_ARGON2ID13) != 0)
    throw std::runtime_error("password hashing ran out of memory");
  return out;
}

inline bool verify_password(const std::string& hash, std::string_view password) {
  ensure_sodium();
  return crypto_pwhash_str_verify(hash.c_str(), password.data(), password.size()) == 0;
}

// 128 random bits, lowercase hex.
inline std::string random_token() {
  ensure_sodium();
  unsigned char bytes[16];
  randombytes_buf(bytes, sizeof bytes);
  char hex[sizeof bytes * 2 + 1];
  sodium_bin2hex(hex, sizeof hex, bytes, sizeof bytes);
  return hex;
}

struct Session {
  std::string token;
  std::string username;
  Role role;
  std::chrono::system_clock::time_point expires;
};

struct Principal {
  std::string username;  // empty for anonymous readers
  Role role;
};

class SessionStore {
 public:
  SessionStore(std::vector<User> users, std::chrono::seconds ttl, Clock clock)
      : users_(std::move(users)), ttl_(ttl), clock_(std::move(clock)) {}

  // Unknown users and wrong passwords fail identically, after the same
  // amount of hashing work.
  Session bind(const std::string& username, std::string_view password) {
    const User* user = nullptr;
    for (const auto& u : users_)
      if (u.username == username) user = &u;
    bool ok = false;
    if (user) {
      ok = verify_password(user->password_hash, password);
    } else if (!users_.empty()) {
      verify_password(users_.front().password_hash, password);
    }
    if (!ok) throw AuthFailed("invalid credentials");

    Session s{random_token(), user->username, user->role, clock_() + ttl_};
    std::lock_guard lock(mu_);
    purge_locked();
    sessions_[s.token] = s;
    return s;
  }

  std::optional<Principal> lookup(const std::string& token) {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(token);
    if (it == sessions_.end()) return std::nullopt;
    if (clock_() >= it->second.expires) {
      sessions_.erase(it);
      return std::nullopt;
    }
    return Principal{it->second.username, it->second.role};
  }

 private:
  void purge_locked() {
    auto now = clock_();
    for (auto it = sessions_.begin(); it != sessions_.end();)
      it = now >= it->second.expires ? sessions_.erase(it) : std::next(it);
  }

  std::vector<User> users_;
  std::chrono::seconds ttl_;
  Clock clock_;
  std::mutex mu_;
  std::map<std::string, Session> sessions_;
};

}  // namespace glex
