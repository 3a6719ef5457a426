#pragma once

#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "glex/glex.hpp"

namespace glex::testing {

inline std::string seed_path() { return std::string(GLEX_SOURCE_DIR) + "/data/seed.ldif"; }

inline const Lexicon& seed_lexicon() {
  static const Lexicon lex = load_lexicon_file(seed_path());
  return lex;
}

inline const LexicalEntry& seed_entry(const std::string& lemma) {
  const auto* e = seed_lexicon().find({lemma, 1});
  if (!e) throw std::runtime_error("seed entry missing: " + lemma);
  return *e;
}

// Immediate-supertype edges of the shipped seed hierarchy, written out by
// hand so tests do not derive their oracle from the code under test.
inline const std::vector<std::pair<std::string, std::string>>& seed_edges() {
  static const std::vector<std::pair<std::string, std::string>> edges{
      {"entity", "top"},     {"physical", "entity"}, {"artifact", "physical"},
      {"human", "physical"}, {"fruit", "physical"},  {"liquid", "physical"},
      {"glass", "artifact"}, {"bottle", "artifact"}, {"press", "artifact"},
      {"skate", "artifact"}, {"wheel", "artifact"},  {"wine", "liquid"},
      {"cider", "liquid"},   {"juice", "liquid"},    {"olive", "fruit"},
      {"lemon", "fruit"},    {"event", "top"},       {"process", "event"},
      {"state", "event"}};
  return edges;
}

// Floyd-Warshall style reflexive-transitive closure over the raw edge list.
inline std::map<std::pair<std::string, std::string>, bool> seed_closure() {
  std::set<std::string> nodes{"top"};
  for (const auto& [c, p] : seed_edges()) {
    nodes.insert(c);
    nodes.insert(p);
  }
  std::map<std::pair<std::string, std::string>, bool> reach;
  for (const auto& a : nodes)
    for (const auto& b : nodes) reach[{a, b}] = (a == b);
  for (const auto& [c, p] : seed_edges()) reach[{c, p}] = true;
  for (const auto& k : nodes)
    for (const auto& i : nodes)
      for (const auto& j : nodes)
        if (reach[{i, k}] && reach[{k, j}]) reach[{i, j}] = true;
  return reach;
}

// Random valid lexicons over the seed hierarchy, optionally extended with a
// few fresh types.
class LexiconGenerator {
 public:
  explicit LexiconGenerator(unsigned seed) : rng_(seed) {}

  Lexicon operator()() {
    Lexicon lex{seed_lexicon().hierarchy, {}};
    int extra = pick(0, 3);
    for (int i = 0; i < extra; ++i) {
      const auto& nodes = lex.hierarchy.nodes();
      std::string name = "gen-" + std::to_string(counter_++);
      std::vector<std::string> parents{nodes[idx(nodes.size())]};
      if (coin()) parents.push_back(nodes[idx(nodes.size())]);
      lex.hierarchy = lex.hierarchy.add_type(name, parents);
    }
    int n = pick(0, 12);
    for (int i = 0; i < n; ++i) {
      LexicalEntry e = entry(lex.hierarchy);
      lex.entries.insert_or_assign(e.key(), e);
    }
    auto report = lex.validate();
    if (!report.ok()) throw std::logic_error("generator produced: " + report.summary());
    return lex;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::size_t idx(std::size_t n) { return static_cast<std::size_t>(pick(0, static_cast<int>(n) - 1)); }
  bool coin() { return pick(0, 1) == 1; }

  std::string lemma() {
    static const std::vector<std::string> syl{"pre", "ssoir", "ver", "re", "ci", "dre", "é",
                                              "à", "ç", "œu", "lu", "ne", "tte", " de "};
    std::string s;
    int parts = pick(1, 4);
    for (int i = 0; i < parts; ++i) s += syl[idx(syl.size())];
    while (!s.empty() && s.front() == ' ') s.erase(0, 1);
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s.empty() ? "mot" : s;
  }

  TypeName any_type(const TypeHierarchy& h) {
    const auto& nodes = h.nodes();
    return TypeName(nodes[idx(nodes.size())]);
  }

  TypeName event_type(const TypeHierarchy& h) {
    std::vector<std::string> events;
    for (const auto& n : h.nodes())
      if (h.subtype(n, "event")) events.push_back(n);
    return TypeName(events[idx(events.size())]);
  }

  LexicalEntry entry(const TypeHierarchy& h) {
    LexicalEntry e;
    e.lemma = lemma();
    e.sense = pick(1, 3);
    static const std::vector<std::string> cats{"N", "V", "A"};
    e.cat = cats[idx(cats.size())];
    e.gender = coin() ? Gender::Masculine : Gender::Feminine;
    e.elision = coin();
    e.lexical_type = any_type(h);

    static const std::vector<std::string> ivars{"x", "y", "z", "w"};
    int nargs = pick(0, 3);
    for (int i = 0; i < nargs; ++i) e.args.push_back({ivars[static_cast<std::size_t>(i)], any_type(h)});
    int nevents = pick(0, 2);
    for (int i = 0; i < nevents; ++i)
      e.events.push_back({(coin() ? "e" : "s") + std::to_string(i + 1), event_type(h)});

    std::vector<TypedArg> declared = e.args;
    declared.insert(declared.end(), e.events.begin(), e.events.end());
    int role = 0;
    auto predicate = [&](const std::string& name) {
      Predicate p{name, {}};
      std::set<std::string> used;
      int local = 0;
      int nargs = pick(1, 3);
      for (int i = 0; i < nargs; ++i) {
        if (!declared.empty() && coin()) {
          const auto& d = declared[idx(declared.size())];
          if (used.insert(d.var).second) p.args.push_back(d);
        } else {
          std::string var = "l" + std::to_string(role) + "v" + std::to_string(local++);
          used.insert(var);
          p.args.push_back({var, any_type(h)});
        }
      }
      if (p.args.empty()) p.args.push_back({"l" + std::to_string(role) + "v9", any_type(h)});
      ++role;
      return p;
    };
    static const std::vector<std::string> names{"make", "press", "hold", "roll", "exist"};
    auto some = [&] { return names[idx(names.size())]; };
    auto& q = e.qualia;
    if (coin()) q.formal = predicate(some());
    int nconst = pick(0, 2);
    for (int i = 0; i < nconst; ++i) q.constitutive.push_back(predicate("part_of"));
    if (coin()) q.telic_state = predicate("contain");
    if (coin()) q.telic_trigger = predicate(some());
    if (coin()) q.telic_result = predicate(some());
    if (coin()) q.agentive = predicate(some());
    return e;
  }

  std::mt19937 rng_;
  int counter_ = 0;
};

inline User test_user(const std::string& name, const std::string& password, Role role) {
  static std::map<std::string, std::string> cache;
  auto& hash = cache[name + ":" + password];
  if (hash.empty()) hash = hash_password(password, HashCost::Minimal);
  return User{name, hash, role};
}

inline ServerConfig test_config(bool auth_required = true) {
  ServerConfig cfg;
  cfg.listen = "127.0.0.1:0";
  cfg.auth_required = auth_required;
  cfg.users = {test_user("rita", "reader-pass", Role::Reader),
               test_user("ed", "editor-pass", Role::Editor)};
  return cfg;
}

// A LexiconService behind an HttpServer on an ephemeral port.
class TestServer {
 public:
  TestServer(ServerConfig cfg, Lexicon lex, Clock clock = system_clock())
      : service_(std::move(cfg), std::move(lex), std::move(clock)), http_(service_) {
    port_ = http_.bind_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind test server");
    thread_ = std::thread([this] { http_.listen_after_bind(); });
    http_.wait_until_ready();
  }

  ~TestServer() {
    http_.stop();
    thread_.join();
  }

  TestServer(const TestServer&) = delete;
  TestServer& operator=(const TestServer&) = delete;

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int port() const { return port_; }
  LexiconService& service() { return service_; }

 private:
  LexiconService service_;
  HttpServer http_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace glex::testing
