// glex: command-line front end for the lexicon toolkit.
//
// Exit codes: 0 success, 1 domain error, 2 usage or configuration error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>

#include "glex/glex.hpp"

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string lexicon = "data/seed.ldif";
  std::string server;
  std::string user;
  std::string password;

  void add_to(CLI::App* cmd) {
    auto* lex = cmd->add_option("--lexicon", lexicon, "Lexicon file (.ldif or .xml)");
    auto* srv = cmd->add_option("--server", server, "Server URL, e.g. http://127.0.0.1:8389");
    lex->excludes(srv);
    cmd->add_option("--user", user, "Username for --server");
    cmd->add_option("--password", password, "Password for --server");
  }

  glex::Connection open() const {
    if (server.empty()) return glex::Connection::connect(lexicon);
    std::optional<glex::Credentials> creds;
    if (!user.empty()) creds = glex::Credentials{user, password};
    return glex::Connection::connect(server, creds);
  }
};

glex::Format format_of(const std::string& name) {
  auto f = glex::parse_format(name);
  if (!f) throw UsageError("format must be ldif or xml");
  return *f;
}

int run_demo(const Source& src, const std::string& head, const std::string& modifier,
             const std::string& tpl, const std::string& possessor) {
  auto number = glex::parse_number(possessor);
  if (!number) throw UsageError("--possessor-number must be sg or pl");
  auto conn = src.open();
  auto verdict = conn.validate_anaphora(head, modifier, tpl, *number);
  for (const auto& v : verdict.variants) std::cout << v.rendered() << '\n';
  for (const auto& d : verdict.diagnostics) std::cerr << d << '\n';
  return 0;
}

int run_get(const Source& src, const std::string& word, const std::string& path) {
  auto conn = src.open();
  auto keys = conn.search_word(word);
  if (keys.empty()) throw glex::UnknownWord("unknown word '" + word + "'");
  bool first = true;
  for (const auto& key : keys) {
    if (!path.empty()) {
      for (const auto& v : conn.get_feature_value(key, path)) std::cout << v << '\n';
      continue;
    }
    if (!first) std::cout << '\n';
    std::cout << glex::pretty_print(conn.get_features(key));
    first = false;
  }
  return 0;
}

int run_export(const Source& src, const std::string& format, const std::string& file) {
  glex::Format f = format_of(format);
  auto conn = src.open();
  std::string doc = conn.save_lexicon(f);
  if (file.empty() || file == "-") {
    std::cout << doc;
    return 0;
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << doc;
  if (!out) throw glex::Error("IoError", "cannot write '" + file + "'");
  return 0;
}

// With --server the document replaces the server's lexicon; with --lexicon it
// is converted into that file; with neither it is only checked.
int run_import(const Source& src, bool lexicon_given, const std::string& format,
               const std::string& file) {
  glex::Format f = format_of(format);
  std::string doc = glex::read_file(file);
  glex::ImportSummary summary;
  if (!src.server.empty()) {
    summary = src.open().restore_lexicon(f, doc);
  } else {
    glex::Lexicon lex = glex::import_lexicon(doc, f);
    summary = {lex.entries.size(), lex.hierarchy.size()};
    if (lexicon_given) {
      std::ofstream out(src.lexicon, std::ios::binary | std::ios::trunc);
      out << glex::export_lexicon(lex, glex::format_for_path(src.lexicon));
      if (!out) throw glex::Error("IoError", "cannot write '" + src.lexicon + "'");
    }
  }
  std::cout << "imported " << summary.entries << " entries, " << summary.types << " types\n";
  return 0;
}

int run_serve(const std::string& config_path) {
  glex::ServerConfig cfg;
  glex::Lexicon lex;
  std::pair<std::string, int> addr;
  try {
    cfg = glex::load_config(config_path);
    addr = glex::split_listen(cfg.listen);
    if (!cfg.lexicon_path.empty())
      lex = glex::load_lexicon_file(cfg.lexicon_path, cfg.containment_predicates);
  } catch (const glex::Error& e) {
    throw UsageError(std::string("bad configuration: ") + e.what());
  }

  // Block termination signals before any thread starts; a dedicated thread
  // waits for them and stops the server.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  glex::LexiconService service(cfg, std::move(lex));
  glex::HttpServer server(service);
  int port = addr.second;
  if (port == 0) {
    port = server.bind_any_port(addr.first);
    if (port < 0) throw UsageError("cannot bind " + addr.first);
  } else if (!server.bind(addr.first, port)) {
    throw UsageError("cannot bind " + cfg.listen);
  }
  std::cerr << "listening on " << addr.first << ":" << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen_after_bind();
  service.flush();
  std::cerr << "stopped" << std::endl;
  waiter.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generative lexicon toolkit"};
  app.require_subcommand(1);

  Source src;
  std::string head, modifier, tpl, possessor = "sg";
  auto* demo = app.add_subcommand("demo", "Generate anaphora variants for a compound");
  demo->add_option("head", head, "Head noun (surface form)")->required();
  demo->add_option("modifier", modifier, "Modifier noun (surface form)")->required();
  demo->add_option("template", tpl, "Sentence template with three %s")->required();
  demo->add_option("--possessor-number", possessor, "sg or pl")
      ->check(CLI::IsMember({"sg", "pl"}));
  src.add_to(demo);

  std::string config_path;
  auto* serve = app.add_subcommand("serve", "Run the lexicon server");
  serve->add_option("--config", config_path, "Server config (JSON)")->required();

  std::string word, path;
  auto* get = app.add_subcommand("get", "Pretty-print an entry or one feature");
  get->add_option("word", word, "Lemma")->required();
  get->add_option("--path", path, "Attribute path, e.g. qualia.telic.trigger");
  src.add_to(get);

  std::string format, file;
  auto* exp = app.add_subcommand("export", "Save the lexicon");
  exp->add_option("--format", format, "ldif or xml")->required();
  exp->add_option("file", file, "Output file (default stdout)");
  src.add_to(exp);

  auto* imp = app.add_subcommand("import", "Load a lexicon document");
  imp->add_option("--format", format, "ldif or xml")->required();
  imp->add_option("file", file, "Input file")->required();
  src.add_to(imp);

  std::string password;
  auto* hash = app.add_subcommand("hash-password", "Print an argon2id hash for a config file");
  hash->add_option("password", password)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*demo) return run_demo(src, head, modifier, tpl, possessor);
    if (*serve) return run_serve(config_path);
    if (*get) return run_get(src, word, path);
    if (*exp) return run_export(src, format, file);
    if (*imp) return run_import(src, imp->count("--lexicon") > 0, format, file);
    if (*hash) {
      std::cout << glex::hash_password(password) << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "glex: " << e.what() << '\n';
    return kUsageError;
  } catch (const glex::NoRelation& e) {
    std::cerr << "glex: " << e.what() << '\n';
    for (const auto& r : e.reasons()) std::cerr << "  " << r << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "glex: " << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}
