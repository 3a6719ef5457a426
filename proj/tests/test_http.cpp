#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace glex;
using glex::testing::seed_entry;
using glex::testing::seed_lexicon;
using glex::testing::test_config;
using glex::testing::TestServer;
using Json = nlohmann::json;
namespace js = glex::json;

namespace {

class Http {
 public:
  explicit Http(const TestServer& s) : cli_("127.0.0.1", s.port()) {
    cli_.set_url_encode(false);
  }

  std::string login(const std::string& user, const std::string& pw) {
    auto res = cli_.Post("/session", Json{{"username", user}, {"password", pw}}.dump(),
                         "application/json");
    if (!res || res->status != 200) return "";
    return Json::parse(res->body).at("token").get<std::string>();
  }

  httplib::Result send(const std::string& method, const std::string& path,
                       const std::string& token = "", const std::string& body = "",
                       httplib::Headers headers = {}) {
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
    if (method == "GET") return cli_.Get(path, headers);
    if (method == "POST") return cli_.Post(path, headers, body, "application/json");
    if (method == "PUT") return cli_.Put(path, headers, body, "application/json");
    return cli_.Delete(path, headers);
  }

 private:
  httplib::Client cli_;
};

std::string error_of(const httplib::Result& r) {
  return Json::parse(r->body).value("error", "");
}

}  // namespace

TEST(Http, SessionAndAuthErrors) {
  TestServer server(test_config(), seed_lexicon());
  Http http(server);
  EXPECT_FALSE(http.login("ed", "editor-pass").empty());

  auto wrong_pw = http.send("POST", "/session", "",
                            Json{{"username", "ed"}, {"password", "nope"}}.dump());
  auto no_user = http.send("POST", "/session", "",
                           Json{{"username", "ghost"}, {"password", "nope"}}.dump());
  ASSERT_TRUE(wrong_pw && no_user);
  EXPECT_EQ(wrong_pw->status, 401);
  EXPECT_EQ(no_user->status, 401);
  EXPECT_EQ(wrong_pw->body, no_user->body);

  auto anon = http.send("GET", "/types");
  EXPECT_EQ(anon->status, 401);
  EXPECT_EQ(error_of(anon), "Unauthorized");
  EXPECT_EQ(http.send("GET", "/types", "forged")->status, 401);
  auto bad = http.send("POST", "/session", "", "{");
  EXPECT_EQ(bad->status, 400);
}

TEST(Http, RoleMatrix) {
  TestServer server(test_config(), seed_lexicon());
  Http http(server);
  std::string reader = http.login("rita", "reader-pass");
  std::string editor = http.login("ed", "editor-pass");

  LexicalEntry extra = seed_entry("vin");
  extra.sense = 2;
  std::string doc = export_ldif(seed_lexicon());
  Json anaphora = {{"head", "pressoir"}, {"modifier", "cidre"}, {"template", "%s %s %s"}};

  struct Endpoint {
    std::string name, method, path, body;
    bool editor_only;
  };
  std::vector<Endpoint> endpoints{
      {"search", "GET", "/entries?filter=pressoir", "", false},
      {"fetch", "GET", "/entries/pressoir/1", "", false},
      {"feature", "GET", "/entries/pressoir/1/features/qualia.telic.trigger", "", false},
      {"types", "GET", "/types", "", false},
      {"export", "GET", "/lexicon/export?format=ldif", "", false},
      {"anaphora", "POST", "/anaphora/validate", anaphora.dump(), false},
      {"put", "PUT", "/entries/vin/2", js::to_json(extra).dump(), true},
      {"delete", "DELETE", "/entries/vin/2", "", true},
      {"import", "POST", "/lexicon/import?format=ldif", doc, true},
  };
  for (const auto& ep : endpoints) {
    auto as_reader = http.send(ep.method, ep.path, reader, ep.body);
    ASSERT_TRUE(as_reader) << ep.name;
    EXPECT_EQ(as_reader->status, ep.editor_only ? 403 : 200) << ep.name << " reader";
    auto as_editor = http.send(ep.method, ep.path, editor, ep.body);
    ASSERT_TRUE(as_editor) << ep.name;
    EXPECT_EQ(as_editor->status, 200) << ep.name << " editor: " << as_editor->body;
    auto anon = http.send(ep.method, ep.path, "", ep.body);
    EXPECT_EQ(anon->status, 401) << ep.name << " anonymous";
  }
  EXPECT_EQ(server.service().snapshot()->lexicon, seed_lexicon());
}

TEST(Http, ReadEndpoints) {
  TestServer server(test_config(false), seed_lexicon());
  Http http(server);

  auto search = http.send("GET", "/entries?filter=lexicalType%3Dliquid");
  ASSERT_EQ(search->status, 200);
  Json keys = Json::parse(search->body).at("keys");
  ASSERT_EQ(keys.size(), 3u);
  EXPECT_EQ(keys[0], (Json{{"lemma", "cidre"}, {"sense", 1}}));

  auto fetched = http.send("GET", "/entries/pressoir/1");
  ASSERT_EQ(fetched->status, 200);
  EXPECT_EQ(js::entry_from_json(Json::parse(fetched->body)), seed_entry("pressoir"));
  EXPECT_EQ(fetched->get_header_value("ETag"), "\"" + entry_hash(seed_entry("pressoir")) + "\"");

  auto feature = http.send("GET", "/entries/pressoir/1/features/qualia.telic.trigger");
  EXPECT_EQ(Json::parse(feature->body).at("values"),
            Json::array({"press(e1:process,x:human,y:fruit)"}));

  EXPECT_EQ(http.send("GET", "/entries/pressoir/2")->status, 404);
  EXPECT_EQ(http.send("GET", "/entries/pressoir/0")->status, 404);
  EXPECT_EQ(http.send("GET", "/entries/pressoir/1/features/bogus")->status, 400);
  EXPECT_EQ(error_of(http.send("GET", "/entries?filter=a*b")), "BadFilter");
  EXPECT_EQ(http.send("GET", "/entries")->status, 400);

  auto types = http.send("GET", "/types");
  EXPECT_EQ(js::hierarchy_from_json(Json::parse(types->body)), seed_lexicon().hierarchy);

  auto xml = http.send("GET", "/lexicon/export?format=xml");
  EXPECT_EQ(xml->body, export_xml(seed_lexicon()));
  EXPECT_EQ(http.send("GET", "/lexicon/export?format=csv")->status, 400);
}

TEST(Http, AnaphoraEndpoint) {
  TestServer server(test_config(false), seed_lexicon());
  Http http(server);
  Json req = {{"head", "pressoir"},
              {"modifier", "olives"},
              {"template", "Ce %s est défectueux; %s %s restent entières."}};
  auto res = http.send("POST", "/anaphora/validate", "", req.dump());
  ASSERT_EQ(res->status, 200);
  auto v = js::verdict_from_json(Json::parse(res->body));
  EXPECT_EQ(v.category, RelationCategory::TelicTrigger);
  EXPECT_EQ(v.variants[1].rendered(), "* Ce pressoir est défectueux; ses olives restent entières.");

  req["modifier"] = "patin";
  res = http.send("POST", "/anaphora/validate", "", req.dump());
  EXPECT_EQ(res->status, 422);
  EXPECT_EQ(error_of(res), "NoRelation");
  EXPECT_EQ(Json::parse(res->body).at("reasons").size(), 5u);

  req["modifier"] = "olivez";
  EXPECT_EQ(http.send("POST", "/anaphora/validate", "", req.dump())->status, 404);
  req["modifier"] = "olive";
  req["template"] = "%s";
  EXPECT_EQ(error_of(http.send("POST", "/anaphora/validate", "", req.dump())), "BadTemplate");
  EXPECT_EQ(http.send("POST", "/anaphora/validate", "", "{}")->status, 400);
}

TEST(Http, WritesAndConflicts) {
  TestServer server(test_config(), seed_lexicon());
  Http http(server);
  std::string editor = http.login("ed", "editor-pass");

  auto got = http.send("GET", "/entries/vin/1", editor);
  std::string etag = got->get_header_value("ETag");
  LexicalEntry e = seed_entry("vin");
  e.cat = "Nc";
  auto put = http.send("PUT", "/entries/vin/1", editor, js::to_json(e).dump(),
                       {{"If-Match", etag}});
  EXPECT_EQ(put->status, 200);
  e.cat = "Nm";
  auto stale = http.send("PUT", "/entries/vin/1", editor, js::to_json(e).dump(),
                         {{"If-Match", etag}});
  EXPECT_EQ(stale->status, 409);
  EXPECT_EQ(error_of(stale), "Conflict");
  EXPECT_EQ(server.service().fetch({"", Role::Reader}, {"vin", 1}).cat, "Nc");

  // URL key and body key must agree.
  EXPECT_EQ(http.send("PUT", "/entries/vin/3", editor, js::to_json(e).dump())->status, 400);

  LexicalEntry invalid = e;
  invalid.lexical_type = TypeName("nectar");
  auto rejected = http.send("PUT", "/entries/vin/1", editor, js::to_json(invalid).dump());
  EXPECT_EQ(rejected->status, 422);
  EXPECT_FALSE(Json::parse(rejected->body).at("report").at("problems").empty());
  EXPECT_EQ(http.send("PUT", "/entries/vin/1", editor, "[1]")->status, 400);

  auto bad_import = http.send("POST", "/lexicon/import?format=ldif", editor, "dn: type=top\nx");
  EXPECT_EQ(bad_import->status, 400);
  EXPECT_EQ(error_of(bad_import), "ParseError");
  EXPECT_TRUE(Json::parse(bad_import->body).contains("line"));

  EXPECT_EQ(http.send("DELETE", "/entries/vin/1", editor)->status, 200);
  EXPECT_EQ(http.send("DELETE", "/entries/vin/1", editor)->status, 404);
}

TEST(Http, PercentEncodedLemma) {
  TestServer server(test_config(false), seed_lexicon());
  LexicalEntry e = seed_entry("olive");
  e.lemma = "pomme de terre é";
  server.service().upsert({"t", Role::Editor}, e);
  Http http(server);
  auto res = http.send("GET", "/entries/" + detail::percent_encode(e.lemma) + "/1");
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body).at("lemma"), e.lemma);
  auto search = http.send("GET", "/entries?filter=" + detail::percent_encode("pomme*"));
  EXPECT_EQ(Json::parse(search->body).at("keys").size(), 1u);
}

TEST(Http, UiMount) {
  auto dir = std::filesystem::temp_directory_path() / ("glex-ui-" + random_token().substr(0, 8));
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "index.html") << "<html>ui</html>";
  auto cfg = test_config();
  cfg.ui_dir = dir.string();
  {
    TestServer server(cfg, seed_lexicon());
    Http http(server);
    auto res = http.send("GET", "/ui/index.html");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(res->body, "<html>ui</html>");
  }
  std::filesystem::remove_all(dir);
}
