#include <set>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace glex;
using glex::testing::seed_entry;
using glex::testing::seed_lexicon;

TEST(PrettyPrint, PressoirGolden) {
  std::string golden = read_file(std::string(GLEX_SOURCE_DIR) + "/tests/golden/pressoir.txt");
  EXPECT_EQ(pretty_print(seed_entry("pressoir")), golden);
  EXPECT_NE(golden.find("\n    TRIGGER = press(e1:process,x:human,y:fruit)\n"), std::string::npos);
}

TEST(PrettyPrint, MinimalEntryIsHeaderOnly) {
  LexicalEntry e;
  e.lemma = "eau";
  e.sense = 2;
  e.gender = Gender::Feminine;
  e.elision = true;
  e.lexical_type = TypeName("liquid");
  EXPECT_EQ(pretty_print(e), "eau#2 (N, f, +elision) : liquid\n");
}

TEST(PrettyPrint, ConstListsEveryPredicate) {
  LexicalEntry e = seed_entry("patin");
  e.qualia.constitutive.push_back(parse_predicate("part_of(b:wheel,x:skate)"));
  std::string text = pretty_print(e);
  EXPECT_NE(text.find("  CONST = part_of(y:wheel,x:skate)\n  CONST = part_of(b:wheel,x:skate)\n"),
            std::string::npos);
}

TEST(PrettyPrint, DeterministicAndInjectiveOnSeed) {
  std::set<std::string> seen;
  for (const auto& [key, e] : seed_lexicon().entries) {
    std::string text = pretty_print(e);
    EXPECT_EQ(text, pretty_print(e));
    EXPECT_TRUE(seen.insert(text).second) << key.str();
  }
}
