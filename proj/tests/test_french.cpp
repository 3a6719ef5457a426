#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "support/paradigm.hpp"

using namespace glex;
using namespace glex::testing;

TEST(Determiner, ParadigmTable) {
  std::set<std::tuple<int, int, int, bool, int>> covered;
  for (const auto& c : kParadigm) {
    AgreementFeatures f{c.gender, c.number, c.elision, c.possessor};
    EXPECT_EQ(realize_determiner(c.kind, f), c.form)
        << to_string(c.kind) << " " << to_string(c.gender) << " " << to_string(c.number)
        << " elision=" << c.elision << " poss=" << to_string(c.possessor);
    covered.insert({static_cast<int>(c.kind), static_cast<int>(c.gender),
                    static_cast<int>(c.number), c.elision, static_cast<int>(c.possessor)});
  }
  EXPECT_EQ(covered.size(), 48u);
}

TEST(Determiner, ExamplesFromTheData) {
  EXPECT_EQ(realize_determiner(POSS, {M, SG, false, SG}), "son");   // son cidre
  EXPECT_EQ(realize_determiner(POSS, {F, PL, false, PL}), "leurs"); // leurs roulettes
  EXPECT_EQ(realize_determiner(DEF, {F, SG, true, SG}), "l'");      // l'olive
  EXPECT_EQ(realize_determiner(DEF, {F, PL, true, SG}), "les");     // les olives
  EXPECT_EQ(realize_determiner(DEM, {F, PL, true, SG}), "ces");     // ces olives
}
