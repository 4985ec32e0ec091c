#include <gtest/gtest.h>

#include <random>

#include "werewolf/agents/alias.hpp"

using namespace werewolf;
using werewolf::agents::AliasMap;

TEST(AliasMap, RoundTripIsIdentity) {
  const std::vector<std::string> names = {"Marlowe", "Quennell", "Ada Vance", "Bo", "Ishiguro", "Tamsin"};
  AliasMap map(names);
  for (const auto& n : names) {
    const auto alias = map.alias_for_name(n);
    ASSERT_TRUE(alias);
    EXPECT_EQ(map.name_for_alias(*alias), n);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto alias = "P" + std::to_string(i + 1);
    EXPECT_EQ(map.alias_for_name(*map.name_for_alias(alias)), alias);
  }
}

TEST(AliasMap, ResolvesLabelsAndNames) {
  AliasMap map({"Marlowe", "Quennell", "Ada Vance"});
  EXPECT_EQ(map.resolve("P2"), PlayerId(2));
  EXPECT_EQ(map.resolve("p3"), PlayerId(3));
  EXPECT_EQ(map.resolve("Player 1"), PlayerId(1));
  EXPECT_EQ(map.resolve("ada vance"), PlayerId(3));
  EXPECT_EQ(map.resolve("P4"), std::nullopt);
  EXPECT_EQ(map.resolve("P0"), std::nullopt);
  EXPECT_EQ(map.resolve("Nobody"), std::nullopt);
}

TEST(AliasMap, ScrubReplacesWholeNamesLongestFirst) {
  AliasMap map({"Ann", "Annabel", "Bo"});
  EXPECT_EQ(map.scrub("Annabel and Ann met Bo, not Bobby."), "P2 and P1 met P3, not Bobby.");
}

TEST(AliasMap, ScrubRemovesEveryNameProperty) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> names = {"Marlowe", "Quennell", "Ada Vance", "Tamsin"};
  AliasMap map(names);
  for (int i = 0; i < 500; ++i) {
    std::string text;
    for (int w = 0; w < 12; ++w) {
      const auto r = rng() % 6;
      text += r < 4 ? names[r] : (r == 4 ? "said" : "hmm,");
      text += rng() % 3 ? " " : ". ";
    }
    const auto scrubbed = map.scrub(text);
    for (const auto& n : names) EXPECT_EQ(scrubbed.find(n), std::string::npos) << scrubbed;
  }
}
