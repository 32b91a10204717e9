// Copyright 2026 The yadr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "testing.hpp"
#include "yadr/grapheme.hpp"
#include "yadr/inventory.hpp"
#include "yadr/text.hpp"

namespace yadr {
namespace {

using Set = std::set<std::string>;

Set AsSet(const std::vector<std::string>& v) { return Set(v.begin(), v.end()); }

//===----------------------------------------------------------------------===//
// Grapheme
//===----------------------------------------------------------------------===//

TEST(GraphemeTest, AdmissibilityRules) {
  EXPECT_TRUE(Grapheme::Admissible('e', Tone::kLow, true));
  EXPECT_TRUE(Grapheme::Admissible('s', Tone::kNone, true));
  EXPECT_FALSE(Grapheme::Admissible('a', Tone::kNone, true));   // no a-underdot
  EXPECT_FALSE(Grapheme::Admissible('s', Tone::kHigh, false));  // s takes no tone
  EXPECT_FALSE(Grapheme::Admissible('e', Tone::kRising, false));
  EXPECT_TRUE(Grapheme::Admissible('o', Tone::kRising, false));
  EXPECT_TRUE(Grapheme::Admissible('n', Tone::kMacron, false));
  EXPECT_FALSE(Grapheme::Admissible('a', Tone::kMacron, false));
  EXPECT_FALSE(Grapheme::Admissible('A', Tone::kNone, false));
}

TEST(GraphemeTest, ComposeThenParseIsIdentityForEveryAdmissibleValue) {
  int checked = 0;
  for (char base = 'a'; base <= 'z'; ++base)
    for (Tone tone : {Tone::kNone, Tone::kLow, Tone::kHigh, Tone::kRising, Tone::kMacron})
      for (bool dot : {false, true})
        for (bool upper : {false, true}) {
          if (!Grapheme::Admissible(base, tone, dot)) continue;
          const Grapheme g{base, tone, dot, upper};
          const std::string composed = g.Compose();
          EXPECT_EQ(composed, Normalize(composed));
          const auto parsed = Grapheme::Parse(composed);
          ASSERT_TRUE(parsed.has_value()) << composed;
          EXPECT_EQ(*parsed, g) << composed;
          ++checked;
        }
  // 26 bare + 3 dotted + 12 low/high + 4 dotted low/high + 3 rising
  // + 1 dotted rising + 1 macron, in both cases.
  EXPECT_EQ(checked, 100);
}

TEST(GraphemeTest, ParseRejectsForeignAndDuplicateMarks) {
  EXPECT_FALSE(Grapheme::Parse("ş").has_value());   // cedilla
  EXPECT_FALSE(Grapheme::Parse("ạ").has_value());   // a with dot below
  EXPECT_FALSE(Grapheme::Parse("ẽ").has_value());   // tilde
  EXPECT_FALSE(Grapheme::Parse("ò\u0301").has_value());  // two tones
  EXPECT_FALSE(Grapheme::Parse("ß").has_value());
  EXPECT_FALSE(Grapheme::Parse("").has_value());
}

TEST(GraphemeTest, ParseKeepsCase) {
  const auto g = Grapheme::Parse("Ọ\u0300");
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(g->base, 'o');
  EXPECT_TRUE(g->uppercase);
  EXPECT_TRUE(g->underdot);
  EXPECT_EQ(g->tone, Tone::kLow);
}

//===----------------------------------------------------------------------===//
// Inventory
//===----------------------------------------------------------------------===//

TEST(InventoryTest, TableRowsExactly) {
  EXPECT_EQ(AsSet(Expansions('a')), (Set{"a", "à", "á", "ǎ"}));
  EXPECT_EQ(AsSet(Expansions('e')), (Set{"e", "è", "é", "ẹ", "ẹ\u0300", "ẹ\u0301"}));
  EXPECT_EQ(AsSet(Expansions('i')), (Set{"i", "ì", "í"}));
  EXPECT_EQ(AsSet(Expansions('o')), (Set{"o", "ò", "ó", "ọ", "ọ\u0300", "ọ\u0301", "ǒ"}));
  EXPECT_EQ(AsSet(Expansions('u')), (Set{"u", "ù", "ú", "ǔ"}));
  EXPECT_EQ(AsSet(Expansions('n')), (Set{"n", "ǹ", "ń", "n\u0304"}));
  EXPECT_EQ(AsSet(Expansions('s')), (Set{"s", "ṣ"}));
  EXPECT_EQ(Expansions('o').size(), 7u);
}

TEST(InventoryTest, OtherLettersAreSingletons) {
  for (char c : std::string("bcdfghjklmpqrtvwxyz")) EXPECT_EQ(Expansions(c), (std::vector<std::string>{std::string(1, c)}));
}

TEST(InventoryTest, UnmarkedFormComesFirst) {
  for (char c = 'a'; c <= 'z'; ++c) EXPECT_EQ(Expansions(c).front(), std::string(1, c));
}

TEST(InventoryTest, NonLetterIsInvalidArgument) {
  EXPECT_THROW(Expansions('1'), InvalidArgument);
  EXPECT_THROW(Expansions('A'), InvalidArgument);
  EXPECT_THROW(Expansions('.'), InvalidArgument);
}

TEST(InventoryTest, EveryVariantStripsToItsBase) {
  for (char c = 'a'; c <= 'z'; ++c)
    for (const std::string& v : Expansions(c)) {
      EXPECT_EQ(StripDiacritics(v), std::string(1, c)) << v;
      EXPECT_TRUE(IsValidText(v)) << v;
    }
}

TEST(InventoryTest, TsvListsEveryVariant) {
  std::ostringstream out;
  WriteInventoryTsv(out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "base\tvariant\ttone\tunderdot");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  std::size_t expected = 0;
  for (char c : std::string("aeinosu")) expected += Expansions(c).size();
  EXPECT_EQ(rows, expected);
}

//===----------------------------------------------------------------------===//
// Segment
//===----------------------------------------------------------------------===//

TEST(SegmentTest, GraphemesCarryMarks) {
  const auto segments = SegmentText(Normalize("ṣà"));
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(std::get<Grapheme>(segments[0]), (Grapheme{'s', Tone::kNone, true, false}));
  EXPECT_EQ(std::get<Grapheme>(segments[1]), (Grapheme{'a', Tone::kLow, false, false}));
}

TEST(SegmentTest, DigitsArePassthroughSymbols) {
  const auto segments = SegmentText("2019");
  ASSERT_EQ(segments.size(), 4u);
  for (const Segment& s : segments) EXPECT_EQ(std::get<Symbol>(s).kind, SymbolKind::kDigit);
}

TEST(SegmentTest, ADotBelowIsForeignAndInvalid) {
  const std::string text = Normalize("ạ\u0300");
  const auto segments = SegmentText(text);
  ASSERT_EQ(segments.size(), 1u);
  EXPECT_EQ(std::get<Symbol>(segments[0]).kind, SymbolKind::kForeign);
  const auto violations = ValidateText(text);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].reason, ViolationReason::kForeignCluster);
}

TEST(SegmentTest, OrphanMarkRaisesWithPosition) {
  try {
    SegmentText("ab \u0301c");
    FAIL();
  } catch (const OrphanMarkError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(SegmentTest, ComposeOfSegmentIsIdentityOnFuzzedText) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::string t = testing::RandomSentence(rng);
    EXPECT_EQ(ComposeSegments(SegmentText(t)), t);
  }
  for (const std::string& line : testing::ReadFixture("sample_reference.txt"))
    EXPECT_EQ(ComposeSegments(SegmentText(line)), line);
  const std::string mixed = Normalize("Ṣé ş ß 2019, ạ!");
  EXPECT_EQ(ComposeSegments(SegmentText(mixed)), mixed);
}

//===----------------------------------------------------------------------===//
// Strip
//===----------------------------------------------------------------------===//

TEST(StripTest, Examples) {
  EXPECT_EQ(StripDiacritics(Normalize("bí ó tilẹ\u0300 jẹ\u0301 pé")), "bi o tile je pe");
  EXPECT_EQ(StripDiacritics("gba"), "gba");
  EXPECT_EQ(StripDiacritics(Normalize("ṣẹ\u0301")), "se");
  EXPECT_EQ(StripDiacritics(Normalize("Ọ\u0300RỌ\u0300")), "ORO");
  EXPECT_EQ(StripDiacritics("2019 ."), "2019 .");
}

TEST(StripTest, ReproducesSampleSourceLines) {
  const auto refs = testing::ReadFixture("sample_reference.txt");
  const auto srcs = testing::ReadFixture("sample_source.txt");
  ASSERT_EQ(refs.size(), 5u);
  ASSERT_EQ(srcs.size(), 5u);
  for (std::size_t i = 0; i < refs.size(); ++i) EXPECT_EQ(StripDiacritics(refs[i]), srcs[i]);
}

TEST(StripTest, OrphansAreDroppedWithWarning) {
  std::vector<StripWarning> warnings;
  EXPECT_EQ(StripDiacritics("\u0301ab  \u0300", &warnings), "ab  ");
  ASSERT_EQ(warnings.size(), 2u);
  EXPECT_EQ(warnings[0].offset, 0u);
  EXPECT_EQ(warnings[1].offset, 6u);
}

TEST(StripTest, ForeignLettersLoseTheirMarks) {
  EXPECT_EQ(StripDiacritics(Normalize("şạẽ")), "sae");
  EXPECT_EQ(StripDiacritics("ß"), "ß");
}

TEST(StripTest, OutputIsBareAndIdempotent) {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    const std::string t = testing::RandomSentence(rng);
    const std::string s = StripDiacritics(t);
    EXPECT_EQ(StripDiacritics(s), s);
    for (const Cluster& c : Clusters(s)) {
      EXPECT_EQ(c.text.size(), 1u) << s;  // ASCII only: bare letters, digits, punct, space
    }
  }
}

//===----------------------------------------------------------------------===//
// Validate
//===----------------------------------------------------------------------===//

TEST(ValidateTest, Examples) {
  EXPECT_TRUE(ValidateText(Normalize("àárọ\u0300")).empty());
  const auto v = ValidateText("ş");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].offset, 0u);
  EXPECT_EQ(v[0].reason, ViolationReason::kForeignCluster);
  EXPECT_EQ(v[0].cluster, "ş");
  EXPECT_TRUE(ValidateText(Normalize("ǹ")).empty());
}

TEST(ValidateTest, SyllabicMIsRejected) {
  // Tone on m breaks the Grapheme invariants, so it is a foreign cluster.
  const auto v = ValidateText(Normalize("ḿ"));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].reason, ViolationReason::kForeignCluster);
}

TEST(ValidateTest, AdmissibleButUnlistedIsNotInInventory) {
  const auto v = ValidateText(Normalize("ọ\u030C"));  // o, dot below, caron
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].reason, ViolationReason::kNotInInventory);
}

TEST(ValidateTest, OrphanAndPositions) {
  const auto v = ValidateText(Normalize("ọ\u0300 1\u0300 ẽ"));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].reason, ViolationReason::kOrphanMark);
  EXPECT_EQ(v[0].offset, 7u);
  EXPECT_EQ(v[1].reason, ViolationReason::kForeignCluster);
  EXPECT_EQ(v[1].offset, 10u);
}

TEST(ValidateTest, SampleReferencesAreValid) {
  for (const std::string& line : testing::ReadFixture("sample_reference.txt"))
    EXPECT_TRUE(IsValidText(line)) << line;
}

}  // namespace
}  // namespace yadr
