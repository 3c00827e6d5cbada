// Copyright 2026 The Propforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include <gtest/gtest.h>

#include "propforge/common/csv.h"
#include "propforge/common/error.h"
#include "propforge/common/file_util.h"
#include "propforge/prompt/prompt.h"

namespace propforge {
namespace {

const std::filesystem::path kData = PROPFORGE_TEST_DATA;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no propforge::Error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(PromptRenderTest, AllTemplates) {
  EXPECT_EQ(RenderPrompt(PromptTemplate::Noun("Deadpool")).text, "Deadpool");
  EXPECT_EQ(RenderPrompt(PromptTemplate::AdjectiveNoun("pink", "sheep")).text, "A pink sheep");
  EXPECT_EQ(RenderPrompt(PromptTemplate::AdjectiveNoun("old", "lamp")).text, "An old lamp");
  EXPECT_EQ(RenderPrompt(PromptTemplate::NounWithDescription("spaceship", "a blue tail")).text,
            "spaceship with a blue tail");
  EXPECT_EQ(RenderPrompt(PromptTemplate::NounPerformingAction("witch", "wearing a hat")).text,
            "A witch wearing a hat");
  PromptTemplate bare = PromptTemplate::AdjectiveNoun("sport", "car");
  bare.article = false;
  EXPECT_EQ(RenderPrompt(bare).text, "sport car");
}

TEST(PromptRenderTest, QualitySuffix) {
  const PromptSpec s =
      RenderPrompt(PromptTemplate::Noun("a barrel"), std::string(kDefaultQualitySuffix));
  EXPECT_EQ(s.text, "a barrel, 4K, high-quality, 8K resolution");
  ASSERT_TRUE(s.quality_suffix.has_value());
  // The classifier ignores the suffix.
  EXPECT_EQ(ClassifyPrompt(s.text), TemplateKind::kNoun);
}

TEST(PromptRenderTest, SlotErrors) {
  EXPECT_EQ(CodeOf([] { RenderPrompt(PromptTemplate::Noun("  ")); }), ErrorCode::kEmptySlot);
  EXPECT_EQ(CodeOf([] { RenderPrompt(PromptTemplate::AdjectiveNoun("", "car")); }),
            ErrorCode::kEmptySlot);
  PromptTemplate t = PromptTemplate::Noun("car");
  t.action = "driving";
  EXPECT_EQ(CodeOf([&] { RenderPrompt(t); }), ErrorCode::kInvalidTemplate);
}

TEST(PromptClassifyTest, RenderedTemplatesClassifyBack) {
  const PromptTemplate cases[] = {
      PromptTemplate::Noun("lantern"),
      PromptTemplate::AdjectiveNoun("rusty", "robot"),
      PromptTemplate::NounWithDescription("lantern", "a glowing core"),
      PromptTemplate::NounPerformingAction("dragon", "breathing fire"),
  };
  for (const PromptTemplate& t : cases) {
    EXPECT_EQ(ClassifyPrompt(RenderPrompt(t).text), t.kind) << RenderPrompt(t).text;
  }
}

TEST(PromptClassifyTest, PilotPromptSet) {
  const CsvDocument doc = ParseCsv(ReadFileText(kData / "pilot_prompts.csv"));
  ASSERT_EQ(doc.rows.size(), 28u);
  for (std::size_t i = 1; i < doc.rows.size(); ++i) {
    const auto& f = doc.rows[i].fields;
    EXPECT_EQ(TemplateKindName(ClassifyPrompt(f[0])), f[1]) << f[0];
  }
}

TEST(PromptClassifyTest, IngNounsAreNotActions) {
  EXPECT_EQ(ClassifyPrompt("A golden ring"), TemplateKind::kAdjectiveNoun);
  EXPECT_EQ(ClassifyPrompt("King"), TemplateKind::kNoun);
  EXPECT_EQ(ClassifyPrompt("A robot dancing"), TemplateKind::kNounPerformingAction);
}

TEST(TemplateKindTest, ParseNames) {
  EXPECT_EQ(ParseTemplateKind("NounWithDescription"), TemplateKind::kNounWithDescription);
  EXPECT_EQ(ParseTemplateKind("adjectivenoun"), TemplateKind::kAdjectiveNoun);
  EXPECT_EQ(ParseTemplateKind("noun_performing_action"), TemplateKind::kNounPerformingAction);
  EXPECT_FALSE(ParseTemplateKind("verb").has_value());
}

constexpr const char* kManifest =
    "# rows: 3\n"
    "object_id,condition,template_kind,prompt\n"
    "*,general,,A rusty robot\n"
    "mug,object_specific,Noun,\"Teapot, porcelain\"\n"
    "*,general,NounPerformingAction,A dragon breathing fire\n";

TEST(PromptSetTest, ParseAndFormatRoundTrip) {
  const std::vector<PromptSpec> specs = ParsePromptSet(kManifest);
  ASSERT_EQ(specs.size(), 3u);
  EXPECT_EQ(specs[0].tmpl.kind, TemplateKind::kAdjectiveNoun);  // classified
  EXPECT_EQ(specs[0].condition, PromptCondition::kGeneral);
  EXPECT_EQ(specs[1].object_id, "mug");
  EXPECT_EQ(specs[1].text, "Teapot, porcelain");
  const std::vector<PromptSpec> again = ParsePromptSet(FormatPromptSet(specs));
  ASSERT_EQ(again.size(), specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    EXPECT_EQ(again[i].text, specs[i].text);
    EXPECT_EQ(again[i].tmpl.kind, specs[i].tmpl.kind);
    EXPECT_EQ(again[i].condition, specs[i].condition);
    EXPECT_EQ(again[i].object_id, specs[i].object_id);
  }
}

TEST(PromptSetTest, Errors) {
  EXPECT_EQ(CodeOf([] {
              ParsePromptSet("# rows: 5\nobject_id,condition,template_kind,prompt\n*,general,,x\n");
            }),
            ErrorCode::kCountMismatch);
  EXPECT_EQ(CodeOf([] { ParsePromptSet("id,prompt\n1,x\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] {
              ParsePromptSet("object_id,condition,template_kind,prompt\n*,object_specific,,x\n");
            }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] {
              ParsePromptSet("object_id,condition,template_kind,prompt\n*,general,Verb,x\n");
            }),
            ErrorCode::kParseError);
}

TEST(PromptSetTest, EmptyManifestWarns) {
  std::vector<std::string> warnings;
  EXPECT_TRUE(ParsePromptSet("", &warnings).empty());
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(PlanTest, GeneralPromptsFanOutAcrossObjects) {
  const std::vector<PromptSpec> specs = ParsePromptSet(kManifest);
  const std::vector<PlannedGeneration> plan = PlanGenerations(specs, {"cup", "mug"});
  // 2 general x 2 objects + 1 specific.
  ASSERT_EQ(plan.size(), 5u);
  EXPECT_EQ(plan[0].object_id, "cup");
  EXPECT_EQ(plan[4].object_id, "mug");
  EXPECT_EQ(plan[4].prompt.text, "Teapot, porcelain");
  EXPECT_EQ(CodeOf([&] { PlanGenerations(specs, {"cup"}); }), ErrorCode::kInvalidArgument);
}

TEST(PlanTest, FullStudyScale) {
  std::vector<std::string> objects;
  for (int i = 0; i < 50; ++i) objects.push_back("obj" + std::to_string(i));
  std::vector<PromptSpec> specs;
  for (int i = 0; i < 8; ++i) {
    PromptSpec g;
    g.text = "general prompt " + std::to_string(i);
    specs.push_back(g);
    for (const std::string& o : objects) {
      PromptSpec s;
      s.text = "specific prompt " + std::to_string(i);
      s.condition = PromptCondition::kObjectSpecific;
      s.object_id = o;
      specs.push_back(s);
    }
  }
  EXPECT_EQ(PlanGenerations(specs, objects).size(), 800u);
}

}  // namespace
}  // namespace propforge
