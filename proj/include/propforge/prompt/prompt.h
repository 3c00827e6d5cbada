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

#ifndef PROPFORGE_PROMPT_PROMPT_H_
#define PROPFORGE_PROMPT_PROMPT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace propforge {

enum class TemplateKind { kNoun, kAdjectiveNoun, kNounWithDescription, kNounPerformingAction };

std::string_view TemplateKindName(TemplateKind kind);
// Accepts the names above ("Noun", "AdjectiveNoun", ...), case-insensitive,
// with or without underscores ("adjective_noun").
std::optional<TemplateKind> ParseTemplateKind(std::string_view name);

// Slots used per kind:
//   Noun                  noun
//   AdjectiveNoun         adjective, noun
//   NounWithDescription   noun, description
//   NounPerformingAction  noun, action
struct PromptTemplate {
  TemplateKind kind = TemplateKind::kNoun;
  std::string noun;
  std::string adjective;
  std::string description;
  std::string action;
  // Prefix "A"/"An" for AdjectiveNoun and NounPerformingAction.
  bool article = true;

  static PromptTemplate Noun(std::string noun);
  static PromptTemplate AdjectiveNoun(std::string adjective, std::string noun);
  static PromptTemplate NounWithDescription(std::string noun, std::string description);
  static PromptTemplate NounPerformingAction(std::string noun, std::string action);

  // EmptySlot when a required slot is blank, InvalidTemplate when a slot
  // belonging to another kind is filled.
  void Validate() const;
};

enum class PromptCondition { kGeneral, kObjectSpecific };

std::string_view PromptConditionName(PromptCondition condition);

inline constexpr std::string_view kDefaultQualitySuffix = "4K, high-quality, 8K resolution";

struct PromptSpec {
  std::string text;
  PromptTemplate tmpl;
  std::optional<PromptCondition> condition;
  // Empty for general prompts.
  std::string object_id;
  std::optional<std::string> quality_suffix;
};

PromptSpec RenderPrompt(const PromptTemplate& tmpl,
                        const std::optional<std::string>& quality_suffix = std::nullopt);

// Rule-based: the text before the first comma is inspected, so a trailing
// quality suffix does not change the outcome. Rules in priority order:
//  1. " with ", " from ", or " in " followed by anything other than color or
//     finish words -> NounWithDescription
//  2. a progressive verb ("-ing") after the first word -> NounPerformingAction
//  3. "A/An <word> <word>..." or a known leading adjective -> AdjectiveNoun
//  4. otherwise Noun
TemplateKind ClassifyPrompt(std::string_view text);

// Manifest CSV with header object_id,condition,template_kind,prompt.
// condition is "general" or "object_specific"; general rows use object_id
// "*" or leave it blank. A blank template_kind is filled by ClassifyPrompt.
// An optional "# rows: N" comment declares the data row count.
std::vector<PromptSpec> ParsePromptSet(std::string_view csv,
                                       std::vector<std::string>* warnings = nullptr);
std::vector<PromptSpec> LoadPromptSet(const std::filesystem::path& path,
                                      std::vector<std::string>* warnings = nullptr);
std::string FormatPromptSet(const std::vector<PromptSpec>& prompts);

struct PlannedGeneration {
  std::string object_id;
  PromptSpec prompt;
};

// Every general prompt for every object plus each object's own prompts.
// Ordered by object, then general prompts before specific ones, each in
// manifest order. Specific prompts for unknown objects are an error.
std::vector<PlannedGeneration> PlanGenerations(const std::vector<PromptSpec>& prompts,
                                               const std::vector<std::string>& object_ids);

}  // namespace propforge

#endif  // PROPFORGE_PROMPT_PROMPT_H_
