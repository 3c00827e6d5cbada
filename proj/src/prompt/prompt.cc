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

#include "propforge/prompt/prompt.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_set>

#include "propforge/common/csv.h"
#include "propforge/common/error.h"
#include "propforge/common/file_util.h"

namespace propforge {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool IsBlank(const std::string& s) { return Trim(s).empty(); }

// Lowercased words with surrounding punctuation removed.
std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    std::size_t b = 0;
    std::size_t e = current.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(current[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(current[e - 1]))) --e;
    if (e > b) words.push_back(Lower(std::string_view(current).substr(b, e - b)));
    current.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return words;
}

const std::unordered_set<std::string>& ColorWords() {
  static const std::unordered_set<std::string> kWords = {
      "red",   "orange", "yellow", "green",  "blue",   "purple", "violet", "pink",
      "black", "white",  "gray",   "grey",   "brown",  "silver", "gold",   "golden",
      "beige", "cyan",   "teal",   "navy",   "maroon", "magenta", "turquoise"};
  return kWords;
}

bool IsAttributeWord(const std::string& w) {
  static const std::unordered_set<std::string> kWords = {
      "all",  "flavour", "flavor", "colour", "color", "colored", "coloured", "style",
      "shade", "tone",   "finish", "and",    "a",     "the"};
  return ColorWords().count(w) > 0 || kWords.count(w) > 0;
}

bool IsLeadingAdjective(const std::string& w) {
  static const std::unordered_set<std::string> kWords = {
      "alien",    "sport",   "sports",   "cute",      "futuristic", "robotic", "copper",
      "wooden",   "metal",   "metallic", "giant",     "tiny",       "small",   "big",
      "large",    "little",  "old",      "ancient",   "modern",     "vintage", "retro",
      "shiny",    "fluffy",  "angry",    "happy",     "scary",      "spooky",  "cartoon",
      "medieval", "steampunk", "cyberpunk", "glass",  "plastic",    "stone",   "marble",
      "crystal",  "rusty",   "broken",   "magical",   "mechanical", "evil",    "friendly",
      "chubby",   "fat",     "slim",     "tall",      "short",      "fancy",   "colorful",
      "colourful", "haunted", "royal",   "frozen",    "fiery",      "baby",    "mini"};
  return ColorWords().count(w) > 0 || kWords.count(w) > 0;
}

// Nouns that merely end in "ing".
bool IsIngNoun(const std::string& w) {
  static const std::unordered_set<std::string> kWords = {
      "thing",   "things",   "string",   "strings",  "ceiling",  "building", "buildings",
      "pudding", "painting", "paintings", "wedding", "clothing", "morning",  "evening",
      "swing",   "spring",   "sling",    "earring",  "earrings", "icing",    "stuffing",
      "viking",  "vikings",  "darling",  "duckling", "sibling",  "dumpling", "dumplings",
      "awning",  "railing",  "offspring", "sapling", "herring",  "pudding",  "bedding",
      "filling", "frosting", "lightning", "ring",    "king",     "wing",     "wings"};
  return kWords.count(w) > 0;
}

bool IsArticle(const std::string& w) { return w == "a" || w == "an"; }

bool HasDescription(const std::vector<std::string>& words) {
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i] == "with" || words[i] == "from") return i + 1 < words.size();
    if (words[i] == "in" && i + 1 < words.size()) {
      const bool attribute_only = std::all_of(words.begin() + static_cast<long>(i) + 1,
                                              words.end(), IsAttributeWord);
      if (!attribute_only) return true;
    }
  }
  return false;
}

bool HasProgressiveVerb(const std::vector<std::string>& words) {
  for (std::size_t i = 1; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w.size() > 4 && w.ends_with("ing") && !IsIngNoun(w)) return true;
  }
  return false;
}

bool HasLeadingAdjective(const std::vector<std::string>& words) {
  if (words.size() >= 3 && IsArticle(words[0])) return true;
  return words.size() >= 2 && IsLeadingAdjective(words[0]);
}

bool StartsWithArticle(std::string_view text) {
  const std::vector<std::string> words = Words(text);
  return !words.empty() && (IsArticle(words[0]) || words[0] == "the");
}

std::string WithArticle(const std::string& phrase) {
  if (StartsWithArticle(phrase)) return phrase;
  const char first = static_cast<char>(std::tolower(static_cast<unsigned char>(phrase[0])));
  const bool vowel = std::string_view("aeiou").find(first) != std::string_view::npos;
  return std::string(vowel ? "An " : "A ") + phrase;
}

void RequireSlot(const std::string& value, std::string_view slot) {
  if (IsBlank(value)) Throw(ErrorCode::kEmptySlot, "template slot '" + std::string(slot) + "' is empty");
}

void ForbidSlot(const std::string& value, std::string_view slot, TemplateKind kind) {
  if (!value.empty()) {
    Throw(ErrorCode::kInvalidTemplate, "slot '" + std::string(slot) + "' is not used by " +
                                           std::string(TemplateKindName(kind)));
  }
}

std::optional<PromptCondition> ParseCondition(std::string_view s) {
  const std::string v = Lower(Trim(s));
  if (v == "general") return PromptCondition::kGeneral;
  if (v == "object_specific" || v == "specific") return PromptCondition::kObjectSpecific;
  return std::nullopt;
}

std::optional<std::size_t> DeclaredRowCount(const std::vector<std::string>& comments) {
  for (const std::string& raw : comments) {
    const std::string c = Trim(raw);
    if (!c.starts_with("rows:")) continue;
    const std::string num = Trim(std::string_view(c).substr(5));
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
      Throw(ErrorCode::kParseError, "malformed row count directive: #" + raw);
    }
    return n;
  }
  return std::nullopt;
}

}  // namespace

std::string_view TemplateKindName(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kNoun:
      return "Noun";
    case TemplateKind::kAdjectiveNoun:
      return "AdjectiveNoun";
    case TemplateKind::kNounWithDescription:
      return "NounWithDescription";
    case TemplateKind::kNounPerformingAction:
      return "NounPerformingAction";
  }
  return "Unknown";
}

std::optional<TemplateKind> ParseTemplateKind(std::string_view name) {
  // Also accepts snake_case spellings such as adjective_noun.
  std::string n = Lower(Trim(name));
  std::erase(n, '_');
  for (TemplateKind k : {TemplateKind::kNoun, TemplateKind::kAdjectiveNoun,
                         TemplateKind::kNounWithDescription, TemplateKind::kNounPerformingAction}) {
    if (n == Lower(TemplateKindName(k))) return k;
  }
  return std::nullopt;
}

std::string_view PromptConditionName(PromptCondition condition) {
  return condition == PromptCondition::kGeneral ? "general" : "object_specific";
}

PromptTemplate PromptTemplate::Noun(std::string noun) {
  PromptTemplate t;
  t.kind = TemplateKind::kNoun;
  t.noun = std::move(noun);
  return t;
}

PromptTemplate PromptTemplate::AdjectiveNoun(std::string adjective, std::string noun) {
  PromptTemplate t;
  t.kind = TemplateKind::kAdjectiveNoun;
  t.adjective = std::move(adjective);
  t.noun = std::move(noun);
  return t;
}

PromptTemplate PromptTemplate::NounWithDescription(std::string noun, std::string description) {
  PromptTemplate t;
  t.kind = TemplateKind::kNounWithDescription;
  t.noun = std::move(noun);
  t.description = std::move(description);
  return t;
}

PromptTemplate PromptTemplate::NounPerformingAction(std::string noun, std::string action) {
  PromptTemplate t;
  t.kind = TemplateKind::kNounPerformingAction;
  t.noun = std::move(noun);
  t.action = std::move(action);
  return t;
}

void PromptTemplate::Validate() const {
  RequireSlot(noun, "noun");
  switch (kind) {
    case TemplateKind::kNoun:
      ForbidSlot(adjective, "adjective", kind);
      ForbidSlot(description, "description", kind);
      ForbidSlot(action, "action", kind);
      break;
    case TemplateKind::kAdjectiveNoun:
      RequireSlot(adjective, "adjective");
      ForbidSlot(description, "description", kind);
      ForbidSlot(action, "action", kind);
      break;
    case TemplateKind::kNounWithDescription:
      RequireSlot(description, "description");
      ForbidSlot(adjective, "adjective", kind);
      ForbidSlot(action, "action", kind);
      break;
    case TemplateKind::kNounPerformingAction:
      RequireSlot(action, "action");
      ForbidSlot(adjective, "adjective", kind);
      ForbidSlot(description, "description", kind);
      break;
  }
}

PromptSpec RenderPrompt(const PromptTemplate& tmpl,
                        const std::optional<std::string>& quality_suffix) {
  tmpl.Validate();
  const std::string noun = Trim(tmpl.noun);
  std::string text;
  switch (tmpl.kind) {
    case TemplateKind::kNoun:
      text = noun;
      break;
    case TemplateKind::kAdjectiveNoun: {
      const std::string phrase = Trim(tmpl.adjective) + " " + noun;
      text = tmpl.article ? WithArticle(phrase) : phrase;
      break;
    }
    case TemplateKind::kNounWithDescription:
      text = noun + " with " + Trim(tmpl.description);
      break;
    case TemplateKind::kNounPerformingAction: {
      const std::string phrase = noun + " " + Trim(tmpl.action);
      text = tmpl.article ? WithArticle(phrase) : phrase;
      break;
    }
  }
  PromptSpec spec;
  spec.tmpl = tmpl;
  if (quality_suffix && !IsBlank(*quality_suffix)) {
    spec.quality_suffix = Trim(*quality_suffix);
    text += ", " + *spec.quality_suffix;
  }
  spec.text = std::move(text);
  return spec;
}

TemplateKind ClassifyPrompt(std::string_view text) {
  const std::vector<std::string> words = Words(text.substr(0, text.find(',')));
  if (HasDescription(words)) return TemplateKind::kNounWithDescription;
  if (HasProgressiveVerb(words)) return TemplateKind::kNounPerformingAction;
  if (HasLeadingAdjective(words)) return TemplateKind::kAdjectiveNoun;
  return TemplateKind::kNoun;
}

std::vector<PromptSpec> ParsePromptSet(std::string_view csv, std::vector<std::string>* warnings) {
  const CsvDocument doc = ParseCsv(csv);
  const std::optional<std::size_t> declared = DeclaredRowCount(doc.comments);
  std::vector<PromptSpec> specs;
  if (doc.rows.empty()) {
    if (declared && *declared != 0) {
      Throw(ErrorCode::kCountMismatch,
            "manifest declares " + std::to_string(*declared) + " rows but has none");
    }
    if (warnings) warnings->push_back("prompt manifest is empty");
    return specs;
  }

  const std::vector<std::string> expected = {"object_id", "condition", "template_kind", "prompt"};
  std::vector<std::string> header;
  for (const std::string& f : doc.rows[0].fields) header.push_back(Lower(Trim(f)));
  if (header != expected) {
    Throw(ErrorCode::kParseError, "manifest header must be object_id,condition,template_kind,prompt");
  }

  for (std::size_t r = 1; r < doc.rows.size(); ++r) {
    const CsvRow& row = doc.rows[r];
    const std::string where = "manifest line " + std::to_string(row.line) + ": ";
    if (row.fields.size() != 4) {
      Throw(ErrorCode::kParseError, where + "expected 4 fields, got " +
                                        std::to_string(row.fields.size()));
    }
    PromptSpec spec;
    spec.text = Trim(row.fields[3]);
    if (spec.text.empty()) Throw(ErrorCode::kParseError, where + "empty prompt");
    spec.condition = ParseCondition(row.fields[1]);
    if (!spec.condition) Throw(ErrorCode::kParseError, where + "unknown condition '" + row.fields[1] + "'");
    const std::string object_id = Trim(row.fields[0]);
    if (*spec.condition == PromptCondition::kGeneral) {
      if (!object_id.empty() && object_id != "*") {
        Throw(ErrorCode::kParseError, where + "general prompts must use object_id '*'");
      }
    } else {
      if (object_id.empty() || object_id == "*") {
        Throw(ErrorCode::kParseError, where + "object-specific prompt needs an object_id");
      }
      spec.object_id = object_id;
    }
    if (IsBlank(row.fields[2])) {
      spec.tmpl.kind = ClassifyPrompt(spec.text);
    } else {
      const std::optional<TemplateKind> kind = ParseTemplateKind(row.fields[2]);
      if (!kind) Throw(ErrorCode::kParseError, where + "unknown template kind '" + row.fields[2] + "'");
      spec.tmpl.kind = *kind;
    }
    spec.tmpl.noun = spec.text;
    specs.push_back(std::move(spec));
  }

  if (declared && *declared != specs.size()) {
    Throw(ErrorCode::kCountMismatch, "manifest declares " + std::to_string(*declared) +
                                         " rows but contains " + std::to_string(specs.size()));
  }
  return specs;
}

std::vector<PromptSpec> LoadPromptSet(const std::filesystem::path& path,
                                      std::vector<std::string>* warnings) {
  std::string text;
  try {
    text = ReadFileText(path);
  } catch (const Error& e) {
    Throw(ErrorCode::kParseError, std::string("cannot read prompt manifest: ") + e.what());
  }
  return ParsePromptSet(text, warnings);
}

std::string FormatPromptSet(const std::vector<PromptSpec>& prompts) {
  std::string out = "# rows: " + std::to_string(prompts.size()) + "\n";
  out += "object_id,condition,template_kind,prompt\n";
  for (const PromptSpec& p : prompts) {
    const PromptCondition c = p.condition.value_or(PromptCondition::kGeneral);
    out += CsvJoin({c == PromptCondition::kGeneral ? "*" : p.object_id,
                    std::string(PromptConditionName(c)), std::string(TemplateKindName(p.tmpl.kind)),
                    p.text});
    out += "\n";
  }
  return out;
}

std::vector<PlannedGeneration> PlanGenerations(const std::vector<PromptSpec>& prompts,
                                               const std::vector<std::string>& object_ids) {
  const std::set<std::string> known(object_ids.begin(), object_ids.end());
  for (const PromptSpec& p : prompts) {
    if (p.condition == PromptCondition::kObjectSpecific && !known.count(p.object_id)) {
      Throw(ErrorCode::kInvalidArgument, "prompt targets unknown object '" + p.object_id + "'");
    }
  }
  std::vector<PlannedGeneration> plan;
  for (const std::string& id : object_ids) {
    for (const PromptSpec& p : prompts) {
      if (p.condition != PromptCondition::kObjectSpecific) plan.push_back({id, p});
    }
    for (const PromptSpec& p : prompts) {
      if (p.condition == PromptCondition::kObjectSpecific && p.object_id == id) {
        plan.push_back({id, p});
      }
    }
  }
  return plan;
}

}  // namespace propforge
