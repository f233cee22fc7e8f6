// Copyright 2026 The ArTS Authors.
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

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "arts/corpus.hpp"
#include "arts/errors.hpp"
#include "support/temp_dir.hpp"

using arts::TraitName;
using arts::testing::TempDir;
namespace corpus = arts::corpus;

namespace {

const corpus::RangeConfig& ranges() {
  static const corpus::RangeConfig config = corpus::RangeConfig::load(ARTS_RANGES_PATH);
  return config;
}

const std::string kAsapHeader =
    "essay_id\tessay_set\tessay\tdomain1_score\t"
    "rater1_trait1\trater1_trait2\trater1_trait3\trater1_trait4\trater1_trait5\trater1_trait6\t"
    "rater2_trait1\trater2_trait2\trater2_trait3\trater2_trait4\trater2_trait5\trater2_trait6\n";

const std::string kPlusHeader =
    "EssayID\tContent\tOrganization\tWord Choice\tSentence Fluency\tConventions\n";

corpus::Corpus load_asap(const TempDir& dir, const std::string& asap_rows,
                         const std::string& plus_rows, corpus::LoadReport* report = nullptr) {
  const auto asap = dir.write("asap.tsv", kAsapHeader + asap_rows);
  const std::vector<std::filesystem::path> plus{dir.write("prompt1.tsv", kPlusHeader + plus_rows)};
  return corpus::load_asap_combined(asap, plus, ranges(), report);
}

corpus::Corpus small_corpus(int per_prompt, int prompts) {
  corpus::Corpus c;
  for (int p = 1; p <= prompts; ++p) c.specs.emplace(p, corpus::prompt_spec(p, ranges()));
  for (int p = 1; p <= prompts; ++p) {
    for (int i = 0; i < per_prompt; ++i) {
      corpus::Essay e;
      e.essay_id = std::to_string(p * 1000 + i);
      e.prompt_id = p;
      e.text = "text";
      c.essays.push_back(e);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("prompt_spec trait sets") {
  const auto p8 = corpus::prompt_spec(8, ranges());
  CHECK(p8.traits.size() == 7);
  CHECK(p8.has(TraitName::kVoice));

  const auto p7 = corpus::prompt_spec(7, ranges());
  const std::set<TraitName> want7{TraitName::kOverall, TraitName::kContent,
                                  TraitName::kOrganization, TraitName::kConventions,
                                  TraitName::kStyle};
  CHECK(std::set<TraitName>(p7.traits.begin(), p7.traits.end()) == want7);

  const auto p3 = corpus::prompt_spec(3, ranges());
  const std::set<TraitName> want3{TraitName::kOverall, TraitName::kContent,
                                  TraitName::kPromptAdherence, TraitName::kNarrativity,
                                  TraitName::kLanguage};
  CHECK(std::set<TraitName>(p3.traits.begin(), p3.traits.end()) == want3);

  CHECK_THROWS_AS(corpus::prompt_spec(9, ranges()), arts::LookupError);
  CHECK_THROWS_AS(p3.range(TraitName::kVoice), arts::LookupError);

  for (int p = 1; p <= 8; ++p) {
    const auto spec = corpus::prompt_spec(p, ranges());
    CHECK(spec.has(TraitName::kOverall));
    for (auto t : spec.traits) CHECK(spec.range(t).min < spec.range(t).max);
  }
  const auto feedback = corpus::prompt_spec(arts::kNoPrompt, ranges());
  CHECK(feedback.traits.size() == 6);
  CHECK(feedback.range(TraitName::kCohesion) == arts::ScoreRange{2, 10});
}

TEST_CASE("prompt-1 Overall range comes from the range config") {
  const auto spec = corpus::prompt_spec(1, ranges());
  CHECK(spec.range(TraitName::kOverall) == arts::ScoreRange{2, 12});
}

TEST_CASE("load_asap_combined joins traits and marks unrated traits nan") {
  TempDir dir;
  const std::string asap_rows =
      "10\t1\tDear editor, computers help.\t8\t\t\t\t\t\t\t\t\t\t\t\t\n"
      "20\t7\tA story about patience.\t16\t2\t1\t2\t1\t\t\t1\t2\t1\t1\t\t\n"
      "30\t1\tNo trait row for me.\t6\t\t\t\t\t\t\t\t\t\t\t\t\n";
  const std::string plus_rows = "10\t4\t3\t4\t3\t4\n";
  corpus::LoadReport report;
  const auto c = load_asap(dir, asap_rows, plus_rows, &report);

  REQUIRE(c.essays.size() == 2);
  CHECK(report.dropped_rows == 1);
  CHECK(c.specs.size() == 8);

  const auto* e1 = c.find("10");
  REQUIRE(e1);
  CHECK(e1->gold.scores.at(TraitName::kOverall) == 8);
  CHECK(e1->gold.scores.at(TraitName::kWordChoice) == 4);
  CHECK(e1->gold.scores.at(TraitName::kSentenceFluency) == 3);

  const auto* e7 = c.find("20");
  REQUIRE(e7);
  CHECK(e7->gold.scores.at(TraitName::kOverall) == 16);
  CHECK(e7->gold.scores.at(TraitName::kContent) == 3);
  CHECK(e7->gold.scores.at(TraitName::kOrganization) == 3);
  CHECK(e7->gold.scores.at(TraitName::kStyle) == 3);
  CHECK(e7->gold.scores.at(TraitName::kConventions) == 2);

  // Key sets equal the prompt's trait set.
  for (const auto& e : c.essays) {
    const auto& spec = c.spec(e.prompt_id);
    CHECK(e.gold.scores.size() == spec.traits.size());
    for (auto t : spec.traits) CHECK(e.gold.scores.count(t) == 1);
  }
  CHECK_NOTHROW(corpus::validate(c));
}

TEST_CASE("load_asap_combined on a file with zero data rows") {
  TempDir dir;
  const auto c = load_asap(dir, "", "");
  CHECK(c.essays.empty());
  CHECK(c.specs.size() == 8);
}

TEST_CASE("load_asap_combined error contract") {
  TempDir dir;
  SUBCASE("non-numeric Overall names the essay and column") {
    try {
      load_asap(dir, "10\t1\tText.\tabc\t\t\t\t\t\t\t\t\t\t\t\t\n", "10\t4\t3\t4\t3\t4\n");
      FAIL("expected DataError");
    } catch (const arts::DataError& e) {
      const std::string what = e.what();
      CHECK(what.find("10") != std::string::npos);
      CHECK(what.find("domain1_score") != std::string::npos);
    }
  }
  SUBCASE("duplicate essay id") {
    CHECK_THROWS_AS(load_asap(dir,
                              "10\t1\tA.\t8\t\t\t\t\t\t\t\t\t\t\t\t\n"
                              "10\t1\tB.\t8\t\t\t\t\t\t\t\t\t\t\t\t\n",
                              "10\t4\t3\t4\t3\t4\n"),
                    arts::DataError);
  }
  SUBCASE("unknown prompt id") {
    CHECK_THROWS_AS(load_asap(dir, "10\t9\tA.\t8\t\t\t\t\t\t\t\t\t\t\t\t\n", ""),
                    arts::DataError);
  }
  SUBCASE("score outside the configured range") {
    CHECK_THROWS_AS(
        load_asap(dir, "10\t1\tA.\t13\t\t\t\t\t\t\t\t\t\t\t\t\n", "10\t4\t3\t4\t3\t4\n"),
        arts::DataError);
  }
  SUBCASE("missing column names the column") {
    const auto asap = dir.write("bad.tsv", "essay_id\tessay_set\tessay\n1\t1\tA.\n");
    try {
      corpus::load_asap_combined(asap, {}, ranges());
      FAIL("expected SchemaError");
    } catch (const arts::SchemaError& e) {
      CHECK(std::string(e.what()).find("domain1_score") != std::string::npos);
    }
  }
}

TEST_CASE("load_feedback_prize") {
  TempDir dir;
  const std::string header = "text_id,full_text,cohesion,syntax,vocabulary,phraseology,grammar,conventions\n";
  SUBCASE("complete rows, half points integerized") {
    const auto path = dir.write("train.csv", header +
                                                 "A1,\"Essay one, with a comma.\",3.5,3.5,3,3,4,3\n"
                                                 "B2,Essay two.,2.5,2.5,3,2,2,2.5\n");
    const auto c = corpus::load_feedback_prize(path, ranges());
    REQUIRE(c.essays.size() == 2);
    CHECK(c.score_scale == 2);
    const auto& e = *c.find("A1");
    CHECK(e.prompt_id == arts::kNoPrompt);
    CHECK(e.text == "Essay one, with a comma.");
    CHECK(e.gold.scores.size() == 6);
    for (const auto& [trait, value] : e.gold.scores) CHECK(value.has_value());
    CHECK(e.gold.scores.at(TraitName::kCohesion) == 7);
    CHECK(corpus::display_score(7, 2) == "3.5");
    CHECK(corpus::display_score(8, 2) == "4");
  }
  SUBCASE("missing trait cell is a data error") {
    const auto path = dir.write("train.csv", header + "A1,Essay.,3.5,,3,3,4,3\n");
    CHECK_THROWS_AS(corpus::load_feedback_prize(path, ranges()), arts::DataError);
  }
}

TEST_CASE("x2 integerization is a bijection over the half-point scale") {
  std::set<int> categories;
  for (int half = 2; half <= 10; ++half) {
    const double display = half / 2.0;
    const int category = corpus::integerize(display, 2);
    CHECK(category == half);
    categories.insert(category);
    CHECK(std::stod(corpus::display_score(category, 2)) == display);
  }
  CHECK(categories.size() == 9);
  CHECK(corpus::integerize(3.5, 2) == 7);
  CHECK_THROWS_AS(corpus::integerize(3.25, 2), arts::DataError);
}

TEST_CASE("generated folds partition the corpus") {
  const auto c = small_corpus(2, 5);  // 10 essays
  const auto folds = corpus::make_folds(c, 42);
  REQUIRE(folds.size() == corpus::kFoldCount);
  std::map<std::string, int> test_count;
  for (const auto& fold : folds) {
    std::set<std::string> roles;
    for (const auto* list : {&fold.train, &fold.dev, &fold.test}) {
      for (const auto& id : *list) CHECK(roles.insert(id).second);
    }
    CHECK(roles.size() == c.essays.size());
    for (const auto& id : fold.test) ++test_count[id];
  }
  CHECK(test_count.size() == c.essays.size());
  for (const auto& [id, n] : test_count) CHECK(n == 1);

  const auto again = corpus::make_folds(c, 42);
  for (int k = 0; k < corpus::kFoldCount; ++k) {
    CHECK(again[k].train == folds[k].train);
    CHECK(again[k].dev == folds[k].dev);
    CHECK(again[k].test == folds[k].test);
  }
}

TEST_CASE("split files round-trip and reject unknown ids") {
  TempDir dir;
  const auto c = small_corpus(8, 2);
  const auto folds = corpus::make_folds(c, 3);
  corpus::write_folds(folds, dir.path() / "split");
  const auto read = corpus::read_folds(c, dir.path() / "split");
  for (int k = 0; k < corpus::kFoldCount; ++k) {
    CHECK(read[k].train == folds[k].train);
    CHECK(read[k].dev == folds[k].dev);
    CHECK(read[k].test == folds[k].test);
  }

  dir.write("split/fold_2/test_ids.txt", "1000\nnope\n");
  CHECK_THROWS_AS(corpus::read_folds(c, dir.path() / "split"), arts::DataError);
}

TEST_CASE("serialization is deterministic and lossless") {
  TempDir dir;
  const auto c = load_asap(dir,
                           "10\t1\tDear editor.\t8\t\t\t\t\t\t\t\t\t\t\t\t\n"
                           "20\t7\tA story.\t16\t2\t1\t2\t1\t\t\t1\t2\t1\t1\t\t\n",
                           "10\t4\t3\t4\t3\t4\n");
  const auto again = load_asap(dir,
                               "10\t1\tDear editor.\t8\t\t\t\t\t\t\t\t\t\t\t\t\n"
                               "20\t7\tA story.\t16\t2\t1\t2\t1\t\t\t1\t2\t1\t1\t\t\n",
                               "10\t4\t3\t4\t3\t4\n");
  const std::string text = corpus::serialize(c);
  CHECK(text == corpus::serialize(again));
  const auto back = corpus::deserialize(text);
  CHECK(corpus::serialize(back) == text);
  CHECK(back.essays.size() == 2);
  CHECK(back.find("20")->gold == c.find("20")->gold);
}
