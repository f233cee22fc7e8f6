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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "arts/corpus.hpp"
#include "arts/rng.hpp"
#include "arts/tabular.hpp"
#include "support/quick_config.hpp"
#include "support/temp_dir.hpp"

// Black-box checks of the `arts` executable: exit codes, manifests and
// artifact stability. Only the binary and its files are observed.
namespace {

namespace fs = std::filesystem;
using arts::testing::TempDir;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run arts_cli(const TempDir& dir, const std::string& args) {
  const auto out = dir.path() / "stdout.txt";
  const auto err = dir.path() / "stderr.txt";
  const std::string command = "cd '" + dir.path().string() + "' && '" ARTS_CLI_PATH "' " + args +
                              " > '" + out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(command.c_str());
  Run run;
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.out = arts::read_file(out);
  run.err = arts::read_file(err);
  return run;
}

nlohmann::json manifest(const fs::path& dir) {
  return nlohmann::json::parse(arts::read_file(dir / "manifest.json"));
}

fs::path write_quick_config(const TempDir& dir) {
  nlohmann::json j = arts::testing::quick_config("unused");
  return dir.write("quick.json", j.dump(2));
}

std::string feedback_csv(int rows) {
  std::string csv =
      "text_id,full_text,cohesion,syntax,vocabulary,phraseology,grammar,conventions\n";
  arts::Rng rng(12);
  for (int i = 0; i < rows; ++i) {
    csv += "fb" + std::to_string(i) + ",\"some words number " + std::to_string(i % 5) + "\"";
    for (int t = 0; t < 6; ++t) csv += "," + arts::corpus::display_score(rng.uniform_int(2, 10), 2);
    csv += "\n";
  }
  return csv;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  TempDir dir;
  CHECK(arts_cli(dir, "").code == 2);
  CHECK(arts_cli(dir, "frobnicate").code == 2);
  CHECK(arts_cli(dir, "train --dataset synthetic --order sideways").code == 2);
  CHECK(arts_cli(dir, "train --dataset synthetic --folds 0,x").code == 2);
  CHECK(arts_cli(dir, "train --dataset asap").code == 2);
  CHECK(arts_cli(dir, "train --dataset essays").code == 2);
  CHECK(arts_cli(dir, "ingest --feedback x.csv").code == 2);
  const auto both = arts_cli(dir, "train --dataset feedback --corpus c.jsonl --prefix prompt");
  CHECK(both.code == 2);
  CHECK(both.err.find("prompt") != std::string::npos);
  CHECK(arts_cli(dir, "--help").code == 0);
}

TEST_CASE("data errors exit with 1") {
  TempDir dir;
  CHECK(arts_cli(dir, "ingest --feedback missing.csv --ranges '" ARTS_RANGES_PATH "'").code == 1);
  dir.write("bad.csv", "text_id,full_text,cohesion\nx,y,3\n");
  const auto schema = arts_cli(dir, "ingest --feedback bad.csv --ranges '" ARTS_RANGES_PATH "'");
  CHECK(schema.code == 1);
  CHECK(schema.err.find("missing column") != std::string::npos);
  dir.write("gold.jsonl", "not json\n");
  dir.write("pred.jsonl", "");
  CHECK(arts_cli(dir, "evaluate --pred pred.jsonl --gold gold.jsonl").code == 1);
}

TEST_CASE("synth, train, predict, evaluate and analyze") {
  TempDir dir;
  write_quick_config(dir);
  REQUIRE(arts_cli(dir, "--out syn synth --essays 40").code == 0);
  CHECK(manifest(dir.path() / "syn").at("status") == "complete");
  CHECK(fs::exists(dir.path() / "syn" / "corpus.jsonl"));

  const auto loud = arts_cli(dir, "--config quick.json --out loud train");
  REQUIRE(loud.code == 0);
  CHECK(loud.out.find("Trait-wise") != std::string::npos);
  const auto quiet = arts_cli(dir, "--config quick.json --out quiet --quiet train");
  REQUIRE(quiet.code == 0);

  // Same config hash, so the same run directory name under each root.
  std::string run_name;
  for (const auto& entry : fs::directory_iterator(dir.path() / "loud")) {
    run_name = entry.path().filename().string();
  }
  REQUIRE(run_name.rfind("run-", 0) == 0);
  const auto loud_run = dir.path() / "loud" / run_name;
  const auto quiet_run = dir.path() / "quiet" / run_name;
  const auto a = manifest(loud_run);
  const auto b = manifest(quiet_run);
  CHECK(a.at("status") == "complete");
  CHECK(a.at("artifacts") == b.at("artifacts"));
  CHECK(a.at("artifacts").size() >= 5);
  CHECK(arts::read_file(loud_run / "report" / "trait_wise.csv") ==
        arts::read_file(quiet_run / "report" / "trait_wise.csv"));

  const auto json = arts_cli(dir, "--config quick.json --out json --json --quiet train");
  REQUIRE(json.code == 0);
  const auto summary = nlohmann::json::parse(json.out);
  CHECK(summary.at("trait_wise").contains("avg"));

  const auto gold = (dir.path() / "syn" / "corpus.jsonl").string();
  const auto ckpt = (loud_run / "fold_0" / "model.ckpt").string();
  REQUIRE(fs::exists(ckpt));
  const auto predicted =
      arts_cli(dir, "--out predicted --quiet predict --checkpoint '" + ckpt + "' --corpus '" +
                        gold + "'");
  REQUIRE(predicted.code == 0);
  const auto predicted_file = dir.path() / "predicted" / "predictions.jsonl";
  CHECK(manifest(dir.path() / "predicted").at("status") == "complete");

  const auto eval = arts_cli(dir, "--out eval evaluate --pred '" + predicted_file.string() +
                                      "' --gold '" + gold + "'");
  REQUIRE(eval.code == 0);
  for (const char* name : {"cells.csv", "trait_wise.csv", "prompt_wise.csv", "report.txt"}) {
    CHECK(fs::exists(dir.path() / "eval" / name));
  }
  CHECK(arts_cli(dir, "--out eval2 evaluate --repair sometimes --pred '" + predicted_file.string() +
                          "' --gold '" + gold + "'")
            .code == 2);

  const auto analyzed = arts_cli(dir, "--out oor analyze --pred '" + predicted_file.string() +
                                          "' --gold '" + gold + "'");
  REQUIRE(analyzed.code == 0);
  CHECK(fs::exists(dir.path() / "oor" / "out_of_range.csv"));
  CHECK(manifest(dir.path() / "oor").at("status") == "complete");
}

TEST_CASE("feedback ingest and ablation note") {
  TempDir dir;
  write_quick_config(dir);
  dir.write("fb.csv", feedback_csv(50));
  const auto ingest =
      arts_cli(dir, "--out fb ingest --feedback fb.csv --ranges '" ARTS_RANGES_PATH "'");
  REQUIRE(ingest.code == 0);
  CHECK(ingest.out.find("50 essays") != std::string::npos);

  const auto ablate = arts_cli(
      dir, "--config quick.json --out ab --quiet ablate --dataset feedback --corpus fb/corpus.jsonl");
  CHECK(ablate.code == 0);
  CHECK(ablate.out.find("the prompt number is excluded from the input") != std::string::npos);
  CHECK(fs::exists(dir.path() / "ab" / "ablation" / "trait_wise.csv"));
}
