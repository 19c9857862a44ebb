// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "agc/model/checkpoint.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string err;
};

Run run(const fs::path& dir, const std::string& args) {
  const auto log = dir / "stderr.txt";
  const std::string cmd = std::string(AGCSEQ_CLI) + " " + args + " >" + (dir / "stdout.txt").string() + " 2>" +
                          log.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_rows(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  std::getline(in, line);
  while (std::getline(in, line)) n += !line.empty();
  return n;
}

}  // namespace

TEST_CASE("generate writes every value and is repeatable") {
  const auto dir = agc::testing::scratch_dir("cli-generate");
  const std::string out = (dir / "a").string();
  REQUIRE(run(dir, "generate --ring 8 --days 10 --seed 7 --out " + out).code == 0);
  CHECK(data_rows(dir / "a" / "speeds.csv") == 8 * 10 * 192);
  CHECK(fs::exists(dir / "a" / "speeds.params.json"));
  CHECK(fs::exists(dir / "a" / "run.json"));
  REQUIRE(run(dir, "generate --ring 8 --days 10 --seed 7 --out " + (dir / "b").string()).code == 0);
  CHECK(slurp(dir / "a" / "speeds.csv") == slurp(dir / "b" / "speeds.csv"));

  const auto bad = run(dir, "generate --ring 8 --days 0 --out " + (dir / "c").string());
  CHECK(bad.code != 0);
  CHECK(bad.err.find("--days") != std::string::npos);
  CHECK(run(dir, "generate --ring 8 --days 3 --noise -1 --out " + (dir / "d").string()).code == 1);
}

TEST_CASE("usage errors exit with 2") {
  const auto dir = agc::testing::scratch_dir("cli-usage");
  CHECK(run(dir, "train --ring 4").code == 2);
  CHECK(run(dir, "frobnicate").code == 2);
  CHECK(run(dir, "--help").code == 0);
}

TEST_CASE("train, predict, evaluate and attention on a toy ring") {
  const auto dir = agc::testing::scratch_dir("cli-pipeline");
  const auto d = dir.string();
  REQUIRE(run(dir, "generate --ring 5 --days 4 --seed 3 --out " + d).code == 0);
  const std::string data = " --ring 5 --data " + d + "/speeds.csv";

  const auto t0 = std::chrono::steady_clock::now();
  const auto tr = run(dir, "train" + data + " --epochs 3 --hidden 8 --m 5 --n 3 --out " + d + "/model");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  INFO(tr.err);
  REQUIRE(tr.code == 0);
  CHECK(secs < 60.0);
  CHECK(fs::exists(dir / "model" / "checkpoint.json"));
  CHECK(data_rows(dir / "model" / "history.csv") >= 1);
  const auto run_json = nlohmann::json::parse(slurp(dir / "model" / "run.json"));
  CHECK(run_json["command"] == "train");
  CHECK(run_json["config"]["m"] == 5);

  const std::string ckpt = " --checkpoint " + d + "/model/checkpoint.json";
  REQUIRE(run(dir, "predict" + data + ckpt + " --out " + d + "/pred").code == 0);
  // 4 days -> 3 train, 1 test; 192 - m - n anchors per link.
  CHECK(data_rows(dir / "pred" / "predictions.csv") == 5 * (192 - 5 - 3) * 3);

  REQUIRE(run(dir, "evaluate" + data + ckpt + " --out " + d + "/eval").code == 0);
  CHECK(data_rows(dir / "eval" / "metrics.csv") == 5 * 4);
  CHECK(fs::exists(dir / "eval" / "metrics.json"));

  REQUIRE(run(dir, "attention" + data + ckpt + " --link L2 --out " + d + "/att").code == 0);
  CHECK(data_rows(dir / "att" / "attention.csv") == (192 - 5 - 3) * 3);

  const auto mismatch = run(dir, "predict --ring 6 --data " + d + "/speeds.csv" + ckpt + " --out " + d + "/x");
  CHECK(mismatch.code == 1);
  CHECK(!mismatch.err.empty());
}

TEST_CASE("zero hops give an identity mask") {
  const auto dir = agc::testing::scratch_dir("cli-k0");
  const auto d = dir.string();
  REQUIRE(run(dir, "generate --ring 4 --days 2 --seed 1 --out " + d).code == 0);
  REQUIRE(run(dir, "train --ring 4 --data " + d + "/speeds.csv --k 0 --epochs 1 --hidden 4 --m 2 --n 1 --out " + d +
                       "/m").code == 0);
  const auto c = agc::model::load_checkpoint(dir / "m" / "checkpoint.json");
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(c.params.mask(i, j) == (i == j));
  }
}

TEST_CASE("baselines need no checkpoint") {
  const auto dir = agc::testing::scratch_dir("cli-baselines");
  const auto d = dir.string();
  REQUIRE(run(dir, "generate --ring 3 --days 3 --seed 2 --out " + d).code == 0);
  const auto r = run(dir, "evaluate --ring 3 --data " + d + "/speeds.csv --predictors ha,naive --n 3 --out " + d + "/e");
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(data_rows(dir / "e" / "metrics.csv") == 2 * 4);
  CHECK(run(dir, "evaluate --ring 3 --data " + d + "/speeds.csv --predictors model --out " + d + "/f").code == 2);
}

TEST_CASE("k-hop sweep") {
  const auto dir = agc::testing::scratch_dir("cli-khop");
  const auto d = dir.string();
  REQUIRE(run(dir, "generate --ring 4 --days 3 --seed 2 --out " + d).code == 0);
  const auto r = run(dir, "khop-sweep --ring 4 --data " + d + "/speeds.csv --k 0,1,2 --epochs 1 --hidden 4 --m 2 --n 2 --out " +
                              d + "/k");
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(data_rows(dir / "k" / "khop.csv") == 3 * 2);
}
