#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sqfw/catalog.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`; stderr is discarded unless `merge_err`.
Run cli(const std::string& args, bool merge_err = false) {
  const std::string cmd = std::string(SQFW_CLI_PATH) + " " + args + (merge_err ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

struct TempDir {
  fs::path dir;
  explicit TempDir(const std::string& tag) : dir(fs::temp_directory_path() / ("sqfw_cli_" + tag)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
};

}  // namespace

TEST_CASE("check-word") {
  CHECK(cli("check-word 012021012102012").code == 0);
  const auto r = cli("check-word 0120101");
  CHECK(r.code == 1);
  CHECK(r.out.find("3") != std::string::npos);
  CHECK(cli("check-word 01x").code == 2);
  CHECK(cli("check-word 0123 --alphabet 4").code == 0);
  CHECK(cli("check-word").code == 2);
}

TEST_CASE("check-morphism") {
  const auto r = cli("check-morphism --file tau.morph --mode ternary");
  CHECK(r.code == 1);
  CHECK(r.out.find("010") != std::string::npos);
  CHECK(r.out.find("02120") != std::string::npos);
  CHECK(cli("check-morphism --name uniform11 --mode uniform").code == 0);
  CHECK(cli("check-morphism --name x11 --mode ternary").code == 0);
  CHECK(cli("check-morphism --name multi_embed --mode multi").code == 0);
  CHECK(cli("check-morphism --name uniform11 --mode theorem10").code == 0);
  CHECK(cli("check-morphism --name case_p6 --mode theorem10").code == 1);
  CHECK(cli("check-morphism --name tau --mode uniform").code == 2);
  CHECK(cli("check-morphism --name nosuch --mode ternary").code == 2);
  CHECK(cli("check-morphism --file tau.morph --mode sideways").code == 2);

  const auto j = cli("check-morphism --name tau --mode ternary --json");
  CHECK(j.code == 1);
  const auto rec = nlohmann::json::parse(j.out);
  CHECK(rec["pass"] == false);
  CHECK(rec["counterexample"]["input"] == "010");

  const TempDir t("morph");
  const auto f = t.file("swap.morph", "0 -> 012\n1 -> 120\n2 -> 201\n");
  CHECK(cli("check-morphism --file " + f + " --mode uniform").code == 1);
  const auto bad = t.file("bad.morph", "0 -> 01\n0 -> 02\n");
  CHECK(cli("check-morphism --file " + bad + " --mode ternary").code == 2);
}

TEST_CASE("gen and subsample") {
  CHECK(trim(cli("gen --morphism tau --letter 0 --len 12").out) == "012021012102");
  CHECK(trim(cli("gen --stream vtm --len 15").out) == "012021012102012");
  CHECK(trim(cli("gen --stream vtm --len 4 --serialize").out) == "4:0120");
  CHECK(trim(cli("gen --morphism tau --apply 012 --len 6").out) == "012021");
  CHECK(cli("gen --morphism tau --letter 1 --len 5").code == 2);
  CHECK(trim(cli("subsample 0120210121 --p 2").out) == "02202");
  CHECK(trim(cli("subsample 0120210121 --p 3 --offset 1").out) == "121");
  CHECK(cli("subsample 0120 --p 0").code == 2);
}

TEST_CASE("search and probe") {
  const auto found = cli("search --len 50");
  CHECK(found.code == 0);
  CHECK(found.out.find("found") != std::string::npos);
  const auto z = cli("search --fixmod 2,0,zero --len 64 --exhaustive");
  CHECK(z.code == 0);
  CHECK(z.out.find("0102010") != std::string::npos);
  CHECK(z.out.find("0201020") != std::string::npos);
  // Exhausted below the target: not found.
  CHECK(cli("search --fixmod 2,0,zero --len 20").code == 1);
  const TempDir t("search");
  const auto c = t.file("c.txt", "fixmod 5 0 zero\n");
  const auto p5 = cli("search --constraints " + c + " --len 128 --exhaustive");
  CHECK(p5.out.find("40") != std::string::npos);
  CHECK(cli("search --fix 3:2 --fix 3:1 --len 10").code == 2);
  CHECK(cli("search --fix 3 --len 10").code == 2);
  const auto pr = cli("probe --p 3 --q 11 --budget 100000 --max-length 198");
  CHECK(pr.code == 0);
  CHECK(pr.out.find("198") != std::string::npos);
}

TEST_CASE("embed") {
  const TempDir t("embed");
  const auto log = (t.dir / "swaps.jsonl").string();
  const auto r = cli("embed --positions arith:0,30 --v 012 --len 3000 --swap-log " + log);
  CHECK(r.code == 0);
  const std::string w = trim(r.out);
  REQUIRE(w.size() == 3000);
  for (std::size_t i = 0; i < 3000; i += 30) CHECK(w[i] == "012"[(i / 30) % 3]);
  CHECK(cli("check-word " + w).code == 0);
  std::ifstream in(log);
  std::string line;
  REQUIRE(std::getline(in, line));
  const auto head = nlohmann::json::parse(line);
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["old"] == 3);
    CHECK(j["new"] == 3 - j["d"].get<int>());
    CHECK(j["position"].get<std::size_t>() < 3000);
    ++n;
  }
  CHECK(n > 0);
  CHECK(head["swaps"] == n);
  CHECK(cli("embed --positions 0,10 --v 01 --len 100").code == 2);
}

TEST_CASE("lcp and dfao") {
  CHECK(trim(cli("lcp --morphism n70").out).find("64") != std::string::npos);
  const auto b = cli("lcp --bound --middle 5 --flank 7 --group 3");
  CHECK(b.code == 1);
  CHECK(b.out.find("24") != std::string::npos);
  const auto s = cli("lcp --n 11 --target 6 --budget 100000");
  CHECK(s.code == 1);

  const TempDir t("dfao");
  const auto synth = cli("dfao synth --stream vtm");
  REQUIRE(synth.code == 0);
  const auto f = t.file("vtm.dfao", synth.out);
  CHECK(trim(cli("dfao eval --file " + f + " --n 2").out) == "2");
  CHECK(cli("dfao check --file " + f + " --stream vtm --len 100000").code == 0);
  CHECK(cli("dfao check --file " + f + " --stream zero --len 100").code == 1);
  const auto bad = t.file("bad.dfao", "nonsense\n");
  CHECK(cli("dfao eval --file " + bad + " --n 2").code == 2);
}

TEST_CASE("usage") {
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("--help").code == 0);
  CHECK(cli("verify-paper --scope medium").code == 2);
}

TEST_CASE("tampered asset fails verify-paper") {
  const TempDir t("tamper");
  for (const auto& f : fs::directory_iterator(sqfw::default_asset_dir())) fs::copy(f.path(), t.dir / f.path().filename());
  std::ofstream(t.dir / "n70.morph", std::ios::app) << "# touched\n";
  const auto out = (t.dir / "report.jsonl").string();
  const std::string env = "SQFW_ASSET_DIR=" + t.dir.string() + " ";
  const std::string cmd = env + SQFW_CLI_PATH + " verify-paper --scope fast --quiet --out " + out + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 1);
  std::ifstream in(out);
  std::string line;
  bool seen = false;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j["claim"] == "catalog.n70.checksum") {
      seen = true;
      CHECK(j["status"] == "fail");
    } else if (j["claim"] == "catalog.tau.checksum") {
      CHECK(j["status"] == "pass");
    }
  }
  CHECK(seen);
}
