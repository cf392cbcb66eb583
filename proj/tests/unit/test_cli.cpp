#include <doctest.h>

#include <json.hpp>

#include "mtgb/cli.hpp"
#include "mtgb/text.hpp"
#include "support/fixture.hpp"

using namespace mtgb;
namespace fs = std::filesystem;

namespace {

const std::string kFix = fixture::dir().string();

void check_matches_oracle(const std::string& out, const fs::path& oracle) {
  const auto want = fixture::parse_kv(text::read_file(oracle));
  const auto got = fixture::parse_kv(out);
  REQUIRE(!want.empty());
  for (const auto& kv : want) {
    CAPTURE(kv.first);
    CHECK(std::find(got.begin(), got.end(), kv) != got.end());
  }
}

struct GenderedRun {
  fs::path tmp;
  fixture::Result eval;
};

GenderedRun run_gendered(const std::string& name) {
  GenderedRun g{fixture::scratch(name), {}};
  const auto pairs = fixture::run({"pairs", "--input", kFix + "/gendered.txt", "--out", (g.tmp / "pairs.tsv").string()});
  REQUIRE(pairs.code == kExitOk);
  g.eval = fixture::run({"evaluate", "--input", kFix + "/gendered.txt", "--translations", kFix + "/gendered_it.tsv",
                         "--alignments", kFix + "/gendered.align", "--pairs", (g.tmp / "pairs.tsv").string(),
                         "--out", (g.tmp / "outcomes.tsv").string(), "--format", "machine"});
  return g;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gendered fixture reproduces the oracle") {
  const auto g = run_gendered("cli_gendered");
  REQUIRE(g.eval.code == kExitOk);
  check_matches_oracle(g.eval.out, fixture::dir() / "expected_gendered.kv");
  const auto log = nlohmann::json::parse(text::read_file(g.tmp / "outcomes.tsv.log.json"));
  CHECK(log["command"] == "evaluate");
  CHECK(log["counts"]["records"] == 20);

  const auto mpa = fixture::run({"mpa", "--pairs", (g.tmp / "pairs.tsv").string(), "--outcomes",
                                 (g.tmp / "outcomes.tsv").string(), "--format", "machine", "--log",
                                 (g.tmp / "mpa.log.json").string()});
  CHECK(mpa.code == kExitOk);
  CHECK(mpa.out.find("mpa=50.0\n") != std::string::npos);
}

TEST_CASE("neutral fixture reproduces the oracle") {
  const auto tmp = fixture::scratch("cli_neutral");
  const auto r = fixture::run({"evaluate", "--input", kFix + "/neutral.txt", "--translations", kFix + "/neutral_it.tsv",
                               "--alignments", kFix + "/neutral.align", "--out", (tmp / "outcomes.tsv").string(),
                               "--format", "machine"});
  REQUIRE(r.code == kExitOk);
  check_matches_oracle(r.out, fixture::dir() / "expected_neutral.kv");
  const auto again = fixture::run({"prior-bias", "--outcomes", (tmp / "outcomes.tsv").string(), "--format", "machine",
                                   "--log", (tmp / "p.log.json").string()});
  CHECK(again.code == kExitOk);
  check_matches_oracle(again.out, fixture::dir() / "expected_neutral.kv");
}

TEST_CASE("neutralize reproduces the neutral fixture") {
  const auto tmp = fixture::scratch("cli_neutralize");
  const auto r = fixture::run({"neutralize", "--input", kFix + "/gendered.txt", "--out", (tmp / "n.txt").string()});
  REQUIRE(r.code == kExitOk);
  const auto lines = text::read_lines(tmp / "n.txt");
  const auto want = text::read_lines(fixture::dir() / "neutral.txt");
  REQUIRE(lines.size() == 2 * want.size());
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(lines[2 * k] == want[k]);
  const auto v = fixture::run({"verify-neutral", "--input", (tmp / "n.txt").string(), "--log",
                               (tmp / "v.log.json").string()});
  CHECK(v.code == kExitOk);
  const auto bad = fixture::run({"verify-neutral", "--input", kFix + "/gendered.txt", "--log",
                                 (tmp / "b.log.json").string()});
  CHECK(bad.code == kExitValidation);
}

TEST_CASE("attention report over synthetic dumps") {
  const auto tmp = fixture::scratch("cli_attention");
  fixture::write_fixture_dumps(tmp / "dumps", 0.25);
  auto report = [&](const std::string& stem, const std::string& n_min) {
    return fixture::run({"attention-report", "--input", kFix + "/gendered.txt", "--dumps", (tmp / "dumps").string(),
                         "--n-min", n_min, "--scale", "0,0.5", "--out", (tmp / stem).string(), "--format",
                         "machine"});
  };
  const auto r = report("a", "5");
  INFO(r.err);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("instances=5\n") != std::string::npos);
  CHECK(r.out.find("rows=13\n") != std::string::npos);
  CHECK(r.out.find("max_value=0.2500\n") != std::string::npos);
  const auto csv = text::read_lines(tmp / "a.csv");
  CHECK(csv.size() == 13);
  CHECK(text::split(csv[0], ',').size() == 4);

  const auto again = report("b", "5");
  REQUIRE(again.code == kExitOk);
  CHECK(text::read_file(tmp / "a.csv") == text::read_file(tmp / "b.csv"));
  CHECK(text::read_file(tmp / "a.ppm") == text::read_file(tmp / "b.ppm"));

  const auto log = nlohmann::json::parse(text::read_file(tmp / "a.log.json"));
  const std::size_t located = log["counts"]["located"];
  CHECK(located >= 5);
  const auto too_many = report("c", std::to_string(located + 1));
  CHECK(too_many.code == kExitValidation);

  const auto sanity = fixture::run({"sanity-check", "--input", kFix + "/gendered.txt", "--dumps",
                                    (tmp / "dumps").string(), "--format", "machine", "--log",
                                    (tmp / "s.log.json").string()});
  INFO(sanity.err);
  REQUIRE(sanity.code == kExitOk);
  CHECK(sanity.out.find("layer15.head0.target=0.2500\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  const auto tmp = fixture::scratch("cli_exit");
  const auto log = (tmp / "x.log.json").string();
  CHECK(fixture::run({"pairs", "--input", (tmp / "nope.txt").string(), "--out", (tmp / "p").string()}).code ==
        kExitIo);
  CHECK(fixture::run({"evaluate", "--format", "xml"}).code == kExitValidation);
  CHECK(fixture::run({"frobnicate"}).code == kExitValidation);
  CHECK(fixture::run({}).code == kExitValidation);
  text::write_file(tmp / "bad.txt", "male\tx\tThe nurse.\tnurse\n");
  const auto r = fixture::run({"pairs", "--input", (tmp / "bad.txt").string(), "--out", (tmp / "p").string()});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find(":1") != std::string::npos);
  text::write_file(tmp / "empty.tsv", "");
  CHECK(fixture::run({"prior-bias", "--outcomes", (tmp / "empty.tsv").string(), "--log", log}).code ==
        kExitValidation);
  CHECK(fixture::run({"evaluate", "--input", kFix + "/gendered.txt", "--translations", kFix + "/gendered_it.tsv",
                      "--alignments", kFix + "/neutral.align", "--log", log})
            .code == kExitValidation);
}

TEST_CASE("config file and show-config") {
  const auto tmp = fixture::scratch("cli_config");
  text::write_file(tmp / "run.ini", "n-min=7\nlayers=\"2-5\"\n");
  const auto r = fixture::run({"--config", (tmp / "run.ini").string(), "--n-min", "9", "--show-config"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("n-min=9") != std::string::npos);
  CHECK(r.out.find("2-5") != std::string::npos);
  CHECK(r.out.find("show-config") == std::string::npos);
}

}
