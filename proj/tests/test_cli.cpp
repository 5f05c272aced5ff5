#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden_oracle.hpp"
#include "phiset_cli/commands.hpp"
#include "phiset_cli/fuzz.hpp"

namespace fs = std::filesystem;
using namespace phiset;
using cli::Json;

namespace {

const fs::path kSource = PHISET_SOURCE_DIR;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(PHISET_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("phiset-cli-" + std::to_string(::getpid()) + "-" +
                                         ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& body) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << body;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(Cli, EvalUnionBase) {
  TempDir tmp;
  const auto p = tmp.write("eval.json", R"({"base":{"kind":"union","arity":2},
    "family":{"universe":3,"assign":{"0":[0],"1":[1]}}})");
  const CliRun r = run_cli("eval " + p.string());
  EXPECT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["value"], Json::array({0, 1}));
  EXPECT_EQ(j["mode"], "range");
}

TEST(Cli, CheckReductionFailsOnVee) {
  const CliRun r = run_cli("check-reduction " + (kSource / "tests/golden/check-reduction-vee.instance.json").string());
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["failing_pair"], Json::parse("[[0,1],[1,2]]"));
}

TEST(Cli, MissingTableIsInputError) {
  TempDir tmp;
  const auto p = tmp.write("alg.json", R"({"map":{"dom":{"n":2,"kind":"discrete"},"cod":{"n":2,"kind":"discrete"}}})");
  const CliRun r = run_cli("algebra " + p.string());
  EXPECT_EQ(r.code, 2);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["error"]["kind"], "input");
  EXPECT_NE(j["error"]["message"].get<std::string>().find("map.table"), std::string::npos);
}

TEST(Cli, MalformedDocumentsNameTheField) {
  const auto message = [](const std::string& command, const std::string& doc) {
    try {
      cli::run_command(command, Json::parse(doc));
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("zero-sets", R"({"space":{"n":2,"subbasis":[[0,5]]}})").find("space.subbasis[0][1]"), std::string::npos);
  EXPECT_NE(message("zero-sets", R"({"space":{"n":2,"subbasis":[[0,0]]}})").find("duplicate"), std::string::npos);
  EXPECT_NE(message("eval", R"({"base":{"kind":"union","arity":2},"mode":"sideways","family":{"universe":1}})").find("mode"),
            std::string::npos);
  EXPECT_NE(message("zero-gap", R"({"space":{"n":2,"kind":"discrete"}})").find("carrier"), std::string::npos);
  EXPECT_EQ(message("nope", "{}"), "unknown command \"nope\"");
}

TEST(Cli, PreconditionFailureExitsTwo) {
  TempDir tmp;
  const auto p = tmp.write("zw.json", R"({"space":{"n":3,"subbasis":[[0,1],[1,2]]},"zeros":[[1]]})");
  const CliRun r = run_cli("zero-witness " + p.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out)["error"]["kind"], "precondition");
}

TEST(Cli, ZeroGapOnConnectedSpace) {
  TempDir tmp;
  const auto p = tmp.write("gap.json", R"({"space":{"n":3,"opens":[[],[1],[0,1],[1,2],[0,1,2]]},"carrier":[0,2]})");
  const CliRun r = run_cli("zero-gap " + p.string());
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["traces"]["members"], Json::parse("[[],[0,1]]"));
  EXPECT_EQ(j["lifted_gap"]["members"], Json::parse("[[0],[2]]"));
}

TEST(Cli, TextFormat) {
  const CliRun r = run_cli("--format text zero-sets " + (kSource / "tests/golden/zero-sets-sierpinski.instance.json").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("command: zero-sets\n"), std::string::npos);
  EXPECT_NE(r.out.find("value.members: [[],[0,1]]\n"), std::string::npos);
}

TEST(Cli, GoldenReportsAreByteStable) {
  const auto expected = oracle::golden_expectations();
  const std::map<std::string, std::string> command{{"check-reduction-vee", "check-reduction"},
                                                   {"zero-sets-sierpinski", "zero-sets"},
                                                   {"product-sierpinski2", "product"}};
  for (const auto& [name, doc] : expected) {
    const fs::path dir = kSource / "tests/golden";
    const std::string frozen = slurp(dir / (name + ".report.json"));
    EXPECT_EQ(Json::parse(frozen), doc) << name;
    const CliRun first = run_cli(command.at(name) + " " + (dir / (name + ".instance.json")).string());
    const CliRun second = run_cli(command.at(name) + " " + (dir / (name + ".instance.json")).string());
    EXPECT_EQ(first.out, frozen) << name;
    EXPECT_EQ(second.out, frozen) << name;
  }
}

TEST(Cli, CorpusReplays) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(kSource / "corpus")) {
    const Json doc = Json::parse(slurp(entry.path()));
    EXPECT_TRUE(cli::replay(doc)) << entry.path();
    Json tampered = doc;
    tampered["observed"] = Json::object();
    EXPECT_FALSE(cli::replay(tampered)) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 3u);
  const CliRun r = run_cli("replay " + (kSource / "corpus").string() + "/*.json");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, FuzzMatchesShippedCorpus) {
  TempDir tmp;
  for (const std::string suite : {"prop11-necessity", "zerotych-gap", "lemma12-image"}) {
    const CliRun r = run_cli("fuzz " + suite + " --corpus-dir " + tmp.path().string());
    EXPECT_EQ(r.code, 0) << suite;
  }
  for (const auto& entry : fs::directory_iterator(tmp.path())) {
    EXPECT_EQ(slurp(entry.path()), slurp(kSource / "corpus" / entry.path().filename())) << entry.path();
  }
}

TEST(Cli, FuzzIsDeterministic) {
  const CliRun a = run_cli("fuzz lemma2-distributivity --max-points 5 --exhaustive-points 2 --budget 3 --seed 7 --depth 1");
  const CliRun b = run_cli("fuzz lemma2-distributivity --max-points 5 --exhaustive-points 2 --budget 3 --seed 7 --depth 1");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run_cli("fuzz lemma2-distributivity --max-points 5 --exhaustive-points 2 --budget 3 --seed 8 --depth 1");
  EXPECT_NE(Json::parse(a.out)["checked"], Json::parse(c.out)["checked"]);
}

TEST(Cli, FuzzExamples) {
  cli::FuzzBounds small;
  small.max_points = 2;
  const cli::SuiteResult r = cli::run_suite("lemma5-preimage", small);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GT(r.checked, 0u);
  EXPECT_EQ(run_cli("fuzz no-such-suite").code, 2);
  EXPECT_EQ(run_cli("fuzz lemma5-preimage --budget 0").code, 2);
}

TEST(Cli, TransferInstances) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(kSource / "instances/transfer")) {
    const cli::Outcome o = cli::run_command("transfer", Json::parse(slurp(entry.path())));
    const bool hypotheses = o.report["failures"].empty();
    EXPECT_EQ(o.exit_code, hypotheses ? 0 : 1) << entry.path();
    for (const Json& s : o.report.value("steps", Json::array())) EXPECT_TRUE(s["valid"].get<bool>()) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 20u);

  const cli::Outcome bad = cli::run_command(
      "transfer", Json::parse(slurp(kSource / "instances/transfer/23-f001-fails-b-non-fiber-generator.json")));
  ASSERT_EQ(bad.report["failures"].size(), 1u);
  EXPECT_EQ(bad.report["failures"][0]["hypothesis"], "b");
  EXPECT_EQ(bad.report["failures"][0]["set"], Json::array({0}));
}
