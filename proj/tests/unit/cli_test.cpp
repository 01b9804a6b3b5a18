#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fsub/cli.hpp"
#include "fsub/metatheory.hpp"
#include "fsub/parser.hpp"
#include "fsub/serialize.hpp"
#include "fsub/subtyper.hpp"

namespace {

using namespace fsubtype;
namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "fsub");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fsub_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(Cli, CheckTopTop) {
  auto r = run({"check", file("j", "|- Top <: Top\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "YES\n");
}

TEST_F(Cli, CheckSkipsCommentsAndBlankLines) {
  auto r = run({"check", file("j", "# header\n\n   \n|- Top <: Top\n  # indented\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "YES\n");
}

TEST_F(Cli, CheckDerivationText) {
  auto r = run({"check", file("j", "X <: Top, Y <: X |- Y <: X\n"), "--derivation"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "YES\n"
            "(trs) X <: Top, Y <: X |- Y <: X\n"
            "  (var) X <: Top, Y <: X |- X <: X\n");
}

TEST_F(Cli, CheckJsonRoundTrips) {
  auto r = run({"check", file("j", "|- All X <: Top . X -> X <: All X <: Top . X -> Top\n"),
                "--derivation", "--json"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string label, doc;
  std::getline(lines, label);
  std::getline(lines, doc);
  EXPECT_EQ(label, "YES");
  Derivation d = parse_derivation(doc);
  EXPECT_TRUE(check_derivation(d));
  EXPECT_EQ(serialize(d), doc);
}

TEST_F(Cli, ExitCodePriorities) {
  EXPECT_EQ(run({"check", file("a", "|- Top <: Top -> Top\n|- Top <: Top\n")}).code, 1);
  const std::string diverge =
      "X0 <: All X0 <: Top . All Z <: (All X1 <: X0 . All W <: X1 . W) . Z "
      "|- X0 <: All X1 <: X0 . All W <: X1 . W\n";
  auto u = run({"check", file("b", "|- Top <: Top -> Top\n" + diverge), "--fuel", "100"});
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(u.out, "NO\nUNKNOWN\n");
  auto e = run({"check", file("c", diverge + "|- Top <:\n")});
  EXPECT_EQ(e.code, 3);
}

TEST_F(Cli, ParseErrorsCarryPosition) {
  const std::string path = file("j", "|- Top <: Top\n|- Top <: ->\n");
  auto r = run({"check", path});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "YES\nERROR\n");
  EXPECT_NE(r.err.find(path + ":2:11:"), std::string::npos) << r.err;
}

TEST_F(Cli, ScopingErrorIsExit3) {
  auto r = run({"check", file("j", "X <: Top |- Y <: Top\n")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find(":1:"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"check"}).code, 3);
  EXPECT_EQ(run({"check", file("j", "|- Top <: Top\n"), "--bogus"}).code, 3);
  EXPECT_EQ(run({"check", "/nonexistent/file"}).code, 3);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, ReflAndTrans) {
  auto refl = run({"refl", file("r", "A <: Top |- (Top -> A) -> A\n")});
  ASSERT_EQ(refl.code, 0);
  Derivation d = parse_derivation(refl.out);
  EXPECT_TRUE(check_derivation(d));
  EXPECT_EQ(d.lhs(), d.rhs());

  Env g = parse_env("A <: Top");
  auto r1 = decide_sub(g, parse_type("Top -> A"), parse_type("A -> Top"));
  Derivation d2 = derive_refl(g, parse_type("A -> Top"));
  auto t = run({"trans", file("d1", serialize(r1.derivation())), file("d2", serialize(d2))});
  ASSERT_EQ(t.code, 0) << t.err;
  Derivation out = parse_derivation(t.out);
  EXPECT_TRUE(check_derivation(out));

  auto bad = run({"trans", file("e1", serialize(d2)), file("e2", serialize(r1.derivation()))});
  EXPECT_EQ(bad.code, 4);
  EXPECT_EQ(run({"refl", file("x", "X <: Top, X <: Top |- Top\n")}).code, 4);
  EXPECT_EQ(run({"trans", file("f1", "{}"), file("f2", "{}")}).code, 3);
}

TEST_F(Cli, Narrow) {
  Env g = parse_env("A <: Top, X <: Top");
  Derivation d = make_trs(g, VarName("X"), make_top(g, Ty::top()));
  Derivation ev = make_top(parse_env("A <: Top"), Ty::var("A"));
  auto r = run({"narrow", file("d", serialize(d)), "--pivot", "X", "--new-bound", "A", "--evidence",
                file("e", serialize(ev))});
  ASSERT_EQ(r.code, 0) << r.err;
  Derivation out = parse_derivation(r.out);
  EXPECT_TRUE(check_derivation(out));
  EXPECT_EQ(out.env(), parse_env("A <: Top, X <: A"));

  auto absent = run({"narrow", file("d2", serialize(d)), "--pivot", "Q", "--new-bound", "A",
                     "--evidence", file("e2", serialize(ev))});
  EXPECT_EQ(absent.code, 4);
}

TEST_F(Cli, GenIsDeterministic) {
  auto a = run({"gen", "--seed", "99", "--count", "50"});
  auto b = run({"gen", "--seed", "99", "--count", "50"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_NO_THROW(parse_judgment(line)) << line;
    ++n;
  }
  EXPECT_EQ(n, 50);
  auto c = run({"gen", "--seed", "99", "--count", "20", "--derivations"});
  std::istringstream docs(c.out);
  while (std::getline(docs, line)) EXPECT_TRUE(check_derivation(parse_derivation(line)));
  EXPECT_NE(run({"gen", "--seed", "98", "--count", "50"}).out, a.out);
}

TEST_F(Cli, Oracle) {
  auto r = run({"oracle", "--max-size", "3", "--max-env", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n0 disagreements\n"), std::string::npos) << r.out;
}

TEST_F(Cli, GoldenWorkedEnvironment) {
  for (const auto& [flags, expected] :
       std::vector<std::pair<std::vector<std::string>, std::string>>{
           {{"--derivation"}, "worked_env.expected"},
           {{"--derivation", "--json"}, "worked_env.json.expected"}}) {
    std::vector<std::string> args{"check", std::string(FSUB_GOLDEN_DIR) + "/worked_env.judgments"};
    args.insert(args.end(), flags.begin(), flags.end());
    auto r = run(args);
    std::ifstream in(std::string(FSUB_GOLDEN_DIR) + "/" + expected);
    std::stringstream want;
    want << in.rdbuf();
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, want.str());
  }
}

}  // namespace
