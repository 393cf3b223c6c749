#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "randassign/cli.hpp"
#include "randassign/formats.hpp"

namespace randassign::cli {
namespace {

std::string data(const std::string& name) { return std::string(RANDASSIGN_TEST_DATA) + "/" + name; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("randassign_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

TEST(Solve, PsMatrix) {
  const CliRun r = run_cli({"solve", data("identical3.inst")});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out, "1/3 1/3 1/3\n1/3 1/3 1/3\n1/3 1/3 1/3\n");
  const CliRun t = run_cli({"solve", data("two_type4.inst"), "--rule", "ps"});
  EXPECT_EQ(t.out, io::format_matrix(io::parse_matrix(io::read_file(data("two_type4.mat")))));
}

TEST(Solve, RpLottery) {
  const CliRun r = run_cli({"solve", data("identical3.inst"), "--rule", "rp"});
  EXPECT_EQ(r.code, kSuccess);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.rfind("1/6 : ", 0), 0u) << line;
    ++count;
  }
  EXPECT_EQ(count, 6);
}

TEST(Solve, Errors) {
  EXPECT_EQ(run_cli({"solve", data("identical3.inst"), "--rule", "xx"}).code, kUsage);
  const CliRun bad = run_cli({"solve", temp_file("bad.inst", "n 2\nagent 1: a a\n")});
  EXPECT_EQ(bad.code, kUsage);
  EXPECT_TRUE(contains(bad.err, ":2:12:")) << bad.err;
  EXPECT_EQ(run_cli({"solve", "/nonexistent.inst"}).code, kUsage);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kSuccess);
}

TEST(Decompose, BirkhoffUniqueLottery) {
  const CliRun r = run_cli({"decompose", data("unique_birkhoff3.inst"), data("unique_birkhoff3.mat")});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_EQ(r.out, "9/10 : b a c\n1/10 : b c a\n");
}

TEST(Decompose, LpDecEfInfeasible) {
  const CliRun r = run_cli({"decompose", data("blocked4.inst"), data("blocked4.mat"), "--method",
                         "lp-dec-ef"});
  EXPECT_EQ(r.code, kInfeasible);
  EXPECT_TRUE(contains(r.out, "infeasible"));
}

TEST(Decompose, TwoTypeEighteenEntries) {
  const CliRun r = run_cli({"decompose", data("two_type4.inst"), data("two_type4.mat"), "--method",
                         "two-type", "--format", "structured"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_TRUE(contains(r.out, "kind: lottery\n"));
  EXPECT_TRUE(contains(r.out, "entries: 18\n"));
}

TEST(Decompose, Preconditions) {
  EXPECT_EQ(run_cli({"decompose", data("two_type4.inst"), data("two_type4.mat"), "--method",
                     "three-agent"})
                .code,
            kPrecondition);
  EXPECT_EQ(run_cli({"decompose", data("unique_birkhoff3.inst"), data("unique_birkhoff3.mat"),
                     "--method", "three-agent"})
                .code,
            kPrecondition);
  EXPECT_EQ(run_cli({"decompose", data("reversal4.inst"), data("reversal4.mat"), "--method",
                     "two-type"})
                .code,
            kPrecondition);
  EXPECT_EQ(run_cli({"decompose", data("reversal4.inst"), data("reversal4.mat"), "--method",
                     "uniform"})
                .code,
            kPrecondition);
  const CliRun ok = run_cli({"decompose", data("identical3.inst"),
                          temp_file("u.mat", "1/3 1/3 1/3\n1/3 1/3 1/3\n1/3 1/3 1/3\n"),
                          "--method", "uniform"});
  EXPECT_EQ(ok.code, kSuccess);
}

TEST(Decompose, SizeAndValidity) {
  EXPECT_EQ(run_cli({"decompose", data("reversal4.inst"), data("unique_birkhoff3.mat")}).code,
            kUsage);
  EXPECT_EQ(run_cli({"decompose", data("pair2.inst"), temp_file("neg.mat", "1 1\n0 0\n")}).code,
            kUsage);
}

TEST(Check, Verdicts) {
  const CliRun weak = run_cli({"check", data("rotating3.inst"), data("rotating3.mat"),
                            "--property", "weak-sd-ef"});
  EXPECT_EQ(weak.code, kFalse);
  EXPECT_EQ(weak.out, "false\npair: 1 2\n");

  const CliRun rev = run_cli({"check", data("reversal4.inst"), data("reversal4.mat"),
                           "--property", "reversal-symmetric"});
  EXPECT_EQ(rev.code, kFalse);

  const CliRun ef = run_cli({"check", data("unequal3.inst"), data("unequal3.mat"), "--property",
                          "ef-decomposable", "--format", "structured"});
  EXPECT_EQ(ef.code, kSuccess);
  EXPECT_TRUE(contains(ef.out, "verdict: true\n"));
  EXPECT_TRUE(contains(ef.out, "certificate.type: witness\n"));

  EXPECT_EQ(run_cli({"check", data("unequal3.inst"), data("unequal3.mat"), "--property", "etoe"})
                .code,
            kFalse);
  EXPECT_EQ(run_cli({"check", data("blocked4.inst"), data("blocked4.mat"), "--property",
                     "sd-efficient"})
                .code,
            kSuccess);
  EXPECT_EQ(run_cli({"check", data("rotating3.inst"), data("rotating3.lot"), "--property",
                     "dec-ef"})
                .code,
            kSuccess);
  EXPECT_EQ(run_cli({"check", data("identical3.inst"), data("identical3_cyclic.lot"),
                     "--property", "dec-ef"})
                .code,
            kFalse);
  EXPECT_EQ(run_cli({"check", data("reversal4.inst"), data("reversal4.lot"), "--property",
                     "dec-ef"})
                .code,
            kSuccess);
  EXPECT_EQ(run_cli({"check", data("identical3.inst"), data("identical3_cyclic.lot"),
                     "--property", "ex-post-efficient"})
                .code,
            kSuccess);
}

TEST(Check, KindMismatch) {
  EXPECT_EQ(run_cli({"check", data("rotating3.inst"), data("rotating3.lot"), "--property",
                     "sd-ef"})
                .code,
            kUsage);
  EXPECT_EQ(run_cli({"check", data("rotating3.inst"), data("rotating3.mat"), "--property",
                     "dec-ef"})
                .code,
            kUsage);
  EXPECT_EQ(run_cli({"check", data("rotating3.inst"), data("rotating3.mat")}).code, kUsage);
}

TEST(Envy, Matrices) {
  const CliRun cyc = run_cli({"envy", data("identical3.inst"), data("identical3_cyclic.lot")});
  EXPECT_EQ(cyc.code, kSuccess);
  EXPECT_EQ(io::parse_matrix(cyc.out)(1, 0), Rational(2, 3));

  const CliRun point = run_cli({"envy", data("rotating3.inst"), temp_file("top.lot", "1 : a b c\n")});
  EXPECT_TRUE(io::parse_matrix(point.out).is_zero());

  EXPECT_EQ(run_cli({"envy", data("reversal4.inst"), data("identical3_cyclic.lot")}).code, kUsage);
}

TEST(Search, Reports) {
  const CliRun ps = run_cli({"search", "--n", "3"});
  EXPECT_EQ(ps.code, kSuccess);
  EXPECT_TRUE(contains(ps.out, "failures: 0 / 216\n"));
  const CliRun rp = run_cli({"search", "--n", "2", "--check", "rp-dec-ef"});
  EXPECT_TRUE(contains(rp.out, "failures: 0 / 4\n"));
  const CliRun canon = run_cli({"search", "--n", "3", "--canonical", "--jobs", "2", "--format",
                             "structured"});
  EXPECT_TRUE(contains(canon.out, "mode: canonical\n"));
  EXPECT_TRUE(contains(canon.out, "profiles-represented: 216\n"));
  const CliRun sampled = run_cli({"search", "--n", "4", "--check", "rp-dec-ef", "--sample", "5"});
  EXPECT_EQ(sampled.code, kSuccess);
  EXPECT_TRUE(contains(sampled.out, "failures: 0 / 5\n"));
}

TEST(Search, Limits) {
  EXPECT_EQ(run_cli({"search", "--n", "5"}).code, kUsage);
  EXPECT_EQ(run_cli({"search", "--n", "6", "--sample", "3"}).code, kUsage);
  EXPECT_EQ(run_cli({"search", "--n", "3", "--check", "nope"}).code, kUsage);
}

TEST(RoundTrip, EmittedValuesReparse) {
  const Instance inst = io::parse_instance(io::read_file(data("reversal4.inst")));
  const CliRun rp = run_cli({"solve", data("reversal4.inst"), "--rule", "rp"});
  const Lottery l = io::parse_lottery(rp.out, inst);
  EXPECT_EQ(io::format_lottery(l, inst), rp.out);
  const CliRun ps = run_cli({"solve", data("reversal4.inst")});
  EXPECT_EQ(io::format_matrix(io::parse_matrix(ps.out)), ps.out);
}

}  // namespace
}  // namespace randassign::cli
