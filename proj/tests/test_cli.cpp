#include "kldecomp/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace kld;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kldecomp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("kldecomp-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, KlExamples) {
  EXPECT_EQ(run_cli({"kl", "--rank", "2", "--x", "", "--y", "1", "--family", "h"}).out, "q\n");
  EXPECT_EQ(run_cli({"kl", "--rank", "3", "--x", "1", "--y", "1", "--family", "hinv"}).out, "1\n");
  EXPECT_EQ(run_cli({"kl", "--rank", "3", "--x", "", "--y", "2", "--family", "n", "--f", "1"}).out, "q\n");
}

TEST(Cli, KlErrors) {
  EXPECT_EQ(run_cli({"kl", "--rank", "3", "--x", "1,1", "--y", "", "--family", "h"}).code, cli::usage);
  EXPECT_EQ(run_cli({"kl", "--rank", "3", "--x", "7", "--y", "", "--family", "h"}).code, cli::usage);
  EXPECT_EQ(run_cli({"kl", "--rank", "3", "--x", "1", "--y", "", "--family", "n", "--f", "1"}).code, cli::usage);
  EXPECT_EQ(run_cli({"kl", "--rank", "2", "--x", "", "--y", "", "--family", "n", "--f", "0,1"}).code, cli::usage);
  EXPECT_EQ(run_cli({"kl", "--rank", "3", "--x", "", "--y", "", "--family", "bogus"}).code, cli::usage);
}

TEST(Cli, DecompUsageErrors) {
  const Outcome m = run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2", "--m", "3"});
  EXPECT_EQ(m.code, cli::usage);
  EXPECT_NE(m.err.find("congruen"), std::string::npos) << m.err;
  EXPECT_EQ(run_cli({"decomp", "--e", "1", "--s", "0", "--n", "2"}).code, cli::usage);
  EXPECT_EQ(run_cli({"decomp", "--e", "2", "--s", "0"}).code, cli::usage);
  EXPECT_EQ(run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2", "--block", "0:1"}).code, cli::usage);
  EXPECT_EQ(run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2", "--format", "xml"}).code, cli::usage);
  EXPECT_EQ(run_cli({"decomp", "--e", "2", "--s", "0", "--block", "1:1"}).code, cli::usage);
  EXPECT_EQ(run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2", "--jobs", "0"}).code, cli::usage);
  EXPECT_EQ(run_cli({}).code, cli::usage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::usage);
}

TEST(Cli, DecompJson) {
  const Outcome r = run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  const auto recs = cli::read_json(r.out);
  ASSERT_EQ(recs.size(), 1U);
  EXPECT_EQ(recs[0].block, "0:1,1:1");
  EXPECT_EQ(recs[0].labels, (std::vector<std::vector<std::vector<int>>>{{{2}}, {{1, 1}}}));
  EXPECT_EQ(recs[0].D, (std::vector<std::vector<std::string>>{{"1", "0"}, {"q", "1"}}));
  EXPECT_EQ(recs[0].C, (std::vector<std::vector<std::string>>{{"1+q^2", "q"}, {"q", "1"}}));
  EXPECT_EQ(cli::write_json(recs), r.out);
}

TEST(Cli, JsonRoundTrip) {
  const Outcome r = run_cli({"decomp", "--e", "3", "--s", "0,1", "--n", "3"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  const auto recs = cli::read_json(r.out);
  EXPECT_GT(recs.size(), 1U);
  EXPECT_EQ(cli::read_json(cli::write_json(recs)), recs);
}

TEST(Cli, TextFormat) {
  const Outcome r = run_cli({"decomp", "--e", "2", "--s", "0,0", "--block", "0:1", "--format", "text"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  EXPECT_NE(r.out.find("block=0:1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[[1],[]]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("[[],[1]]"), std::string::npos) << r.out;
}

TEST(Cli, CsvFormat) {
  const Outcome r = run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2", "--format", "csv"});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "e,s,block,matrix,row,col,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 8);
  EXPECT_NE(r.out.find("2,0,\"0:1,1:1\",D,\"[[1,1]]\",[[2]],q\n"), std::string::npos) << r.out;
  EXPECT_EQ(cli::csv_field("a\"b"), "\"a\"\"b\"");
}

TEST(Cli, OutputFile) {
  const auto dir = fresh_dir("out");
  std::filesystem::create_directories(dir);
  const auto file = (dir / "d.json").string();
  const Outcome r = run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2", "--output", file});
  ASSERT_EQ(r.code, cli::ok) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run_cli({"decomp", "--e", "2", "--s", "0", "--n", "2"}).out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, WorkerCountDoesNotChangeOutput) {
  const std::vector<std::string> base{"decomp", "--e", "2", "--s", "0,1", "--n", "3", "--format", "csv"};
  auto with_jobs = [&](const char* j) {
    auto a = base;
    a.insert(a.end(), {"--jobs", j});
    return run_cli(a);
  };
  const Outcome one = with_jobs("1");
  ASSERT_EQ(one.code, cli::ok);
  EXPECT_EQ(with_jobs("2").out, one.out);
  EXPECT_EQ(with_jobs("5").out, one.out);
}

TEST(Cli, CachePersistence) {
  const auto dir = fresh_dir("cache");
  ::setenv("KL_CACHE_DIR", dir.c_str(), 1);
  const Outcome a = run_cli({"decomp", "--e", "2", "--s", "0,1", "--n", "3"});
  const Outcome k = run_cli({"kl", "--rank", "3", "--x", "", "--y", "1,2,1", "--family", "h"});
  ASSERT_EQ(a.code, cli::ok) << a.err;
  ASSERT_EQ(k.code, cli::ok) << k.err;
  const auto hecke = cli::hecke_cache_file(dir, 3);
  ASSERT_TRUE(std::filesystem::exists(hecke));
  bool saw_quotient = false;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.path().filename().string().rfind("quotient-", 0) == 0) saw_quotient = true;
  EXPECT_TRUE(saw_quotient);
  // Every cached line parses and reloads.
  const PolyTable rows = load_poly_table(hecke);
  EXPECT_FALSE(rows.empty());
  // A second run reads the cache and agrees.
  EXPECT_EQ(run_cli({"decomp", "--e", "2", "--s", "0,1", "--n", "3"}).out, a.out);
  EXPECT_EQ(run_cli({"kl", "--rank", "3", "--x", "", "--y", "1,2,1", "--family", "h"}).out, k.out);
  ::unsetenv("KL_CACHE_DIR");
  EXPECT_EQ(run_cli({"decomp", "--e", "2", "--s", "0,1", "--n", "3"}).out, a.out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, SelftestSmall) {
  const Outcome r = run_cli({"selftest", "small"});
  EXPECT_EQ(r.code, cli::ok) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli({"selftest", "deep"}).code, cli::usage);
}
