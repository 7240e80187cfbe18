#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "schubloc/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "schubloc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = schubloc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("schubloc-" + std::string(info->name()) + "-" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  fs::path write(const std::string& name, const std::string& body) const {
    std::ofstream(path_ / name) << body;
    return path_ / name;
  }

 private:
  fs::path path_;
};

}  // namespace

TEST(Cli, RestrictGolden) {
  auto r = run({"restrict", "A2", "--class", "231", "--at", "321"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "a1*a2 + a1^2\n");
  EXPECT_EQ(run({"restrict", "--type", "A2", "--class", "s1 s2", "--at", "s2 s1 s2"}).out, "a1*a2 + a1^2\n");
  EXPECT_EQ(run({"restrict", "A2", "--class", "231", "--at", "213"}).out, "0\n");
}

TEST(Cli, RestrictAllFixedPoints) {
  auto r = run({"restrict", "A2", "--class", "231", "--out", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "v,w,restriction\ns1 s2,s1 s2,a1*a2 + a1^2\ns1 s2,s1 s2 s1,a1*a2 + a1^2\n");
  auto j = nlohmann::json::parse(run({"restrict", "A2", "--class", "231", "--out", "json"}).out);
  EXPECT_EQ(j["type"], "A2");
  EXPECT_EQ(j["degree"], 2);
  EXPECT_EQ(j["values"].size(), 2u);
}

TEST(Cli, PetersonMultGolden) {
  auto r = run({"peterson-mult", "A2", "--I", "1", "--J", "2", "--out", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "I,J,K,coefficient\n1,2,\"1,2\",2\n");
  auto j = nlohmann::json::parse(run({"peterson-mult", "A2", "--I", "1", "--J", "2", "--out", "json"}).out);
  EXPECT_EQ(j["rows"][0]["K"], "1,2");
  EXPECT_EQ(j["rows"][0]["coefficient"], "2");
}

TEST(Cli, MultGolden) {
  auto r = run({"mult", "A2", "--u", "213", "--v", "213", "--out", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "u,v,w,coefficient\ns1,s1,s1,a1\ns1,s1,s2 s1,1\n");
}

TEST(Cli, Pullback) {
  auto r = run({"pullback", "A2", "--w", "321", "--out", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("w,K,coefficient\n", 0), 0u);
}

TEST(Cli, ExpandFromFile) {
  TempDir dir;
  auto input = dir.write("gamma.json", R"({"type": "A2", "degree": 2,
    "values": {"213": [[[1,1],-1,1]], "s1 s2": [[[1,1],-1,1]]}})");
  auto r = run({"expand", "--input", input.string(), "--out", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "w,coefficient\ns1,-a2\ns2 s1,1\n");
  EXPECT_EQ(run({"expand", "A3", "--input", input.string()}).code, 2);

  auto bad = dir.write("bad.json", R"({"type": "A2", "values": {"e": [[[0,0],1,1]]}})");
  auto rb = run({"expand", "--input", bad.string()});
  EXPECT_EQ(rb.code, 1);
  EXPECT_FALSE(rb.err.empty());
  EXPECT_TRUE(rb.out.empty());
}

TEST(Cli, VerifySuites) {
  auto r = run({"verify", "A3", "--suite", "positivity"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("summary: PASS"), std::string::npos);
  for (const char* suite : {"gkm", "billey", "peterson", "closed-form", "consistency"})
    EXPECT_EQ(run({"verify", "A2", "--suite", suite}).code, 0) << suite;
  auto j = nlohmann::json::parse(run({"verify", "B2", "--out", "json"}).out);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(run({"verify", "A2", "--suite", "nope"}).code, 2);
}

TEST(Cli, CartanFileMatchesLabel) {
  TempDir dir;
  auto cartan = dir.write("b2.json", R"({"cartan": [[2,-1],[-2,2]]})");
  auto a = run({"table", "--cartan", cartan.string(), "--kind", "gb", "--out", "csv"});
  auto b = run({"table", "B2", "--kind", "gb", "--out", "csv"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(run({"mult", "--cartan", cartan.string(), "--u", "s1", "--v", "s2", "--out", "json"}).out);
  EXPECT_TRUE(j.contains("cartan"));
}

TEST(Cli, DeterministicAcrossWorkers) {
  for (const char* kind : {"gb", "peterson", "pullback"}) {
    auto one = run({"table", "A3", "--kind", kind, "--out", "csv", "--jobs", "1"});
    auto four = run({"table", "A3", "--kind", kind, "--out", "csv", "--jobs", "4"});
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out, four.out) << kind;
    EXPECT_EQ(one.out, run({"table", "A3", "--kind", kind, "--out", "csv", "--jobs", "1"}).out);
  }
}

TEST(Cli, CacheDoesNotChangeOutput) {
  TempDir dir;
  const std::string cache = (dir.path() / "cache").string();
  auto plain = run({"table", "A3", "--kind", "gb", "--out", "csv"});
  auto cold = run({"table", "A3", "--kind", "gb", "--out", "csv", "--cache", cache});
  auto warm = run({"table", "A3", "--kind", "gb", "--out", "csv", "--cache", cache});
  EXPECT_EQ(plain.out, cold.out);
  EXPECT_EQ(plain.out, warm.out);
  EXPECT_FALSE(fs::is_empty(cache));
}

TEST(Cli, CorruptCacheIsIgnored) {
  TempDir dir;
  const std::string cache = (dir.path() / "cache").string();
  auto want = run({"restrict", "A2", "--class", "231", "--out", "csv", "--cache", cache});
  fs::path file = fs::directory_iterator(cache)->path();
  std::string body;
  {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  // Tamper with every polynomial but keep the checksums.
  std::string tampered;
  std::istringstream lines(body);
  for (std::string line; std::getline(lines, line);) {
    auto pos = line.find("[[[");
    if (pos != std::string::npos) line.insert(pos + 3, "9");
    tampered += line + "\ngarbage\tline\n";
  }
  std::ofstream(file) << tampered;
  auto got = run({"restrict", "A2", "--class", "231", "--out", "csv", "--cache", cache});
  EXPECT_EQ(got.code, 0);
  EXPECT_EQ(got.out, want.out);

  std::ofstream(file) << "not a cache file\n";
  EXPECT_EQ(run({"restrict", "A2", "--class", "231", "--out", "csv", "--cache", cache}).out, want.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"restrict", "Q2", "--class", "e"}).code, 2);
  EXPECT_EQ(run({"restrict", "A2"}).code, 2);
  EXPECT_EQ(run({"restrict", "A2", "--class", "e", "--bogus"}).code, 2);
  EXPECT_EQ(run({"restrict", "A2", "--class", "4123"}).code, 2);
  EXPECT_EQ(run({"restrict", "A2", "--type", "A3", "--class", "e"}).code, 2);
  EXPECT_EQ(run({"restrict", "--class", "e"}).code, 2);
  EXPECT_EQ(run({"peterson-mult", "A2", "--I", "3", "--J", "1"}).code, 2);
  EXPECT_EQ(run({"restrict", "A2", "--class", "e", "--out", "xml"}).code, 2);
  EXPECT_EQ(run({"table", "A3", "--max-weyl", "10"}).code, 3);
  auto e8 = run({"restrict", "E8", "--class", "e"});
  EXPECT_EQ(e8.code, 3);
  EXPECT_NE(e8.err.find("exceeds"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BinaryWiring) {
  TempDir dir;
  auto out = dir.path() / "out.txt";
  std::string cmd = std::string(SCHUBLOC_CLI_PATH) + " restrict A2 --class 231 --at 321 > " + out.string();
  int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a1*a2 + a1^2");
  status = std::system((std::string(SCHUBLOC_CLI_PATH) + " restrict E8 --class e 2>/dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 3);
}
