#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "kolmo/cli.hpp"
#include "kolmo/cluster.hpp"
#include "kolmo/toy_k.hpp"

using namespace kolmo;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f\n", v);
  return buf;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }
  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, Entropy) {
  auto r = run({"entropy", "--counts", "2,1,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 12), "H = 1.500000");
  EXPECT_EQ(run({"entropy", "--probs", "1/2,1/4,1/4"}).out.substr(0, 12), "H = 1.500000");
  EXPECT_EQ(run({"entropy", "--probs", "0.5,0.6"}).code, 2);
}

TEST(Cli, UsageErrors) {
  auto r = run({"frobnicate"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"entropy"}).code, 1);
  EXPECT_EQ(run({"--format", "xml", "entropy", "--counts", "1"}).code, 1);
}

TEST(Cli, HuffmanAndPacking) {
  auto r = run({"--format", "json", "huffman", "--counts", "a:1,b:1,c:2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"c\":\"0\""), std::string::npos);
  auto p = run({"pack", "--scheme", "len", "--part", "10", "--part", "10", "--tail", "001"});
  EXPECT_EQ(p.code, 0);
  auto bits = p.out.substr(0, p.out.find('\n'));
  auto u = run({"pack", "--scheme", "len", "--unpack", bits, "--count", "2"});
  EXPECT_EQ(u.out, "part 0 = \"10\"\npart 1 = \"10\"\ntail = \"001\"\n");
}

TEST(Cli, EnumCodeRoundTrip) {
  auto e = run({"enumcode", "--alphabet", "01", "--encode", "0101"});
  ASSERT_EQ(e.code, 0);
  auto bits = e.out.substr(0, e.out.find('\n'));
  auto d = run({"enumcode", "--alphabet", "01", "--decode", bits});
  EXPECT_EQ(d.out, "0101\n");
  EXPECT_EQ(run({"enumcode", "--alphabet", "01", "--decode", "1"}).code, 2);
}

TEST(Cli, NcdMatchesLibrary) {
  auto r = run({"ncd", "--codec", "lz77", "--x", "abcabcabc", "--y", "abcabcxyz"});
  ASSERT_EQ(r.code, 0);
  Lz77Codec l;
  EXPECT_EQ(r.out, fixed9(ncd(l, as_bytes("abcabcabc"), as_bytes("abcabcxyz"))));
}

TEST(Cli, MatrixClusterPipeline) {
  TempDir dir("kolmo_cli_corpus");
  for (const auto& item : fixture::planted_corpus(42, 2, 2048))
    dir.write(item.name, std::string(item.payload.begin(), item.payload.end()));
  auto m = run({"matrix", "--codec", "huff0", "--corpus", dir.path().string(), "--diagnostics",
                (dir.path() / ".." / "kolmo_cli_diag.json").string()});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(m.out, run({"--workers", "3", "matrix", "--codec", "huff0", "--corpus", dir.path().string()}).out);
  Huff0Codec h;
  auto direct = distance_matrix(h, load_corpus(dir.path())).symmetric;
  EXPECT_EQ(m.out, direct.to_csv());
  auto c = run({"cluster", "--newick"}, m.out);
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out, to_newick(upgma(DistanceMatrix::parse(m.out))) + "\n");
  EXPECT_EQ(c.out.back(), '\n');
  EXPECT_NE(c.out.find(");"), std::string::npos);
  std::filesystem::remove(dir.path() / ".." / "kolmo_cli_diag.json");
  EXPECT_EQ(run({"cluster"}, "garbage").code, 2);
}

TEST(Cli, CensusTable) {
  auto r = run({"census", "--test", "zero-prefix", "--n", "10"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1/1024"), std::string::npos);
  EXPECT_NE(r.out.find("1/2"), std::string::npos);
  EXPECT_EQ(run({"census", "--test", "zero-prefix", "--n", "17"}).code, 2);
  auto inc = run({"census", "--test", "incompressible", "--n", "8", "--codec", "toy"});
  EXPECT_EQ(inc.code, 0);
  EXPECT_NE(inc.out.find("bound holds: yes"), std::string::npos);
}

TEST(Cli, ToyK) {
  auto r = run({"toyk", "--x", "0000000000000000"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("K_toy(x) = 11"), std::string::npos);
  EXPECT_EQ(run({"toyk", "--x", "01x"}).code, 2);
}

TEST(Cli, MlTest) {
  auto r = run({"mltest", "--test", "zero-prefix", "--x", "00010", "--max-level", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("highest level = 3"), std::string::npos);
  auto d = run({"mltest", "--deficiency", "--codec", "huff0", "--text", ""});
  EXPECT_NE(d.out.find("deficiency = -9"), std::string::npos);
}

TEST(Cli, NgdCommands) {
  TempDir dir("kolmo_cli_ngd");
  dir.write("1.txt", "x y");
  dir.write("2.txt", "x y");
  dir.write("3.txt", "z");
  dir.write("4.txt", "z");
  auto index_path = (dir.path() / ".." / "kolmo_cli_index.json").string();
  ASSERT_EQ(run({"ngd-index", "--corpus", dir.path().string(), "--out", index_path}).code, 0);
  EXPECT_EQ(run({"ngd", "--index", index_path, "x", "y"}).out, "0.000000000\n");
  EXPECT_EQ(run({"ngd", "--index", index_path, "x", "z"}).out, "inf\n");
  EXPECT_EQ(run({"ngd", "--index", index_path, "x", "nope"}).code, 2);
  auto m = run({"ngd-matrix", "--index", index_path, "--terms", "x,y,z,nope"});
  EXPECT_EQ(m.code, 0);
  EXPECT_NE(m.out.find("inf"), std::string::npos);
  EXPECT_EQ(run({"cluster"}, m.out).code, 2);
  std::filesystem::remove(index_path);
}

TEST(Cli, ExternalToolFailureExitsThree) {
  TempDir dir("kolmo_cli_cfg");
  dir.write("config.json", R"({"codecs": [{"name": "broken", "argv": ["sh", "-c", "exit 4"], "timeout": 5}]})");
  auto r = run({"--config", (dir.path() / "config.json").string(), "ncd", "--codec", "broken", "--x", "a", "--y", "b"});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.err.empty());
  dir.write("cat.json", R"({"codecs": [{"name": "cat", "argv": ["cat"]}]})");
  auto ok = run({"--config", (dir.path() / "cat.json").string(), "ncd", "--codec", "cat", "--x", "ab", "--y", "ab"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "1.000000000\n");
  EXPECT_EQ(run({"ncd", "--codec", "nonexistent", "--x", "a", "--y", "b"}).code, 2);
}
