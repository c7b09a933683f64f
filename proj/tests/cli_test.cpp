#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tcec/io.hpp"
#include "tcec/synthgen.hpp"

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tcec_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args, std::string* stdout_text = nullptr) {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(TCEC_CLI_PATH) + " " + args + " > " + out + " 2> " +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    if (stdout_text) *stdout_text = slurp(out);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write(const std::string& name, const std::string& text) {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  void write_sample() {
    std::ofstream out(path("sample.csv"));
    tcec::write_matrix_csv(out, tcec::testing::sample_matrix());
  }

  fs::path dir_;
};

TEST_F(CliTest, AnalyzeSampleMapTargetC3) {
  write_sample();
  std::string out;
  ASSERT_EQ(run("analyze --input " + path("sample.csv") + " --target 2", &out), 0);
  EXPECT_EQ(out,
            "source,value,critical_index,path_found\n"
            "0,0.6,2,true\n"
            "1,0.6,2,true\n"
            "3,0.36,3,true\n");
  for (const char* method : {"linear", "exhaustive"}) {
    std::string other;
    ASSERT_EQ(run("analyze --input " + path("sample.csv") + " --target 2 --method " + method, &other),
              0);
    EXPECT_EQ(other, out) << method;
  }
}

TEST_F(CliTest, AnalyzeAllPairsAndSinglePair) {
  write_sample();
  std::string out;
  ASSERT_EQ(run("analyze --input " + path("sample.csv") + " --all-pairs --threads 2", &out), 0);
  EXPECT_NE(out.find("0.15,-0.25,0.36,0\n"), std::string::npos) << out;
  ASSERT_EQ(run("analyze --input " + path("sample.csv") + " --source 0 --target 1", &out), 0);
  EXPECT_EQ(out, "source,value,critical_index,path_found\n0,0,,false\n");
}

TEST_F(CliTest, AnalyzeErrors) {
  EXPECT_EQ(run("analyze --input " + path("missing.csv") + " --target 0"), 2);
  write("bad.csv", "0,0.5\n0.2,oops\n");
  EXPECT_EQ(run("analyze --input " + path("bad.csv") + " --target 0"), 2);
  EXPECT_NE(slurp(path("stderr.txt")).find("line 2"), std::string::npos);
  write_sample();
  EXPECT_EQ(run("analyze --input " + path("sample.csv") + " --source 2 --target 2"), 3);
  EXPECT_EQ(run("analyze --input " + path("sample.csv") + " --target 9"), 3);
  EXPECT_EQ(run("analyze --input " + path("sample.csv")), 3);
  EXPECT_EQ(run("analyze --bogus"), 3);
}

TEST_F(CliTest, ExhaustiveAllPairsOnLargeMapNeedsForce) {
  ASSERT_EQ(run("generate --n 20 --density 1.0 --seed 3 --out " + path("g20.csv")), 0);
  EXPECT_EQ(run("analyze --input " + path("g20.csv") + " --method exhaustive --all-pairs"), 3);
  EXPECT_NE(slurp(path("stderr.txt")).find("--force"), std::string::npos);
}

TEST_F(CliTest, GenerateIsDeterministicWithSidecar) {
  const std::string args = "generate --n 30 --density 0.4 --seed 99 --out ";
  ASSERT_EQ(run(args + path("a.csv")), 0);
  ASSERT_EQ(run(args + path("b.csv")), 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  const std::string sidecar = slurp(path("a.csv.json"));
  EXPECT_NE(sidecar.find("\"seed\": 99"), std::string::npos) << sidecar;
  EXPECT_NE(sidecar.find("\"n\": 30"), std::string::npos);

  std::ifstream in(path("a.csv"));
  const tcec::FcmGraph g = tcec::read_edgelist_csv(in, 30);
  EXPECT_EQ(g, tcec::generate({30, 0.4, 99}));
  EXPECT_EQ(run("generate --n 1 --density 1 --seed 1 --out " + path("c.csv")), 3);
}

TEST_F(CliTest, EdgeListConceptCountComesFromSidecar) {
  // Concept 5 has no edges in this sparse map, so only the sidecar knows n.
  write("sparse.csv", "source,target,weight\n0,1,0.5\n");
  write("sparse.csv.json", "{\"n\": 6}\n");
  std::string out;
  ASSERT_EQ(run("analyze --input " + path("sparse.csv") + " --target 5", &out), 0);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 6);
}

TEST_F(CliTest, SimulateWritesTrajectory) {
  write_sample();
  write("a0.csv", "1,1,1,1\n");
  ASSERT_EQ(run("simulate --input " + path("sample.csv") + " --initial " + path("a0.csv") +
                " --out " + path("traj.csv")),
            0);
  EXPECT_NE(slurp(path("stderr.txt")).find("fixed_point"), std::string::npos);
  EXPECT_EQ(slurp(path("traj.csv")).substr(0, 8), "1,1,1,1\n");
  write("short.csv", "1,1\n");
  EXPECT_EQ(run("simulate --input " + path("sample.csv") + " --initial " + path("short.csv")), 2);
  EXPECT_EQ(run("simulate --input " + path("sample.csv") + " --initial " + path("a0.csv") +
                " --activation nope"),
            3);
}

TEST_F(CliTest, BenchWritesAllOutputs) {
  ASSERT_EQ(run("bench --algorithms binary,linear,exhaustive --sizes 6 --densities 0.5,1.0 "
                "--trials 2 --out-dir " + path("bench")),
            0);
  for (const char* f : {"bench.csv", "summary.csv", "overall.csv", "variability.csv", "density.csv"}) {
    EXPECT_TRUE(fs::exists(path(std::string("bench/") + f))) << f;
  }
  const std::string bench = slurp(path("bench/bench.csv"));
  EXPECT_EQ(bench.substr(0, bench.find('\n')), "algorithm,n,density,trial,seed,elapsed_s,status");
  EXPECT_EQ(std::count(bench.begin(), bench.end(), '\n'), 1 + 3 * 2 * 2);
  EXPECT_EQ(run("bench --algorithms exhaustive --sizes 20 --out-dir " + path("bench2")), 3);
  ASSERT_EQ(run("bench --algorithms binary,exhaustive --exhaustive-sizes 5 --trials 1 --out-dir " +
                path("bench4")),
            0);
  const std::string split = slurp(path("bench4/bench.csv"));
  EXPECT_EQ(std::count(split.begin(), split.end(), '\n'), 1 + 5 + 1);
  EXPECT_NE(split.find("\nexhaustive,5,1,0,"), std::string::npos) << split;
  EXPECT_EQ(run("bench --algorithms quick --out-dir " + path("bench3")), 3);
}

TEST_F(CliTest, VerifyExitCodes) {
  std::string out;
  EXPECT_EQ(run("verify --count 0", &out), 0);
  EXPECT_NE(out.find("mismatches: 0"), std::string::npos);
  EXPECT_EQ(run("verify --count 30", &out), 0);
  EXPECT_EQ(run("verify --count 30 --inject-fault", &out), 1);
  EXPECT_NE(out.find("MISMATCH"), std::string::npos);
  EXPECT_NE(out.find("seed="), std::string::npos);
}

}  // namespace
