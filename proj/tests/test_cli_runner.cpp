#include "qpst/cli/cli_runner.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qpst;
using namespace qpst::cli;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, sep);) out.push_back(f);
  return out;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = std::filesystem::temp_directory_path() /
           (std::string("qpst_cli_") + info->test_suite_name() + "_" + info->name());
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST(FormatNumber, twelve_significant_digits) {
  EXPECT_EQ(format_number(3.14159265358979), "3.14159265359");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-13), "1e-13");
}

TEST(Manifest, round_trip_is_lossless) {
  RunManifest m;
  m.experiment = "noisy-sweep";
  m.d = 3;
  m.n = 5;
  m.steps = 16;
  m.input = "single:0.1,0.2,0.3";
  m.noise_p = 0.1 + 0.2;
  m.p_grid = {0.0, 0.05, 1.0 / 3.0, 1.0};
  m.couplings = {std::sqrt(2.0), 0.7, 1e-5, 3.0};
  m.seed = 18446744073709551615ull;
  m.jobs = 4;
  m.out = "out/sweep.csv";
  m.plot = "out/sweep.svg";
  m.tool_version = "1.2.3";
  const std::string text = write_manifest(m);
  EXPECT_EQ(parse_manifest_text(text), m);
  EXPECT_EQ(write_manifest(parse_manifest_text(text)), text);

  const RunManifest defaults;
  EXPECT_EQ(parse_manifest_text(write_manifest(defaults)), defaults);
}

TEST(Manifest, comments_blank_lines_and_errors) {
  const RunManifest m = parse_manifest_text("# run\n\nd = 3\n  n=5  \n");
  EXPECT_EQ(m.d, 3u);
  EXPECT_EQ(m.n, 5u);
  EXPECT_THROW(parse_manifest_text("colour = red\n"), ArgumentError);
  EXPECT_THROW(parse_manifest_text("d = 3\nd = 4\n"), ArgumentError);
  EXPECT_THROW(parse_manifest_text("d 3\n"), ArgumentError);
  EXPECT_THROW(parse_manifest_text("d = three\n"), ArgumentError);
  EXPECT_THROW(parse_manifest_text("p_grid = 0.1,,0.2\n"), ArgumentError);
}

TEST(Cli, usage_errors_exit_2) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"generators", "--d", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"generators", "--d", "7"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transfer", "--d", "2", "--n", "4", "--bell", "2,0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transfer", "--d", "2", "--single", "1,0,0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transfer", "--bell", "0,0", "--single", "1,0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transfer", "--couplings", "1,1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transfer", "--noise-p", "1.5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transfer", "--steps", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transfer", "--config", "/nonexistent/run.cfg"}).code, kExitUsage);
  EXPECT_EQ(invoke({"noisy-sweep", "--d", "2", "--n", "3", "--p-grid", ""}).code, kExitUsage);
  EXPECT_EQ(invoke({"noisy-sweep", "--d", "2", "--n", "3"}).code, kExitUsage);
}

TEST(Cli, help_and_version_exit_0) {
  const CliResult help = invoke({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("noisy-sweep"), std::string::npos);
  const CliResult version = invoke({"--version"});
  EXPECT_EQ(version.code, kExitOk);
  EXPECT_NE(version.out.find(tool_version()), std::string::npos);
}

TEST(Cli, generators_dump) {
  const CliResult two = invoke({"generators", "--d", "2"});
  EXPECT_EQ(two.code, kExitOk);
  EXPECT_NE(two.out.find("theta(1,2)"), std::string::npos);
  EXPECT_NE(two.out.find("beta(1,2)"), std::string::npos);
  EXPECT_NE(two.out.find("-1i"), std::string::npos);
  const CliResult three = invoke({"generators", "--d", "3"});
  EXPECT_EQ(three.code, kExitOk);
  std::size_t count = 0;
  for (const auto& l : lines(three.out)) count += !l.empty() && l[0] != ' ';
  EXPECT_EQ(count, 8u);
  EXPECT_NE(three.out.find("-1.15470053838"), std::string::npos);
}

TEST(Cli, pst_time_and_not_found) {
  const CliResult ok = invoke({"pst-time", "--d", "2", "--n", "4"});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_NE(ok.out.find("t*=3.14159265"), std::string::npos);
  const CliResult miss = invoke({"pst-time", "--d", "2", "--n", "6", "--couplings", "1,1,1,1,1"});
  EXPECT_EQ(miss.code, kExitPstNotFound);
  EXPECT_NE(miss.err.find("not found"), std::string::npos);
  const CliResult transfer_miss = invoke({"transfer", "--d", "2", "--n", "6", "--couplings", "1,1,1,1,1"});
  EXPECT_EQ(transfer_miss.code, kExitPstNotFound);
}

TEST(Cli, transfer_csv_layout) {
  const CliResult r = invoke({"transfer", "--d", "2", "--n", "4", "--bell", "0,0", "--steps", "8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 1u + 9u + 1u);
  EXPECT_EQ(ls[0], "step,time,fidelity_raw,fidelity_bell,entropy,support_size");
  const auto last = split(ls[9], ',');
  ASSERT_EQ(last.size(), 6u);
  EXPECT_EQ(last[0], "8");
  EXPECT_GE(std::stod(last[2]), 1.0 - 1e-8);
  EXPECT_EQ(last[5], "2");
  EXPECT_EQ(ls[10].rfind("# summary t*=3.14159265", 0), 0u);
  EXPECT_NE(ls[10].find("bell_label=0,0"), std::string::npos);
  for (std::size_t i = 1; i <= 9; ++i) {
    const auto f = split(ls[i], ',');
    for (std::size_t c : {2u, 3u}) {
      EXPECT_GE(std::stod(f[c]), 0.0);
      EXPECT_LE(std::stod(f[c]), 1.0);
    }
  }
}

TEST(Cli, transfer_sign_flip_reports_label) {
  const CliResult r = invoke({"transfer", "--d", "2", "--n", "5", "--bell", "0,0"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("bell_label=1,0"), std::string::npos);
}

TEST(Cli, transfer_single_amplitudes) {
  const CliResult r = invoke({"transfer", "--d", "2", "--n", "4", "--single", "0.6,0.8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto ls = lines(r.out);
  const auto last = split(ls[ls.size() - 2], ',');
  EXPECT_GE(std::stod(last[3]), 1.0 - 1e-8);
}

TEST_F(TempDir, transfer_writes_files_and_manifest) {
  const CliResult r = invoke({"transfer", "--d", "3", "--n", "4", "--bell", "0,0", "--out", path("t.csv"),
                     "--plot", path("t.svg"), "--save-manifest", path("run.cfg")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(lines(r.out).size(), 1u);
  EXPECT_EQ(lines(slurp(path("t.csv"))).size(), 10u);
  const std::string svg = slurp(path("t.svg"));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  const RunManifest m = load_manifest(path("run.cfg"));
  EXPECT_EQ(m.experiment, "transfer");
  EXPECT_EQ(m.d, 3u);
  EXPECT_EQ(m.input, "bell:0,0");
  EXPECT_EQ(m.tool_version, tool_version());

  // Replaying the manifest reproduces the CSV.
  std::filesystem::rename(path("t.csv"), path("first.csv"));
  ASSERT_EQ(invoke({"transfer", "--config", path("run.cfg")}).code, kExitOk);
  EXPECT_EQ(slurp(path("first.csv")), slurp(path("t.csv")));
}

TEST_F(TempDir, flags_override_config) {
  {
    std::ofstream f(path("base.cfg"));
    f << "d = 2\nn = 4\ninput = bell:0,0\n";
  }
  const CliResult r = invoke({"transfer", "--config", path("base.cfg"), "--n", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("bell_label=1,0"), std::string::npos);
}

TEST_F(TempDir, sweep_is_byte_identical_and_job_independent) {
  const std::vector<std::string> base{"noisy-sweep", "--d", "2", "--n", "4", "--bell", "0,0",
                                      "--p-grid", "0,0.25,0.5,1", "--plot", path("s.svg")};
  auto with_out = [&](const std::string& name, const std::string& jobs) {
    auto args = base;
    args.insert(args.end(), {"--out", path(name), "--jobs", jobs});
    return invoke(args);
  };
  ASSERT_EQ(with_out("a.csv", "1").code, kExitOk);
  ASSERT_EQ(with_out("b.csv", "1").code, kExitOk);
  ASSERT_EQ(with_out("c.csv", "3").code, kExitOk);
  const std::string a = slurp(path("a.csv"));
  EXPECT_EQ(a, slurp(path("b.csv")));
  EXPECT_EQ(a, slurp(path("c.csv")));
  const auto ls = lines(a);
  ASSERT_EQ(ls.size(), 1u + 4u * 17u);
  EXPECT_EQ(ls[0], "p,step,fidelity");
  EXPECT_EQ(ls[1].rfind("0,0,", 0), 0u);
  EXPECT_EQ(ls.back().rfind("1,16,", 0), 0u);
  EXPECT_NEAR(std::stod(split(ls.back(), ',')[2]), 1.0, 1e-10);
  EXPECT_NE(slurp(path("s.svg")).find("p=0.25"), std::string::npos);
}

TEST(Cli, sweep_unit_strength_matches_noiseless) {
  RunManifest m;
  m.d = 2;
  m.n = 4;
  m.p_grid = {1.0};
  m.steps = 8;
  const SweepResult sweep = run_sweep(m);
  RunManifest clean = m;
  const TransferTrace t = run_noiseless(make_transfer_config(clean));
  ASSERT_EQ(sweep.records[0].size(), t.records.size());
  for (std::size_t k = 0; k < t.records.size(); ++k) {
    EXPECT_NEAR(sweep.records[0][k].fidelity_reference, t.records[k].fidelity_reference, 1e-10);
  }
}
