#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "tworlicz/cli.hpp"
#include "tworlicz/io.hpp"

using namespace tworlicz;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("tworlicz_io_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const Json& j) {
  const auto p = (scratch() / name).string();
  io::write_text_file(p, io::dump(j));
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Io, FunctionRoundTripIsBitExact) {
  std::mt19937_64 rng(41);
  for (int d = 1; d <= 3; ++d) {
    const auto f = random_function(rng, d, 6, 20, true);
    const auto g = io::function_from_json(Json::parse(io::dump(io::to_json(f))));
    ASSERT_EQ(g.support_size(), f.support_size());
    for (const auto& [p, v] : f.entries()) EXPECT_EQ(g(p), v);
  }
}

TEST(Io, MalformedFunctionsRejected) {
  EXPECT_THROW(io::function_from_json(Json::parse(R"({"dim":1.5,"entries":[]})")), FormatError);
  EXPECT_THROW(io::function_from_json(Json::parse(R"({"dim":2,"entries":[{"point":[1],"re":1,"im":0}]})")), FormatError);
  EXPECT_THROW(io::function_from_json(Json::parse(R"({"entries":[]})")), FormatError);
  EXPECT_THROW(io::read_json_file((scratch() / "missing.json").string()), IoError);
}

TEST(Io, CocycleSpecs) {
  const Point a{1, 0}, b{0, 1};
  EXPECT_NEAR(io::cocycle_from_spec("heisenberg:0.5")(a, b).real(), -1.0, 1e-15);
  EXPECT_EQ(io::cocycle_from_spec("trivial")(a, b), Complex(1));
  EXPECT_NEAR(io::cocycle_from_spec("coboundary:poly:1")(Point{1}, Point{1}).real(), 0.75, 1e-15);
  const auto prod = io::cocycle_from_spec("coboundary:poly:1*heisenberg:0.5");
  const Point s{1, 0}, t{0, 1};
  const double w = polynomial_weight(1.0)(s + t) / (polynomial_weight(1.0)(s) * polynomial_weight(1.0)(t));
  EXPECT_NEAR(prod(s, t).real(), -w, 1e-15);
  EXPECT_THROW(io::cocycle_from_spec("nope"), ParamError);
  const auto c = io::cocycle_from_spec("heisenberg:0.25");
  const auto back = io::cocycle_from_json(io::to_json(c));
  EXPECT_EQ(back(a, b), c(a, b));
}

TEST(Io, RhoRoundTripKeepsAnchorIdentity) {
  const auto rho = appendix::build_rho(10, 3).rho;
  const auto back = io::rho_from_json(Json::parse(io::dump(io::to_json(rho))));
  EXPECT_TRUE(back == rho);
  const auto rep = appendix::verify_counterexample(back, 2 * back.anchors.back());
  EXPECT_LT(rep.max_anchor_identity_error, 1e-9);
}

TEST(Cli, ExitCodes) {
  auto lp = run({"check", "lp-threshold", "-d", "1", "-p", "2", "--beta", "0.75"});
  EXPECT_EQ(lp.code, 0) << lp.err;
  EXPECT_NE(lp.out.find("banach: true, operator: true"), std::string::npos) << lp.out;
  EXPECT_EQ(run({"check", "lp-threshold", "-d", "1", "-p", "2", "--beta", "0.25"}).code, cli::kExitFails);
  EXPECT_EQ(run({"norm", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(run({"norm", "--phi", "power:2", "--input", (scratch() / "missing.json").string()}).code, cli::kExitIo);
  const auto bad = (scratch() / "bad.json").string();
  io::write_text_file(bad, "{not json");
  EXPECT_EQ(run({"norm", "--phi", "power:2", "--input", bad}).code, cli::kExitIo);
  EXPECT_EQ(run({"check", "lp-threshold", "-d", "1", "-p", "0.5", "--beta", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"sweep", "--op", "lp-threshold", "--beta-min", "0.7", "--beta-max", "0.4", "--beta-step", "0.1"}).code,
            cli::kExitUsage);
}

TEST(Cli, NormOfZeroIsZero) {
  const auto zero = write("zero.json", io::to_json(DiscreteFunction(1)));
  const auto r = run({"norm", "--phi", "power:2", "--input", zero});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::stod(r.out), 0.0);
}

TEST(Cli, NormMatchesLibrary) {
  std::mt19937_64 rng(42);
  const auto f = random_function(rng, 2, 5, 10);
  const auto path = write("f.json", io::to_json(f));
  const auto r = run({"norm", "--phi", "power:3", "--input", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), luxemburg_norm(power_young(3.0), f), 1e-15 * std::stod(r.out) + 1e-16);
}

TEST(Cli, HeisenbergConvolution) {
  const auto a = write("a.json", io::to_json(DiscreteFunction::delta(Point{1, 0})));
  const auto b = write("b.json", io::to_json(DiscreteFunction::delta(Point{0, 1})));
  const auto out = (scratch() / "ab.json").string(), rep = (scratch() / "ab_report.json").string();
  const auto r = run({"conv", "--cocycle", "heisenberg:0.5", "--f", a, "--g", b, "-o", out, "--report", rep});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto h = io::function_from_json(io::read_json_file(out));
  EXPECT_NEAR(h(Point{1, 1}).real(), -1.0, 1e-15);
  EXPECT_EQ(h.support_size(), 1u);
  EXPECT_TRUE(io::read_json_file(rep).is_object());
}

TEST(Cli, SweepThresholdFlip) {
  const auto r = run({"sweep", "--op", "lp-threshold", "--beta-min", "0.4", "--beta-max", "0.7", "--beta-step", "0.1",
                      "-d", "1", "-p", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> verdicts;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("beta", 0) == 0) continue;
    const auto end = line.rfind(',');
    const auto begin = line.rfind(',', end - 1);
    verdicts.push_back(line.substr(begin + 1, end - begin - 1));
  }
  // beta = d/q = 0.5 is the boundary; the strict inequality leaves it on the failing side.
  EXPECT_EQ(verdicts, (std::vector<std::string>{"Fails", "Fails", "Holds", "Holds"}));
}

TEST(Cli, SweepIsDeterministic) {
  const std::vector<std::string> args{"sweep", "--op", "probe", "--beta-min", "0.2", "--beta-max", "1.0",
                                      "--beta-step", "0.2", "-d", "1", "-p", "2", "--trials", "20", "--seed", "7"};
  const auto a = run(args), b = run(args);
  ASSERT_NE(a.code, cli::kExitUsage) << a.err;
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  auto j = args;
  j.insert(j.end(), {"--format", "json"});
  const auto ja = run(j);
  EXPECT_TRUE(Json::parse(ja.out).is_object() || Json::parse(ja.out).is_array());
}

TEST(Cli, CounterexampleBuildAndVerify) {
  const auto rho = (scratch() / "rho.json").string();
  const auto b = run({"counterexample", "build", "--n1", "10", "--segments", "3", "-o", rho});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto v = run({"counterexample", "verify", rho});
  EXPECT_EQ(v.code, 0) << v.err << v.out;

  auto j = io::read_json_file(rho);
  auto tampered = io::rho_from_json(j);
  tampered = appendix::tamper_slope(tampered, 1, 1e-3);
  const auto bad = write("rho_bad.json", io::to_json(tampered));
  const auto f = run({"counterexample", "verify", bad});
  EXPECT_EQ(f.code, cli::kExitFails);
  EXPECT_NE((f.out + f.err).find("(ii) concavity"), std::string::npos);

  EXPECT_EQ(run({"counterexample", "build", "--n1", "10", "--segments", "5"}).code, cli::kExitSoftware);
  EXPECT_EQ(run({"counterexample", "build", "--n1", "2", "--segments", "2"}).code, cli::kExitUsage);
}

#ifdef TWORLICZ_CLI_PATH
TEST(Cli, BinaryMatchesInProcess) {
  const auto file = (scratch() / "bin_out.txt").string();
  const std::string cmd = std::string("\"") + TWORLICZ_CLI_PATH +
                          "\" check lp-threshold -d 2 -p 1.5 --beta 1.5 > \"" + file + "\"";
  const int status = std::system(cmd.c_str());
  ASSERT_NE(status, -1);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(slurp(file), run({"check", "lp-threshold", "-d", "2", "-p", "1.5", "--beta", "1.5"}).out);
}
#endif
