#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "nsw/gapgen.hpp"
#include "nsw/json_io.hpp"

using namespace nsw;

namespace {

std::string g_nswkit;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path();
  auto out = dir / ("nswkit_out_" + std::to_string(++counter) + ".txt");
  auto err = dir / ("nswkit_err_" + std::to_string(counter) + ".txt");
  std::string cmd = "\"" + g_nswkit + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                    err.string() + "\"";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

std::filesystem::path write_instance(const Instance& inst, const std::string& name) {
  auto path = std::filesystem::temp_directory_path() / name;
  write_json_file(instance_to_json(inst), path.string());
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("NSWKIT_PATH")) {
    g_nswkit = env;
  } else {
    g_nswkit =
        (std::filesystem::path(argv[0]).parent_path() / "nswkit").string();
  }
  if (!std::filesystem::exists(g_nswkit)) {
    std::fprintf(stderr, "nswkit binary not found at %s (set NSWKIT_PATH)\n",
                 g_nswkit.c_str());
    return 1;
  }
  return doctest::Context(argc, argv).run();
}

TEST_CASE("usage errors exit with status two") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("gap nosuch").exit_code == 2);
  CHECK(run_cli("verify mp3 --mu-lo 1").exit_code == 2);
  CHECK(run_cli("solve").exit_code == 2);

  RunResult crossed = run_cli("gap submodular --k 3 --lambda 2 --h 5");
  CHECK(crossed.exit_code == 2);
  RunResult alpha5 = run_cli(
      "verify mp5 --mu-lo 1 --mu-hi 2 --k-lo 1 --k-hi 2 --alpha-lo 0.5 --target 3.45");
  CHECK(alpha5.exit_code == 2);

  RunResult missing = run_cli("exact --instance /no/such/instance.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("/no/such/instance.json") != std::string::npos);
}

TEST_CASE("invalid instances are rejected before solving") {
  Instance bad;
  bad.num_items = 2;
  bad.agents.resize(2);
  bad.agents[0].weight = 0.9;
  bad.agents[0].valuation = Valuation::additive({1.0, 2.0});
  bad.agents[1].weight = 0.9;
  bad.agents[1].valuation = Valuation::additive({2.0, 1.0});
  auto path = write_instance(bad, "nsw_cli_bad.json");
  RunResult r = run_cli("solve --instance \"" + path.string() + "\"");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("weight") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("exact reproduces the exhaustive optimum of the square instance") {
  auto path = write_instance(gen_square_instance(5.0), "nsw_cli_square.json");
  RunResult r = run_cli("exact --instance \"" + path.string() + "\"");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["spec_version"] == "1.0");
  CHECK(std::abs(j["log_nsw"].get<double>() - std::log(60.0) / 4.0) < 1e-9);
  CHECK(j["nsw"].get<double>() ==
        doctest::Approx(std::pow(60.0, 0.25)).epsilon(1e-9));
  CHECK(j["assignment"].size() == 4);
  std::filesystem::remove(path);
}

TEST_CASE("gap reports match the library evaluators byte for byte") {
  RunResult sq1 = run_cli("gap square --t 5");
  REQUIRE(sq1.exit_code == 0);
  RunResult sq2 = run_cli("gap square --t 5");
  CHECK(sq1.out == sq2.out);
  Json j = Json::parse(sq1.out);
  CHECK(j["family"] == "square");
  CHECK(j["spec_version"] == "1.0");
  CHECK(j["ratio"].get<double>() == eval_square(5.0).ratio);

  RunResult add = run_cli("gap additive --h 2 --k 1 --t 3 --eps 0.25");
  REQUIRE(add.exit_code == 0);
  GapReport arep = eval_additive_gap({2, 1, 3.0, 0.25});
  Json ja = Json::parse(add.out);
  CHECK(ja["ratio"].get<double>() == arep.ratio);
  CHECK(ja["log_iopt"].get<double>() == arep.log_iopt);

  RunResult sub = run_cli("gap submodular --k 10 --lambda 6 --t 1e12 --eps 1e-6");
  REQUIRE(sub.exit_code == 0);
  GapReport srep = eval_submodular_gap({10, 6, 1e12, 1e-6});
  CHECK(Json::parse(sub.out)["ratio"].get<double>() == srep.ratio);
}

TEST_CASE("verify exits zero on certified regions and one otherwise") {
  RunResult ok = run_cli(
      "verify mp3 --mu-lo 0.5 --mu-hi 1 --k-lo 1 --k-hi 2 --target 3.56");
  CHECK(ok.exit_code == 0);
  Json j = Json::parse(ok.out);
  CHECK(j["certified"] == true);
  CHECK(j["spec_version"] == "1.0");
  CHECK(j["mode"] == "mp3");

  RunResult bad = run_cli(
      "verify mp3 --mu-lo 1.2 --mu-hi 1.22 --k-lo 4 --k-hi 4.2 --alpha-lo 0.82 "
      "--alpha-hi 0.83 --target 3.45 --max-depth 4");
  CHECK(bad.exit_code == 1);
  Json jb = Json::parse(bad.out);
  CHECK(jb["certified"] == false);
  CHECK(!jb["failures"].empty());
}

TEST_CASE("solve emits a deterministic report and honors --out") {
  auto path = write_instance(gen_square_instance(5.0), "nsw_cli_solve.json");
  std::string base = "solve --instance \"" + path.string() + "\" --trials 200 --seed 7";
  RunResult r1 = run_cli(base);
  REQUIRE(r1.exit_code == 0);
  RunResult r2 = run_cli(base);
  CHECK(r1.out == r2.out);

  Json j = Json::parse(r1.out);
  CHECK(j["spec_version"] == "1.0");
  CHECK(j["trials"] == 200);
  CHECK(j["agents"].size() == 4);
  double ratio = j["ratio"].get<double>();
  double stderr_log = j["log_welfare_stderr"].get<double>();
  CHECK(ratio > 0.0);
  CHECK(ratio <= 3.56 + 5.0 * stderr_log * ratio);
  CHECK(j["lp_value"].get<double>() >= 0.5 * std::log(10.0) - 1e-9);

  auto out_file = std::filesystem::temp_directory_path() / "nsw_cli_solve_out.json";
  RunResult r3 = run_cli(base + " --out \"" + out_file.string() + "\"");
  REQUIRE(r3.exit_code == 0);
  CHECK(r3.out.empty());
  CHECK(slurp(out_file) == r1.out);
  std::filesystem::remove(out_file);
  std::filesystem::remove(path);
}

TEST_CASE("check runs every suite and reports success") {
  RunResult r = run_cli("check --trials 200 --seed 3");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["ok"] == true);
  REQUIRE(j["suites"].size() == 5);
  for (const auto& s : j["suites"]) {
    CHECK(s["failures"] == 0);
    CHECK(s["cases"].get<long>() > 0);
  }
  CHECK(j["suites"][4]["info"].get<std::string>().find("exp(lp - opt)") !=
        std::string::npos);
}
