#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "nsw/gapgen.hpp"
#include "nsw/json_io.hpp"
#include "nsw/mpverify.hpp"
#include "nsw/pipeline.hpp"

namespace {

void emit(const nsw::Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(nsw::dump_json(j).c_str(), stdout);
  else
    nsw::write_json_file(j, out_path);
}

nsw::Json exact_report(const nsw::Instance& inst) {
  auto [alloc, log_opt] = nsw::brute_force_opt(inst);
  nsw::Json j;
  j["spec_version"] = nsw::kSpecVersion;
  j["log_nsw"] = log_opt;
  j["nsw"] = std::exp(log_opt);
  j["assignment"] = nsw::Json::array();
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    nsw::Json ja;
    ja["agent"] = static_cast<int>(i);
    ja["items"] = nsw::Json::array();
    for (int item : alloc[i].items()) ja["items"].push_back(item);
    j["assignment"].push_back(std::move(ja));
  }
  return j;
}

nsw::Instance load_validated_instance(const std::string& path) {
  nsw::Instance inst = nsw::load_instance(path);
  std::vector<std::string> bad = nsw::validate_instance(inst);
  if (!bad.empty()) throw std::invalid_argument(path + ": " + bad.front());
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted Nash social welfare toolkit"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string out_path;

  nsw::SolveOptions sopt;
  CLI::App* solve = app.add_subcommand("solve", "solve the configuration LP and round");
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_option("--seed", sopt.seed, "master seed");
  solve->add_option("--trials", sopt.trials, "rounding trials")->check(CLI::PositiveNumber);
  solve->add_option("--enum-size", sopt.enum_size, "enumerated prefix size")
      ->check(CLI::PositiveNumber);
  solve->add_option("--eps1", sopt.eps1, "classification threshold parameter")
      ->check(CLI::PositiveNumber);
  solve->add_option("--m-max", sopt.m_max, "largest item count solved exactly")
      ->check(CLI::PositiveNumber);
  solve->add_option("--threads", sopt.threads, "worker cap")->check(CLI::PositiveNumber);
  solve->add_option("--out", out_path, "write the report here instead of stdout");

  CLI::App* exact = app.add_subcommand("exact", "exhaustive optimum of a small instance");
  exact->add_option("--instance", instance_path, "instance JSON file")->required();
  exact->add_option("--out", out_path, "write the report here instead of stdout");

  std::string family;
  double gap_t = 1.0, gap_eps = 0.5;
  int gap_k = 3, gap_lambda = 2, gap_h = 2;
  CLI::App* gap = app.add_subcommand("gap", "evaluate an integrality-gap family");
  gap->set_help_flag("--help", "print help");
  gap->add_option("family", family, "square, additive, or submodular")
      ->required()
      ->check(CLI::IsMember({"square", "additive", "submodular"}));
  gap->add_option("--t", gap_t, "large-item value parameter");
  gap->add_option("--k", gap_k, "large-item count")->check(CLI::PositiveNumber);
  CLI::Option* olambda =
      gap->add_option("--lambda", gap_lambda, "submodular block parameter")
          ->check(CLI::PositiveNumber);
  CLI::Option* oh = gap->add_option("--h", gap_h, "additive group count")
                        ->check(CLI::PositiveNumber);
  gap->add_option("--eps", gap_eps, "light-agent weight share");
  gap->add_option("--out", out_path, "write the report here instead of stdout");

  std::string mode;
  nsw::Mp3Box box;
  nsw::VerifyOptions vopt;
  double target = 3.56;
  CLI::App* verify = app.add_subcommand("verify", "certify a mathematical-program region");
  verify->add_option("mode", mode, "mp3 or mp5")
      ->required()
      ->check(CLI::IsMember({"mp3", "mp5"}));
  verify->add_option("--mu-lo", box.mu_lo)->required();
  verify->add_option("--mu-hi", box.mu_hi)->required();
  verify->add_option("--k-lo", box.k_lo)->required();
  verify->add_option("--k-hi", box.k_hi)->required();
  CLI::Option* oalo = verify->add_option("--alpha-lo", box.alpha_lo);
  CLI::Option* oahi = verify->add_option("--alpha-hi", box.alpha_hi);
  verify->add_option("--lt", box.l_t, "time-grid size")->check(CLI::PositiveNumber);
  verify->add_option("--target", target, "exp-space bound to certify")
      ->check(CLI::PositiveNumber);
  verify->add_option("--max-depth", vopt.max_depth, "subdivision depth cap")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", out_path, "write the report here instead of stdout");

  nsw::CheckOptions copt;
  long check_trials = 0;
  CLI::App* check = app.add_subcommand("check", "run the property suites");
  check->add_option("--seed", copt.seed, "master seed");
  check->add_option("--trials", check_trials,
                    "override rounding and solve trial counts")
      ->check(CLI::PositiveNumber);
  check->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      nsw::Instance inst;
      try {
        inst = load_validated_instance(instance_path);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "nswkit solve: %s\n", e.what());
        return 2;
      }
      emit(nsw::solve_report_to_json(nsw::run_solve(inst, sopt)), out_path);
      return 0;
    }

    if (exact->parsed()) {
      nsw::Instance inst;
      try {
        inst = load_validated_instance(instance_path);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "nswkit exact: %s\n", e.what());
        return 2;
      }
      emit(exact_report(inst), out_path);
      return 0;
    }

    if (gap->parsed()) {
      nsw::GapReport rep;
      if (family == "square") {
        rep = nsw::eval_square(gap_t);
      } else if (family == "additive") {
        nsw::AdditiveGapParams p;
        p.h = gap_h;
        p.k = gap_k;
        p.t = gap_t;
        p.eps = gap_eps;
        if (olambda->count() > 0) {
          std::fprintf(stderr, "nswkit gap: --lambda applies to the submodular family only\n");
          return 2;
        }
        rep = nsw::eval_additive_gap(p);
      } else {
        nsw::SubmodularGapParams p;
        p.k = gap_k;
        p.lambda = gap_lambda;
        p.t = gap_t;
        p.eps = gap_eps;
        if (oh->count() > 0) {
          std::fprintf(stderr, "nswkit gap: --h applies to the additive family only\n");
          return 2;
        }
        rep = nsw::eval_submodular_gap(p);
      }
      emit(nsw::gap_report_to_json(rep), out_path);
      return 0;
    }

    if (verify->parsed()) {
      if (mode == "mp5" && (oalo->count() > 0 || oahi->count() > 0)) {
        std::fprintf(stderr, "nswkit verify: alpha flags apply to mp3 only\n");
        return 2;
      }
      if (!(box.mu_lo <= box.mu_hi && box.k_lo <= box.k_hi &&
            box.alpha_lo <= box.alpha_hi)) {
        std::fprintf(stderr, "nswkit verify: empty interval in the region\n");
        return 2;
      }
      nsw::MpMode m = mode == "mp3" ? nsw::MpMode::Mp3 : nsw::MpMode::Mp5;
      nsw::VerifyReport rep = nsw::verify_region(m, box, target, vopt);
      emit(nsw::verify_report_to_json(rep), out_path);
      return rep.ok() ? 0 : 1;
    }

    if (check->parsed()) {
      if (check_trials > 0) {
        copt.rounding_trials = check_trials;
        copt.solve_trials = check_trials;
      }
      std::vector<nsw::CheckResult> results = nsw::run_checks(copt);
      nsw::Json j = nsw::check_report_to_json(results);
      emit(j, out_path);
      for (const nsw::CheckResult& r : results)
        if (!r.ok()) return 1;
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "nswkit: %s\n", e.what());
    return 1;
  }
  return 2;
}
