// Command line front end: profile fits per-edge relationship weights from a
// graph and node attributes, eval scores a profile against gold labels, and
// paths dumps the raw enumeration for debugging.
//
// Exit codes: 0 success, 1 input parse error, 2 invalid configuration,
// 3 degenerate input (nothing to fit, or labels naming unknown edges).

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "affinity/errors.hpp"
#include "affinity/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relationship profiling over attributed graphs"};
  app.require_subcommand(1);

  affinity::ProfileOptions profile;
  int profile_threads = 0;
  bool profile_deterministic = false;
  std::string profile_direction;
  CLI::App* cmd_profile =
      app.add_subcommand("profile", "fit per-edge relationship weights");
  cmd_profile->add_option("--edges", profile.edges_path, "edge list file")
      ->required();
  cmd_profile->add_option("--attrs", profile.attributes_path, "attribute file")
      ->required();
  cmd_profile->add_option("--config", profile.config_path, "run config (JSON)")
      ->required();
  cmd_profile->add_option("--out", profile.out_dir, "output directory")
      ->required();
  cmd_profile->add_option("--dump-pairs", profile.pairs_dump_path,
                          "write the constrained pairs to this file");
  cmd_profile->add_option("--threads", profile_threads,
                          "worker threads (0 = library default)");
  cmd_profile->add_flag("--deterministic", profile_deterministic,
                        "serial kernels and byte-stable outputs");
  cmd_profile->add_option("--direction", profile_direction,
                          "closeness direction handling: mean or forward");

  affinity::EvalOptions eval;
  CLI::App* cmd_eval =
      app.add_subcommand("eval", "score a profile against gold labels");
  cmd_eval->add_option("--edges", eval.edges_path, "edge list file")->required();
  cmd_eval->add_option("--affinity", eval.affinity_path,
                       "combined weight file from a profile run")
      ->required();
  cmd_eval->add_option("--labels", eval.labels_path, "gold label file")
      ->required();
  cmd_eval->add_option("--config", eval.config_path, "run config (JSON)")
      ->required();
  cmd_eval->add_option("--report", eval.report_path,
                       "also write a JSON report here");

  affinity::PathsOptions paths;
  CLI::App* cmd_paths =
      app.add_subcommand("paths", "list simple paths from a source node");
  cmd_paths->add_option("--edges", paths.edges_path, "edge list file")->required();
  cmd_paths->add_option("--source", paths.source_id, "source node id")->required();
  cmd_paths->add_option("--k", paths.k_max, "maximum path length")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_profile->parsed()) {
      apply_threads(profile_threads);
      if (profile_deterministic) profile.deterministic = true;
      if (!profile_direction.empty()) {
        if (profile_direction == "mean") {
          profile.direction = affinity::Direction::mean;
        } else if (profile_direction == "forward") {
          profile.direction = affinity::Direction::forward;
        } else {
          throw affinity::ConfigError("--direction must be 'mean' or 'forward'");
        }
      }
      affinity::run_profile(profile, std::cout);
    } else if (cmd_eval->parsed()) {
      affinity::run_eval(eval, std::cout);
    } else if (cmd_paths->parsed()) {
      affinity::run_paths(paths, std::cout);
    }
  } catch (const affinity::UnknownLabelEdges& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const std::string& edge : e.edges()) {
      std::cerr << "  " << edge << '\n';
    }
    return 3;
  } catch (const affinity::DegenerateInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const affinity::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const affinity::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
