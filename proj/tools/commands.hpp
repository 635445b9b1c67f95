#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace slicecalc::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kSolverFailure = 3,
  kSpectrumHit = 4,
};

struct JobConfig {
  std::string subcommand;
  std::string input;
  std::string out;
  std::string plot;
  std::string method;  // exact|scan|both, or closed|series|left for resolvent
  double step = 0.0;
  double tol = 1e-8;
  std::string fn;
  std::string plane = "e1";
  int nodes = 512;
  double margin = 0.0;  // <= 0: default 0.1 (1 + rep_norm)
  std::string chart;    // "k=<real>"
  std::string s;        // resolvent point
  int terms = 200;
  std::string suite = "all";
  std::uint64_t seed = 0;
};

/// Runs one job; results go to cfg.out (written atomically) or `out`.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace slicecalc::cli
