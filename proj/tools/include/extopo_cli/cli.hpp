#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace extopo::cli {

/// Exit codes, one per error class.
enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_usage = 2,
  exit_ingest = 3,
  exit_augment = 4,
  exit_noise = 5,
  exit_filtration = 6,
  exit_persistence = 7,
  exit_vectorize = 8,
  exit_metric = 9,
  exit_loss = 10,
  exit_io = 11,
  exit_check_failed = 12,  ///< stability trial failed
};

/// Runs the tool. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extopo::cli
