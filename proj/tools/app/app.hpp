#pragma once

#include <string>
#include <vector>

namespace axionkit::app {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,   //!< bad flags, bad config, invalid parameters
  exit_numerical = 3 //!< fit or inversion failed, replay mismatch, IO failure
};

int run(int argc, char **argv);
//! Same, without argv[0].
int run(const std::vector<std::string> &args);

} // namespace axionkit::app
