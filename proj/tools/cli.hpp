#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "eit/pipeline.hpp"
#include "eit/split.hpp"

namespace eit::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kPartialFailure = 2,
  kVerificationFailure = 3,
};

/// A usage or configuration problem; reported and mapped to kConfigError.
class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds the job for `transform ...` / `corrupt ...` without running it.
/// `args` excludes the program name and starts at the subcommand.
JobConfig build_job(const std::vector<std::string>& args);

struct SplitRequest {
  std::filesystem::path input_root;
  std::filesystem::path output_dir;
  std::string image_glob{kDefaultImageGlob};
  SplitSpec spec;
};

SplitRequest build_split(const std::vector<std::string>& args);

/// Runs a full command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eit::cli
