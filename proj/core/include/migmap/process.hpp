#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace migmap {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs `argv[0]` (looked up in PATH) with the given arguments, feeding
/// `input` on stdin and capturing stdout and stderr. No shell is involved.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input = {},
                          const std::filesystem::path& cwd = {});

}  // namespace migmap
