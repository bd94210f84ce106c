#pragma once

// The user-facing commands, shared by the command line tool and the Python
// module. Each command returns a JSON report, a short text summary and the
// process exit code the command line tool uses.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kstab/problem.hpp"

namespace kstab {

struct CommandSettings {
  // A problem file path or catalog name, or an inline problem document.
  std::string file;
  std::optional<Json> problem;
  std::filesystem::path catalog_dir = "catalog";

  std::optional<unsigned> net_denominator;
  std::optional<double> tolerance;
  std::string svg;
  bool no_shift = false;
  bool permissive_colours = false;
};

struct CommandOutput {
  Json json;
  std::string text;
  int code = 0;
};

// Exit codes besides the per-command ones (stability: 0/2/3,
// check-convexity: 0/1).
constexpr int kExitError = 4;

const std::vector<std::string>& command_names();

/// Runs a command by name. Errors: InvalidInput for an unknown command,
/// plus whatever the command itself raises.
CommandOutput run_command(const std::string& name, const CommandSettings& settings);

}  // namespace kstab
