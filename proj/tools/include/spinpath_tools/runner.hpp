// Copyright 2026 The spinpath Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace spinpath::tools {

inline constexpr const char* kSchema = "spinpath.run/1";

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kNumerical = 3,
  kReplayMismatch = 4,
};

const std::vector<std::string>& command_names();

struct RunConfig {
  std::string command;
  // Raw flag values keyed by long flag name without dashes ("n-paths").
  // Threads and output location are execution details and live outside.
  std::map<std::string, std::string> params;
};

struct RunContext {
  int threads = 1;
  std::string out;     // artifact prefix; empty writes nothing
  bool quiet = false;  // suppress the summary line
};

struct RunOutcome {
  int exit_code = kOk;
  std::string summary;
  nlohmann::json artifact;  // schema, command, params, config_hash, results
  std::string error;
};

// Git-style blob SHA-1 of the canonical {command, params} document.
std::string config_hash(const RunConfig& cfg);

// Executes one command. Never throws for bad input or failed diagnostics;
// those become exit codes 2 and 3 with the message in `error`.
RunOutcome run(const RunConfig& cfg, const RunContext& ctx = {});

// Re-executes a stored artifact and compares results: bit-exact for Monte
// Carlo values, within the stored tolerance otherwise. Exit 0 iff identical,
// 2 on a malformed artifact, 4 on a hash or value mismatch.
RunOutcome replay(const std::string& artifact_path, const RunContext& ctx = {});

// Thread count from SPINPATH_THREADS, or 1.
int default_threads();

}  // namespace spinpath::tools
