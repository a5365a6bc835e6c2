#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "picard/invariants.hpp"
#include "picard/scan.hpp"

namespace picard::tools {

enum ExitCode : int { kOk = 0, kAssertion = 1, kInput = 2 };

struct RunSpec {
  std::vector<std::string> inputs;
  std::set<Op> ops;
  std::optional<Field> field;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> dump_matrices;
  std::optional<AdjointStrategy> strategy;
};

/// A path, or the name of a bundled surface or curve fixture.
std::optional<std::filesystem::path> resolve_input(const std::string& input);

/// Analyzes every input. Reports go to `out` (or to files under spec.out),
/// machine-readable error records to `err`.
int run_analyze(const RunSpec& spec, std::ostream& out, std::ostream& err);

struct ScanSpec {
  ScanConfig config;
  std::optional<std::filesystem::path> out;
};

int run_scan(const ScanSpec& spec, std::ostream& out, std::ostream& err);

/// Re-verifies every witness in a scan or analysis report.
int run_verify(const std::filesystem::path& report, std::ostream& out, std::ostream& err);

}  // namespace picard::tools
