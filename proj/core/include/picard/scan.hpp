#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "picard/picard.hpp"

namespace picard {

enum class ScanRecipe { smooth, cone, declared_double_line };

std::string_view recipe_name(ScanRecipe r);
ScanRecipe parse_recipe(std::string_view text);

struct ScanConfig {
  std::uint64_t p = 5;
  int d = 4;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  ScanRecipe recipe = ScanRecipe::smooth;
};

/// A solution of the Picard relation over F_p whose integrability defect is
/// nonzero.
struct ScanWitness {
  std::size_t trial = 0;
  SurfaceModel surface;
  PicardSolution solution;
  Polynomial defect{Field::rationals(), 3};
  std::string recipe;
};

struct ScanTrial {
  std::size_t trial = 0;
  std::string surface_id;
  std::optional<std::size_t> dim;
  std::size_t witnesses = 0;
  /// Set when the trial failed and was skipped.
  std::optional<std::string> error;
};

struct ScanReport {
  ScanConfig config;
  std::vector<ScanTrial> trials;
  std::vector<ScanWitness> witnesses;
};

/// Throws ContractViolation when p is not prime, trials is 0 or d < 2.
void validate_scan_config(const ScanConfig& config);

/// The surface of a trial; depends only on the config and the trial index.
SurfaceModel scan_surface(const ScanConfig& config, std::size_t trial);

/// Basis solutions of `s` with nonzero defect.
std::vector<ScanWitness> collect_witnesses(const SurfaceModel& s, std::size_t trial, std::string recipe,
                                           const SolverOptions& options = {});

/// Runs the trials in parallel; the report is ordered by trial index.
ScanReport charp_scan(const ScanConfig& config, const SolverOptions& options = {});

nlohmann::ordered_json solution_to_json(const PicardSolution& sol);
PicardSolution parse_solution(const nlohmann::json& doc, const Field& field);

nlohmann::ordered_json witness_to_json(const ScanWitness& w);
nlohmann::ordered_json scan_to_json(const ScanReport& report);

/// Rebuilds the surface and solution from a witness record and checks the
/// relation and the recorded defect. Throws ParseError on malformed input.
bool verify_witness(const nlohmann::json& record);

}  // namespace picard
