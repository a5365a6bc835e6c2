#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "picard/errors.hpp"
#include "picard/picard.hpp"
#include "picard/plane_lemma.hpp"
#include "picard/scan.hpp"

namespace picard {

struct QanResult {
  std::size_t value = 0;
  /// Ordinary surface, generic coordinates and a certified adjoint space.
  bool certified = false;
};

QanResult q_an(const SurfaceModel& s, const SolverOptions& options = {});

/// Adjoint forms of degree exactly d - 4.
long p_g(const SurfaceModel& s, const SolverOptions& options = {});

enum class Op { adjoint, picard, defect, homogeneous, gral, severi, qan, pg, delta, czlemma, scan };

std::string_view op_name(Op op);
/// Comma-separated list; throws ParseError on an unknown or empty list.
std::set<Op> parse_ops(std::string_view text);

struct AnalysisRequest {
  std::set<Op> ops;
  SolverOptions solver;
  /// Draws the primes of the field-change check.
  std::uint64_t seed = 0;
};

struct ExpectationRow {
  std::string key;
  long expected = 0;
  std::optional<long> computed;
  bool match = false;
  bool waived = false;
  /// Mismatches on this row fail the run.
  bool binding = true;
};

struct ReportError {
  std::string op;
  ErrorCode code = ErrorCode::AssertionFailure;
  std::string message;
};

struct HomogeneousCheck {
  std::size_t solution = 0;
  bool relation_ok = false;
  bool minors_adjoint = false;
  bool divergence_zero = false;
  bool defect_zero = false;
  bool equivalence_checked = false;
  std::string divergence;
};

struct SyzygyProfile {
  std::string curve;
  /// dim of the syzygies for l = 0 .. n - 1.
  std::vector<std::size_t> dims;
  bool lemma_holds = false;
  bool asserted = false;
};

struct AnalysisReport {
  std::string id;
  Field field = Field::rationals();
  int d = 0;
  bool ordinary = false;
  bool generic_coordinates = false;
  std::set<Op> ops;

  std::optional<AdjointSpace> adjoint;
  std::optional<PicardSolutionSpace> picard;
  std::optional<std::size_t> form_map_kernel;
  std::optional<StabilityCheck> stability;
  std::vector<std::pair<std::size_t, Polynomial>> defects;
  std::vector<HomogeneousCheck> homogeneous;
  std::optional<GralResult> gral;
  std::vector<std::pair<std::size_t, SeveriReport>> severi;
  std::optional<QanResult> q_an_computed;
  std::optional<long> p_g_computed;
  std::optional<long> delta_computed;
  std::optional<long> delta_formula;
  std::optional<SyzygyProfile> czlemma;
  std::vector<ScanWitness> witnesses;
  std::vector<ExpectationRow> expectations;
  std::vector<std::string> warnings;
  std::vector<ReportError> errors;

  /// An assertion-level error or a binding, unwaived expectation mismatch.
  bool failed() const;
};

/// Runs the requested operations. Assertion failures are collected in the
/// report rather than thrown.
AnalysisReport analyze_surface(const SurfaceModel& s, const AnalysisRequest& request);
nlohmann::ordered_json report_to_json(const AnalysisReport& report);

struct CurveReport {
  PlaneCurve curve;
  SyzygyProfile profile;
  std::vector<std::string> warnings;
  std::vector<ReportError> errors;

  bool failed() const { return !errors.empty(); }
};

CurveReport analyze_curve(const PlaneCurve& curve, const EngineOptions& options = {});
nlohmann::ordered_json report_to_json(const CurveReport& report);

}  // namespace picard
