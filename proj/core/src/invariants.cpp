#include "picard/invariants.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace picard {

namespace {

constexpr std::array<Op, 11> kAllOps = {Op::adjoint, Op::picard,  Op::defect, Op::homogeneous,
                                        Op::gral,    Op::severi,  Op::qan,    Op::pg,
                                        Op::delta,   Op::czlemma, Op::scan};

bool has(const std::set<Op>& ops, Op op) { return ops.count(op) != 0; }

void warn(std::vector<std::string>& warnings, std::string text) {
  if (std::find(warnings.begin(), warnings.end(), text) == warnings.end()) warnings.push_back(std::move(text));
}

/// Runs `body`, moving any library error into the report.
void guarded(AnalysisReport& r, Op op, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    r.errors.push_back(ReportError{std::string(op_name(op)), e.code(), e.what()});
  }
}

void expect(AnalysisReport& r, const SurfaceModel& s, const std::string& key, const std::optional<long>& expected,
            std::optional<long> computed, bool binding = true) {
  if (!expected) return;
  ExpectationRow row;
  row.key = key;
  row.expected = *expected;
  row.computed = computed;
  row.match = computed && *computed == *expected;
  row.waived = s.waived(key);
  row.binding = binding;
  r.expectations.push_back(std::move(row));
}

SyzygyProfile profile_of(const PlaneCurve& c, const EngineOptions& options) {
  SyzygyProfile p;
  p.curve = to_string(c.g);
  p.lemma_holds = true;
  for (int l = 0; l <= c.degree() - 1; ++l) {
    p.dims.push_back(syzygy_space(c, l, options).dim());
    if (l <= c.degree() - 2 && p.dims.back() != 0) p.lemma_holds = false;
  }
  return p;
}

nlohmann::ordered_json errors_json(const std::vector<ReportError>& errors) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& e : errors) {
    out.push_back({{"op", e.op}, {"code", std::string(error_code_name(e.code))}, {"message", e.message}});
  }
  return out;
}

nlohmann::ordered_json polys_json(const std::vector<Polynomial>& ps) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& p : ps) out.push_back(to_string(p));
  return out;
}

}  // namespace

QanResult q_an(const SurfaceModel& s, const SolverOptions& options) {
  const PicardSolutionSpace space = solve_picard(s, options);
  return QanResult{space.dim(), s.ordinary && s.generic_coordinates && space.adjoint.certified};
}

long p_g(const SurfaceModel& s, const SolverOptions& options) {
  if (s.d < 4) return 0;
  return static_cast<long>(adjoint_space(s, s.d - 4, options).dim());
}

std::string_view op_name(Op op) {
  switch (op) {
    case Op::adjoint: return "adjoint";
    case Op::picard: return "picard";
    case Op::defect: return "defect";
    case Op::homogeneous: return "homogeneous";
    case Op::gral: return "gral";
    case Op::severi: return "severi";
    case Op::qan: return "qan";
    case Op::pg: return "pg";
    case Op::delta: return "delta";
    case Op::czlemma: return "czlemma";
    case Op::scan: return "scan";
  }
  return "?";
}

std::set<Op> parse_ops(std::string_view text) {
  std::set<Op> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    if (!item.empty()) {
      const auto it = std::find_if(kAllOps.begin(), kAllOps.end(), [&](Op op) { return op_name(op) == item; });
      if (it == kAllOps.end()) throw Error(ErrorCode::ParseError, "unknown operation '" + std::string(item) + "'");
      out.insert(*it);
    }
    start = comma + 1;
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "no operations requested");
  return out;
}

bool AnalysisReport::failed() const {
  if (!errors.empty()) return true;
  return std::any_of(expectations.begin(), expectations.end(),
                     [](const ExpectationRow& r) { return r.binding && !r.match && !r.waived; });
}

AnalysisReport analyze_surface(const SurfaceModel& s, const AnalysisRequest& request) {
  AnalysisReport r;
  r.id = s.id;
  r.field = s.field;
  r.d = s.d;
  r.ordinary = s.ordinary;
  r.generic_coordinates = s.generic_coordinates;
  r.ops = request.ops;
  const auto& ops = request.ops;
  const SolverOptions& options = request.solver;
  const bool d_invertible = !s.field.vanishes(s.d);

  if (has(ops, Op::adjoint)) {
    guarded(r, Op::adjoint, [&] {
      r.adjoint = adjoint_space(s, s.d - 2, options);
      if (!r.adjoint->certified) warn(r.warnings, "adjoint space is sampled, not certified");
    });
  }

  const bool need_solutions = has(ops, Op::picard) || has(ops, Op::defect) || has(ops, Op::homogeneous) ||
                              has(ops, Op::severi) || has(ops, Op::qan) || has(ops, Op::scan);
  if (need_solutions) {
    guarded(r, Op::picard, [&] {
      r.picard = solve_picard(s, options);
      if (!r.picard->adjoint.certified) warn(r.warnings, "Picard solutions use a sampled adjoint space");
    });
  }
  const bool solved = r.picard.has_value();

  if (solved && has(ops, Op::picard)) {
    guarded(r, Op::picard, [&] {
      r.form_map_kernel = form_map_kernel_dim(s, options);
      if (*r.form_map_kernel != 0) {
        throw Error(ErrorCode::AssertionFailure, "solutions with A = B = 0 form a space of dimension " +
                                                     std::to_string(*r.form_map_kernel));
      }
      r.stability = field_change_stability(s, request.seed, options);
      if (!r.stability->agree) {
        throw Error(ErrorCode::AssertionFailure, "solution dimension differs between the rationals and F_" +
                                                     std::to_string(r.stability->prime));
      }
    });
  }

  if (solved && has(ops, Op::defect)) {
    if (!s.ordinary) warn(r.warnings, "surface not declared ordinary: closedness is observed, not asserted");
    if (s.field.is_prime()) warn(r.warnings, "positive characteristic: closedness is observed, not asserted");
    for (std::size_t i = 0; i < r.picard->basis.size(); ++i) {
      const auto& sol = r.picard->basis[i];
      r.defects.emplace_back(i, divergence_defect(sol));
      guarded(r, Op::defect, [&] { integrability_defect(s, sol); });
    }
  }

  if (solved && has(ops, Op::homogeneous)) {
    for (std::size_t i = 0; i < r.picard->basis.size(); ++i) {
      guarded(r, Op::homogeneous, [&] {
        const HomogeneousSolution h = homogenize_solution(s, r.picard->basis[i], options);
        r.homogeneous.push_back(HomogeneousCheck{i, h.relation_ok, h.minors_adjoint, h.divergence_zero,
                                                 h.defect_zero, h.equivalence_checked, to_string(h.divergence)});
        for (const auto& w : h.warnings) warn(r.warnings, w);
      });
    }
  }

  if (has(ops, Op::gral)) {
    if (d_invertible) {
      guarded(r, Op::gral, [&] { r.gral = gral_solve(s, options); });
    } else {
      warn(r.warnings, "gral skipped: the characteristic divides d");
    }
  }

  if (solved && has(ops, Op::severi)) {
    if (d_invertible) {
      for (std::size_t i = 0; i < r.picard->basis.size(); ++i) {
        guarded(r, Op::severi, [&] {
          SeveriReport rep = severi_structure_check(s, r.picard->basis[i]);
          if (!rep.ok()) warn(r.warnings, "solution " + std::to_string(i) + " fails the Severi structure check");
          r.severi.emplace_back(i, std::move(rep));
        });
      }
    } else {
      warn(r.warnings, "severi skipped: the characteristic divides d");
    }
  }

  if (solved && has(ops, Op::qan)) {
    r.q_an_computed = QanResult{r.picard->dim(), s.ordinary && s.generic_coordinates && r.picard->adjoint.certified};
    const long value = static_cast<long>(r.q_an_computed->value);
    expect(r, s, "q_an", s.expected.q_an, value);
    expect(r, s, "q_a", s.expected.q_a, value, !s.field.is_prime());
  }

  if (has(ops, Op::pg)) {
    guarded(r, Op::pg, [&] {
      r.p_g_computed = p_g(s, options);
      expect(r, s, "p_g", s.expected.p_g, r.p_g_computed);
    });
  }

  if (has(ops, Op::delta)) {
    if (s.expected.e && s.expected.g) r.delta_formula = zeuthen_segre_formula(*s.expected.e, *s.expected.g, s.d);
    if (!s.double_curve.empty()) {
      warn(r.warnings, "delta not computed: the jacobian count needs an empty double curve");
    } else {
      try {
        r.delta_computed = jacobian_count(s, 1, options.engine);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotZeroDimensional) {
          r.errors.push_back(ReportError{"delta", e.code(), e.what()});
        } else {
          warn(r.warnings, std::string("delta not computed: ") + e.what());
        }
      }
    }
    expect(r, s, "delta", s.expected.delta, r.delta_computed);
    if (r.delta_computed) expect(r, s, "delta_formula", r.delta_formula, r.delta_computed);
  }

  if (has(ops, Op::czlemma)) {
    guarded(r, Op::czlemma, [&] {
      const Polynomial w = Polynomial(s.field, 3);
      const std::array<Polynomial, 4> images = {Polynomial::variable(s.field, 3, 0),
                                                Polynomial::variable(s.field, 3, 1),
                                                Polynomial::variable(s.field, 3, 2), w};
      const Polynomial section = substitute(s.F, images);
      if (section.is_zero()) {
        warn(r.warnings, "czlemma skipped: the plane w = 0 lies on the surface");
        return;
      }
      const bool asserted = s.ordinary && s.generic_coordinates;
      const PlaneCurve curve = make_curve(s.id + "_section", section, asserted);
      SyzygyProfile profile = profile_of(curve, options.engine);
      profile.asserted = asserted;
      if (!profile.lemma_holds) {
        if (asserted) {
          r.errors.push_back(ReportError{"czlemma", ErrorCode::AssertionFailure,
                                         "the plane section at infinity has a low-degree syzygy"});
        } else {
          warn(r.warnings, "plane section at infinity has a low-degree syzygy (not asserted)");
        }
      }
      r.czlemma = std::move(profile);
    });
  }

  if (solved && has(ops, Op::scan)) {
    if (!s.field.is_prime()) {
      warn(r.warnings, "scan collects witnesses over prime fields only");
    } else {
      r.witnesses = collect_witnesses(s, 0, "fixture", options);
    }
  }
  return r;
}

nlohmann::ordered_json report_to_json(const AnalysisReport& r) {
  const auto& ops = r.ops;
  nlohmann::ordered_json doc;
  doc["id"] = r.id;
  doc["kind"] = "surface";
  doc["field"] = r.field.to_string();
  doc["degree"] = r.d;
  doc["ordinary"] = r.ordinary;
  doc["generic_coordinates"] = r.generic_coordinates;
  doc["ops"] = nlohmann::ordered_json::array();
  for (Op op : kAllOps) {
    if (has(ops, op)) doc["ops"].push_back(std::string(op_name(op)));
  }

  if (r.adjoint) {
    doc["adjoint"] = {{"m", r.adjoint->m},
                      {"dim", r.adjoint->dim()},
                      {"strategy", std::string(strategy_name(r.adjoint->strategy))},
                      {"certified", r.adjoint->certified},
                      {"unconstrained", r.adjoint->unconstrained},
                      {"basis", polys_json(r.adjoint->basis)}};
  }

  const bool picard_section =
      r.picard && (has(ops, Op::picard) || has(ops, Op::defect) || has(ops, Op::homogeneous) || has(ops, Op::gral));
  if (picard_section || r.gral) {
    nlohmann::ordered_json p;
    if (r.picard && has(ops, Op::picard)) {
      p["dim"] = r.picard->dim();
      p["route"] = std::string(route_name(r.picard->route));
      p["adjoint_certified"] = r.picard->adjoint.certified;
      p["basis"] = nlohmann::ordered_json::array();
      for (const auto& sol : r.picard->basis) p["basis"].push_back(solution_to_json(sol));
      if (r.form_map_kernel) p["form_map_kernel"] = *r.form_map_kernel;
      if (r.stability) {
        p["stability"] = {{"prime", r.stability->prime},
                          {"dim_rationals", r.stability->dim_rationals},
                          {"dim_prime", r.stability->dim_prime},
                          {"attempts", r.stability->attempts},
                          {"agree", r.stability->agree}};
      }
    }
    if (has(ops, Op::defect)) {
      p["defects"] = nlohmann::ordered_json::array();
      for (const auto& [i, q] : r.defects) p["defects"].push_back(to_string(q));
    }
    if (has(ops, Op::homogeneous)) {
      nlohmann::ordered_json h;
      const auto all = [&](bool HomogeneousCheck::*field) {
        return std::all_of(r.homogeneous.begin(), r.homogeneous.end(), [&](const auto& c) { return c.*field; });
      };
      h["relation_ok"] = all(&HomogeneousCheck::relation_ok);
      h["minors_adjoint"] = all(&HomogeneousCheck::minors_adjoint);
      h["divergence_zero"] = all(&HomogeneousCheck::divergence_zero);
      h["solutions"] = nlohmann::ordered_json::array();
      for (const auto& c : r.homogeneous) {
        h["solutions"].push_back({{"solution", c.solution},
                                  {"relation_ok", c.relation_ok},
                                  {"minors_adjoint", c.minors_adjoint},
                                  {"divergence", c.divergence},
                                  {"defect_zero", c.defect_zero},
                                  {"equivalence_checked", c.equivalence_checked}});
      }
      p["homogeneous"] = std::move(h);
    }
    if (r.gral) {
      nlohmann::ordered_json g;
      g["space_dim"] = r.gral->space_dim;
      g["trivial_dim"] = r.gral->trivial_dim;
      g["nontrivial"] = r.gral->nontrivial;
      g["basis"] = nlohmann::ordered_json::array();
      for (const auto& b : r.gral->basis) {
        g["basis"].push_back({{"Y1", to_string(b[0])},
                              {"Y2", to_string(b[1])},
                              {"Y3", to_string(b[2])},
                              {"Y4", to_string(b[3])},
                              {"Q", to_string(b[4])}});
      }
      p["gral"] = std::move(g);
    }
    doc["picard"] = std::move(p);
  }

  if (has(ops, Op::severi)) {
    doc["severi"] = nlohmann::ordered_json::array();
    for (const auto& [i, rep] : r.severi) {
      nlohmann::ordered_json row;
      row["solution"] = i;
      row["theta"] = to_string(rep.theta);
      row["top_ok"] = rep.top_ok;
      row["base_line_ok"] = rep.base_line_ok;
      row["jacobian"] = nlohmann::ordered_json::array();
      for (const auto& j : rep.jacobian) {
        row["jacobian"].push_back({{"axis", j.axis}, {"samples", j.samples}, {"vanishing", j.vanishing}});
      }
      row["vacuous"] = rep.vacuous;
      row["ok"] = rep.ok();
      doc["severi"].push_back(std::move(row));
    }
  }
  if (r.q_an_computed) doc["q_an"] = {{"value", r.q_an_computed->value}, {"certified", r.q_an_computed->certified}};
  if (r.p_g_computed) doc["p_g"] = *r.p_g_computed;
  if (has(ops, Op::delta)) {
    nlohmann::ordered_json d;
    d["computed"] = r.delta_computed ? nlohmann::ordered_json(*r.delta_computed) : nlohmann::ordered_json();
    d["formula"] = r.delta_formula ? nlohmann::ordered_json(*r.delta_formula) : nlohmann::ordered_json();
    doc["delta"] = std::move(d);
  }
  if (r.czlemma) {
    doc["czlemma"] = {{"curve", r.czlemma->curve},
                      {"syzygy_dims", r.czlemma->dims},
                      {"lemma_holds", r.czlemma->lemma_holds},
                      {"asserted", r.czlemma->asserted}};
  }
  if (has(ops, Op::scan)) {
    doc["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : r.witnesses) doc["witnesses"].push_back(witness_to_json(w));
  }

  doc["expected"] = nlohmann::ordered_json::array();
  for (const auto& row : r.expectations) {
    nlohmann::ordered_json e;
    e["key"] = row.key;
    e["expected"] = row.expected;
    e["computed"] = row.computed ? nlohmann::ordered_json(*row.computed) : nlohmann::ordered_json();
    e["match"] = row.match;
    e["waived"] = row.waived;
    e["binding"] = row.binding;
    doc["expected"].push_back(std::move(e));
  }
  doc["warnings"] = r.warnings;
  doc["errors"] = errors_json(r.errors);
  doc["status"] = r.failed() ? "failed" : "ok";
  return doc;
}

CurveReport analyze_curve(const PlaneCurve& curve, const EngineOptions& options) {
  CurveReport r;
  r.curve = curve;
  try {
    r.profile = profile_of(curve, options);
    r.profile.asserted = curve.nodal;
    if (!curve.nodal) {
      warn(r.warnings, "curve not declared nodal: the lemma is not asserted");
    } else if (!r.profile.lemma_holds) {
      r.errors.push_back(ReportError{"czlemma", ErrorCode::AssertionFailure,
                                     "nodal curve " + curve.id + " has a syzygy of degree <= n - 2"});
    }
  } catch (const Error& e) {
    r.errors.push_back(ReportError{"czlemma", e.code(), e.what()});
  }
  return r;
}

nlohmann::ordered_json report_to_json(const CurveReport& r) {
  nlohmann::ordered_json doc;
  doc["id"] = r.curve.id;
  doc["kind"] = "curve";
  doc["field"] = r.curve.field.to_string();
  doc["degree"] = r.curve.degree();
  doc["nodal"] = r.curve.nodal;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& p : r.curve.nodes) doc["nodes"].push_back(point_to_json(p));
  doc["czlemma"] = {{"syzygy_dims", r.profile.dims},
                    {"lemma_holds", r.profile.lemma_holds},
                    {"asserted", r.profile.asserted}};
  doc["warnings"] = r.warnings;
  doc["errors"] = errors_json(r.errors);
  doc["status"] = r.failed() ? "failed" : "ok";
  return doc;
}

}  // namespace picard
