#include "picard/scan.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <thread>

#include "picard/errors.hpp"

namespace picard {

namespace {

Polynomial random_form(const Field& field, int nvars, int degree, std::mt19937_64& rng) {
  std::vector<Term> terms;
  const auto p = field.characteristic();
  for (const auto& m : monomials_of_degree(nvars, degree)) {
    terms.push_back(Term{m, Rational(static_cast<unsigned long>(rng() % p))});
  }
  return Polynomial::from_terms(field, nvars, std::move(terms));
}

Polynomial lift_ternary(const Polynomial& form) {
  std::vector<Term> terms = form.terms();
  return Polynomial::from_terms(form.field(), 4, std::move(terms));
}

std::string id_for(const ScanConfig& c, std::size_t trial) {
  return "scan_" + std::string(recipe_name(c.recipe)) + "_p" + std::to_string(c.p) + "_d" + std::to_string(c.d) +
         "_t" + std::to_string(trial);
}

ScanTrial run_trial(const ScanConfig& config, std::size_t trial, const SolverOptions& options,
                    std::vector<ScanWitness>& found) {
  ScanTrial out;
  out.trial = trial;
  out.surface_id = id_for(config, trial);
  try {
    const SurfaceModel s = scan_surface(config, trial);
    out.dim = solve_picard(s, options).dim();
    found = collect_witnesses(s, trial, std::string(recipe_name(config.recipe)), options);
    out.witnesses = found.size();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::string_view recipe_name(ScanRecipe r) {
  switch (r) {
    case ScanRecipe::smooth:
      return "smooth";
    case ScanRecipe::cone:
      return "cone";
    case ScanRecipe::declared_double_line:
      return "declared-double-line";
  }
  return "smooth";
}

ScanRecipe parse_recipe(std::string_view text) {
  if (text == "smooth") return ScanRecipe::smooth;
  if (text == "cone") return ScanRecipe::cone;
  if (text == "declared-double-line") return ScanRecipe::declared_double_line;
  throw Error(ErrorCode::ParseError, "unknown scan recipe '" + std::string(text) + "'");
}

void validate_scan_config(const ScanConfig& config) {
  if (config.trials == 0) throw Error(ErrorCode::ContractViolation, "a scan needs at least one trial");
  if (config.d < 2) throw Error(ErrorCode::ContractViolation, "scan degree must be at least 2");
  Field::prime(config.p);
}

SurfaceModel scan_surface(const ScanConfig& config, std::size_t trial) {
  validate_scan_config(config);
  const Field field = Field::prime(config.p);
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);

  // redraw the rare all-zero form
  const auto nonzero = [&](int nvars, int degree) {
    Polynomial p = random_form(field, nvars, degree, rng);
    while (p.is_zero()) p = random_form(field, nvars, degree, rng);
    return p;
  };
  const auto x = Polynomial::variable(field, 4, 0);
  const auto y = Polynomial::variable(field, 4, 1);

  switch (config.recipe) {
    case ScanRecipe::smooth:
      return make_surface(id_for(config, trial), nonzero(4, config.d), {}, false);
    case ScanRecipe::cone:
      return make_surface(id_for(config, trial), lift_ternary(nonzero(3, config.d)), {}, false);
    case ScanRecipe::declared_double_line: {
      for (;;) {
        const Polynomial F = x * x * random_form(field, 4, config.d - 2, rng) +
                             x * y * random_form(field, 4, config.d - 2, rng) +
                             y * y * random_form(field, 4, config.d - 2, rng);
        if (F.is_zero()) continue;
        DoubleCurve curve;
        curve.generators = {x, y};
        CurveComponent line;
        line.degree = 1;
        for (const char* text : {"0", "0", "t", "1"}) {
          line.parametrization.push_back(parse_polynomial(text, field, std::vector<std::string>{"t"}));
        }
        curve.components.push_back(std::move(line));
        return make_surface(id_for(config, trial), F, std::move(curve), false);
      }
    }
  }
  throw Error(ErrorCode::ContractViolation, "unknown recipe");
}

std::vector<ScanWitness> collect_witnesses(const SurfaceModel& s, std::size_t trial, std::string recipe,
                                           const SolverOptions& options) {
  std::vector<ScanWitness> out;
  for (const auto& sol : solve_picard(s, options).basis) {
    Polynomial Q = divergence_defect(sol);
    if (Q.is_zero()) continue;
    out.push_back(ScanWitness{trial, s, sol, std::move(Q), recipe});
  }
  return out;
}

ScanReport charp_scan(const ScanConfig& config, const SolverOptions& options) {
  validate_scan_config(config);
  ScanReport report;
  report.config = config;
  report.trials.resize(config.trials);
  std::vector<std::vector<ScanWitness>> found(config.trials);

  const std::size_t width = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < config.trials; start += width) {
    const std::size_t stop = std::min(config.trials, start + width);
    std::vector<std::future<ScanTrial>> batch;
    for (std::size_t t = start; t < stop; ++t) {
      batch.push_back(std::async(std::launch::async, [&, t] { return run_trial(config, t, options, found[t]); }));
    }
    for (std::size_t t = start; t < stop; ++t) report.trials[t] = batch[t - start].get();
  }
  for (auto& w : found) {
    for (auto& witness : w) report.witnesses.push_back(std::move(witness));
  }
  return report;
}

nlohmann::ordered_json solution_to_json(const PicardSolution& sol) {
  nlohmann::ordered_json doc;
  doc["A"] = to_string(sol.A);
  doc["B"] = to_string(sol.B);
  doc["C"] = to_string(sol.C);
  doc["N"] = to_string(sol.N);
  return doc;
}

PicardSolution parse_solution(const nlohmann::json& doc, const Field& field) {
  PicardSolution sol = PicardSolution::zero(field);
  for (const char* key : {"A", "B", "C", "N"}) {
    if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_string()) {
      throw Error(ErrorCode::ParseError, std::string("solution lacks string component '") + key + "'");
    }
  }
  sol.A = parse_polynomial(doc.at("A").get<std::string>(), field, 3);
  sol.B = parse_polynomial(doc.at("B").get<std::string>(), field, 3);
  sol.C = parse_polynomial(doc.at("C").get<std::string>(), field, 3);
  sol.N = parse_polynomial(doc.at("N").get<std::string>(), field, 3);
  return sol;
}

nlohmann::ordered_json witness_to_json(const ScanWitness& w) {
  nlohmann::ordered_json doc;
  doc["trial"] = w.trial;
  doc["surface"] = surface_to_json(w.surface);
  doc["solution"] = solution_to_json(w.solution);
  doc["defect"] = to_string(w.defect);
  doc["p"] = w.surface.field.characteristic();
  doc["d"] = w.surface.d;
  doc["recipe"] = w.recipe;
  return doc;
}

nlohmann::ordered_json scan_to_json(const ScanReport& report) {
  nlohmann::ordered_json doc;
  const auto& c = report.config;
  doc["config"] = {{"p", c.p}, {"d", c.d}, {"trials", c.trials}, {"seed", c.seed},
                   {"recipe", std::string(recipe_name(c.recipe))}};
  doc["trials"] = nlohmann::ordered_json::array();
  for (const auto& t : report.trials) {
    nlohmann::ordered_json row;
    row["trial"] = t.trial;
    row["surface"] = t.surface_id;
    if (t.dim) row["dim"] = *t.dim;
    row["witnesses"] = t.witnesses;
    if (t.error) row["error"] = *t.error;
    doc["trials"].push_back(std::move(row));
  }
  doc["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : report.witnesses) doc["witnesses"].push_back(witness_to_json(w));
  return doc;
}

bool verify_witness(const nlohmann::json& record) {
  if (!record.is_object() || !record.contains("surface") || !record.contains("solution") ||
      !record.contains("defect") || !record.at("defect").is_string()) {
    throw Error(ErrorCode::ParseError, "witness record needs surface, solution and defect");
  }
  const SurfaceModel s = load_surface(record.at("surface"));
  const PicardSolution sol = parse_solution(record.at("solution"), s.field);
  if (!picard_residual(s, sol).is_zero()) return false;
  const Polynomial Q = divergence_defect(sol);
  if (record.contains("p") && record.at("p").get<std::uint64_t>() != s.field.characteristic()) return false;
  if (record.contains("d") && record.at("d").get<int>() != s.d) return false;
  return !Q.is_zero() && Q == parse_polynomial(record.at("defect").get<std::string>(), s.field, 3);
}

}  // namespace picard
