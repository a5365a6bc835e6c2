#include "picard_tools/runner.hpp"

#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "picard/errors.hpp"

#ifndef PICARD_FIXTURE_DIR
#define PICARD_FIXTURE_DIR "fixtures"
#endif

namespace picard::tools {

namespace {

namespace fs = std::filesystem;

struct InputResult {
  std::string id;
  std::string text;
  int status = kOk;
  std::vector<nlohmann::ordered_json> errors;
};

nlohmann::ordered_json error_record(const std::string& input, std::string_view code, const std::string& message) {
  nlohmann::ordered_json e;
  e["input"] = input;
  e["code"] = std::string(code);
  e["message"] = message;
  return e;
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

SurfaceModel retarget(const SurfaceModel& s, const Field& target) {
  if (s.field == target) return s;
  if (s.field.is_prime()) {
    throw Error(ErrorCode::ContractViolation, s.id + " is defined over " + s.field.to_string() +
                                                  " and cannot be moved to " + target.to_string());
  }
  return reduce_surface(s, target);
}

MatrixObserver dump_observer(const fs::path& dir, const std::string& id) {
  auto counter = std::make_shared<std::size_t>(0);
  return [dir, id, counter](const CoeffMatrix& m) {
    std::ostringstream name;
    name << id << '_' << std::setw(3) << std::setfill('0') << (*counter)++ << ".mtx";
    std::ofstream file(dir / name.str());
    dump_matrix(m, file);
  };
}

InputResult analyze_one(const std::string& input, const RunSpec& spec) {
  InputResult r;
  r.id = input;
  try {
    const auto path = resolve_input(input);
    if (!path) throw Error(ErrorCode::ParseError, "no such input or bundled fixture: " + input);
    const nlohmann::json doc = read_json(*path);
    const std::string fallback = path->stem().string();
    nlohmann::ordered_json report;

    if (doc.is_object() && doc.contains("g")) {
      PlaneCurve curve = load_curve(doc, fallback);
      if (spec.field && !(curve.field == *spec.field)) {
        if (curve.field.is_prime()) throw Error(ErrorCode::ContractViolation, curve.id + " is already over a prime field");
        curve = make_curve(curve.id, curve.g.in_field(*spec.field), curve.nodal, [&] {
          std::vector<Point> nodes;
          for (const auto& p : curve.nodes) {
            Point q;
            for (const auto& c : p) q.push_back(spec.field->normalize(c));
            nodes.push_back(std::move(q));
          }
          return nodes;
        }());
      }
      r.id = curve.id;
      const CurveReport cr = analyze_curve(curve);
      report = report_to_json(cr);
      if (cr.failed()) r.status = kAssertion;
    } else {
      SurfaceModel s = load_surface(doc, fallback);
      const bool bad_reduction = spec.field && !good_reduction(s, *spec.field);
      if (spec.field) s = retarget(s, *spec.field);
      r.id = s.id;
      AnalysisRequest request;
      request.ops = spec.ops;
      request.seed = spec.seed;
      request.solver.strategy = spec.strategy;
      if (spec.dump_matrices) request.solver.on_matrix = dump_observer(*spec.dump_matrices, s.id);
      const AnalysisReport ar = analyze_surface(s, request);
      report = report_to_json(ar);
      if (bad_reduction) {
        report["warnings"].push_back("bad reduction: the characteristic divides the degree or F loses a variable");
      }
      if (ar.failed()) r.status = kAssertion;
    }
    for (const auto& e : report["errors"]) {
      r.errors.push_back(error_record(r.id, e["code"].get<std::string>(), e["message"].get<std::string>()));
    }
    r.text = report.dump(2) + "\n";
  } catch (const Error& e) {
    r.status = kInput;
    r.errors.push_back(error_record(input, error_code_name(e.code()), e.what()));
  } catch (const nlohmann::json::exception& e) {
    r.status = kInput;
    r.errors.push_back(error_record(input, "ParseError", e.what()));
  }
  return r;
}

}  // namespace

std::optional<fs::path> resolve_input(const std::string& input) {
  std::error_code ec;
  if (fs::is_regular_file(input, ec)) return fs::path(input);
  const fs::path root(PICARD_FIXTURE_DIR);
  for (const char* sub : {"surfaces", "curves"}) {
    const fs::path candidate = root / sub / (input + ".json");
    if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

int run_analyze(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  if (spec.inputs.empty()) {
    err << error_record("", "ContractViolation", "no inputs").dump() << "\n";
    return kInput;
  }
  for (const auto& dir : {spec.out, spec.dump_matrices}) {
    if (!dir) continue;
    std::error_code ec;
    fs::create_directories(*dir, ec);
    if (ec) {
      err << error_record(dir->string(), "ParseError", "cannot create directory: " + ec.message()).dump() << "\n";
      return kInput;
    }
  }

  std::vector<std::future<InputResult>> jobs;
  for (const auto& input : spec.inputs) {
    jobs.push_back(std::async(std::launch::async, [&spec, input] { return analyze_one(input, spec); }));
  }
  int status = kOk;
  for (auto& job : jobs) {
    InputResult r = job.get();
    for (const auto& e : r.errors) err << e.dump() << "\n";
    status = std::max(status, r.status);
    if (r.text.empty()) continue;
    if (spec.out) {
      std::ofstream file(*spec.out / (r.id + ".json"));
      if (!file) {
        err << error_record(r.id, "ParseError", "cannot write report").dump() << "\n";
        status = kInput;
        continue;
      }
      file << r.text;
    } else {
      out << r.text;
    }
  }
  return status;
}

int run_scan(const ScanSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    validate_scan_config(spec.config);
  } catch (const Error& e) {
    err << error_record("scan", error_code_name(e.code()), e.what()).dump() << "\n";
    return kInput;
  }
  const ScanReport report = charp_scan(spec.config);
  const std::string text = scan_to_json(report).dump(2) + "\n";
  if (spec.out) {
    std::ofstream file(*spec.out);
    if (!file) {
      err << error_record(spec.out->string(), "ParseError", "cannot write scan report").dump() << "\n";
      return kInput;
    }
    file << text;
  } else {
    out << text;
  }
  return kOk;
}

int run_verify(const fs::path& report, std::ostream& out, std::ostream& err) {
  try {
    const nlohmann::json doc = read_json(report);
    if (!doc.is_object() || !doc.contains("witnesses") || !doc.at("witnesses").is_array()) {
      throw Error(ErrorCode::ParseError, report.string() + " has no witness list");
    }
    std::size_t good = 0;
    const auto& witnesses = doc.at("witnesses");
    for (const auto& w : witnesses) {
      if (verify_witness(w)) ++good;
    }
    nlohmann::ordered_json summary;
    summary["witnesses"] = witnesses.size();
    summary["verified"] = good;
    out << summary.dump() << "\n";
    return good == witnesses.size() ? kOk : kAssertion;
  } catch (const Error& e) {
    err << error_record(report.string(), error_code_name(e.code()), e.what()).dump() << "\n";
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    err << error_record(report.string(), "ParseError", e.what()).dump() << "\n";
    return kInput;
  }
}

}  // namespace picard::tools
