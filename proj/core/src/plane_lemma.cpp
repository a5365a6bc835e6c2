#include "picard/plane_lemma.hpp"

#include <fstream>

#include "picard/errors.hpp"

namespace picard {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::string point_text(const Point& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + p[i].get_str();
  return out + "]";
}

}  // namespace

bool is_ordinary_node(const Polynomial& g, const Point& p) {
  if (evaluate(g, p) != 0) return false;
  std::array<Polynomial, 3> partials = {differentiate(g, 0), differentiate(g, 1), differentiate(g, 2)};
  for (const auto& gi : partials) {
    if (evaluate(gi, p) != 0) return false;
  }
  std::array<std::array<Rational, 3>, 3> h;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) h[i][j] = evaluate(differentiate(partials[i], j), p);
  }
  // the Euler relation forces rank <= 2 at a singular point
  for (int r0 = 0; r0 < 3; ++r0) {
    for (int r1 = r0 + 1; r1 < 3; ++r1) {
      for (int c0 = 0; c0 < 3; ++c0) {
        for (int c1 = c0 + 1; c1 < 3; ++c1) {
          const Rational minor = g.field().normalize(h[r0][c0] * h[r1][c1] - h[r0][c1] * h[r1][c0]);
          if (minor != 0) return true;
        }
      }
    }
  }
  return false;
}

PlaneCurve make_curve(std::string id, Polynomial g, bool nodal, std::vector<Point> nodes) {
  if (g.nvars() != 3 || g.is_zero() || !g.is_homogeneous() || g.degree() < 1) {
    throw InvariantViolation("curve is a form of positive degree in x, y, z", to_string(g));
  }
  for (const auto& p : nodes) {
    if (p.size() != 3) throw InvariantViolation("nodes have three coordinates", point_text(p));
    if (!is_ordinary_node(g, p)) throw InvariantViolation("declared node is an ordinary double point", point_text(p));
  }
  PlaneCurve c;
  c.id = std::move(id);
  c.field = g.field();
  c.g = std::move(g);
  c.nodal = nodal;
  c.nodes = std::move(nodes);
  return c;
}

PlaneCurve load_curve(const nlohmann::json& doc, const std::string& fallback_id) {
  if (!doc.is_object()) parse_fail("curve document must be an object");
  const Field field = doc.contains("field") ? Field::parse(doc.at("field").get<std::string>()) : Field::rationals();
  if (!doc.contains("g") || !doc.at("g").is_string()) parse_fail("missing string field 'g'");
  if (!doc.contains("nodal") || !doc.at("nodal").is_boolean()) parse_fail("missing boolean 'nodal'");
  std::vector<Point> nodes;
  for (const auto& p : doc.value("nodes", nlohmann::json::array())) nodes.push_back(parse_point(p, field, 3));
  const std::string id = doc.contains("id") ? doc.at("id").get<std::string>() : fallback_id;
  return make_curve(id, parse_polynomial(doc.at("g").get<std::string>(), field, 3), doc.at("nodal").get<bool>(),
                    std::move(nodes));
}

PlaneCurve load_curve_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open curve " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return load_curve(doc, path.stem().string());
}

nlohmann::ordered_json curve_to_json(const PlaneCurve& c) {
  nlohmann::ordered_json doc;
  doc["id"] = c.id;
  doc["field"] = c.field.to_string();
  doc["g"] = to_string(c.g);
  doc["nodal"] = c.nodal;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& p : c.nodes) doc["nodes"].push_back(point_to_json(p));
  return doc;
}

SyzygySpace syzygy_space(const PlaneCurve& curve, int l, const EngineOptions& options) {
  if (l < 0) throw Error(ErrorCode::ContractViolation, "syzygy degree must be non-negative");
  LinearIdentity id;
  id.field = curve.field;
  id.nvars = 3;
  id.provenance = "syzygies of degree " + std::to_string(l) + " on " + curve.id;
  const auto forms = form_basis(curve.field, 3, l);
  const char* names[] = {"P1", "P2", "P3"};
  for (int i = 0; i < 3; ++i) id.add_term(id.add_block(names[i], forms), differentiate(curve.g, i));

  SyzygySpace out;
  out.l = l;
  out.kernel = nullspace_basis(coefficient_matrix(id), options);
  for (const auto& v : out.kernel.vectors) {
    const Polynomial r = identity_residual(id, v);
    if (!r.is_zero()) throw InvariantViolation("syzygy basis element", to_string(r));
    const auto parts = decode(id, v);
    out.triples.push_back({parts[0], parts[1], parts[2]});
  }
  return out;
}

bool castelnuovo_check(const PlaneCurve& curve, const EngineOptions& options) {
  if (!curve.nodal) throw Error(ErrorCode::ContractViolation, curve.id + " is not declared nodal");
  for (int l = 0; l <= curve.degree() - 2; ++l) {
    if (syzygy_space(curve, l, options).dim() != 0) return false;
  }
  return true;
}

}  // namespace picard
