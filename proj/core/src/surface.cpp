#include "picard/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "picard/errors.hpp"

namespace picard {

namespace {

const std::vector<std::string> kParameterName = {"t"};

std::string point_text(const Point& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p[i].get_str();
  }
  return out + "]";
}

bool all_zero(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& v) { return v == 0; });
}

Polynomial restrict_to(const Polynomial& form, const CurveComponent& c) {
  return substitute(form, c.parametrization);
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::optional<long> optional_long(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_number_integer()) parse_fail(std::string("field '") + key + "' must be an integer");
  return obj.at(key).get<long>();
}

std::string require_string(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    parse_fail(std::string("missing string field '") + key + "'");
  }
  return obj.at(key).get<std::string>();
}

}  // namespace

Polynomial SurfaceModel::form_partial(int i) const {
  if (i < 1 || i > 4) throw Error(ErrorCode::IndexOutOfRange, "form partial index " + std::to_string(i));
  return differentiate(F, i - 1);
}

Polynomial SurfaceModel::affine_partial(int axis) const {
  if (axis < 1 || axis > 3) throw Error(ErrorCode::IndexOutOfRange, "axis " + std::to_string(axis));
  return differentiate(f, axis - 1);
}

bool SurfaceModel::is_cone() const { return form_partial(4).is_zero(); }

bool SurfaceModel::waived(const std::string& key) const {
  return std::find(waivers.begin(), waivers.end(), key) != waivers.end();
}

void validate_surface(const SurfaceModel& s) {
  if (s.F.nvars() != 4) throw InvariantViolation("F is a form in four variables", to_string(s.F));
  if (s.F.is_zero()) throw InvariantViolation("F is nonzero", "0");
  if (!s.F.is_homogeneous()) throw InvariantViolation("F is homogeneous", to_string(s.F));
  if (s.d < 1 || s.F.degree() != s.d) throw InvariantViolation("d = deg F >= 1", std::to_string(s.d));
  if (!(dehomogenize(s.F) == s.f)) throw InvariantViolation("f = F(x,y,z,1)", to_string(s.f));

  std::array<Polynomial, 5> vanishing = {s.F, s.form_partial(1), s.form_partial(2), s.form_partial(3),
                                         s.form_partial(4)};
  const std::array<const char*, 5> names = {"F", "F_1", "F_2", "F_3", "F_4"};

  for (const auto& g : s.double_curve.generators) {
    if (!(g.field() == s.field) || g.nvars() != 4 || !g.is_homogeneous() || g.is_zero()) {
      throw InvariantViolation("double-curve generators are nonzero forms in four variables", to_string(g));
    }
  }
  for (const auto& point : s.double_curve.samples) {
    if (point.size() != 4 || all_zero(point)) {
      throw InvariantViolation("samples are nonzero points of P^3", point_text(point));
    }
    for (const auto& g : s.double_curve.generators) {
      if (evaluate(g, point) != 0) {
        throw InvariantViolation("sample lies on the double curve (generator " + to_string(g) + ")",
                                 point_text(point));
      }
    }
    for (std::size_t k = 0; k < vanishing.size(); ++k) {
      if (evaluate(vanishing[k], point) != 0) {
        throw InvariantViolation(std::string(names[k]) + " vanishes on the double curve", point_text(point));
      }
    }
  }
  for (const auto& c : s.double_curve.components) {
    if (c.parametrization.size() != 4 || c.degree < 1) {
      throw InvariantViolation("components are parametrized by four polynomials", std::to_string(c.degree));
    }
    std::string param_text = "(";
    for (std::size_t i = 0; i < 4; ++i) {
      if (c.parametrization[i].degree() > c.degree) {
        throw InvariantViolation("parametrization degree bounded by the component degree",
                                 to_string(c.parametrization[i], kParameterName));
      }
      param_text += (i ? "," : "") + to_string(c.parametrization[i], kParameterName);
    }
    param_text += ")";
    for (const auto& g : s.double_curve.generators) {
      if (!restrict_to(g, c).is_zero()) {
        throw InvariantViolation("component lies on the double curve (generator " + to_string(g) + ")",
                                 param_text);
      }
    }
    for (std::size_t k = 0; k < vanishing.size(); ++k) {
      if (!restrict_to(vanishing[k], c).is_zero()) {
        throw InvariantViolation(std::string(names[k]) + " vanishes on the double curve", param_text);
      }
    }
  }
  for (int axis = 1; axis <= 3; ++axis) {
    const PencilData pencil = pencil_data(s, axis);
    for (const auto& point : s.jacobian_samples[static_cast<std::size_t>(axis - 1)]) {
      for (const auto& g : pencil.jacobian_generators) {
        if (point.size() != 3 || evaluate(g, point) != 0) {
          throw InvariantViolation("jacobian sample lies on J_" + std::to_string(axis), point_text(point));
        }
      }
    }
  }
}

SurfaceModel make_surface(std::string id, Polynomial F, DoubleCurve curve, bool ordinary) {
  SurfaceModel s;
  s.id = std::move(id);
  s.field = F.field();
  if (F.nvars() != 4) throw InvariantViolation("F is a form in four variables", to_string(F));
  s.d = F.is_zero() ? 0 : F.degree().value();
  s.f = dehomogenize(F);
  s.F = std::move(F);
  s.double_curve = std::move(curve);
  s.ordinary = ordinary;
  validate_surface(s);
  return s;
}

Point parse_point(const nlohmann::json& value, const Field& field, std::size_t length) {
  if (!value.is_array() || value.size() != length) {
    parse_fail("point must be an array of " + std::to_string(length) + " coordinates");
  }
  Point p;
  for (const auto& c : value) {
    Rational v;
    if (c.is_number_integer()) {
      v = Rational(c.get<long>());
    } else if (c.is_string()) {
      try {
        v = Rational(c.get<std::string>());
        v.canonicalize();
      } catch (const std::exception&) {
        parse_fail("bad coordinate '" + c.get<std::string>() + "'");
      }
      if (v.get_den() == 0) parse_fail("zero denominator in coordinate");
    } else {
      parse_fail("coordinates are integers or rational strings");
    }
    p.push_back(field.normalize(v));
  }
  return p;
}

nlohmann::ordered_json point_to_json(const Point& p) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : p) arr.push_back(v.get_str());
  return arr;
}

SurfaceModel load_surface(const nlohmann::json& doc, const std::string& fallback_id) {
  if (!doc.is_object()) parse_fail("fixture must be an object");
  const Field field = doc.contains("field") ? Field::parse(require_string(doc, "field")) : Field::rationals();
  const std::string id = doc.contains("id") ? require_string(doc, "id") : fallback_id;

  Polynomial F = parse_polynomial(require_string(doc, "F"), field, 4);
  if (!F.is_homogeneous() || F.is_zero()) throw InvariantViolation("F is a nonzero form", to_string(F));

  DoubleCurve curve;
  if (doc.contains("double_curve")) {
    const auto& dc = doc.at("double_curve");
    if (!dc.is_object()) parse_fail("double_curve must be an object");
    for (const auto& g : dc.value("generators", nlohmann::json::array())) {
      if (!g.is_string()) parse_fail("generators are polynomial strings");
      curve.generators.push_back(parse_polynomial(g.get<std::string>(), field, 4));
    }
    for (const auto& pt : dc.value("samples", nlohmann::json::array())) {
      curve.samples.push_back(parse_point(pt, field, 4));
    }
    for (const auto& comp : dc.value("components", nlohmann::json::array())) {
      if (!comp.is_object() || !comp.contains("param") || !comp.at("param").is_array() ||
          comp.at("param").size() != 4) {
        parse_fail("components carry a 'param' array of four polynomial strings in t");
      }
      CurveComponent c;
      for (const auto& text : comp.at("param")) {
        if (!text.is_string()) parse_fail("parametrization entries are strings");
        c.parametrization.push_back(parse_polynomial(text.get<std::string>(), field, kParameterName));
      }
      c.degree = comp.value("degree", 1);
      curve.components.push_back(std::move(c));
    }
  }

  SurfaceModel s;
  s.id = id;
  s.field = field;
  s.d = F.degree().value();
  s.f = dehomogenize(F);
  s.F = std::move(F);
  s.double_curve = std::move(curve);
  if (!doc.contains("ordinary") || !doc.at("ordinary").is_boolean()) parse_fail("missing boolean 'ordinary'");
  s.ordinary = doc.at("ordinary").get<bool>();
  s.generic_coordinates = doc.value("generic_coordinates", false);
  s.triple_points = optional_long(doc, "triple_points");
  if (doc.contains("expected")) {
    const auto& e = doc.at("expected");
    s.expected = ExpectedValues{optional_long(e, "q_an"), optional_long(e, "p_g"), optional_long(e, "delta"),
                                optional_long(e, "q_a"),  optional_long(e, "e"),   optional_long(e, "g")};
  }
  for (const auto& w : doc.value("waivers", nlohmann::json::array())) s.waivers.push_back(w.get<std::string>());
  if (doc.contains("jacobian_samples")) {
    for (const auto& [key, points] : doc.at("jacobian_samples").items()) {
      const int axis = std::stoi(key);
      if (axis < 1 || axis > 3) parse_fail("jacobian_samples keys are axes 1..3");
      for (const auto& pt : points) {
        s.jacobian_samples[static_cast<std::size_t>(axis - 1)].push_back(parse_point(pt, field, 3));
      }
    }
  }
  validate_surface(s);

  if (doc.contains("random_coordinates")) {
    const auto seed = doc.at("random_coordinates").get<std::uint64_t>();
    s = transform_surface(s, CoordinateChange::sample(seed, field));
  }
  return s;
}

SurfaceModel load_surface_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open fixture " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return load_surface(doc, path.stem().string());
}

nlohmann::ordered_json surface_to_json(const SurfaceModel& s) {
  nlohmann::ordered_json doc;
  doc["id"] = s.id;
  doc["field"] = s.field.to_string();
  doc["F"] = to_string(s.F);
  nlohmann::ordered_json dc;
  dc["generators"] = nlohmann::ordered_json::array();
  for (const auto& g : s.double_curve.generators) dc["generators"].push_back(to_string(g));
  dc["samples"] = nlohmann::ordered_json::array();
  for (const auto& p : s.double_curve.samples) dc["samples"].push_back(point_to_json(p));
  dc["components"] = nlohmann::ordered_json::array();
  for (const auto& c : s.double_curve.components) {
    nlohmann::ordered_json comp;
    comp["param"] = nlohmann::ordered_json::array();
    for (const auto& p : c.parametrization) comp["param"].push_back(to_string(p, kParameterName));
    comp["degree"] = c.degree;
    dc["components"].push_back(std::move(comp));
  }
  doc["double_curve"] = std::move(dc);
  doc["ordinary"] = s.ordinary;
  doc["generic_coordinates"] = s.generic_coordinates;
  if (s.triple_points) doc["triple_points"] = *s.triple_points;
  nlohmann::ordered_json expected = nlohmann::ordered_json::object();
  const std::array<std::pair<const char*, const std::optional<long>*>, 6> keys = {{
      {"q_an", &s.expected.q_an}, {"p_g", &s.expected.p_g}, {"delta", &s.expected.delta},
      {"q_a", &s.expected.q_a},   {"e", &s.expected.e},     {"g", &s.expected.g},
  }};
  for (const auto& [key, value] : keys) {
    if (*value) expected[key] = **value;
  }
  if (!expected.empty()) doc["expected"] = std::move(expected);
  if (!s.waivers.empty()) doc["waivers"] = s.waivers;
  nlohmann::ordered_json jac = nlohmann::ordered_json::object();
  for (std::size_t a = 0; a < 3; ++a) {
    if (s.jacobian_samples[a].empty()) continue;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : s.jacobian_samples[a]) arr.push_back(point_to_json(p));
    jac[std::to_string(a + 1)] = std::move(arr);
  }
  if (!jac.empty()) doc["jacobian_samples"] = std::move(jac);
  return doc;
}

SurfaceModel transform_surface(const SurfaceModel& s, const CoordinateChange& change) {
  SurfaceModel out = s;
  const Field& field = s.field;
  out.F = change.apply(s.F);
  out.f = dehomogenize(out.F);
  for (auto& g : out.double_curve.generators) g = change.apply(g);
  for (auto& p : out.double_curve.samples) p = change.map_point(p, field);
  for (auto& c : out.double_curve.components) {
    std::vector<Polynomial> moved;
    for (std::size_t i = 0; i < 4; ++i) {
      Polynomial acc(field, 1);
      for (std::size_t j = 0; j < 4; ++j) acc += c.parametrization[j] * change.inverse[i][j];
      moved.push_back(std::move(acc));
    }
    c.parametrization = std::move(moved);
  }
  for (auto& axis_points : out.jacobian_samples) {
    std::vector<Point> moved;
    for (const auto& p : axis_points) {
      Point hom = {p[0], p[1], p[2], Rational(1)};
      Point q = change.map_point(hom, field);
      if (q[3] == 0) continue;  // went to infinity
      const Rational inv = field.inverse(q[3]);
      moved.push_back({field.normalize(q[0] * inv), field.normalize(q[1] * inv), field.normalize(q[2] * inv)});
    }
    axis_points = std::move(moved);
  }
  if (change.seed != 0) out.generic_coordinates = chart_is_generic(out);
  validate_surface(out);
  return out;
}

std::size_t essential_variables(const SurfaceModel& s) {
  const auto monos = monomials_of_degree(4, s.d - 1);
  std::vector<std::vector<Rational>> rows;
  for (int i = 1; i <= 4; ++i) {
    const Polynomial partial = s.form_partial(i);
    std::vector<Rational> row(monos.size(), 0);
    for (const auto& t : partial.terms()) {
      row[static_cast<std::size_t>(std::find(monos.begin(), monos.end(), t.monomial) - monos.begin())] =
          t.coefficient;
    }
    rows.push_back(std::move(row));
  }
  return rank(CoeffMatrix::from_dense(s.field, rows, "partials of " + s.id));
}

bool good_reduction(const SurfaceModel& s, const Field& target) {
  if (!target.is_prime()) return true;
  if (target.vanishes(s.d)) return false;
  try {
    return essential_variables(reduce_surface(s, target)) == essential_variables(s);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DivisionByCharacteristic || e.code() == ErrorCode::InvariantViolation) return false;
    throw;
  }
}

SurfaceModel reduce_surface(const SurfaceModel& s, const Field& target) {
  if (s.field == target) return s;
  if (s.field.is_prime()) {
    throw Error(ErrorCode::ContractViolation, "cannot change a prime-field model to " + target.to_string());
  }
  SurfaceModel out = s;
  out.field = target;
  out.F = s.F.in_field(target);
  if (out.F.degree() != s.d) {
    throw Error(ErrorCode::DivisionByCharacteristic, "F drops degree modulo " + target.to_string());
  }
  out.f = dehomogenize(out.F);
  for (auto& g : out.double_curve.generators) g = g.in_field(target);
  std::vector<Point> samples;
  for (const auto& p : s.double_curve.samples) {
    Point q;
    for (const auto& v : p) q.push_back(target.normalize(v));
    if (!all_zero(q)) samples.push_back(std::move(q));
  }
  out.double_curve.samples = std::move(samples);
  for (auto& c : out.double_curve.components) {
    for (auto& p : c.parametrization) p = p.in_field(target);
  }
  for (auto& axis_points : out.jacobian_samples) {
    for (auto& p : axis_points) {
      for (auto& v : p) v = target.normalize(v);
    }
  }
  validate_surface(out);
  return out;
}

PencilData pencil_data(const SurfaceModel& s, int axis) {
  if (axis < 1 || axis > 3) throw Error(ErrorCode::IndexOutOfRange, "axis " + std::to_string(axis));
  const int next = axis % 3 + 1;
  const int last = next % 3 + 1;
  return PencilData{axis, {s.f, s.affine_partial(next), s.affine_partial(last)}, s.form_partial(axis)};
}

long truncated_quotient_dimension(std::span<const Polynomial> generators, int bound, const EngineOptions& options) {
  if (generators.empty()) throw Error(ErrorCode::ContractViolation, "no generators");
  const Field& field = generators.front().field();
  const int nvars = generators.front().nvars();
  const auto columns = monomials_up_to(nvars, bound);
  std::map<Monomial, std::size_t, GrevlexDescending> column_of;
  for (std::size_t i = 0; i < columns.size(); ++i) column_of.emplace(columns[i], i);

  CoeffMatrix m;
  m.field = field;
  m.ncols = columns.size();
  m.provenance = "truncated ideal span, degree <= " + std::to_string(bound);
  for (const auto& g : generators) {
    if (g.is_zero() || g.degree() > bound) continue;
    for (const auto& mono : monomials_up_to(nvars, bound - g.degree().value())) {
      SparseRow row;
      for (const auto& t : g.terms()) {
        row.push_back(SparseEntry{column_of.at(t.monomial * mono), t.coefficient});
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
      m.rows.push_back(std::move(row));
    }
  }
  return static_cast<long>(columns.size()) - static_cast<long>(rank(m, options));
}

long jacobian_count(const SurfaceModel& s, int axis, const EngineOptions& options) {
  if (!s.double_curve.empty()) {
    throw Error(ErrorCode::UnsupportedDoubleCurve,
                "jacobian counts are computed for surfaces without a double curve");
  }
  const PencilData pencil = pencil_data(s, axis);
  const int base = std::max(3 * (s.d - 1) - 2, 0);
  for (int bound : {base, std::max(2 * base, base + 1)}) {
    const long at = truncated_quotient_dimension(pencil.jacobian_generators, bound, options);
    const long next = truncated_quotient_dimension(pencil.jacobian_generators, bound + 1, options);
    if (at == next) return at;
  }
  throw Error(ErrorCode::NotZeroDimensional, "quotient dimension of J_" + std::to_string(axis) + " on " + s.id +
                                                 " did not stabilize");
}

namespace {

std::optional<long> curve_singular_length(const Polynomial& g, const EngineOptions& options) {
  if (g.is_zero()) return std::nullopt;
  const Field& field = g.field();
  const int d = g.degree().value();
  const Polynomial u = Polynomial::variable(field, 2, 0), v = Polynomial::variable(field, 2, 1);
  const Polynomial one = Polynomial::constant(field, 2, 1);
  std::vector<Polynomial> partials = {g};
  for (int i = 0; i < 3; ++i) partials.push_back(differentiate(g, i));

  // affine charts x + a y + b z = 1; one of them sees every singular point
  long best = 0;
  for (const auto& [a, b] : {std::pair{2, 3}, std::pair{-5, 7}, std::pair{11, -4}}) {
    const std::array<Polynomial, 3> images = {one - u * Rational(a) - v * Rational(b), u, v};
    std::vector<Polynomial> gens;
    for (const auto& p : partials) gens.push_back(substitute(p, images));
    std::optional<long> length;
    for (int bound = std::max(2 * (d - 1), 1); bound <= 4 * d + 4 && !length; ++bound) {
      const long at = truncated_quotient_dimension(gens, bound, options);
      if (at == truncated_quotient_dimension(gens, bound + 1, options)) length = at;
    }
    if (!length) return std::nullopt;
    best = std::max(best, *length);
  }
  return best;
}

Polynomial section_at_infinity(const Polynomial& F) {
  const Field& field = F.field();
  const std::array<Polynomial, 4> images = {Polynomial::variable(field, 3, 0), Polynomial::variable(field, 3, 1),
                                            Polynomial::variable(field, 3, 2), Polynomial(field, 3)};
  return substitute(F, images);
}

}  // namespace

std::optional<long> section_singular_length(const SurfaceModel& s, const EngineOptions& options) {
  return curve_singular_length(section_at_infinity(s.F), options);
}

bool chart_is_generic(const SurfaceModel& s, const EngineOptions& options) {
  const auto here = section_singular_length(s, options);
  if (!here) return false;
  // the generic value is the smallest one
  std::optional<long> reference;
  for (std::uint64_t seed : {1, 2}) {
    const auto length =
        curve_singular_length(section_at_infinity(CoordinateChange::sample(seed, s.field).apply(s.F)), options);
    if (length && (!reference || *length < *reference)) reference = length;
  }
  return reference && *here == *reference;
}

long zeuthen_segre_formula(long e, long g, long d) { return e + 4 * (g - 1) + d; }

}  // namespace picard
