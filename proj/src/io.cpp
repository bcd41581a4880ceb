#include "hypiso/io.hpp"

#include <cmath>
#include <cstdio>

#include "hypiso/errors.hpp"

namespace hypiso::io {

namespace {

void write_string(std::string& out, const std::string& s) {
  // Reuse the library's escaping for strings.
  out += nlohmann::json(s).dump();
}

void write(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); break;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case Json::value_t::string: write_string(out, j.get<std::string>()); break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        write(out, e);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        write_string(out, k);
        out += ':';
        write(out, v);
      }
      out += '}';
      break;
    }
    default: throw Error(ErrorKind::ParseError, "unsupported JSON value");
  }
}

Json optional_matrix(const std::optional<Matrix>& m) { return m ? matrix_doc(*m) : Json(nullptr); }

Json witness_list(const std::vector<ReverserWitness>& ws) {
  Json arr = Json::array();
  for (const auto& w : ws)
    arr.push_back({{"det", w.det}, {"sheet_preserving", w.sheet_preserving}, {"reverser", matrix_doc(w.reverser)}});
  return arr;
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(out, j);
  return out;
}

Json matrix_doc(const Matrix& m) {
  Json entries = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) entries.push_back(m(i, j));
  return {{"n", static_cast<int>(m.rows()) - 1}, {"matrix", entries}};
}

Matrix parse_matrix_doc(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("matrix"))
    throw Error(ErrorKind::ParseError, "matrix document needs fields \"n\" and \"matrix\"");
  if (!j["n"].is_number_integer()) throw Error(ErrorKind::ParseError, "\"n\" must be an integer");
  const long n = j["n"].get<long>();
  if (n < 0 || n > 4096) throw Error(ErrorKind::ParseError, "\"n\" out of range");
  const Json& a = j["matrix"];
  const long d = n + 1;
  if (!a.is_array() || static_cast<long>(a.size()) != d * d)
    throw Error(ErrorKind::ParseError, "\"matrix\" must hold (n+1)^2 numbers");
  Matrix m(d, d);
  for (long i = 0; i < d * d; ++i) {
    if (!a[i].is_number()) throw Error(ErrorKind::ParseError, "matrix entries must be numbers");
    m(i / d, i % d) = a[i].get<double>();
  }
  return m;
}

std::vector<Matrix> read_matrix_stream(std::istream& in) {
  std::vector<Matrix> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": invalid JSON");
    }
    out.push_back(parse_matrix_doc(j));
  }
  return out;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json to_json(const RotationAngles& a) {
  Json arr = Json::array();
  for (double t : a.angles) arr.push_back(t);
  return arr;
}

Json to_json(const FixedPointData& d) {
  return std::visit(
      [](const auto& v) -> Json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, FixedPointData::HyperbolicPair>)
          return {{"type", "boundary_pair"}, {"points", Json::array({to_json(v.first), to_json(v.second)})}};
        else if constexpr (std::is_same_v<V, FixedPointData::ParabolicPoint>)
          return {{"type", "boundary_point"}, {"ray", to_json(v.ray)}};
        else if constexpr (std::is_same_v<V, FixedPointData::EllipticSphere>)
          return {{"type", "fixed_sphere"}, {"sphere_dim", v.sphere_dim}, {"frame", to_json(v.frame)}};
        else
          return {{"type", "fixed_point"}, {"point", to_json(v.point)}};
      },
      d.value);
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["class"] = std::string(to_string(r.cls));
  j["k"] = r.k();
  j["angles"] = to_json(r.angles);
  j["regular"] = r.regular;
  j["stretch"] = r.stretch ? Json(*r.stretch) : Json(nullptr);
  j["fixed_data"] = to_json(r.fixed_data);
  if (r.angles.reflection) j["reflection"] = true;
  return j;
}

Json to_json(const InvariantTuple& t) {
  Json j;
  j["class"] = std::string(to_string(t.cls));
  j["k"] = t.k;
  j["angles"] = to_json(t.angles);
  j["stretch"] = t.stretch ? Json(*t.stretch) : Json(nullptr);
  j["reflection"] = t.angles.reflection;
  return j;
}

Json to_json(const RealityCertificate& c) {
  return {{"group", std::string(to_string(c.group))},
          {"decision", c.decision},
          {"clause", c.clause},
          {"reverser", optional_matrix(c.reverser)},
          {"involution", c.involution}};
}

Json to_json(const OracleReport& r) {
  Json a = {{"applicable", r.exhaustive.applicable},
            {"candidates", r.exhaustive.candidates},
            {"achievable", witness_list(r.exhaustive.achievable)}};
  if (!r.exhaustive.reason.empty()) a["reason"] = r.exhaustive.reason;
  Json b = {{"samples", r.randomized.samples},
            {"converged", r.randomized.converged},
            {"solution_dim", r.randomized.solution_dim},
            {"found", witness_list(r.randomized.found)}};
  return {{"group", std::string(to_string(r.group))},
          {"exhaustive", a},
          {"randomized", b},
          {"found_in_group", r.found_in_group}};
}

Json to_json(const ConjugacyAnswer& a) {
  return {{"related", std::string(to_string(a.related))},
          {"conjugator", optional_matrix(a.conjugator)},
          {"method", a.method}};
}

Json to_json(const PlaneDecomposition& d) {
  Json planes = Json::array();
  for (const auto& p : d.planes) planes.push_back({{"angle", p.angle}, {"frame", to_json(p.frame)}});
  return {{"planes", planes},
          {"fixed", to_json(d.fixed_subspace)},
          {"reflection_axis", d.reflection_axis ? to_json(*d.reflection_axis) : Json(nullptr)}};
}

Json to_json(const OrthogonalSplitting& s) {
  Json planes = Json::array();
  for (const auto& p : s.planes) planes.push_back({{"angle", p.angle}, {"frame", to_json(p.frame)}});
  return {{"planes", planes},
          {"fixed", to_json(s.fixed)},
          {"reflection_axis", s.minus_axis.cols() > 0 ? to_json(Vector(s.minus_axis.col(0))) : Json(nullptr)}};
}

Json to_json(const FibrationDescriptor& d) {
  Json base = {{"tag", std::string(to_string(d.base.tag))}, {"params", d.base.params}, {"dimension", d.base.dimension}};
  Json fiber = {{"tag", std::string(to_string(d.fiber.tag))},
                {"params", d.fiber.params},
                {"dimension", d.fiber.dimension}};
  if (d.has_pi) fiber["has_pi"] = true;
  return {{"base", base},
          {"fiber", fiber},
          {"sheet_count", d.sheet_count ? Json(*d.sheet_count) : Json(nullptr)},
          {"total_dimension", d.total_dimension}};
}

}  // namespace hypiso::io
