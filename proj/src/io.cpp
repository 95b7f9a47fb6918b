#include "gkm/io.hpp"

#include <map>
#include <set>

#include "json.hpp"

namespace gkm {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::set<std::string>& required,
                  const char* what) {
  if (!obj.is_object()) throw Error(ErrorCode::Parse, std::string(what) + ": expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw Error(ErrorCode::Parse, std::string(what) + ": unknown field '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key)) throw Error(ErrorCode::Parse, std::string(what) + ": missing field '" + key + "'");
}

IntVector int_vector(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, std::string(what) + ": expected an integer array");
  IntVector out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(ErrorCode::Parse, std::string(what) + ": expected an integer array");
    out.push_back(x.get<long long>());
  }
  return out;
}

AffineExpr affine_value(const json& j, const char* what) {
  if (j.is_number_integer()) return AffineExpr(j.get<long long>());
  if (j.is_string()) return AffineExpr::parse(j.get<std::string>());
  throw Error(ErrorCode::Parse, std::string(what) + ": expected an integer or an affine string");
}

}  // namespace

GkmGraph parse_graph(std::string_view text) {
  json j = parse_json(text, "graph");
  require_keys(j, {"torus_rank", "half_dim", "vertices", "orientation_signs", "edges"},
               {"torus_rank", "half_dim", "vertices", "edges"}, "graph");
  try {
    if (!j["torus_rank"].is_number_integer() || j["torus_rank"].get<long long>() < 1)
      throw Error(ErrorCode::Parse, "graph: torus_rank must be a positive integer");
    if (!j["half_dim"].is_number_integer() || j["half_dim"].get<long long>() < 0)
      throw Error(ErrorCode::Parse, "graph: half_dim must be a nonnegative integer");
    GkmGraph g(j["torus_rank"].get<std::size_t>(), j["half_dim"].get<int>());
    if (!j["vertices"].is_array()) throw Error(ErrorCode::Parse, "graph: vertices must be an array");
    for (const auto& v : j["vertices"]) {
      if (!v.is_string()) throw Error(ErrorCode::Parse, "graph: vertex ids must be strings");
      g.add_vertex(v.get<std::string>());
    }
    if (j.contains("orientation_signs")) {
      const json& signs = j["orientation_signs"];
      if (!signs.is_object()) throw Error(ErrorCode::Parse, "graph: orientation_signs must be an object");
      for (const auto& [id, s] : signs.items()) {
        auto v = g.find_vertex(id);
        if (!v) throw Error(ErrorCode::Parse, "graph: orientation sign for unknown vertex '" + id + "'");
        if (!s.is_number_integer()) throw Error(ErrorCode::Parse, "graph: orientation signs must be +1 or -1");
        g.set_orientation_sign(*v, s.get<int>());
      }
    }
    if (!j["edges"].is_array()) throw Error(ErrorCode::Parse, "graph: edges must be an array");
    for (const auto& e : j["edges"]) {
      require_keys(e, {"u", "v", "alpha_at_u"}, {"u", "v", "alpha_at_u"}, "graph edge");
      if (!e["u"].is_string() || !e["v"].is_string()) throw Error(ErrorCode::Parse, "graph edge: endpoints must be strings");
      g.add_edge(e["u"].get<std::string>(), e["v"].get<std::string>(), int_vector(e["alpha_at_u"], "graph edge label"));
    }
    return g;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, std::string("graph: ") + e.what());
  }
}

std::string serialize_graph(const GkmGraph& graph) {
  GkmGraph g = graph.canonical();
  json j;
  j["torus_rank"] = g.torus_rank();
  j["half_dim"] = g.half_dim();
  j["vertices"] = g.vertex_ids();
  json signs = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) signs[g.vertex_id(v)] = g.orientation_sign(v);
  j["orientation_signs"] = signs;
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"u", g.vertex_id(e.u)}, {"v", g.vertex_id(e.v)}, {"alpha_at_u", e.alpha_at_u}});
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

EquivariantClass parse_class(const GkmGraph& g, std::string_view text) {
  json j = parse_json(text, "class");
  require_keys(j, {"degree", "values"}, {"degree", "values"}, "class");
  if (!j["degree"].is_number_integer()) throw Error(ErrorCode::Parse, "class: degree must be an integer");
  long long degree = j["degree"].get<long long>();
  if (degree < 0 || degree % 2 != 0) throw Error(ErrorCode::Parse, "class: degree must be even and nonnegative");
  const json& values = j["values"];
  if (!values.is_object()) throw Error(ErrorCode::Parse, "class: values must be an object");

  const std::size_t d = g.torus_rank();
  EquivariantClass c{static_cast<int>(degree), std::vector<Polynomial>(g.vertex_count(), Polynomial(d))};
  std::vector<bool> seen(g.vertex_count(), false);
  for (const auto& [id, terms] : values.items()) {
    auto v = g.find_vertex(id);
    if (!v) throw Error(ErrorCode::Parse, "class: unknown vertex '" + id + "'");
    if (!terms.is_array()) throw Error(ErrorCode::Parse, "class: value of '" + id + "' must be a term list");
    seen[*v] = true;
    for (const auto& t : terms) {
      require_keys(t, {"c", "exp"}, {"c", "exp"}, "class term");
      Rational coeff;
      if (t["c"].is_string()) {
        try {
          coeff = parse_rational(t["c"].get<std::string>());
        } catch (const Error& e) {
          throw Error(ErrorCode::Parse, std::string("class term: ") + e.what());
        }
      } else if (t["c"].is_number_integer()) {
        coeff = Rational(t["c"].get<long>());
      } else {
        throw Error(ErrorCode::Parse, "class term: c must be a \"p/q\" string");
      }
      IntVector e = int_vector(t["exp"], "class term exponent");
      if (e.size() != d) throw Error(ErrorCode::Parse, "class term: exponent length must equal the torus rank");
      Exponent ex;
      long long total = 0;
      for (long long x : e) {
        if (x < 0) throw Error(ErrorCode::Parse, "class term: negative exponent");
        ex.push_back(static_cast<int>(x));
        total += x;
      }
      if (total != degree / 2) throw Error(ErrorCode::Parse, "class term: monomial degree does not match the class degree");
      c.values[*v].add_term(ex, coeff);
    }
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (!seen[v]) throw Error(ErrorCode::Parse, "class: missing value at vertex '" + g.vertex_id(v) + "'");
  return c;
}

std::string serialize_class(const GkmGraph& g, const EquivariantClass& c) {
  json values = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    json terms = json::array();
    for (const auto& [ex, coeff] : c.values.at(v).terms()) terms.push_back({{"c", to_string(coeff)}, {"exp", ex}});
    values[g.vertex_id(v)] = terms;
  }
  json j;
  j["degree"] = c.degree;
  j["values"] = values;
  return j.dump(2) + "\n";
}

ChaseProblem parse_problem(std::string_view text) {
  json j = parse_json(text, "problem");
  require_keys(j, {"totals", "cutoffs", "steps", "pins"}, {"totals"}, "problem");
  ChaseProblem p;
  if (!j["totals"].is_array()) throw Error(ErrorCode::Parse, "problem: totals must be an array");
  for (const auto& t : j["totals"]) {
    if (t.is_string() && t.get<std::string>() == "?") p.totals.emplace_back(std::nullopt);
    else p.totals.emplace_back(affine_value(t, "problem total"));
  }
  int steps = 3;
  if (j.contains("steps")) {
    if (!j["steps"].is_number_integer() || j["steps"].get<long long>() < 1)
      throw Error(ErrorCode::Parse, "problem: steps must be a positive integer");
    steps = j["steps"].get<int>();
  }
  if (j.contains("cutoffs")) {
    IntVector cs = int_vector(j["cutoffs"], "problem cutoffs");
    for (long long c : cs) p.cutoffs.push_back(static_cast<int>(c));
    if (j.contains("steps") && static_cast<int>(p.cutoffs.size()) != steps)
      throw Error(ErrorCode::Parse, "problem: steps and cutoffs disagree");
  } else {
    p.cutoffs = ChaseProblem::default_cutoffs(p.totals.size(), steps);
  }
  if (j.contains("pins")) {
    if (!j["pins"].is_object()) throw Error(ErrorCode::Parse, "problem: pins must be an object");
    for (const auto& [key, value] : j["pins"].items()) p.pins[key] = affine_value(value, "problem pin");
  }
  return p;
}

std::vector<IntVector> parse_weights(std::string_view text) {
  json j = parse_json(text, "weights");
  if (!j.is_array()) throw Error(ErrorCode::Parse, "weights: expected an array of integer arrays");
  std::vector<IntVector> out;
  for (const auto& w : j) out.push_back(int_vector(w, "weights"));
  return out;
}

}  // namespace gkm
