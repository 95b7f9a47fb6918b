#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gkm/betti_chase.hpp"
#include "gkm/classifier.hpp"
#include "gkm/cross_models.hpp"
#include "gkm/io.hpp"
#include "gkm/localization.hpp"

namespace gkmtool {

namespace {

using namespace gkm;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  std::string read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw UsageError("standard input can be read only once");
      stdin_used_ = true;
      std::ostringstream ss;
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string vector_text(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

int cmd_catalog(const std::string& family_name, int n, std::size_t rank, const std::string& weights_path,
                Inputs& inputs, std::ostream& out) {
  auto family = parse_family(family_name);
  if (!family) throw UsageError("unknown family '" + family_name + "' (sphere, cpn, hpn)");
  if (n < 1) throw UsageError("--n must be positive");
  std::vector<IntVector> weights = weights_path.empty() ? generic_weights(*family, n, rank)
                                                        : parse_weights(inputs.read(weights_path));
  std::size_t expected = *family == Family::Sphere ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) + 1;
  if (weights.size() != expected)
    throw Error(ErrorCode::Parse, "expected " + std::to_string(expected) + " weights, got " + std::to_string(weights.size()));
  for (const auto& w : weights)
    if (w.size() != rank) throw Error(ErrorCode::Parse, "weight " + vector_text(w) + " does not have length --rank");
  GkmGraph g = *family == Family::Sphere             ? sphere_graph(weights)
               : *family == Family::ComplexProjective ? cpn_graph(weights)
                                                      : hpn_graph(weights);
  out << serialize_graph(g);
  return 0;
}

int cmd_validate(const GkmGraph& g, int k, std::ostream& out) {
  auto violations = validate(g);
  for (const auto& v : violations) out << "violation: " << v.detail << "\n";
  int code = violations.empty() ? 0 : 2;
  if (violations.empty()) out << "valid: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  if (k > 0) {
    GkmKResult r = check_gkm_k(g, k);
    if (r.pass) {
      out << "GKM_" << k << ": pass\n";
    } else {
      std::vector<std::string> labels;
      for (std::size_t e : r.witness->edges) labels.push_back(vector_text(g.label_at(e, r.witness->vertex)));
      out << "GKM_" << k << ": fail at " << g.vertex_id(r.witness->vertex) << " with dependent labels "
          << join(labels, " ") << "\n";
      code = 2;
    }
  }
  return code;
}

int cmd_betti(const GkmGraph& g, std::ostream& out) {
  BettiReport r = betti_report(g);
  std::vector<std::string> dims, betti;
  for (auto x : r.equivariant_dims) dims.push_back(std::to_string(x));
  for (auto x : r.betti) betti.push_back(std::to_string(x));
  out << "equivariant dims: " << join(dims, " ") << "\n";
  out << "betti: " << join(betti, " ") << "\n";
  out << "euler characteristic: " << euler_characteristic(g) << "\n";
  return 0;
}

int cmd_skeleton(const GkmGraph& g, int dim, std::ostream& out) {
  if (dim != 2) throw UsageError("only --dim 2 is supported");
  auto pieces = two_skeleton_components(g);
  std::size_t total = 0;
  for (const auto& piece : pieces) {
    std::vector<std::string> basis;
    for (const auto& b : piece.lattice) basis.push_back(vector_text(b));
    out << "lattice " << join(basis, " ") << "\n";
    for (const auto& c : piece.components) {
      std::vector<std::string> ids;
      for (std::size_t v : c.vertices) ids.push_back(g.vertex_id(v));
      out << "  component {" << join(ids, ", ") << "}: " << c.vertices.size() << " vertices, " << c.edges.size()
          << " edges\n";
      ++total;
    }
  }
  out << "components: " << total << "\n";
  return 0;
}

int cmd_integrate(const GkmGraph& g, const EquivariantClass& c, std::ostream& out) {
  out << integrate(g, c).to_string() << "\n";
  return 0;
}

int cmd_coords(const GkmGraph& g, const EquivariantClass& c, long long p, std::ostream& out) {
  if (p != 0 && !is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  ModuleCoordinates mc = module_coordinates(g, c);
  for (std::size_t i = 0; i < mc.coefficients.size(); ++i)
    out << "c" << i << " = " << mc.coefficients[i].to_string() << "\n";
  if (p != 0) {
    auto div = modp_divisibility(mc, p);
    for (std::size_t i = 0; i < div.size(); ++i)
      out << "c" << i << " mod " << p << ": " << (div[i] ? "divisible" : "not divisible") << "\n";
  }
  return 0;
}

void print_chase(const ChaseResult& r, std::ostream& out) {
  for (const auto& s : r.steps) {
    std::vector<std::string> b, rho;
    for (const auto& e : s.quotient) b.push_back(e.to_string());
    for (std::size_t i = 2; i < s.ranks.size(); ++i) rho.push_back("rho" + std::to_string(i) + " = " + s.ranks[i].to_string());
    out << "step " << s.step << " (cutoff " << s.cutoff << ")\n";
    out << "  B: " << join(b, ", ") << "\n";
    if (!rho.empty()) out << "  ranks: " << join(rho, ", ") << "\n";
  }
  for (const auto& [name, v] : r.parameter_relations)
    out << "relation: " << Relation{Relation::Op::Equal, AffineExpr::parameter(name) - v}.to_string() << "\n";
  for (const auto& e : r.residual_equalities) out << "relation: " << Relation{Relation::Op::Equal, e}.to_string() << "\n";
  for (const auto& e : r.conditions) out << "condition: " << Relation{Relation::Op::GreaterEqual, e}.to_string() << "\n";
  out << "fresh unknowns: " << (r.fresh_unknowns.empty() ? "none" : join(r.fresh_unknowns, ", ")) << "\n";
  out << "unique: " << (r.unique ? "yes" : "no") << "\n";
}

int cmd_chase(const ChaseProblem& p, const std::vector<std::string>& queries, std::ostream& out) {
  std::vector<Relation> relations;
  for (const auto& q : queries) relations.push_back(Relation::parse(q));
  ChaseResult r;
  try {
    r = chase_tower(p);
  } catch (const InconsistentChase& e) {
    print_chase(e.partial(), out);
    out << "INCONSISTENT at step " << e.step() << ": " << e.relation() << "\n";
    return 2;
  }
  print_chase(r, out);
  for (const auto& rel : relations) out << (entails(r, rel) ? "ENTAILED: " : "NOT ENTAILED: ") << rel.to_string() << "\n";
  return 0;
}

int cmd_classify(const GkmGraph& g, std::ostream& out) {
  auto verdicts = classify(g);
  int code = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    out << "component " << i + 1 << ": " << component_type_name(v.type) << " (" << v.vertex_count << " vertices, "
        << v.edge_count << " edges)\n";
    if (v.triangle) out << "  triangle: " << (*v.triangle)[0] << ", " << (*v.triangle)[1] << ", " << (*v.triangle)[2] << "\n";
    if (v.type == ComponentType::CPType) {
      for (std::size_t j = 0; j < v.weights.size(); ++j)
        out << "  a[" << v.vertex_ids[j] << "] = " << vector_text(v.weights[j]) << "\n";
    }
    if (v.type == ComponentType::Unrecognized) {
      out << "  failed check: " << v.reason << "\n";
      code = 2;
    }
  }
  out << "euler characteristic: " << euler_characteristic(g) << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact GKM graph toolkit"};
  app.name("gkmtool");
  app.require_subcommand(1);

  std::string family, weights_path, graph_path, class_path, problem_path;
  int n = 0, gkm_k = 0, dim = 0;
  std::size_t rank = 0;
  long long mod_p = 0;
  std::vector<std::string> entail_queries;

  auto* catalog = app.add_subcommand("catalog", "Emit a model graph");
  catalog->add_option("--family", family, "sphere, cpn or hpn")->required();
  catalog->add_option("--n", n, "Model parameter n")->required();
  catalog->add_option("--rank", rank, "Torus rank")->required()->check(CLI::PositiveNumber);
  catalog->add_option("--weights", weights_path, "JSON array of integer weight vectors");

  auto* validate_cmd = app.add_subcommand("validate", "Check graph validity and GKM_k");
  validate_cmd->add_option("graph", graph_path)->required();
  validate_cmd->add_option("--gkm", gkm_k, "Check GKM_k")->check(CLI::Range(2, 1000));

  auto* betti = app.add_subcommand("betti", "Equivariant dimensions and Betti numbers");
  betti->add_option("graph", graph_path)->required();

  auto* skeleton = app.add_subcommand("skeleton", "Two-skeleton components");
  skeleton->add_option("graph", graph_path)->required();
  skeleton->add_option("--dim", dim)->required();

  auto* integrate_cmd = app.add_subcommand("integrate", "Integration over the fiber");
  integrate_cmd->add_option("graph", graph_path)->required();
  integrate_cmd->add_option("class", class_path)->required();

  auto* coords = app.add_subcommand("coords", "Module coordinates over H*(BT)");
  coords->add_option("graph", graph_path)->required();
  coords->add_option("class", class_path)->required();
  coords->add_option("--mod-p", mod_p, "Report divisibility by a prime");

  auto* chase = app.add_subcommand("chase", "Gysin Betti chase");
  chase->add_option("problem", problem_path)->required();
  chase->add_option("--entails", entail_queries, "Relation to test, e.g. k+10=c");

  auto* classify_cmd = app.add_subcommand("classify", "Sphere-type or CP-type per component");
  classify_cmd->add_option("graph", graph_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Inputs inputs(in);
  try {
    if (catalog->parsed()) return cmd_catalog(family, n, rank, weights_path, inputs, out);
    if (chase->parsed()) return cmd_chase(parse_problem(inputs.read(problem_path)), entail_queries, out);

    GkmGraph g = parse_graph(inputs.read(graph_path));
    if (validate_cmd->parsed()) return cmd_validate(g, gkm_k, out);
    if (betti->parsed()) return cmd_betti(g, out);
    if (skeleton->parsed()) return cmd_skeleton(g, dim, out);
    if (classify_cmd->parsed()) return cmd_classify(g, out);
    EquivariantClass c = parse_class(g, inputs.read(class_path));
    if (integrate_cmd->parsed()) return cmd_integrate(g, c, out);
    if (coords->parsed()) return cmd_coords(g, c, mod_p, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidArgument ? 1 : 2;
  }
  return 1;
}

}  // namespace gkmtool
