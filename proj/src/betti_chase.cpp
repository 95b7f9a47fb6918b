#include "gkm/betti_chase.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace gkm {

// ---------------------------------------------------------------------------
// AffineExpr

AffineExpr AffineExpr::parameter(const std::string& name, long long coefficient) {
  AffineExpr e;
  if (coefficient != 0) e.coeffs_[name] = coefficient;
  return e;
}

long long AffineExpr::coefficient(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? 0 : it->second;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  constant_ += o.constant_;
  for (const auto& [name, c] : o.coeffs_) {
    long long& slot = coeffs_[name];
    slot += c;
    if (slot == 0) coeffs_.erase(name);
  }
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) { return *this += -o; }

AffineExpr& AffineExpr::operator*=(long long s) {
  if (s == 0) {
    constant_ = 0;
    coeffs_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [name, c] : coeffs_) c *= s;
  return *this;
}

AffineExpr AffineExpr::substitute(const std::string& name, const AffineExpr& value) const {
  auto it = coeffs_.find(name);
  if (it == coeffs_.end()) return *this;
  AffineExpr out = *this;
  long long c = it->second;
  out.coeffs_.erase(name);
  out += c * value;
  return out;
}

std::optional<long long> AffineExpr::evaluate(const std::map<std::string, long long>& values) const {
  long long v = constant_;
  for (const auto& [name, c] : coeffs_) {
    auto it = values.find(name);
    if (it == values.end()) return std::nullopt;
    v += c * it->second;
  }
  return v;
}

namespace {

void append_term(std::string& out, long long c, const std::string& name) {
  bool first = out.empty();
  long long mag = c < 0 ? -c : c;
  if (first) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (name.empty()) {
    out += std::to_string(mag);
  } else {
    if (mag != 1) out += std::to_string(mag) + "*";
    out += name;
  }
}

bool ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

}  // namespace

std::string AffineExpr::to_string() const {
  std::string out;
  for (const auto& [name, c] : coeffs_) append_term(out, c, name);
  if (constant_ != 0 || out.empty()) append_term(out, constant_, "");
  return out;
}

AffineExpr AffineExpr::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::Parse, "affine expression '" + std::string(text) + "': " + why);
  };
  if (s.empty()) throw bad("empty");
  AffineExpr out;
  std::size_t i = 0;
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw bad("expected + or -");
    }
    if (i >= s.size()) throw bad("dangling sign");
    long long coeff = 1;
    bool had_number = false;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      coeff = std::stoll(s.substr(i, j - i));
      had_number = true;
      i = j;
      if (i < s.size() && s[i] == '*') {
        ++i;
        if (i >= s.size() || !ident_start(s[i])) throw bad("expected a name after '*'");
      }
    }
    if (i < s.size() && ident_start(s[i])) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j < s.size() && s[j] == '@') {
        ++j;
        std::size_t k = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == k) throw bad("expected a step number after '@'");
      }
      out += parameter(s.substr(i, j - i), sign * coeff);
      i = j;
    } else if (had_number) {
      out += AffineExpr(sign * coeff);
    } else {
      throw bad("unexpected character '" + std::string(1, s[i]) + "'");
    }
  }
  return out;
}

Dominance compare(const AffineExpr& a, const AffineExpr& b) {
  AffineExpr diff = b - a;
  bool nonneg = diff.constant() >= 0;
  bool nonpos = diff.constant() <= 0;
  for (const auto& [name, c] : diff.coefficients()) {
    nonneg = nonneg && c >= 0;
    nonpos = nonpos && c <= 0;
  }
  if (nonneg && nonpos) return Dominance::Equal;
  if (nonneg) return Dominance::Less;
  if (nonpos) return Dominance::Greater;
  return Dominance::Incomparable;
}

// ---------------------------------------------------------------------------
// Relation

Relation Relation::parse(std::string_view text) {
  std::string s(text);
  Relation r;
  std::size_t pos;
  std::string lhs, rhs;
  if ((pos = s.find(">=")) != std::string::npos) {
    r.op = Op::GreaterEqual;
    lhs = s.substr(0, pos);
    rhs = s.substr(pos + 2);
  } else if ((pos = s.find("<=")) != std::string::npos) {
    r.op = Op::GreaterEqual;
    lhs = s.substr(pos + 2);
    rhs = s.substr(0, pos);
  } else if ((pos = s.find("==")) != std::string::npos) {
    lhs = s.substr(0, pos);
    rhs = s.substr(pos + 2);
  } else if ((pos = s.find('=')) != std::string::npos) {
    lhs = s.substr(0, pos);
    rhs = s.substr(pos + 1);
  } else {
    throw Error(ErrorCode::Parse, "relation '" + s + "' has no =, >= or <=");
  }
  r.expr = AffineExpr::parse(lhs) - AffineExpr::parse(rhs);
  return r;
}

std::string Relation::to_string() const {
  std::string left, right;
  for (const auto& [name, c] : expr.coefficients()) append_term(c > 0 ? left : right, c > 0 ? c : -c, name);
  long long k = expr.constant();
  if (k > 0) append_term(left, k, "");
  if (k < 0) append_term(right, -k, "");
  if (left.empty()) left = "0";
  if (right.empty()) right = "0";
  return left + (op == Op::Equal ? " = " : " >= ") + right;
}

// ---------------------------------------------------------------------------
// ChaseProblem / ChaseResult

std::vector<int> ChaseProblem::default_cutoffs(std::size_t total_count, int steps) {
  int top = total_count == 0 ? 0 : static_cast<int>(total_count) - 1;
  std::vector<int> out;
  for (int s = 1; s <= steps; ++s) out.push_back(std::max(0, top - s));
  return out;
}

AffineExpr ChaseResult::reduce(const AffineExpr& e) const {
  AffineExpr out = e;
  for (const auto& [name, c] : e.coefficients()) {
    auto it = substitutions.find(name);
    if (it != substitutions.end()) out = out.substitute(name, it->second);
  }
  return out;
}

InconsistentChase::InconsistentChase(int step, std::string relation, ChaseResult partial)
    : Error(ErrorCode::Inconsistent, "step " + std::to_string(step) + ": " + relation),
      step_(step),
      relation_(std::move(relation)),
      partial_(std::move(partial)) {}

namespace {

// ---------------------------------------------------------------------------
// Constraint engine over nonnegative integer variables.

enum class VarClass { Parameter = 0, Total = 1, Rank = 2, Quotient = 3 };

struct VarInfo {
  VarClass cls = VarClass::Parameter;
  int step = 0;
  int degree = 0;
};

struct Failure {
  std::string relation;
};

struct Stored {
  AffineExpr e;
  std::string origin;
};

long long gcd_of_coefficients(const AffineExpr& e) {
  long long g = 0;
  for (const auto& [name, c] : e.coefficients()) g = std::gcd(g, c < 0 ? -c : c);
  return g;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

class Engine {
 public:
  void declare(const std::string& name, VarInfo info) { internal_[name] = info; }
  [[nodiscard]] bool is_internal(const std::string& name) const { return internal_.count(name) != 0; }

  void equal(AffineExpr e, std::string origin) {
    queue_.push_back({true, {std::move(e), std::move(origin)}});
    run();
  }
  void at_least(AffineExpr e, std::string origin) {
    queue_.push_back({false, {std::move(e), std::move(origin)}});
    run();
  }

  [[nodiscard]] AffineExpr reduce(const AffineExpr& e) const {
    AffineExpr out = e;
    for (const auto& [name, c] : e.coefficients()) {
      auto it = solved_.find(name);
      if (it != solved_.end()) out = out.substitute(name, it->second);
    }
    return out;
  }

  /// Propagation plus exhaustive search over bounded groups of variables.
  void settle() {
    for (int round = 0; round < 1000; ++round) {
      run();
      if (!enumerate_bounded_groups()) return;
    }
  }

  [[nodiscard]] const std::map<std::string, AffineExpr>& solved() const { return solved_; }
  [[nodiscard]] const std::vector<Stored>& equalities() const { return eqs_; }
  [[nodiscard]] const std::vector<Stored>& inequalities() const { return ineqs_; }

 private:
  struct Pending {
    bool equality;
    Stored s;
  };

  [[noreturn]] static void fail(const Stored& s, const AffineExpr& reduced, bool equality) {
    Relation r{equality ? Relation::Op::Equal : Relation::Op::GreaterEqual, reduced};
    throw Failure{s.origin + ": " + r.to_string()};
  }

  // Higher tuple = eliminated first. Parameters: lexicographically last first.
  [[nodiscard]] std::tuple<int, int, int, std::string> priority(const std::string& name) const {
    auto it = internal_.find(name);
    if (it == internal_.end()) return {0, 0, 0, name};
    return {static_cast<int>(it->second.cls), it->second.step, it->second.degree, name};
  }

  void run() {
    while (!queue_.empty()) {
      Pending p = std::move(queue_.front());
      queue_.pop_front();
      if (p.equality)
        process_equality(std::move(p.s));
      else
        process_inequality(std::move(p.s));
    }
  }

  void process_equality(Stored s) {
    AffineExpr e = reduce(s.e);
    if (e.is_constant()) {
      if (e.constant() != 0) fail(s, e, true);
      return;
    }
    long long g = gcd_of_coefficients(e);
    if (e.constant() % g != 0) fail(s, e, true);
    AffineExpr n;
    n += AffineExpr(e.constant() / g);
    for (const auto& [name, c] : e.coefficients()) n += AffineExpr::parameter(name, c / g);
    e = n;

    bool all_pos = true, all_neg = true;
    for (const auto& [name, c] : e.coefficients()) {
      all_pos = all_pos && c > 0;
      all_neg = all_neg && c < 0;
    }
    if (all_neg) {
      e = -e;
      all_pos = true;
    }
    if (all_pos) {
      if (e.constant() > 0) fail(s, e, true);
      if (e.constant() == 0 && e.coefficients().size() > 1) {
        for (const auto& [name, c] : e.coefficients())
          queue_.push_back({true, {AffineExpr::parameter(name), s.origin}});
        return;
      }
    }

    std::optional<std::string> pick;
    for (const auto& [name, c] : e.coefficients()) {
      if (c != 1 && c != -1) continue;
      if (!pick || priority(name) > priority(*pick)) pick = name;
    }
    if (!pick) {
      for (const auto& st : eqs_)
        if (st.e == e || st.e == -e) return;
      eqs_.push_back({e, s.origin});
      return;
    }
    long long a = e.coefficient(*pick);
    AffineExpr rest = e - AffineExpr::parameter(*pick, a);
    eliminate(*pick, -a * rest, s.origin);
  }

  void eliminate(const std::string& name, const AffineExpr& value, const std::string& origin) {
    for (auto& [other, v] : solved_) v = v.substitute(name, value);
    solved_[name] = value;
    for (auto& st : eqs_) queue_.push_back({true, std::move(st)});
    for (auto& st : ineqs_) queue_.push_back({false, std::move(st)});
    eqs_.clear();
    ineqs_.clear();
    queue_.push_back({false, {value, origin + " (" + name + " >= 0)"}});
  }

  void process_inequality(Stored s) {
    AffineExpr e = reduce(s.e);
    if (e.is_constant()) {
      if (e.constant() < 0) fail(s, e, false);
      return;
    }
    long long g = gcd_of_coefficients(e);
    AffineExpr n;
    n += AffineExpr(floor_div(e.constant(), g));
    for (const auto& [name, c] : e.coefficients()) n += AffineExpr::parameter(name, c / g);
    e = n;

    bool nonneg = true, nonpos = true;
    for (const auto& [name, c] : e.coefficients()) {
      nonneg = nonneg && c >= 0;
      nonpos = nonpos && c <= 0;
    }
    if (nonneg && e.constant() >= 0) return;
    if (nonpos) {
      if (e.constant() < 0) fail(s, e, false);
      if (e.constant() == 0) {
        queue_.push_back({true, {e, s.origin}});
        return;
      }
    }
    for (std::size_t i = 0; i < ineqs_.size(); ++i) {
      const AffineExpr& f = ineqs_[i].e;
      if (f == e) return;
      AffineExpr sum = e + f;
      bool sum_nonpos = sum.constant() <= 0;
      for (const auto& [name, c] : sum.coefficients()) sum_nonpos = sum_nonpos && c <= 0;
      if (!sum_nonpos) continue;
      if (sum.constant() < 0) {
        Stored both{e, s.origin + " with " + ineqs_[i].origin};
        fail(both, sum, false);
      }
      Stored other = std::move(ineqs_[i]);
      ineqs_.erase(ineqs_.begin() + static_cast<std::ptrdiff_t>(i));
      queue_.push_back({true, {e, s.origin}});
      queue_.push_back({true, std::move(other)});
      return;
    }
    // Drop whichever of e and a stored inequality is implied by the other.
    for (const auto& st : ineqs_) {
      Dominance d = compare(e, st.e);
      if (d == Dominance::Greater || d == Dominance::Equal) return;
    }
    std::erase_if(ineqs_, [&](const Stored& st) { return compare(e, st.e) == Dominance::Less; });
    ineqs_.push_back({e, s.origin});
  }

  // Returns true if it forced a new value.
  bool enumerate_bounded_groups() {
    std::vector<std::pair<Stored, bool>> all;
    for (const auto& st : eqs_) all.push_back({st, true});
    for (const auto& st : ineqs_) all.push_back({st, false});
    if (all.empty()) return false;

    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    std::map<std::string, long long> ub;
    for (const auto& [st, eq] : all)
      for (const auto& [name, c] : st.e.coefficients()) ub.emplace(name, kInf);

    // Interval propagation of upper bounds (lower bounds are 0).
    for (int round = 0; round < 64; ++round) {
      bool changed = false;
      for (const auto& [st, eq] : all) {
        for (int orient = 0; orient < (eq ? 2 : 1); ++orient) {
          AffineExpr e = orient == 0 ? st.e : -st.e;
          for (const auto& [name, c] : e.coefficients()) {
            if (c >= 0) continue;
            // -c * x <= constant + sum_{others with positive coeff} coeff * ub
            long long room = e.constant();
            bool finite = true;
            for (const auto& [o, co] : e.coefficients()) {
              if (o == name || co <= 0) continue;
              if (ub[o] >= kInf) {
                finite = false;
                break;
              }
              room += co * ub[o];
            }
            if (!finite) continue;
            long long bound = room < 0 ? -1 : room / -c;
            if (bound < ub[name]) {
              ub[name] = bound;
              changed = true;
            }
          }
        }
      }
      if (!changed) break;
    }

    // Group variables by co-occurrence.
    std::map<std::string, std::string> parent;
    for (const auto& [name, b] : ub) parent[name] = name;
    auto find = [&](std::string x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [st, eq] : all) {
      const auto& cs = st.e.coefficients();
      if (cs.empty()) continue;
      std::string root = find(cs.begin()->first);
      for (const auto& [name, c] : cs) parent[find(name)] = root;
    }
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& [name, b] : ub) groups[find(name)].push_back(name);

    bool forced = false;
    for (const auto& [root, vars] : groups) {
      long double box = 1;
      bool bounded = true;
      for (const auto& v : vars) {
        if (ub[v] >= kInf) {
          bounded = false;
          break;
        }
        box *= static_cast<long double>(ub[v] + 1);
      }
      if (!bounded || box > 2e5L) continue;
      // All-single-value groups are already settled by propagation.
      std::vector<const std::pair<Stored, bool>*> local;
      for (const auto& item : all)
        if (!item.first.e.coefficients().empty() && find(item.first.e.coefficients().begin()->first) == root)
          local.push_back(&item);

      std::vector<long long> point(vars.size(), 0);
      std::map<std::string, long long> values;
      std::vector<std::optional<long long>> common(vars.size());
      std::vector<bool> varies(vars.size(), false);
      bool any = false;
      while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) values[vars[i]] = point[i];
        bool ok = true;
        for (const auto* item : local) {
          long long v = *item->first.e.evaluate(values);
          if (item->second ? v != 0 : v < 0) {
            ok = false;
            break;
          }
        }
        if (ok) {
          any = true;
          for (std::size_t i = 0; i < vars.size(); ++i) {
            if (!common[i]) common[i] = point[i];
            else if (*common[i] != point[i]) varies[i] = true;
          }
        }
        std::size_t i = 0;
        while (i < vars.size() && point[i] == ub[vars[i]]) point[i++] = 0;
        if (i == vars.size()) break;
        ++point[i];
      }
      if (!any) {
        const Stored& first = local.front()->first;
        throw Failure{first.origin + ": no nonnegative integer solution for " + std::to_string(vars.size()) +
                      " coupled unknowns"};
      }
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (varies[i]) continue;
        queue_.push_back({true, {AffineExpr::parameter(vars[i]) - AffineExpr(*common[i]), "exhaustive search"}});
        forced = true;
      }
    }
    return forced;
  }

  std::deque<Pending> queue_;
  std::map<std::string, AffineExpr> solved_;
  std::vector<Stored> eqs_;
  std::vector<Stored> ineqs_;
  std::map<std::string, VarInfo> internal_;
};

// ---------------------------------------------------------------------------
// Tower assembly

std::string quotient_name(int i, int s) { return "B" + std::to_string(i) + "@" + std::to_string(s); }
std::string rank_name(int i, int s) { return "rho" + std::to_string(i) + "@" + std::to_string(s); }

struct StepFrame {
  int step;
  int cutoff;
  std::vector<AffineExpr> totals;
};

AffineExpr quotient_var(int i, const StepFrame& f) {
  if (i < 0 || i > f.cutoff) return AffineExpr(0);
  return AffineExpr::parameter(quotient_name(i, f.step));
}

AffineExpr rank_var(int i, const StepFrame& f) {
  if (i < 2 || i > f.cutoff) return AffineExpr(0);
  return AffineExpr::parameter(rank_name(i, f.step));
}

// Splits "B4@3" / "rho6@1" / "t5".
struct PinKey {
  enum class Kind { Quotient, Rank, Total } kind;
  int degree = 0;
  int step = 0;
};

PinKey parse_pin_key(const std::string& key) {
  auto bad = [&] { return Error(ErrorCode::InvalidArgument, "pin key '" + key + "' is not B<i>@<s>, rho<i>@<s> or t<i>"); };
  PinKey k{PinKey::Kind::Total};
  std::size_t pos;
  if (key.rfind("rho", 0) == 0) {
    k.kind = PinKey::Kind::Rank;
    pos = 3;
  } else if (key.rfind('B', 0) == 0) {
    k.kind = PinKey::Kind::Quotient;
    pos = 1;
  } else if (key.rfind('t', 0) == 0) {
    pos = 1;
  } else {
    throw bad();
  }
  std::size_t at = key.find('@');
  std::string deg = key.substr(pos, at == std::string::npos ? std::string::npos : at - pos);
  if (deg.empty() || !std::all_of(deg.begin(), deg.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw bad();
  k.degree = std::stoi(deg);
  if (k.kind == PinKey::Kind::Total) {
    if (at != std::string::npos) throw bad();
    return k;
  }
  if (at == std::string::npos) throw bad();
  std::string st = key.substr(at + 1);
  if (st.empty() || !std::all_of(st.begin(), st.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw bad();
  k.step = std::stoi(st);
  return k;
}

ChaseResult snapshot(const Engine& eng, const std::vector<StepFrame>& frames) {
  ChaseResult r;
  r.substitutions = eng.solved();
  std::set<std::string> fresh;
  auto note = [&](const AffineExpr& e) {
    for (const auto& [name, c] : e.coefficients())
      if (eng.is_internal(name)) fresh.insert(name);
  };
  for (const auto& f : frames) {
    ChaseStep st;
    st.step = f.step;
    st.cutoff = f.cutoff;
    for (const auto& t : f.totals) st.totals.push_back(eng.reduce(t));
    for (int i = 0; i <= f.cutoff; ++i) {
      st.quotient.push_back(eng.reduce(quotient_var(i, f)));
      st.ranks.push_back(eng.reduce(rank_var(i, f)));
      note(st.quotient.back());
      note(st.ranks.back());
    }
    for (const auto& t : st.totals) note(t);
    r.steps.push_back(std::move(st));
  }
  for (const auto& [name, v] : eng.solved())
    if (!eng.is_internal(name)) r.parameter_relations[name] = v;
  for (const auto& s : eng.equalities()) {
    r.residual_equalities.push_back(s.e);
    note(s.e);
  }
  for (const auto& s : eng.inequalities()) r.conditions.push_back(s.e);
  r.fresh_unknowns.assign(fresh.begin(), fresh.end());
  r.unique = r.fresh_unknowns.empty();
  return r;
}

ChaseResult run_chase(const ChaseProblem& p, const std::vector<int>& cutoffs, const ChaseOptions& options) {
  const int steps = static_cast<int>(cutoffs.size());
  for (int c : cutoffs)
    if (c < 0) throw Error(ErrorCode::InvalidArgument, "cutoffs must be nonnegative");

  std::map<int, AffineExpr> total_pins;
  std::map<int, std::vector<std::pair<PinKey, AffineExpr>>> step_pins;
  for (const auto& [key, value] : p.pins) {
    PinKey k = parse_pin_key(key);
    if (k.kind == PinKey::Kind::Total) {
      total_pins[k.degree] = value;
    } else {
      if (k.step < 1 || k.step > steps)
        throw Error(ErrorCode::InvalidArgument, "pin '" + key + "' refers to a step outside 1.." + std::to_string(steps));
      step_pins[k.step].push_back({k, value});
    }
  }

  Engine eng;
  std::vector<StepFrame> frames;

  // Step-1 totals.
  std::size_t total_len = p.totals.size();
  if (!total_pins.empty()) total_len = std::max<std::size_t>(total_len, total_pins.rbegin()->first + 1);
  std::vector<AffineExpr> totals(total_len);
  for (std::size_t i = 0; i < total_len; ++i) {
    auto pin = total_pins.find(static_cast<int>(i));
    if (pin != total_pins.end()) {
      totals[i] = pin->second;
    } else if (i < p.totals.size() && p.totals[i]) {
      totals[i] = *p.totals[i];
    } else if (i < p.totals.size()) {
      std::string name = "t" + std::to_string(i);
      eng.declare(name, {VarClass::Total, 0, static_cast<int>(i)});
      totals[i] = AffineExpr::parameter(name);
    }
    if (compare(totals[i], AffineExpr(0)) == Dominance::Less)
      throw Error(ErrorCode::InvalidArgument, "total t" + std::to_string(i) + " = " + totals[i].to_string() + " is negative");
  }

  for (int s = 1; s <= steps; ++s) {
    StepFrame f{s, cutoffs[s - 1], totals};
    frames.push_back(f);
    try {
      for (int i = 0; i <= f.cutoff; ++i) {
        eng.declare(quotient_name(i, s), {VarClass::Quotient, s, i});
        if (i >= 2) eng.declare(rank_name(i, s), {VarClass::Rank, s, i});
      }
      for (int i = 2; i <= f.cutoff; ++i) {
        std::string origin = "rank bound " + rank_name(i, s);
        eng.at_least(quotient_var(i, f) - rank_var(i, f), origin);
        eng.at_least(quotient_var(i - 2, f) - rank_var(i, f), origin);
      }
      for (const auto& [k, value] : step_pins[s]) {
        AffineExpr var = k.kind == PinKey::Kind::Quotient ? quotient_var(k.degree, f) : rank_var(k.degree, f);
        std::string key = (k.kind == PinKey::Kind::Quotient ? "B" : "rho") + std::to_string(k.degree) + "@" + std::to_string(s);
        eng.equal(var - value, "pin " + key);
      }
      int top = std::max(static_cast<int>(f.totals.size()) - 1, f.cutoff + 1);
      std::vector<int> order;
      if (static_cast<std::size_t>(s - 1) < options.degree_orders.size() && !options.degree_orders[s - 1].empty()) {
        order = options.degree_orders[s - 1];
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expect(static_cast<std::size_t>(top + 1));
        std::iota(expect.begin(), expect.end(), 0);
        if (sorted != expect)
          throw Error(ErrorCode::InvalidArgument, "degree order for step " + std::to_string(s) + " is not a permutation of 0.." + std::to_string(top));
      } else {
        order.resize(static_cast<std::size_t>(top + 1));
        std::iota(order.begin(), order.end(), 0);
      }
      for (int i : order) {
        AffineExpr t = i < static_cast<int>(f.totals.size()) ? f.totals[i] : AffineExpr(0);
        AffineExpr rhs = quotient_var(i, f) - rank_var(i, f) + quotient_var(i - 1, f) - rank_var(i + 1, f);
        eng.equal(t - rhs, "degree " + std::to_string(i) + " at step " + std::to_string(s));
      }
      eng.settle();
    } catch (const Failure& fail) {
      throw InconsistentChase(s, fail.relation, snapshot(eng, frames));
    }
    totals.assign(static_cast<std::size_t>(f.cutoff + 1), AffineExpr(0));
    for (int i = 0; i <= f.cutoff; ++i) totals[i] = quotient_var(i, f);
  }
  return snapshot(eng, frames);
}

}  // namespace

ChaseResult gysin_step(const ChaseProblem& p, const ChaseOptions& options) {
  std::vector<int> cutoffs = p.cutoffs.empty() ? ChaseProblem::default_cutoffs(p.totals.size(), 1)
                                               : std::vector<int>{p.cutoffs.front()};
  return run_chase(p, cutoffs, options);
}

ChaseResult chase_tower(const ChaseProblem& p, const ChaseOptions& options) {
  if (p.cutoffs.empty()) throw Error(ErrorCode::InvalidArgument, "chase_tower needs one cutoff per step");
  return run_chase(p, p.cutoffs, options);
}

bool entails(const ChaseResult& r, const Relation& relation) {
  AffineExpr e = r.reduce(relation.expr);
  auto proportional = [](const AffineExpr& a, const AffineExpr& b) {
    // a == lambda * b for a rational lambda != 0
    if (b.is_zero()) return a.is_zero();
    if (a.coefficients().size() != b.coefficients().size()) return false;
    long long na = 0, nb = 0;
    if (!b.coefficients().empty()) {
      const auto& [name, cb] = *b.coefficients().begin();
      na = a.coefficient(name);
      nb = cb;
    } else {
      na = a.constant();
      nb = b.constant();
    }
    if (na == 0) return false;
    return nb * a == na * b;
  };
  if (relation.op == Relation::Op::Equal) {
    if (e.is_zero()) return true;
    for (const auto& q : r.residual_equalities)
      if (proportional(e, q)) return true;
    return false;
  }
  auto nonneg = [](const AffineExpr& x) {
    Dominance d = compare(x, AffineExpr(0));
    return d == Dominance::Greater || d == Dominance::Equal;
  };
  if (nonneg(e)) return true;
  for (const auto& f : r.conditions)
    if (nonneg(e - f)) return true;
  for (const auto& q : r.residual_equalities)
    if (nonneg(e - q) || nonneg(e + q)) return true;
  return false;
}

}  // namespace gkm
