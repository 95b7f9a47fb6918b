#include "gkm/exact_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <utility>

#include "gkm/error.hpp"

namespace gkm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::NotFormal: return "NotFormal";
    case ErrorCode::Gkm3Required: return "Gkm3Required";
    case ErrorCode::NonPolynomialResult: return "NonPolynomialResult";
    case ErrorCode::ResidualNonzero: return "ResidualNonzero";
    case ErrorCode::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    if (!part.empty() && (part[0] == '-' || part[0] == '+')) part.remove_prefix(1);
    return !part.empty() && std::all_of(part.begin(), part.end(),
                                        [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  const std::string_view num = std::string_view(s).substr(0, slash);
  const std::string_view den =
      slash == std::string::npos ? std::string_view("1") : std::string_view(s).substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::Parse, "malformed rational '" + s + "'");
  }
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(std::size_t variable_count, const Rational& value) {
  Polynomial p(variable_count);
  p.add_term(Exponent(variable_count, 0), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t variable_count, std::size_t index) {
  if (index >= variable_count) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  Exponent e(variable_count, 0);
  e[index] = 1;
  return monomial(std::move(e), 1);
}

Polynomial Polynomial::monomial(Exponent exponent, const Rational& coefficient) {
  Polynomial p(exponent.size());
  p.add_term(exponent, coefficient);
  return p;
}

Polynomial Polynomial::linear_form(std::span<const long long> form) {
  Polynomial p(form.size());
  for (std::size_t i = 0; i < form.size(); ++i) {
    Exponent e(form.size(), 0);
    e[i] = 1;
    p.add_term(e, Rational(static_cast<long>(form[i])));
  }
  return p;
}

int Polynomial::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  }
  return deg;
}

bool Polynomial::is_homogeneous() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    const int d = std::accumulate(e.begin(), e.end(), 0);
    if (deg >= 0 && d != deg) return false;
    deg = d;
  }
  return true;
}

Rational Polynomial::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& exponent, const Rational& coefficient) {
  if (exponent.size() != variables_) {
    throw Error(ErrorCode::InvalidArgument, "exponent length does not match variable count");
  }
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (other.variables_ != variables_) {
    throw Error(ErrorCode::InvalidArgument, "polynomials live in different rings");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

namespace {

// Dense accumulation for products whose exponent box is small: one slot per
// exponent vector, slots ordered like the term map.
bool multiply_dense(const Polynomial::TermMap& a, const Polynomial::TermMap& b, std::size_t d,
                    Polynomial::TermMap& out) {
  std::vector<int> top_a(d, 0), top_b(d, 0);
  Integer den_a = 1, den_b = 1;
  for (const auto& [e, c] : a) {
    for (std::size_t i = 0; i < d; ++i) top_a[i] = std::max(top_a[i], e[i]);
    mpz_lcm(den_a.get_mpz_t(), den_a.get_mpz_t(), c.get_den_mpz_t());
  }
  for (const auto& [e, c] : b) {
    for (std::size_t i = 0; i < d; ++i) top_b[i] = std::max(top_b[i], e[i]);
    mpz_lcm(den_b.get_mpz_t(), den_b.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<std::size_t> stride(d, 1);
  std::size_t cells = 1;
  for (std::size_t i = d; i-- > 0;) {
    stride[i] = cells;
    cells *= static_cast<std::size_t>(top_a[i] + top_b[i] + 1);
    if (cells > (std::size_t{1} << 20)) return false;
  }
  if (cells > 8 * a.size() * b.size()) return false;

  // Integer numerators over the common denominators den_a, den_b.
  auto scaled = [&](const Polynomial::TermMap& p, const Integer& den, std::vector<std::size_t>& idx,
                    std::vector<Integer>& num) {
    for (const auto& [e, c] : p) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < d; ++i) k += static_cast<std::size_t>(e[i]) * stride[i];
      idx.push_back(k);
      num.push_back(c.get_num() * (den / c.get_den()));
    }
  };
  std::vector<std::size_t> ia, ib;
  std::vector<Integer> na, nb;
  scaled(a, den_a, ia, na);
  scaled(b, den_b, ib, nb);

  std::vector<Integer> acc(cells);
  std::vector<char> used(cells, 0);
  for (std::size_t i = 0; i < ia.size(); ++i) {
    for (std::size_t j = 0; j < ib.size(); ++j) {
      const std::size_t k = ia[i] + ib[j];
      mpz_addmul(acc[k].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
      used[k] = 1;
    }
  }
  const Integer den = den_a * den_b;
  Exponent e(d);
  // descending slot order is descending lexicographic order
  for (std::size_t k = cells; k-- > 0;) {
    if (!used[k] || acc[k] == 0) continue;
    std::size_t rest = k;
    for (std::size_t i = 0; i < d; ++i) {
      e[i] = static_cast<int>(rest / stride[i]);
      rest %= stride[i];
    }
    Rational c(acc[k], den);
    c.canonicalize();
    out.emplace_hint(out.end(), e, std::move(c));
  }
  return true;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  Polynomial out(a.variables_);
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (multiply_dense(a.terms_, b.terms_, a.variables_, out.terms_)) return out;
  out.terms_.clear();
  Exponent e(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(variables_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != variables_) {
    throw Error(ErrorCode::InvalidArgument, "substitution needs one image per variable");
  }
  if (images.empty()) return *this;
  const std::size_t target = images.front().variable_count();
  for (const auto& img : images) {
    if (img.variable_count() != target) {
      throw Error(ErrorCode::InvalidArgument, "substitution images live in different rings");
    }
  }
  // Nested Horner scheme: terms are sorted descending lexicographically, so
  // the terms sharing e[0..var-1] form a contiguous run grouped by e[var].
  std::vector<std::vector<Polynomial>> powers(variables_);
  auto power = [&](std::size_t var, int k) -> const Polynomial& {
    auto& pw = powers[var];
    if (pw.empty()) pw.push_back(constant(target, 1));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * images[var]);
    return pw[static_cast<std::size_t>(k)];
  };
  using It = TermMap::const_iterator;
  std::function<Polynomial(It, It, std::size_t)> horner = [&](It begin, It end, std::size_t var) {
    if (var == variables_) return constant(target, begin->second);
    Polynomial r(target);
    int prev = -1;
    for (It it = begin; it != end;) {
      const int k = it->first[var];
      It stop = it;
      while (stop != end && stop->first[var] == k) ++stop;
      if (prev >= 0) r = r * power(var, prev - k);
      r += horner(it, stop, var + 1);
      prev = k;
      it = stop;
    }
    return prev > 0 ? r * power(var, prev) : r;
  };
  if (terms_.empty()) return Polynomial(target);
  return horner(terms_.begin(), terms_.end(), 0);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += "t" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << '*' << mono;
    }
  }
  return os.str();
}

namespace {

// Dense fraction-free division. Scaling p by c^deg(p), c the leading
// coefficient, keeps every step an exact integer division: a term of degree
// a in the leading variable stays divisible by c^a.
bool divide_dense(const Polynomial& p, std::span<const long long> form, std::size_t lead, LinearDivision& out) {
  const std::size_t d = form.size();
  const int m = p.degree();
  std::vector<std::size_t> stride(d, 1);
  std::size_t cells = 1;
  for (std::size_t i = d; i-- > 0;) {
    stride[i] = cells;
    cells *= static_cast<std::size_t>(m + 1);
    if (cells > (std::size_t{1} << 18)) return false;
  }
  if (cells > 64 * p.terms().size() + 4096) return false;

  Integer den = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  const Integer c(static_cast<long>(form[lead]));
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(m));
  std::vector<Integer> a(cells), q(cells);
  for (const auto& [e, coeff] : p.terms()) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < d; ++i) k += static_cast<std::size_t>(e[i]) * stride[i];
    a[k] = coeff.get_num() * (den / coeff.get_den()) * scale;
  }
  std::vector<Integer> f(d);
  for (std::size_t i = 0; i < d; ++i) f[i] = static_cast<long>(form[i]);
  Integer t;
  for (std::size_t k = cells; k-- > 0;) {
    if (a[k] == 0 || (k / stride[lead]) % static_cast<std::size_t>(m + 1) == 0) continue;
    const std::size_t base = k - stride[lead];
    mpz_divexact(q[base].get_mpz_t(), a[k].get_mpz_t(), c.get_mpz_t());
    a[k] = 0;
    for (std::size_t i = lead + 1; i < d; ++i) {
      if (form[i] == 0) continue;
      mpz_submul(a[base + stride[i]].get_mpz_t(), q[base].get_mpz_t(), f[i].get_mpz_t());
    }
  }
  const Integer total = den * scale;
  auto emit = [&](const std::vector<Integer>& src, Polynomial& dst) {
    dst = Polynomial(d);
    Exponent e(d);
    for (std::size_t k = cells; k-- > 0;) {
      if (src[k] == 0) continue;
      std::size_t rest = k;
      for (std::size_t i = 0; i < d; ++i) {
        e[i] = static_cast<int>(rest / stride[i]);
        rest %= stride[i];
      }
      Rational r(src[k], total);
      r.canonicalize();
      dst.add_term(e, r);
    }
  };
  emit(q, out.quotient);
  emit(a, out.remainder);
  return true;
}

}  // namespace

LinearDivision divide_by_linear_form(const Polynomial& p, std::span<const long long> form) {
  const std::size_t d = form.size();
  if (p.variable_count() != d) throw Error(ErrorCode::InvalidArgument, "form length mismatch");
  std::size_t lead = d;
  for (std::size_t i = 0; i < d; ++i) {
    if (form[i] != 0) {
      lead = i;
      break;
    }
  }
  if (lead == d) throw Error(ErrorCode::InvalidArgument, "division by the zero form");
  if (p.is_zero()) return LinearDivision{Polynomial(d), Polynomial(d)};
  if (LinearDivision dense; divide_dense(p, form, lead, dense)) return dense;
  const Rational lead_coeff(static_cast<long>(form[lead]));

  LinearDivision out{Polynomial(d), Polynomial(d)};
  Polynomial rest = p;
  // Repeatedly cancel the largest term divisible by the leading variable.
  while (!rest.is_zero()) {
    auto it = std::find_if(rest.terms().begin(), rest.terms().end(),
                           [&](const auto& term) { return term.first[lead] > 0; });
    if (it == rest.terms().end()) break;
    Exponent qe = it->first;
    qe[lead] -= 1;
    const Rational qc = it->second / lead_coeff;
    out.quotient.add_term(qe, qc);
    for (std::size_t i = 0; i < d; ++i) {
      if (form[i] == 0) continue;
      Exponent e = qe;
      e[i] += 1;
      rest.add_term(e, -qc * Rational(static_cast<long>(form[i])));
    }
  }
  out.remainder = std::move(rest);
  return out;
}

namespace {

void basis_rec(std::size_t d, std::size_t pos, int remaining, Exponent& cur,
               std::vector<Exponent>& out) {
  if (pos + 1 == d) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[pos] = k;
    basis_rec(d, pos + 1, remaining - k, cur, out);
  }
}

}  // namespace

std::vector<Exponent> homogeneous_basis(std::size_t d, int r) {
  if (d == 0) {
    if (r == 0) return {Exponent{}};
    return {};
  }
  if (r < 0) return {};
  std::vector<Exponent> out;
  Exponent cur(d, 0);
  basis_rec(d, 0, r, cur, out);
  return out;
}

Integer binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// ---------------------------------------------------------------------------
// Integer lattices

namespace {

using IntegerMatrix = std::vector<std::vector<Integer>>;

IntegerMatrix to_integer_rows(std::span<const IntVector> rows, std::size_t d) {
  IntegerMatrix out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::InvalidArgument, "vector length mismatch");
    std::vector<Integer> row;
    row.reserve(d);
    for (long long v : r) row.emplace_back(static_cast<long>(v));
    out.push_back(std::move(row));
  }
  return out;
}

long long to_ll(const Integer& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "lattice entry overflow");
  return v.get_si();
}

}  // namespace

std::vector<IntVector> integer_kernel_basis(std::span<const IntVector> rows, std::size_t d) {
  IntegerMatrix a = to_integer_rows(rows, d);
  // u starts as the identity; column operations on a are mirrored on u.
  IntegerMatrix u(d, std::vector<Integer>(d, 0));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;

  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : u) std::swap(row[i], row[j]);
  };
  auto axpy_col = [&](std::size_t dst, std::size_t src, const Integer& f) {
    for (auto& row : a) row[dst] -= f * row[src];
    for (auto& row : u) row[dst] -= f * row[src];
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < a.size() && pivot < d; ++r) {
    while (true) {
      std::size_t best = d;
      for (std::size_t j = pivot; j < d; ++j) {
        if (a[r][j] != 0 && (best == d || abs(a[r][j]) < abs(a[r][best]))) best = j;
      }
      if (best == d) break;
      if (best != pivot) swap_cols(best, pivot);
      bool done = true;
      for (std::size_t j = pivot + 1; j < d; ++j) {
        if (a[r][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][j].get_mpz_t(), a[r][pivot].get_mpz_t());
        axpy_col(j, pivot, q);
        if (a[r][j] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  std::vector<IntVector> basis;
  for (std::size_t j = pivot; j < d; ++j) {
    IntVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = to_ll(u[i][j]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t integer_rank(std::span<const IntVector> vectors) {
  if (vectors.empty()) return 0;
  const std::size_t d = vectors.front().size();
  Matrix m(0, d);
  for (const auto& v : vectors) {
    if (v.size() != d) throw Error(ErrorCode::InvalidArgument, "vector length mismatch");
    std::vector<Rational> row;
    row.reserve(d);
    for (long long x : v) row.emplace_back(static_cast<long>(x));
    m.append_row(row);
  }
  return rank(m);
}

namespace {

/// Row Hermite normal form: pivots positive, entries above pivots reduced
/// into [0, pivot), zero rows dropped.
IntegerMatrix row_hermite(IntegerMatrix a, std::size_t d) {
  std::size_t top = 0;
  for (std::size_t c = 0; c < d && top < a.size(); ++c) {
    while (true) {
      std::size_t best = a.size();
      for (std::size_t i = top; i < a.size(); ++i) {
        if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c]))) best = i;
      }
      if (best == a.size()) break;
      std::swap(a[top], a[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[top][c].get_mpz_t());
        for (std::size_t k = 0; k < d; ++k) a[i][k] -= q * a[top][k];
        if (a[i][c] != 0) done = false;
      }
      if (done) {
        if (a[top][c] < 0) {
          for (auto& x : a[top]) x = -x;
        }
        for (std::size_t i = 0; i < top; ++i) {
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[top][c].get_mpz_t());
          for (std::size_t k = 0; k < d; ++k) a[i][k] -= q * a[top][k];
        }
        ++top;
        break;
      }
    }
  }
  a.resize(top);
  return a;
}

}  // namespace

std::vector<IntVector> saturated_lattice_basis(std::span<const IntVector> generators,
                                               std::size_t d) {
  const auto orthogonal = integer_kernel_basis(generators, d);
  const auto saturated = integer_kernel_basis(orthogonal, d);
  IntegerMatrix hnf = row_hermite(to_integer_rows(saturated, d), d);
  std::vector<IntVector> out;
  for (const auto& row : hnf) {
    IntVector v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = to_ll(row[k]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Rational> lattice_coordinates(std::span<const IntVector> basis, const IntVector& v) {
  const std::size_t r = basis.size();
  const std::size_t d = v.size();
  Matrix aug(d, r + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug(i, j) = Rational(static_cast<long>(basis[j].at(i)));
    aug(i, r) = Rational(static_cast<long>(v[i]));
  }
  // v lies in the span iff appending it does not raise the rank.
  Matrix coeffs(d, r);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < r; ++j) coeffs(i, j) = aug(i, j);
  }
  if (rank(aug) != rank(coeffs)) return {};
  auto kernel = kernel_basis(aug);
  for (const auto& k : kernel) {
    if (k[r] != 0) {
      std::vector<Rational> out(r);
      for (std::size_t j = 0; j < r; ++j) out[j] = -k[j] / k[r];
      return out;
    }
  }
  return {};
}

Polynomial restrict_to_hyperplane(const Polynomial& p, std::span<const long long> form) {
  const std::size_t d = form.size();
  if (std::all_of(form.begin(), form.end(), [](long long x) { return x == 0; })) {
    throw Error(ErrorCode::InvalidArgument, "restriction to the zero form");
  }
  if (p.variable_count() != d) throw Error(ErrorCode::InvalidArgument, "form length mismatch");
  const IntVector row(form.begin(), form.end());
  const auto kernel = integer_kernel_basis(std::span<const IntVector>(&row, 1), d);
  std::vector<Polynomial> images;
  images.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    IntVector coeffs(kernel.size());
    for (std::size_t j = 0; j < kernel.size(); ++j) coeffs[j] = kernel[j][i];
    images.push_back(Polynomial::linear_form(coeffs));
  }
  return p.substitute(images);
}

// ---------------------------------------------------------------------------
// Matrices

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void Matrix::append_row(std::span<const Rational> row) {
  if (row.size() != cols_) throw Error(ErrorCode::InvalidArgument, "row length mismatch");
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Rational> Matrix::multiply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::InvalidArgument, "vector length mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != 0 && v[c] != 0) acc += (*this)(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

namespace {

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = m.rows();
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (m(row, c) != 0) m(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  // Fraction-free forward elimination on integer rows, each kept primitive.
  std::map<std::size_t, std::vector<Integer>> pivots;  // leading column -> row
  std::vector<Integer> row(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer den = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m(r, c) == 0 ? Integer(0) : Integer(m(r, c) * den);
    for (auto& [col, p] : pivots) {
      if (row[col] == 0) continue;
      Integer g = gcd(p[col], row[col]);
      Integer a = p[col] / g, b = row[col] / g;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (row[c] != 0) row[c] *= a;
        if (c >= col && p[c] != 0) row[c] -= b * p[c];
      }
    }
    Integer content = 0;
    std::size_t lead = m.cols();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (row[c] == 0) continue;
      if (lead == m.cols()) lead = c;
      content = gcd(content, row[c]);
    }
    if (lead == m.cols()) continue;
    if (content != 1) {
      for (std::size_t c = lead; c < m.cols(); ++c) {
        if (row[c] != 0) row[c] /= content;
      }
    }
    pivots.emplace(lead, row);
  }
  return pivots.size();
}

std::vector<std::vector<Rational>> kernel_basis(const Matrix& m) {
  Matrix work = m;
  const auto pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -work(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Poincare series

PoincareSeries::PoincareSeries(std::vector<Rational> coefficients, int truncation_degree)
    : coefficients_(std::move(coefficients)), truncation_(truncation_degree) {
  if (truncation_ < 0 || coefficients_.size() != static_cast<std::size_t>(truncation_) + 1) {
    throw Error(ErrorCode::InvalidArgument, "series needs one coefficient per degree up to truncation");
  }
}

PoincareSeries PoincareSeries::from_even(std::span<const Rational> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "empty series");
  std::vector<Rational> coeffs(2 * values.size() - 1);
  for (std::size_t j = 0; j < values.size(); ++j) coeffs[2 * j] = values[j];
  return PoincareSeries(std::move(coeffs), static_cast<int>(2 * values.size() - 2));
}

const Rational& PoincareSeries::at(int degree) const {
  if (degree < 0 || degree > truncation_) {
    throw Error(ErrorCode::InvalidArgument,
                "degree " + std::to_string(degree) + " is beyond the series truncation");
  }
  return coefficients_[static_cast<std::size_t>(degree)];
}

BettiProfile series_shape_divide(const PoincareSeries& series, std::size_t d, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative half dimension");
  BettiProfile out;
  out.reserve(static_cast<std::size_t>(2 * n + 1));
  for (int i = 0; i <= 2 * n; ++i) {
    Rational b = 0;
    for (long long m = 0; m <= static_cast<long long>(d) && i - 2 * m >= 0; ++m) {
      const Rational term = Rational(binomial(static_cast<long long>(d), m)) * series.at(i - 2 * static_cast<int>(m));
      b += (m % 2 == 0) ? term : Rational(-term);
    }
    if (!is_integer(b)) {
      throw Error(ErrorCode::NonIntegral, "coefficient of q^" + std::to_string(i) + " is " + b.get_str());
    }
    if (b < 0) {
      throw Error(ErrorCode::NegativeCoefficient,
                  "coefficient of q^" + std::to_string(i) + " is " + b.get_str());
    }
    out.push_back(b.get_num().get_si());
  }
  return out;
}

PoincareSeries series_shape_multiply(const BettiProfile& profile, std::size_t d, int truncation) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(truncation) + 1);
  for (int k = 0; k <= truncation; ++k) {
    Rational acc = 0;
    for (int m = 0; 2 * m <= k; ++m) {
      const auto idx = static_cast<std::size_t>(k - 2 * m);
      if (idx >= profile.size()) continue;
      acc += Rational(binomial(m + static_cast<long long>(d) - 1, static_cast<long long>(d) - 1)) *
             Rational(static_cast<long>(profile[idx]));
    }
    coeffs[static_cast<std::size_t>(k)] = acc;
  }
  return PoincareSeries(std::move(coeffs), truncation);
}

}  // namespace gkm
