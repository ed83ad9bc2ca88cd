#include "rlab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace rlab {

namespace {

std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t variables) : text_(text), fixed_(variables) {}

  Polynomial run() {
    variables_ = fixed_ != 0 ? fixed_ : highest_index() + 1;
    pos_ = 0;
    Polynomial p = expr();
    finish();
    return p;
  }

 private:
  std::size_t highest_index() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] != 'x') continue;
      std::size_t j = i + 1, v = 0;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j])) && v <= 64) {
        v = v * 10 + static_cast<std::size_t>(text_[j] - '0');
        ++j;
      }
      best = std::max(best, std::min<std::size_t>(v, 64));
    }
    return best;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                          std::string(text_) + "'");
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (eat('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      i128 e = parse_i128(text_.substr(start, pos_ - start));
      if (e > 4096) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      i128 value = parse_i128(text_.substr(start, pos_ - start));
      return Polynomial::constant(value, variables_);
    }
    if (c == 'x') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::size_t index = 0;
      if (pos_ > start) {
        i128 v = parse_i128(text_.substr(start, pos_ - start));
        if (v > 64) fail("variable index too large");
        index = static_cast<std::size_t>(v);
      }
      if (index >= variables_) fail("variable x" + std::to_string(index) + " outside the ring");
      return Polynomial::variable(index, variables_);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t fixed_;
  std::size_t variables_ = 1;
  std::size_t pos_ = 0;
};

}  // namespace

bool GradedOrder::operator()(const Exponents& a, const Exponents& b) const {
  std::uint32_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial::Polynomial(std::size_t variables) : variables_(variables) {
  if (variables == 0) throw InvalidArgument("a polynomial needs at least one variable");
}

Polynomial Polynomial::constant(i128 value, std::size_t variables) {
  Polynomial p(variables);
  p.add_term(Exponents(variables, 0), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t index, std::size_t variables) {
  if (index >= variables) throw DimensionError("variable index outside the ring");
  Exponents e(variables, 0);
  e[index] = 1;
  return monomial(1, std::move(e));
}

Polynomial Polynomial::monomial(i128 coefficient, Exponents exponents) {
  Polynomial p(exponents.size());
  p.add_term(exponents, coefficient);
  return p;
}

Polynomial Polynomial::from_coefficients(std::initializer_list<i128> ascending) {
  return from_coefficients(std::span<const i128>(ascending.begin(), ascending.size()));
}

Polynomial Polynomial::from_coefficients(std::span<const i128> ascending) {
  Polynomial p(1);
  for (std::size_t k = 0; k < ascending.size(); ++k) p.add_term({static_cast<std::uint32_t>(k)}, ascending[k]);
  return p;
}

Polynomial Polynomial::parse(std::string_view text, std::size_t variables) {
  return Parser(text, variables).run();
}

int Polynomial::degree() const {
  if (terms_.empty()) return kZeroDegree;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

int Polynomial::degree_in(std::size_t var) const {
  if (var >= variables_) throw DimensionError("variable index outside the ring");
  if (terms_.empty()) return kZeroDegree;
  std::uint32_t best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, e[var]);
  return static_cast<int>(best);
}

i128 Polynomial::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<i128> Polynomial::univariate_coefficients() const {
  if (variables_ != 1) throw DimensionError("univariate polynomial expected");
  std::vector<i128> out(static_cast<std::size_t>(std::max(degree(), 0)) + 1, 0);
  for (const auto& [e, c] : terms_) out[e[0]] = c;
  return out;
}

i128 Polynomial::evaluate(std::span<const i128> point) const {
  if (point.size() != variables_) {
    throw DimensionError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                         std::to_string(variables_) + " variables");
  }
  i128 sum = 0;
  for (const auto& [e, c] : terms_) {
    i128 t = c;
    for (std::size_t i = 0; i < variables_; ++i) {
      if (e[i] != 0) t = checked_mul(t, checked_pow(point[i], e[i]));
    }
    sum = checked_add(sum, t);
  }
  return sum;
}

i128 Polynomial::evaluate(std::initializer_list<i128> point) const {
  return evaluate(std::span<const i128>(point.begin(), point.size()));
}

i128 Polynomial::operator()(i128 x) const {
  if (variables_ != 1) throw DimensionError("univariate evaluation of a multivariate polynomial");
  // Horner over the dense coefficient vector.
  auto coeffs = univariate_coefficients();
  i128 acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = checked_add(checked_mul(acc, x), *it);
  return acc;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= variables_) throw DimensionError("derivative variable outside the ring");
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, checked_mul(c, static_cast<i128>(e[var])));
  }
  return out;
}

Polynomial Polynomial::embedded(std::size_t variables) const {
  if (variables < variables_) throw DimensionError("cannot embed into a smaller ring");
  Polynomial out(variables);
  for (const auto& [e, c] : terms_) {
    Exponents w(variables, 0);
    std::copy(e.begin(), e.end(), w.begin());
    out.add_term(w, c);
  }
  return out;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> args) const {
  if (args.size() != variables_) throw DimensionError("substitution needs one argument per variable");
  std::size_t target = args.front().variables();
  for (const auto& a : args) {
    if (a.variables() != target) throw DimensionError("substitution arguments live in different rings");
  }
  // powers[i][k] = args[i]^k, grown on demand
  std::vector<std::vector<Polynomial>> powers(variables_);
  for (std::size_t i = 0; i < variables_; ++i) powers[i].push_back(constant(1, target));
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(c, target);
    for (std::size_t i = 0; i < variables_; ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * args[i]);
      if (e[i] != 0) t = t * powers[i][e[i]];
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(1, variables_);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool negative = c < 0;
    i128 magnitude = negative ? checked_sub(0, c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < variables_; ++i) {
      if (e[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += variables_ == 1 ? "x" : "x" + std::to_string(i);
      if (e[i] > 1) factors += "^" + std::to_string(e[i]);
    }
    if (factors.empty()) {
      out += rlab::to_string(magnitude);
    } else if (magnitude == 1) {
      out += factors;
    } else {
      out += rlab::to_string(magnitude) + "*" + factors;
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, checked_sub(0, c));
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, checked_sub(0, c));
  return *this;
}

Polynomial& Polynomial::operator*=(i128 scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c = checked_mul(c, scalar);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b);
  Polynomial out(a.variables_);
  Exponents e(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, checked_mul(ca, cb));
    }
  }
  return out;
}

void Polynomial::add_term(const Exponents& exponents, i128 coefficient) {
  if (exponents.size() != variables_) throw DimensionError("exponent vector length differs from variable count");
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second = checked_add(it->second, coefficient);
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_ring(const Polynomial& other) const {
  if (other.variables_ != variables_) {
    throw DimensionError("polynomials in " + std::to_string(variables_) + " and " +
                         std::to_string(other.variables_) + " variables");
  }
}

DivisionResult divide_by_difference(const Polynomial& p, std::size_t var, std::size_t other) {
  std::size_t n = p.variables();
  if (var >= n || other >= n || var == other) throw DimensionError("bad variable pair for division");
  if (p.is_zero()) return {Polynomial(n), Polynomial(n)};

  // Split p = sum_k c_k * x_var^k with c_k free of x_var.
  int top = p.degree_in(var);
  std::vector<Polynomial> c(static_cast<std::size_t>(top) + 1, Polynomial(n));
  for (const auto& [e, coef] : p.terms()) {
    Exponents rest = e;
    rest[var] = 0;
    c[e[var]] += Polynomial::monomial(coef, rest);
  }
  Polynomial x_other = Polynomial::variable(other, n);
  Polynomial x_var = Polynomial::variable(var, n);

  // Horner: b_{top-1} = c_top, b_{k-1} = c_k + x_other * b_k, remainder = c_0 + x_other * b_0.
  Polynomial quotient(n);
  Polynomial b(n);
  for (int k = top; k >= 1; --k) {
    b = c[static_cast<std::size_t>(k)] + x_other * b;
    quotient += b * x_var.pow(static_cast<unsigned>(k - 1));
  }
  Polynomial remainder = c[0] + x_other * b;
  return {std::move(quotient), std::move(remainder)};
}

Polynomial difference(const Polynomial& phi, int order) {
  if (phi.variables() != 1) throw DimensionError("difference polynomial needs a univariate input");
  if (order == 1) {
    Polynomial y = Polynomial::variable(0, 2), e = Polynomial::variable(1, 2);
    std::vector<Polynomial> shifted{y + e}, plain{y};
    return phi.substitute(shifted) - phi.substitute(plain);
  }
  if (order == 2) {
    Polynomial y = Polynomial::variable(0, 3), e1 = Polynomial::variable(1, 3), e2 = Polynomial::variable(2, 3);
    auto at = [&](const Polynomial& arg) {
      std::vector<Polynomial> a{arg};
      return phi.substitute(a);
    };
    return at(y + e1 + e2) - at(y + e2) - at(y + e1) + at(y);
  }
  throw InvalidArgument("difference order must be 1 or 2");
}

Polynomial quotient_psi(const Polynomial& phi) {
  if (phi.variables() != 1) throw DimensionError("quotient_psi needs a univariate input");
  if (phi.degree() < 1) throw InvalidArgument("quotient_psi needs degree >= 1");
  Polynomial x = Polynomial::variable(0, 2), y = Polynomial::variable(1, 2);
  std::vector<Polynomial> ax{x}, ay{y};
  auto [q, r] = divide_by_difference(phi.substitute(ax) - phi.substitute(ay), 0, 1);
  if (!r.is_zero()) throw DivisionResidueError("phi(x) - phi(y) not divisible by x - y: " + r.to_string());
  return q;
}

Polynomial quotient_psi3(const Polynomial& phi) {
  if (phi.variables() != 1) throw DimensionError("quotient_psi3 needs a univariate input");
  if (phi.degree() < 2) throw InvalidArgument("quotient_psi3 needs degree >= 2");
  // Variables: 0 = x1, 1 = y1, 2 = x2.
  Polynomial x1 = Polynomial::variable(0, 3), y1 = Polynomial::variable(1, 3), x2 = Polynomial::variable(2, 3);
  auto at = [&](const Polynomial& arg) {
    std::vector<Polynomial> a{arg};
    return phi.substitute(a);
  };
  Polynomial numerator = at(x1) - at(y1) + at(x2) - at(x1 - y1 + x2);
  auto first = divide_by_difference(numerator, 0, 1);
  if (!first.remainder.is_zero()) {
    throw DivisionResidueError("remainder after dividing by (x1 - y1): " + first.remainder.to_string());
  }
  auto second = divide_by_difference(first.quotient, 2, 1);
  if (!second.remainder.is_zero()) {
    throw DivisionResidueError("remainder after dividing by (x2 - y1): " + second.remainder.to_string());
  }
  if ((x1 - y1) * (x2 - y1) * second.quotient != numerator) {
    throw DivisionResidueError("quotient does not re-expand to the defining identity");
  }
  return second.quotient;
}

ZeroCount count_zeros(const Polynomial& p, std::span<const std::int64_t> set, std::size_t arity) {
  if (p.variables() != arity) {
    throw DimensionError("polynomial has " + std::to_string(p.variables()) + " variables, arity is " +
                         std::to_string(arity));
  }
  if (p.is_zero()) throw InvalidArgument("zero counting needs a non-zero polynomial");
  ZeroCount out;
  i128 a = static_cast<i128>(set.size());
  out.bound = checked_mul(p.degree(), checked_pow(a, static_cast<unsigned>(arity - 1)));
  if (set.empty()) return out;

  std::vector<std::size_t> index(arity, 0);
  std::vector<i128> point(arity);
  for (;;) {
    for (std::size_t i = 0; i < arity; ++i) point[i] = set[index[i]];
    if (p.evaluate(point) == 0) ++out.zeros;
    std::size_t k = 0;
    while (k < arity && ++index[k] == set.size()) index[k++] = 0;
    if (k == arity) break;
  }
  out.within_bound = static_cast<i128>(out.zeros) <= out.bound;
  return out;
}

bool derivatives_independent(const Polynomial& p1, const Polynomial& p2, int order) {
  if (p1.variables() != 1 || p2.variables() != 1) throw DimensionError("univariate polynomials expected");
  if (order < 1) throw InvalidArgument("derivative order must be positive");
  Polynomial d1 = p1, d2 = p2;
  for (int i = 0; i < order; ++i) {
    d1 = d1.derivative(0);
    d2 = d2.derivative(0);
  }
  if (d1.is_zero() || d2.is_zero()) return false;
  auto a = d1.univariate_coefficients(), b = d2.univariate_coefficients();
  std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0);
  b.resize(n, 0);
  // Rank 2 iff some 2x2 minor is non-zero.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (checked_sub(checked_mul(a[i], b[j]), checked_mul(a[j], b[i])) != 0) return true;
    }
  }
  return false;
}

}  // namespace rlab
