#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlab/integer.hpp"

namespace rlab {

using Exponents = std::vector<std::uint32_t>;

// Graded order: higher total degree first, ties broken by descending lex order.
// Printing and serialization follow this order.
struct GradedOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact integer coefficients.
///
/// Terms with a zero coefficient are never stored. All arithmetic is checked:
/// a coefficient or evaluation that leaves the signed 128-bit range throws
/// OverflowError instead of wrapping.
class Polynomial {
 public:
  static constexpr int kZeroDegree = -1;

  using TermMap = std::map<Exponents, i128, GradedOrder>;

  explicit Polynomial(std::size_t variables = 1);

  static Polynomial constant(i128 value, std::size_t variables = 1);
  static Polynomial variable(std::size_t index, std::size_t variables);
  static Polynomial monomial(i128 coefficient, Exponents exponents);

  /// Univariate polynomial from ascending coefficients c0 + c1 x + ...
  static Polynomial from_coefficients(std::initializer_list<i128> ascending);
  static Polynomial from_coefficients(std::span<const i128> ascending);

  /// Parses "x^3 - 2*x", "3*(x0+x1)*x2", ... . The variable `x` is an alias
  /// of `x0`. With variables == 0 the count is inferred from the highest index.
  static Polynomial parse(std::string_view text, std::size_t variables = 0);

  std::size_t variables() const { return variables_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  int degree_in(std::size_t var) const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  i128 coefficient(const Exponents& exponents) const;

  /// Ascending coefficient vector of a univariate polynomial.
  std::vector<i128> univariate_coefficients() const;

  i128 evaluate(std::span<const i128> point) const;
  i128 evaluate(std::initializer_list<i128> point) const;
  /// Univariate shortcut.
  i128 operator()(i128 x) const;

  Polynomial derivative(std::size_t var) const;

  /// Same polynomial viewed in a ring with more variables.
  Polynomial embedded(std::size_t variables) const;

  /// Replaces variable i by args[i]. All args share one variable count.
  Polynomial substitute(std::span<const Polynomial> args) const;

  Polynomial pow(unsigned exponent) const;

  std::string to_string() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(i128 scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, i128 s) { return a *= s; }
  friend Polynomial operator*(i128 s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponents& exponents, i128 coefficient);
  void require_same_ring(const Polynomial& other) const;

  std::size_t variables_;
  TermMap terms_;
};

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Synthetic division of p by (x_var - x_other). The remainder is p with
/// x_var replaced by x_other.
DivisionResult divide_by_difference(const Polynomial& p, std::size_t var, std::size_t other);

/// Order 1: phi(y+e) - phi(y) in variables (y, e).
/// Order 2: phi(y+e1+e2) - phi(y+e2) - phi(y+e1) + phi(y) in (y, e1, e2).
Polynomial difference(const Polynomial& phi, int order);

/// psi(x, y) with (x - y) psi(x, y) = phi(x) - phi(y).
Polynomial quotient_psi(const Polynomial& phi);

/// psi(x1, y1, x2) with
/// (x1 - y1)(x2 - y1) psi = phi(x1) - phi(y1) + phi(x2) - phi(x1 - y1 + x2).
/// Throws DivisionResidueError if either division leaves a remainder.
Polynomial quotient_psi3(const Polynomial& phi);

struct ZeroCount {
  std::uint64_t zeros = 0;
  i128 bound = 0;  // deg(p) * A^(s-1)
  bool within_bound = true;
};

/// Number of tuples in set^arity where p vanishes, by enumeration.
ZeroCount count_zeros(const Polynomial& p, std::span<const std::int64_t> set, std::size_t arity);

/// True iff the order-th derivatives of two univariate polynomials are
/// linearly independent over Q.
bool derivatives_independent(const Polynomial& p1, const Polynomial& p2, int order);

}  // namespace rlab
