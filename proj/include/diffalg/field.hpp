#pragma once

// Exact arithmetic in Q(v_1, ..., v_N).
//
// Polynomials are sparse, with terms kept in descending graded
// lexicographic order (total degree first, then lexicographic with the
// first FieldSpec variable most significant).  Rational functions are
// stored reduced, with a denominator whose leading coefficient is 1, so
// that two values are equal exactly when their representations are.
//
// A polynomial remembers how many variables it is written over.  The one
// exception is a constant built without a field (nvars() == 0): it is
// promoted on contact with any other operand, which lets literals such as
// RatFun(1) mix freely with field elements.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "diffalg/error.hpp"

namespace diffalg {

using Rational = mpq_class;
using Exponents = std::vector<std::uint32_t>;

/// Ordered list of distinct variable names.
class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(std::vector<std::string> variables);

  std::size_t size() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::string& name(std::size_t i) const { return variables_.at(i); }

  /// Throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const FieldSpec& other) const = default;

 private:
  std::vector<std::string> variables_;
};

/// Graded lexicographic comparison; true when a is strictly greater.
bool grlex_greater(const Exponents& a, const Exponents& b);

class MultiPoly {
 public:
  struct Term {
    Exponents exp;
    Rational coeff;
  };

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t index);
  static MultiPoly monomial(Exponents exp, const Rational& c);
  /// Builds from arbitrary terms: merges duplicates, drops zeros, sorts.
  static MultiPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; requires is_constant().
  Rational constant_value() const;
  /// Leading term in grlex order; requires !is_zero().
  const Term& leading() const { return terms_.front(); }

  std::uint32_t degree(std::size_t var) const;
  std::uint32_t total_degree() const;
  bool depends_on(std::size_t var) const;
  /// Smallest variable index occurring, if any.
  std::optional<std::size_t> first_variable() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;
  MultiPoly derivative(std::size_t var) const;
  /// Same polynomial re-expressed over `nvars` variables.  Only valid for
  /// the unbound constant or when nvars already matches.
  MultiPoly promoted(std::size_t nvars) const;
  /// Divides by the leading coefficient (zero stays zero).
  MultiPoly monic() const;

  /// Coefficients with respect to `var`: degree -> coefficient (with the
  /// `var` exponent zeroed).  Zero coefficients are omitted.
  std::map<std::uint32_t, MultiPoly> coefficients_in(std::size_t var) const;
  static MultiPoly from_coefficients(std::size_t nvars, std::size_t var,
                                     const std::map<std::uint32_t, MultiPoly>& coeffs);

  /// Polynomial evaluation of the ring homomorphism v_i -> images[i].
  /// Images share one target variable count.
  MultiPoly substitute(const std::vector<MultiPoly>& images, std::size_t target_nvars) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Exact quotient a / b.  Throws Error when b does not divide a.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);
/// Quotient when b divides a, std::nullopt otherwise.
std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b);
/// Monic greatest common divisor over Q (0 when both are 0).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
/// Same result computed by the subresultant sequence alone (slower; kept
/// as a cross-check for gcd).
MultiPoly gcd_prs(const MultiPoly& a, const MultiPoly& b);
/// Pseudo-remainder of a by b with respect to `var`.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var);

class RatFun {
 public:
  RatFun() = default;
  RatFun(long value);  // NOLINT(google-explicit-constructor)
  RatFun(const Rational& value);  // NOLINT(google-explicit-constructor)
  explicit RatFun(MultiPoly num);
  RatFun(MultiPoly num, MultiPoly den);

  static RatFun variable(std::size_t nvars, std::size_t index);
  static RatFun constant(std::size_t nvars, const Rational& c);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  std::size_t nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& other);
  RatFun& operator-=(const RatFun& other);
  RatFun& operator*=(const RatFun& other);
  RatFun& operator/=(const RatFun& other);
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFun inverse() const;
  RatFun pow(int e) const;
  RatFun derivative(std::size_t var) const;
  RatFun promoted(std::size_t nvars) const;

  /// Image under v_i -> images[i] (all images over `target_nvars`
  /// variables).  Throws DenominatorVanishes at a pole.
  RatFun substitute(const std::vector<RatFun>& images, std::size_t target_nvars) const;

 private:
  void normalize();
  // Cancels against a known superset of the common factors, then makes den monic.
  void normalize_against(const MultiPoly& factor);

  MultiPoly num_ = MultiPoly(0);
  MultiPoly den_ = MultiPoly::constant(0, 1);
};

enum class ArithOp { Add, Sub, Mul, Div };
RatFun ratfun_arith(ArithOp op, const RatFun& x, const RatFun& y);

/// Partial derivative by variable name (throws UnknownVariable).
RatFun partial_derivative(const RatFun& x, const FieldSpec& field, std::string_view var);

/// Substitution given by a partial assignment of source variable names to
/// target elements.  Every variable x depends on must be assigned.
RatFun substitute(const RatFun& x, const FieldSpec& source, const std::map<std::string, RatFun>& assignment,
                  const FieldSpec& target);

/// Canonical text `(num)/(den)`, e.g. `(-1*t)/(x^2)`.
std::string to_string(const RatFun& x, const FieldSpec& field);
std::string to_string(const MultiPoly& p, const FieldSpec& field);

/// Parses an expression over `field`: integers, variables, + - * / ^,
/// parentheses, unary minus.  Accepts the canonical rendering.
RatFun parse_ratfun(std::string_view text, const FieldSpec& field);

}  // namespace diffalg
