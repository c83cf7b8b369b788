// Exact coefficient arithmetic: rationals and sparse multivariate polynomials.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ob {

using Integer = mpz_class;
using Rational = mpq_class;

// Indeterminate families, listed in their canonical order.
enum class SymbolKind : std::uint8_t { Delta = 0, M = 1, Lambda = 2, U = 3 };

class Symbol {
 public:
  constexpr Symbol(SymbolKind kind, std::uint32_t index)
      : code_((static_cast<std::uint32_t>(kind) << 24) | (index & 0xFFFFFFu)) {}
  static constexpr Symbol from_code(std::uint32_t code) {
    return Symbol(static_cast<SymbolKind>(code >> 24), code & 0xFFFFFFu);
  }
  static constexpr Symbol delta(std::uint32_t k) { return {SymbolKind::Delta, k}; }
  static constexpr Symbol m(std::uint32_t i) { return {SymbolKind::M, i}; }
  static constexpr Symbol lambda(std::uint32_t i) { return {SymbolKind::Lambda, i}; }
  static constexpr Symbol u() { return {SymbolKind::U, 0}; }

  constexpr SymbolKind kind() const { return static_cast<SymbolKind>(code_ >> 24); }
  constexpr std::uint32_t index() const { return code_ & 0xFFFFFFu; }
  constexpr std::uint32_t code() const { return code_; }
  std::string name() const;

  constexpr auto operator<=>(const Symbol&) const = default;

 private:
  std::uint32_t code_;
};

// Power product of symbols; factors sorted by symbol code, exponents positive.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(Symbol s, std::uint32_t exp = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(Symbol s) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& o) const;
  // Quotient if o divides *this.
  std::optional<Monomial> divide(const Monomial& o) const;

  // Split into the part built from `kind` symbols and the remainder.
  std::pair<Monomial, Monomial> split(SymbolKind kind) const;

  // Graded lexicographic comparison in the canonical symbol order.
  std::strong_ordering grlex(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
  bool operator<(const Monomial& o) const { return grlex(o) < 0; }

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

// Sparse polynomial with rational coefficients. Terms are kept in strictly
// decreasing grlex order with no zero coefficients, so equality is structural.
class Scalar {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(const Integer& v);  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v);  // NOLINT(google-explicit-constructor)
  static Scalar variable(Symbol s);
  static Scalar monomial(const Monomial& m, const Rational& c = 1);
  static Scalar from_terms(std::vector<Term> terms);  // any order, duplicates merged

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_integer() const;
  // Requires is_constant().
  Rational constant_value() const;
  Rational constant_term() const;
  std::uint32_t total_degree() const;
  bool has_kind(SymbolKind kind) const;
  std::uint32_t max_index(SymbolKind kind) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar pow(std::uint32_t e) const;
  bool operator==(const Scalar& o) const;

  // Exact division; nullopt if o does not divide *this.
  std::optional<Scalar> divide_exact(const Scalar& o) const;

  // Replace symbols; symbols for which `f` returns nullopt are kept.
  Scalar substitute(const std::function<std::optional<Scalar>(Symbol)>& f) const;
  // Group the polynomial by the monomials in symbols of `kind`.
  std::map<Monomial, Scalar> collect(SymbolKind kind) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

// Canonical text of a rational: "p" or "p/q".
std::string rational_string(const Rational& r);

// Univariate polynomial in u with Scalar coefficients, ascending powers.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> coeffs);
  static UPoly from_scalar(const Scalar& s);  // reads off powers of u
  static UPoly linear_root(const Scalar& root);  // u - root

  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_monic() const;
  const Scalar& coeff(std::size_t i) const;
  Scalar to_scalar() const;
  UPoly operator*(const UPoly& o) const;
  bool operator==(const UPoly& o) const { return coeffs_ == o.coeffs_; }
  // Quotient and remainder by a monic divisor.
  std::pair<UPoly, UPoly> divmod_monic(const UPoly& divisor) const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

}  // namespace ob
