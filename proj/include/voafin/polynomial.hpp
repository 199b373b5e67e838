#pragma once

#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "voafin/rational.hpp"

namespace voafin {

/// Laurent polynomial in one parameter t with rational coefficients.
class LaurentScalar {
 public:
  LaurentScalar() = default;
  LaurentScalar(const Rational& constant);  // NOLINT(google-explicit-constructor)
  static LaurentScalar monomial(const Rational& coeff, int exponent);

  Rational coefficient(int exponent) const;
  void add_term(int exponent, const Rational& coeff);
  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rational>& terms() const { return terms_; }

  /// Exact substitution t = t0. Throws std::domain_error for t0 = 0 when a
  /// negative exponent is present.
  Rational evaluate(const Rational& t0) const;

  LaurentScalar& operator+=(const LaurentScalar& other);
  LaurentScalar& operator-=(const LaurentScalar& other);
  LaurentScalar& operator*=(const LaurentScalar& other);
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(LaurentScalar a, const LaurentScalar& b) { return a *= b; }
  friend LaurentScalar operator-(const LaurentScalar& a) { return LaurentScalar(Rational(-1)) * a; }
  friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.terms_ == b.terms_; }

  /// {"exponent": "num/den"} map.
  nlohmann::json to_json() const;
  std::string to_string(const std::string& var = "t") const;

 private:
  std::map<int, Rational> terms_;
};

/// Polynomial in x, y with LaurentScalar coefficients; keyed by (x-degree, y-degree).
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;

  BivariatePoly() = default;
  static BivariatePoly constant(const LaurentScalar& c);
  static BivariatePoly x_power(int i);
  static BivariatePoly term(int i, int j, const LaurentScalar& c);

  const std::map<Key, LaurentScalar>& terms() const { return terms_; }
  LaurentScalar coefficient(int i, int j) const;
  bool is_zero() const { return terms_.empty(); }
  int x_degree() const;
  int y_degree() const;

  /// Substitute t = t0, leaving a polynomial with constant coefficients.
  std::map<Key, Rational> evaluate_t(const Rational& t0) const;
  /// Restriction to x = 0 (resp. y = 0).
  BivariatePoly at_x_zero() const;
  BivariatePoly at_y_zero() const;

  BivariatePoly& operator+=(const BivariatePoly& other);
  BivariatePoly& operator-=(const BivariatePoly& other);
  BivariatePoly& operator*=(const BivariatePoly& other);
  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }
  friend BivariatePoly operator*(BivariatePoly a, const BivariatePoly& b) { return a *= b; }
  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Key& key, const LaurentScalar& c);
  std::map<Key, LaurentScalar> terms_;
};

}  // namespace voafin
