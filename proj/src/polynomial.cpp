#include "voafin/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace voafin {

LaurentScalar::LaurentScalar(const Rational& constant) { add_term(0, constant); }

LaurentScalar LaurentScalar::monomial(const Rational& coeff, int exponent) {
  LaurentScalar out;
  out.add_term(exponent, coeff);
  return out;
}

Rational LaurentScalar::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentScalar::add_term(int exponent, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational LaurentScalar::evaluate(const Rational& t0) const {
  Rational out = 0;
  for (const auto& [e, c] : terms_) {
    if (t0 == 0) {
      if (e < 0) throw std::domain_error("Laurent evaluation at t = 0 with a negative exponent");
      if (e == 0) out += c;
      continue;
    }
    out += c * pow(t0, e);
  }
  return out;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& other) {
  LaurentScalar out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) out.add_term(e1 + e2, c1 * c2);
  }
  *this = std::move(out);
  return *this;
}

nlohmann::json LaurentScalar::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [e, c] : terms_) out[std::to_string(e)] = voafin::to_string(c);
  return out;
}

std::string LaurentScalar::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    if (e == 0) {
      os << to_short_string(mag);
      continue;
    }
    if (mag != 1) os << to_short_string(mag) << "*";
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

BivariatePoly BivariatePoly::constant(const LaurentScalar& c) { return term(0, 0, c); }

BivariatePoly BivariatePoly::x_power(int i) { return term(i, 0, LaurentScalar(Rational(1))); }

BivariatePoly BivariatePoly::term(int i, int j, const LaurentScalar& c) {
  BivariatePoly out;
  out.add_term({i, j}, c);
  return out;
}

void BivariatePoly::add_term(const Key& key, const LaurentScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentScalar BivariatePoly::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? LaurentScalar() : it->second;
}

int BivariatePoly::x_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first);
  return d;
}

int BivariatePoly::y_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.second);
  return d;
}

std::map<BivariatePoly::Key, Rational> BivariatePoly::evaluate_t(const Rational& t0) const {
  std::map<Key, Rational> out;
  for (const auto& [k, c] : terms_) {
    Rational v = c.evaluate(t0);
    if (v != 0) out[k] = v;
  }
  return out;
}

BivariatePoly BivariatePoly::at_x_zero() const {
  BivariatePoly out;
  for (const auto& [k, c] : terms_) {
    if (k.first == 0) out.add_term(k, c);
  }
  return out;
}

BivariatePoly BivariatePoly::at_y_zero() const {
  BivariatePoly out;
  for (const auto& [k, c] : terms_) {
    if (k.second == 0) out.add_term(k, c);
  }
  return out;
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

BivariatePoly& BivariatePoly::operator*=(const BivariatePoly& other) {
  BivariatePoly out;
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : other.terms_) out.add_term({k1.first + k2.first, k1.second + k2.second}, c1 * c2);
  }
  *this = std::move(out);
  return *this;
}

std::string BivariatePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (k.first) os << "*x^" << k.first;
    if (k.second) os << "*y^" << k.second;
  }
  return os.str();
}

}  // namespace voafin
