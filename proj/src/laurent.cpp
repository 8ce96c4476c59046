#include "wgate/laurent.hpp"

#include <cmath>

#include "wgate/error.hpp"

namespace wgate {

namespace {
constexpr double kTrimTol = 0.0; // exact zeros only; coefficients are exact arithmetic
}

LaurentPoly::LaurentPoly(int min_power, std::vector<Cplx> coeffs)
    : min_power_(min_power), coeffs_(std::move(coeffs)) {
  trim();
}

LaurentPoly LaurentPoly::constant(Cplx c) { return LaurentPoly(0, {c}); }

LaurentPoly LaurentPoly::monomial(int power, Cplx c) { return LaurentPoly(power, {c}); }

Cplx LaurentPoly::coeff(int power) const {
  int i = power - min_power_;
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Cplx(0, 0);
  return coeffs_[static_cast<std::size_t>(i)];
}

std::vector<Cplx> LaurentPoly::polynomial_coeffs() const {
  if (!is_polynomial()) throw InvalidInput("Laurent polynomial has negative powers");
  std::vector<Cplx> out(static_cast<std::size_t>(std::max(0, max_power() + 1)), Cplx(0, 0));
  if (coeffs_.empty()) return {Cplx(0, 0)};
  for (int k = min_power_; k <= max_power(); ++k) out[static_cast<std::size_t>(k)] = coeff(k);
  return out;
}

Cplx LaurentPoly::eval(Cplx z) const {
  if (coeffs_.empty()) return Cplx(0, 0);
  // Horner over the nonnegative part, explicit powers for the principal part.
  Cplx acc(0, 0);
  if (max_power() >= 0)
    for (int k = max_power(); k >= 0; --k) acc = acc * z + coeff(k);
  if (min_power_ < 0) {
    if (z == Cplx(0, 0)) throw DivisionByZero("Laurent polynomial evaluated at its pole");
    Cplx inv = Cplx(1, 0) / z;
    Cplx p = inv;
    for (int k = -1; k >= min_power_; --k) {
      acc += coeff(k) * p;
      p *= inv;
    }
  }
  return acc;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
  if (coeffs_.empty()) return other;
  if (other.coeffs_.empty()) return *this;
  int lo = std::min(min_power_, other.min_power_);
  int hi = std::max(max_power(), other.max_power());
  std::vector<Cplx> out(static_cast<std::size_t>(hi - lo + 1), Cplx(0, 0));
  for (int k = lo; k <= hi; ++k) out[static_cast<std::size_t>(k - lo)] = coeff(k) + other.coeff(k);
  return LaurentPoly(lo, std::move(out));
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const {
  return *this + (other * LaurentPoly::constant(Cplx(-1, 0)));
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& other) const {
  if (coeffs_.empty() || other.coeffs_.empty()) return LaurentPoly();
  int lo = min_power_ + other.min_power_;
  std::vector<Cplx> out(coeffs_.size() + other.coeffs_.size() - 1, Cplx(0, 0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * other.coeffs_[j];
  return LaurentPoly(lo, std::move(out));
}

LaurentPoly LaurentPoly::operator/(const LaurentPoly& other) const {
  if (other.coeffs_.empty()) throw DivisionByZero("division by the zero polynomial");
  if (other.coeffs_.size() != 1)
    throw InvalidInput("division is only supported by constants and monomials here");
  Cplx c = other.coeffs_.front();
  if (c == Cplx(0, 0)) throw DivisionByZero("division by zero coefficient");
  LaurentPoly inv = LaurentPoly::monomial(-other.min_power_, Cplx(1, 0) / c);
  return *this * inv;
}

LaurentPoly LaurentPoly::pow(int exponent) const {
  if (exponent == 0) return LaurentPoly::constant(Cplx(1, 0));
  if (exponent < 0) {
    if (coeffs_.size() != 1)
      throw InvalidInput("negative powers are only supported for monomials");
    return LaurentPoly::constant(Cplx(1, 0)) / this->pow(-exponent);
  }
  LaurentPoly acc = LaurentPoly::constant(Cplx(1, 0));
  for (int i = 0; i < exponent; ++i) acc = acc * (*this);
  return acc;
}

void LaurentPoly::trim() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && std::abs(coeffs_[lead]) <= kTrimTol) ++lead;
  std::size_t tail = coeffs_.size();
  while (tail > lead && std::abs(coeffs_[tail - 1]) <= kTrimTol) --tail;
  if (lead == tail) {
    coeffs_.clear();
    min_power_ = 0;
    return;
  }
  coeffs_ = std::vector<Cplx>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lead),
                              coeffs_.begin() + static_cast<std::ptrdiff_t>(tail));
  min_power_ += static_cast<int>(lead);
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = min_power_; k <= max_power(); ++k) {
    Cplx c = coeff(k);
    if (c == Cplx(0, 0)) continue;
    if (!out.empty()) out += " + ";
    out += "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
    if (k != 0) out += "*z^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

LaurentPoly laurent_from_expression(const expr::Node& node) {
  using K = expr::Node::Kind;
  switch (node.kind) {
    case K::Z: return LaurentPoly::monomial(1, Cplx(1, 0));
    case K::Literal: return LaurentPoly::constant(node.literal);
    case K::Conj: throw InvalidInput("conj(...) is not holomorphic; not allowed here");
    case K::Neg: return LaurentPoly::constant(Cplx(-1, 0)) * laurent_from_expression(*node.lhs);
    case K::Add: return laurent_from_expression(*node.lhs) + laurent_from_expression(*node.rhs);
    case K::Sub: return laurent_from_expression(*node.lhs) - laurent_from_expression(*node.rhs);
    case K::Mul: return laurent_from_expression(*node.lhs) * laurent_from_expression(*node.rhs);
    case K::Div: return laurent_from_expression(*node.lhs) / laurent_from_expression(*node.rhs);
    case K::Pow: return laurent_from_expression(*node.lhs).pow(node.exponent);
  }
  throw InvalidInput("corrupt expression node");
}

LaurentPoly parse_laurent(std::string_view text) {
  return laurent_from_expression(*expr::parse(text));
}

} // namespace wgate
