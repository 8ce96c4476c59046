#ifndef WGATE_LAURENT_HPP
#define WGATE_LAURENT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "wgate/boundary.hpp"
#include "wgate/common.hpp"

namespace wgate {

/// Finite Laurent polynomial sum c_k z^k, k in [min_power, max_power].
class LaurentPoly {
public:
  LaurentPoly() = default;
  LaurentPoly(int min_power, std::vector<Cplx> coeffs); // coeffs[i] multiplies z^(min_power+i)
  static LaurentPoly constant(Cplx c);
  static LaurentPoly monomial(int power, Cplx c);

  int min_power() const { return min_power_; }
  int max_power() const { return min_power_ + static_cast<int>(coeffs_.size()) - 1; }
  Cplx coeff(int power) const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_polynomial() const { return coeffs_.empty() || min_power_ >= 0; }

  /// Coefficients of z^0..z^deg; throws InvalidInput unless is_polynomial().
  std::vector<Cplx> polynomial_coeffs() const;

  Cplx eval(Cplx z) const;

  LaurentPoly operator+(const LaurentPoly& other) const;
  LaurentPoly operator-(const LaurentPoly& other) const;
  LaurentPoly operator*(const LaurentPoly& other) const;
  /// Division is defined when `other` is a single monomial.
  LaurentPoly operator/(const LaurentPoly& other) const;
  LaurentPoly pow(int exponent) const;

  std::string to_string() const;

private:
  void trim();
  int min_power_ = 0;
  std::vector<Cplx> coeffs_;
};

/// Converts a holomorphic expression (no conj) into a Laurent polynomial.
/// Division is accepted only by monomials, so e.g. "1/z^2 + z - 0.5" works.
LaurentPoly laurent_from_expression(const expr::Node& node);
LaurentPoly parse_laurent(std::string_view text);

} // namespace wgate

#endif
