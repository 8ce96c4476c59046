#ifndef WGATE_TESTS_SUPPORT_DOMAINS_HPP
#define WGATE_TESTS_SUPPORT_DOMAINS_HPP

#include "wgate/geometry.hpp"

namespace wgate::testing {

inline CircleDomain unit_disc() { return CircleDomain(Circle{Cplx(0, 0), 1.0}, {}); }

inline CircleDomain annulus(double rho) {
  return CircleDomain(Circle{Cplx(0, 0), 1.0}, {Circle{Cplx(0, 0), rho}});
}

inline CircleDomain two_holes() {
  return CircleDomain(Circle{Cplx(0, 0), 1.0},
                      {Circle{Cplx(-0.4, 0), 0.15}, Circle{Cplx(0.4, 0), 0.15}});
}

} // namespace wgate::testing

#endif
