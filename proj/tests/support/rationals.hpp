#ifndef WGATE_TESTS_SUPPORT_RATIONALS_HPP
#define WGATE_TESTS_SUPPORT_RATIONALS_HPP

// Random rational samplers with zeros and poles placed in known zones
// (well inside the domain, inside holes, outside the closure), so the
// analytic mapping degree is available as an exact oracle.

#include <cmath>
#include <random>
#include <vector>

#include "wgate/common.hpp"
#include "wgate/geometry.hpp"

namespace wgate::testing {

struct RationalTestFn {
  std::vector<Cplx> zeros; // with repetition for multiplicity
  std::vector<Cplx> poles;
  Cplx scale{1, 0};

  Cplx operator()(Cplx z) const {
    Cplx acc = scale;
    for (const Cplx& w : zeros) acc *= (z - w);
    for (const Cplx& p : poles) acc /= (z - p);
    return acc;
  }

  int analytic_degree(const CircleDomain& domain) const {
    int d = 0;
    for (const Cplx& w : zeros)
      if (domain.contains(w)) ++d;
    for (const Cplx& p : poles)
      if (domain.contains(p)) --d;
    return d;
  }

  RationalTestFn times(const RationalTestFn& other) const {
    RationalTestFn out = *this;
    out.zeros.insert(out.zeros.end(), other.zeros.begin(), other.zeros.end());
    out.poles.insert(out.poles.end(), other.poles.begin(), other.poles.end());
    out.scale *= other.scale;
    return out;
  }
};

// placement zones keep every zero and pole a fixed distance away from all
// contour systems of the default schedule
inline Cplx random_zone_point(const CircleDomain& domain, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double pick = unit(rng);
  const Circle& outer = domain.outer();
  if (pick < 0.5) {
    // deep interior
    for (;;) {
      Cplx z = outer.center +
               Cplx((2 * unit(rng) - 1) * outer.radius, (2 * unit(rng) - 1) * outer.radius);
      if (domain.boundary_distance(z) >= 0.3 * outer.radius) return z;
    }
  }
  if (pick < 0.75 && domain.num_holes() > 0) {
    std::uniform_int_distribution<int> which(0, domain.num_holes() - 1);
    const Circle& hole = domain.holes()[static_cast<std::size_t>(which(rng))];
    double r = 0.5 * hole.radius * unit(rng);
    double a = kTwoPi * unit(rng);
    return hole.center + Cplx(r * std::cos(a), r * std::sin(a));
  }
  double r = outer.radius * (1.5 + unit(rng));
  double a = kTwoPi * unit(rng);
  return outer.center + Cplx(r * std::cos(a), r * std::sin(a));
}

inline RationalTestFn random_rational(const CircleDomain& domain, std::mt19937_64& rng,
                                      int max_factors = 4) {
  std::uniform_int_distribution<int> n_zeros(0, max_factors);
  std::uniform_int_distribution<int> n_poles(0, max_factors / 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RationalTestFn fn;
  int nz = n_zeros(rng), np = n_poles(rng);
  for (int i = 0; i < nz; ++i) fn.zeros.push_back(random_zone_point(domain, rng));
  for (int i = 0; i < np; ++i) fn.poles.push_back(random_zone_point(domain, rng));
  double ang = kTwoPi * unit(rng);
  fn.scale = Cplx(std::cos(ang), std::sin(ang)) * (0.5 + unit(rng));
  return fn;
}

} // namespace wgate::testing

#endif
