#ifndef WGATE_WITNESS_HPP
#define WGATE_WITNESS_HPP

#include <utility>
#include <vector>

#include "wgate/boundary.hpp"
#include "wgate/common.hpp"
#include "wgate/degree.hpp"
#include "wgate/dirichlet.hpp"

namespace wgate {

/// Certificate of non-extendibility: after rotating the data by e^{i gamma},
/// the boundary function f~ + h has mapping degree -1, where
/// f~ = H((Z-a) f_gamma)/(z-a) and h = -F_a - G_a.
struct Witness {
  Cplx a;
  double gamma = 0.0;
  std::vector<Cplx> c; // correction constants of H(f)
  std::vector<Cplx> d; // correction constants of H(Zf)
  std::vector<Cplx> beta; // boundary constants of Phi_a (post-rotation), outer last
  HoloFunction F_a;
  HoloFunction G_a;
  HoloFunction h; // -F_a - G_a
  HarmonicField numerator; // H((Z-a) f_gamma); f~ = numerator / (z - a)
  double re_w_residual = 0.0; // sup |Re W + Re Phi_a| over the probe grid
  DegreeResult degree;

  Cplx f_tilde(Cplx z) const { return numerator.evaluate_unchecked(z) / (z - a); }
  Cplx psi(Cplx z) const { return f_tilde(z) + h.eval(z); }
};

/// Correction constants c (for H(f)) and d (for H(Zf)); empty on the disc.
std::pair<std::vector<Cplx>, std::vector<Cplx>> cd_constants(const BoundaryFunction& f,
                                                             const DirichletSolver& solver);

/// Phi_a = sum_j (d_j - a c_j)(omega_j - omega_j(a)) - A(a, f), together with
/// its per-component boundary constants beta (holes first, outer last).
std::pair<HarmonicField, std::vector<Cplx>> phi_a(Cplx a, const DirichletSolver& solver,
                                                  const HarmonicField& Hf,
                                                  const HarmonicField& HZf,
                                                  const std::vector<Cplx>& c,
                                                  const std::vector<Cplx>& d);

/// Scans a low-discrepancy interior grid for a maximizing min_j |beta_j|,
/// then 64 equispaced angles for gamma maximizing min_j |Re(e^{i gamma} beta_j)|.
std::pair<Cplx, double> find_good_a_gamma(const BoundaryFunction& f, const SolverConfig& config = {},
                                          int grid_size = 128);

Witness build_witness(const BoundaryFunction& f, Cplx a, double gamma,
                      const SolverConfig& config = {});

/// Recomputes the degree of f~ + h from scratch on a fresh contour schedule
/// and re-checks the bounded-away certificate. Throws DegreeNotMinusOne.
DegreeResult verify_witness(const Witness& witness, const CircleDomain& domain);

} // namespace wgate

#endif
