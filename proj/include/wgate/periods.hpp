#ifndef WGATE_PERIODS_HPP
#define WGATE_PERIODS_HPP

#include <utility>
#include <vector>

#include "wgate/common.hpp"
#include "wgate/dirichlet.hpp"

namespace wgate {

/// alpha[k][j] = conjugate period of the harmonic measure omega_k around the
/// hole component Gamma_j, divided by 2*pi. Real, symmetric, nonsingular.
struct PeriodMatrix {
  std::vector<std::vector<double>> alpha;
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;

  int size() const { return static_cast<int>(alpha.size()); }
};

/// Periods of the (multivalued) harmonic conjugate around each hole,
/// read off the stored log coefficients: 2*pi*mu_j.
std::vector<Cplx> conjugate_periods(const HarmonicField& field);

/// Independent route: numerically integrates the normal derivative of the
/// field around circles halfway between each hole and the nearest obstruction.
std::vector<Cplx> conjugate_periods_integrated(const HarmonicField& field, int samples = 512);

PeriodMatrix period_matrix(const DirichletSolver& solver);
PeriodMatrix period_matrix(const CircleDomain& domain, const SolverConfig& config = {});

struct ConjugateCorrection {
  std::vector<Cplx> constants;  // c_j, one per hole
  HarmonicField corrected;      // field + sum c_j * omega_j, log-free
};

/// Solves system (alpha^T c = -mu) for the unique correction constants that
/// cancel all conjugate periods.
ConjugateCorrection make_single_valued(const HarmonicField& field, const DirichletSolver& solver);

/// Splits a log-free field into holomorphic parts: u = P + conj(Q).
/// Throws ResidualLogPeriod if log coefficients exceed 1e-10 relative.
std::pair<HoloFunction, HoloFunction> split_PQ(const HarmonicField& field);

} // namespace wgate

#endif
