#include "wgate/periods.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "wgate/error.hpp"

namespace wgate {

std::vector<Cplx> conjugate_periods(const HarmonicField& field) {
  std::vector<Cplx> periods;
  periods.reserve(field.logs().size());
  for (const Cplx& mu : field.logs()) periods.push_back(kTwoPi * mu);
  return periods;
}

namespace {

// circle separating hole j from the rest of the boundary; any separating
// curve yields the same period, circles keep the quadrature spectral
Circle midway_circle(const CircleDomain& domain, int j) {
  const Circle& h = domain.holes()[static_cast<std::size_t>(j)];
  double nearest = domain.outer().radius - std::abs(h.center - domain.outer().center);
  for (int k = 0; k < domain.num_holes(); ++k) {
    if (k == j) continue;
    const Circle& o = domain.holes()[static_cast<std::size_t>(k)];
    nearest = std::min(nearest, std::abs(h.center - o.center) - o.radius);
  }
  return Circle{h.center, std::sqrt(h.radius * nearest)};
}

} // namespace

std::vector<Cplx> conjugate_periods_integrated(const HarmonicField& field, int samples) {
  const CircleDomain& domain = field.domain();
  std::vector<Cplx> periods;
  for (int j = 0; j < domain.num_holes(); ++j) {
    Circle c = midway_circle(domain, j);
    // period of the conjugate = contour integral of the normal derivative
    Cplx acc(0, 0);
    for (int i = 0; i < samples; ++i) {
      double theta = kTwoPi * i / samples;
      Cplx n(std::cos(theta), std::sin(theta));
      Cplx z = c.center + c.radius * n;
      auto [ux, uy] = field.gradient(z);
      acc += ux * n.real() + uy * n.imag();
    }
    periods.push_back(acc * (kTwoPi * c.radius / samples));
  }
  return periods;
}

PeriodMatrix period_matrix(const DirichletSolver& solver) {
  const CircleDomain& domain = solver.domain();
  const int n = domain.num_holes();
  if (n < 1) throw IndexError("period matrix needs at least one hole");

  PeriodMatrix pm;
  pm.alpha.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int k = 0; k < n; ++k) {
    const HarmonicField& omega = solver.harmonic_measure(k);
    for (int j = 0; j < n; ++j)
      pm.alpha[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          omega.logs()[static_cast<std::size_t>(j)].real();
  }

  Eigen::MatrixXd A(n, n);
  double max_abs = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      A(k, j) = pm.alpha[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      max_abs = std::max(max_abs, std::abs(A(k, j)));
    }
  for (int k = 0; k < n; ++k)
    for (int j = k + 1; j < n; ++j)
      if (std::abs(A(k, j) - A(j, k)) > 1e-8 * max_abs)
        throw SingularPeriodMatrix("period matrix is not numerically symmetric: |a_kj - a_jk| = " +
                                   std::to_string(std::abs(A(k, j) - A(j, k))));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  pm.smallest_singular_value = svd.singularValues().minCoeff();
  pm.largest_singular_value = svd.singularValues().maxCoeff();
  if (pm.smallest_singular_value <= 1e-10 * pm.largest_singular_value)
    throw SingularPeriodMatrix("smallest singular value " +
                               std::to_string(pm.smallest_singular_value) +
                               " is below 1e-10 of the largest");
  return pm;
}

PeriodMatrix period_matrix(const CircleDomain& domain, const SolverConfig& config) {
  DirichletSolver solver(domain, config);
  return period_matrix(solver);
}

ConjugateCorrection make_single_valued(const HarmonicField& field,
                                       const DirichletSolver& solver) {
  const int n = field.domain().num_holes();
  ConjugateCorrection out{std::vector<Cplx>(static_cast<std::size_t>(n), Cplx(0, 0)), field};
  if (n == 0) return out;

  PeriodMatrix pm = period_matrix(solver);
  Eigen::MatrixXd At(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      At(j, k) = pm.alpha[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
  Eigen::VectorXd rhs_re(n), rhs_im(n);
  for (int j = 0; j < n; ++j) {
    rhs_re(j) = -field.logs()[static_cast<std::size_t>(j)].real();
    rhs_im(j) = -field.logs()[static_cast<std::size_t>(j)].imag();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(At);
  Eigen::VectorXd c_re = qr.solve(rhs_re);
  Eigen::VectorXd c_im = qr.solve(rhs_im);

  for (int k = 0; k < n; ++k) {
    Cplx ck(c_re(k), c_im(k));
    out.constants[static_cast<std::size_t>(k)] = ck;
    HarmonicField term = solver.harmonic_measure(k);
    term.scale(ck);
    out.corrected += term;
  }
  return out;
}

std::pair<HoloFunction, HoloFunction> split_PQ(const HarmonicField& field) {
  double scale = std::max(1.0, field.coeff_norm());
  for (const Cplx& mu : field.logs())
    if (std::abs(mu) > 1e-10 * scale)
      throw ResidualLogPeriod("field still carries a log coefficient of magnitude " +
                              std::to_string(std::abs(mu)));
  return {field.P(), field.Q()};
}

} // namespace wgate
