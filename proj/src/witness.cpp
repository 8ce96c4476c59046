#include "wgate/witness.hpp"

#include <cmath>

#include "wgate/error.hpp"
#include "wgate/extend.hpp"
#include "wgate/parallel.hpp"
#include "wgate/periods.hpp"

namespace wgate {

std::pair<std::vector<Cplx>, std::vector<Cplx>> cd_constants(const BoundaryFunction& f,
                                                             const DirichletSolver& solver) {
  if (f.domain().num_holes() == 0) return {{}, {}};
  HarmonicField Hf = solver.extend_H(f);
  HarmonicField HZf = solver.extend_HZ(f);
  return {make_single_valued(Hf, solver).constants, make_single_valued(HZf, solver).constants};
}

std::pair<HarmonicField, std::vector<Cplx>> phi_a(Cplx a, const DirichletSolver& solver,
                                                  const HarmonicField& Hf,
                                                  const HarmonicField& HZf,
                                                  const std::vector<Cplx>& c,
                                                  const std::vector<Cplx>& d) {
  const CircleDomain& domain = solver.domain();
  const int holes = domain.num_holes();
  if (static_cast<int>(c.size()) != holes || static_cast<int>(d.size()) != holes)
    throw InvalidInput("c, d must have one constant per hole");

  Cplx A = HZf.evaluate(a) - a * Hf.evaluate(a);
  HarmonicField phi(domain, Hf.degree());
  Cplx shift = -A;
  std::vector<Cplx> beta(static_cast<std::size_t>(holes) + 1, Cplx(0, 0));
  for (int j = 0; j < holes; ++j) {
    Cplx weight = d[static_cast<std::size_t>(j)] - a * c[static_cast<std::size_t>(j)];
    HarmonicField term = solver.harmonic_measure(j);
    Cplx omega_at_a = term.evaluate(a);
    term.scale(weight);
    phi += term;
    shift -= weight * omega_at_a;
    beta[static_cast<std::size_t>(j)] = weight;
  }
  phi.add_constant(shift);
  for (int j = 0; j < holes; ++j) beta[static_cast<std::size_t>(j)] += shift;
  beta.back() = shift;
  return {std::move(phi), std::move(beta)};
}

namespace {

struct WitnessContext {
  DirichletSolver solver;
  HarmonicField Hf, HZf;
  std::vector<Cplx> c, d;

  WitnessContext(const BoundaryFunction& f, const SolverConfig& config)
      : solver(f.domain(), config), Hf(solver.extend_H(f)), HZf(solver.extend_HZ(f)) {
    if (f.domain().num_holes() > 0) {
      c = make_single_valued(Hf, solver).constants;
      d = make_single_valued(HZf, solver).constants;
    }
  }

  std::vector<Cplx> beta_at(Cplx a) const {
    auto [phi, beta] = phi_a(a, solver, Hf, HZf, c, d);
    return beta;
  }
};

double min_abs(const std::vector<Cplx>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (const Cplx& x : v) m = std::min(m, std::abs(x));
  return m;
}

} // namespace

std::pair<Cplx, double> find_good_a_gamma(const BoundaryFunction& f, const SolverConfig& config,
                                          int grid_size) {
  WitnessContext ctx(f, config);
  const CircleDomain& domain = f.domain();
  std::vector<Cplx> candidates = domain.interior_probes(grid_size, 0.1);

  std::vector<double> scores(candidates.size(), 0.0);
  std::vector<std::vector<Cplx>> betas(candidates.size());
  parallel::parallel_for(static_cast<std::ptrdiff_t>(candidates.size()), [&](std::ptrdiff_t i) {
    betas[static_cast<std::size_t>(i)] = ctx.beta_at(candidates[static_cast<std::size_t>(i)]);
    scores[static_cast<std::size_t>(i)] = min_abs(betas[static_cast<std::size_t>(i)]);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (scores[i] > scores[best]) best = i;

  // scale-free floor tied to the data magnitude: extendible data leaves all
  // beta at solver-noise level and is rejected here
  double scale = std::max(ctx.Hf.coeff_norm(), ctx.HZf.coeff_norm());
  if (!(scores[best] > 1e-6 * scale) || scale == 0.0)
    throw NoGoodPoint("no interior point keeps all boundary constants of Phi_a away from zero "
                      "(best min |beta| = " + std::to_string(scores[best]) + ")");

  double best_gamma = 0.0, best_gamma_score = -1.0;
  for (int k = 0; k < 64; ++k) {
    double gamma = kTwoPi * k / 64;
    Cplx rot(std::cos(gamma), std::sin(gamma));
    double s = std::numeric_limits<double>::infinity();
    for (const Cplx& b : betas[best]) s = std::min(s, std::abs((rot * b).real()));
    if (s > best_gamma_score) {
      best_gamma_score = s;
      best_gamma = gamma;
    }
  }
  if (!(best_gamma_score > 1e-6 * scale))
    throw NoGoodPoint("no rotation keeps all Re(e^{i gamma} beta_j) away from zero");
  return {candidates[best], best_gamma};
}

Witness build_witness(const BoundaryFunction& f, Cplx a, double gamma,
                      const SolverConfig& config) {
  WitnessContext ctx(f, config);
  const CircleDomain& domain = f.domain();
  if (!domain.contains(a)) throw OutsideDomain("witness point a must be interior");

  auto [phi, beta] = phi_a(a, ctx.solver, ctx.Hf, ctx.HZf, ctx.c, ctx.d);
  Cplx rot(std::cos(gamma), std::sin(gamma));

  // u = e^{i gamma} [ H((Z-a) f) + Phi_a ]; log-free by construction of Phi_a
  HarmonicField numerator = ctx.HZf; // H((Z-a) f) before rotation
  {
    HarmonicField aHf = ctx.Hf;
    aHf.scale(-a);
    numerator += aHf;
  }
  HarmonicField u = numerator;
  u += phi;
  u.scale(rot);
  numerator.scale(rot);
  phi.scale(rot);
  for (Cplx& b : beta) b *= rot;

  double scale = std::max(1.0, u.coeff_norm());
  for (const Cplx& mu : u.logs())
    if (std::abs(mu) > 1e-10 * scale)
      throw ResidualLogPeriod("Phi_a failed to cancel the log coefficients (|mu| = " +
                              std::to_string(std::abs(mu)) + ")");

  Cplx u_at_a = u.evaluate(a);
  if (std::abs(u_at_a) > 1e-8 * scale)
    throw DeflationResidual("u(a) = " + std::to_string(std::abs(u_at_a)) +
                            " is not zero; P(a) + conj(Q(a)) fails to cancel");

  auto [P, Q] = split_PQ(u);
  HoloFunction F = P.deflate_at(a);
  HoloFunction G = Q.deflate_at(a);
  HoloFunction h = -(F + G);

  Witness w;
  w.a = a;
  w.gamma = gamma;
  w.c = ctx.c;
  w.d = ctx.d;
  w.beta = beta;
  w.F_a = F;
  w.G_a = G;
  w.h = h;
  w.numerator = numerator;

  // Re W = -Re Phi_a with W = H((Z-a) f_gamma) - (z-a) F_a - (z-a) G_a
  std::vector<Cplx> probes = domain.interior_probes(1000, 0.02);
  std::vector<double> errs(probes.size(), 0.0);
  parallel::parallel_for(static_cast<std::ptrdiff_t>(probes.size()), [&](std::ptrdiff_t i) {
    Cplx z = probes[static_cast<std::size_t>(i)];
    Cplx W = numerator.evaluate_unchecked(z) - (z - a) * (F.eval(z) + G.eval(z));
    errs[static_cast<std::size_t>(i)] = std::abs(W.real() + phi.evaluate_unchecked(z).real());
  });
  double re_residual = 0.0;
  for (double e : errs) re_residual = std::max(re_residual, e);
  w.re_w_residual = re_residual;
  if (re_residual > 1e-6 * scale)
    throw DeflationResidual("Re W + Re Phi_a = " + std::to_string(re_residual) +
                            " exceeds tolerance");

  DegreeResult deg = degree_near_boundary(domain, [&](Cplx z) { return w.psi(z); });
  if (deg.degree != -1)
    throw DegreeNotMinusOne("witness degree is " + std::to_string(deg.degree) +
                            ", expected -1");
  w.degree = deg;
  return w;
}

DegreeResult verify_witness(const Witness& witness, const CircleDomain& domain) {
  ContourFamily fresh = ContourFamily::geometric(domain, 0.17, 13);
  DegreeResult deg =
      degree_near_boundary(domain, [&](Cplx z) { return witness.psi(z); }, fresh);
  if (deg.degree != -1)
    throw DegreeNotMinusOne("re-verified witness degree is " + std::to_string(deg.degree) +
                            ", expected -1");
  if (!(deg.certificate.delta > 0.0) || deg.certificate.systems_sampled < 3)
    throw CertificateFailed("bounded-away certificate did not hold on re-verification");
  return deg;
}

} // namespace wgate
