#include "wgate/extend.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "wgate/error.hpp"
#include "wgate/parallel.hpp"

namespace wgate {

Cplx RationalFunction::eval(Cplx z) const {
  Cplx acc(0, 0);
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + *it;
  for (const PoleTerm& p : poles) {
    Cplx d = z - p.location;
    if (d == Cplx(0, 0)) throw DivisionByZero("rational trial evaluated at its pole");
    Cplx term = p.coefficient;
    for (int i = 0; i < p.order; ++i) term /= d;
    acc += term;
  }
  return acc;
}

std::string RationalFunction::to_string() const {
  std::ostringstream out;
  out << "poly[";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) out << ", ";
    out << poly[i];
  }
  out << "]";
  for (const PoleTerm& p : poles)
    out << " + " << p.coefficient << "/(z - " << p.location << ")^" << p.order;
  return out.str();
}

Cplx A_value(Cplx a, const HarmonicField& Hf, const HarmonicField& HZf) {
  return HZf.evaluate(a) - a * Hf.evaluate(a);
}

Cplx A_value(Cplx a, const BoundaryFunction& f, const SolverConfig& config) {
  DirichletSolver solver(f.domain(), config);
  HarmonicField Hf = solver.extend_H(f);
  HarmonicField HZf = solver.extend_HZ(f);
  return A_value(a, Hf, HZf);
}

Verdict combine_verdicts(bool residual_says_extendible, bool grid_says_extendible) {
  if (residual_says_extendible != grid_says_extendible)
    throw InconsistentCriteria(std::string("coefficient-residual route says ") +
                               (residual_says_extendible ? "extendible" : "not_extendible") +
                               " but the A-grid route says " +
                               (grid_says_extendible ? "extendible" : "not_extendible"));
  return residual_says_extendible ? Verdict::Extendible : Verdict::NotExtendible;
}

ExtendibilityReport test_extendibility(const BoundaryFunction& f, const SolverConfig& config) {
  DirichletSolver solver(f.domain(), config);
  HarmonicField Hf = solver.extend_H(f);
  HarmonicField HZf = solver.extend_HZ(f);

  ExtendibilityReport report;
  report.Hf = Hf;
  report.solver_residual = std::max(Hf.residual(), HZf.residual());
  report.antiholomorphic_residual = Hf.anti_log_norm();

  double coeff_scale = std::max(Hf.coeff_norm(), 1e-30);
  double tol = std::max(1e-6, 100.0 * report.solver_residual) * coeff_scale;
  report.tol_extend = tol;
  report.tol_A = tol;

  report.probe_grid = f.domain().interior_probes(64, 0.05);
  report.A_values.resize(report.probe_grid.size());
  std::vector<Cplx> hf_vals(report.probe_grid.size()), hzf_vals(report.probe_grid.size());
  evaluate_batch(Hf, report.probe_grid, hf_vals);
  evaluate_batch(HZf, report.probe_grid, hzf_vals);
  double maxA = 0;
  for (std::size_t i = 0; i < report.probe_grid.size(); ++i) {
    report.A_values[i] = hzf_vals[i] - report.probe_grid[i] * hf_vals[i];
    maxA = std::max(maxA, std::abs(report.A_values[i]));
  }
  report.max_abs_A = maxA;

  bool residual_ok = report.antiholomorphic_residual <= report.tol_extend;
  bool grid_ok = report.max_abs_A <= report.tol_A;
  report.verdict = combine_verdicts(residual_ok, grid_ok);

  if (report.verdict == Verdict::Extendible) {
    HoloFunction g = Hf.P();
    // boundary check: sup |g - f| on a shifted grid
    double sup = 0;
    const CircleDomain& dom = f.domain();
    for (int comp = 0; comp < dom.num_components(); ++comp) {
      const Circle& c = dom.component(comp);
      for (int i = 0; i < 256; ++i) {
        Cplx pt = c.point(kTwoPi * (i + 0.25) / 256);
        sup = std::max(sup, std::abs(g.eval(pt) - f.eval(pt, comp)));
      }
    }
    if (sup > 10.0 * std::max(report.solver_residual, 1e-12) + report.tol_extend)
      throw InconsistentCriteria("extracted extension misses the boundary data by " +
                                 std::to_string(sup));
    report.extension_boundary_error = sup;
    report.extension = std::move(g);
  }
  return report;
}

HoloFunction extract_extension(const ExtendibilityReport& report) {
  if (report.verdict != Verdict::Extendible)
    throw NotExtendible("no holomorphic extension exists for this boundary data");
  return *report.extension;
}

std::vector<OnlyIfTrialResult> only_if_check(const BoundaryFunction& f,
                                             std::span<const RationalFunction> trials,
                                             const SolverConfig& config) {
  ExtendibilityReport report = test_extendibility(f, config);
  if (report.verdict != Verdict::Extendible)
    throw NotExtendible("only-if check requires extendible boundary data");
  const HoloFunction g = *report.extension;
  const HarmonicField f_tilde = report.Hf;
  const CircleDomain& domain = f.domain();

  std::vector<OnlyIfTrialResult> results(trials.size());
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const RationalFunction& h = trials[i];
    OnlyIfTrialResult& r = results[i];
    r.trial = h.to_string();
    try {
      DegreeResult deg = degree_near_boundary(
          domain, [&](Cplx z) { return f_tilde.evaluate_unchecked(z) + h.eval(z); });
      int zeros = zero_count([&](Cplx z) { return g.eval(z) + h.eval(z); }, domain);
      r.certified = true;
      r.degree = deg.degree;
      r.zeros = zeros;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Numerical) throw;
      r.certified = false;
      r.skip_reason = e.what();
    }
  }
  return results;
}

std::vector<RationalFunction> make_random_trials(const CircleDomain& domain, unsigned long seed,
                                                 int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> poly_deg(0, 2);
  std::uniform_int_distribution<int> n_poles(0, 2);
  std::uniform_int_distribution<int> pole_order(1, 2);

  auto rand_cplx = [&](double lo, double hi) {
    double mag = lo + (hi - lo) * unit(rng);
    double ang = kTwoPi * unit(rng);
    return Cplx(mag * std::cos(ang), mag * std::sin(ang));
  };

  std::vector<RationalFunction> trials;
  trials.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    RationalFunction h;
    int deg = poly_deg(rng);
    for (int k = 0; k <= deg; ++k) h.poly.push_back(rand_cplx(0.1, 1.2));
    int np = n_poles(rng);
    for (int p = 0; p < np; ++p) {
      RationalFunction::PoleTerm term;
      term.order = pole_order(rng);
      term.coefficient = rand_cplx(0.2, 1.5);
      // place poles inside a hole or outside the outer circle
      bool outside = domain.num_holes() == 0 || unit(rng) < 0.5;
      if (outside) {
        double rad = domain.outer().radius * (2.0 + 2.0 * unit(rng));
        double ang = kTwoPi * unit(rng);
        term.location = domain.outer().center + Cplx(rad * std::cos(ang), rad * std::sin(ang));
      } else {
        std::uniform_int_distribution<int> which(0, domain.num_holes() - 1);
        const Circle& hole = domain.holes()[static_cast<std::size_t>(which(rng))];
        double rad = hole.radius * 0.5 * unit(rng);
        double ang = kTwoPi * unit(rng);
        term.location = hole.center + Cplx(rad * std::cos(ang), rad * std::sin(ang));
      }
      h.poles.push_back(term);
    }
    trials.push_back(std::move(h));
  }
  return trials;
}

} // namespace wgate
