#include "wgate/degree.hpp"

#include <cmath>

#include "wgate/error.hpp"

namespace wgate {

namespace {

struct Tracker {
  const std::function<Cplx(double)>& curve;
  const Sampler& psi;
  double floor;
  double threshold;
  int max_depth;
  ArgStats stats;

  Cplx sample(double t) {
    Cplx v = psi(curve(t));
    ++stats.evaluations;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonConvergent("sampler returned a non-finite value on the contour");
    double m = std::abs(v);
    if (m < floor)
      throw ZeroOnContour("|psi| = " + std::to_string(m) + " fell below the floor " +
                          std::to_string(floor) + " on the contour");
    if (stats.min_modulus == 0.0 || m < stats.min_modulus) stats.min_modulus = m;
    return v;
  }

  // accepted step between adjacent parameters; bisects on wide phase jumps
  // or thin moduli at the midpoint
  double step(double t0, Cplx v0, double t1, Cplx v1, int depth) {
    double jump = std::arg(v1 / v0);
    double tm = 0.5 * (t0 + t1);
    Cplx vm = sample(tm);
    bool refine = std::abs(jump) > threshold || std::abs(vm) < 4.0 * floor;
    if (!refine) {
      double s0 = std::arg(vm / v0);
      double s1 = std::arg(v1 / vm);
      if (std::abs(s0) <= threshold && std::abs(s1) <= threshold) {
        stats.max_arg_step = std::max({stats.max_arg_step, std::abs(s0), std::abs(s1)});
        return s0 + s1;
      }
      refine = true;
    }
    if (depth >= max_depth)
      throw NonConvergent("contour refinement exceeded depth " + std::to_string(max_depth));
    return step(t0, v0, tm, vm, depth + 1) + step(tm, vm, t1, v1, depth + 1);
  }
};

} // namespace

double arg_change_curve(const std::function<Cplx(double)>& curve, const Sampler& psi,
                        const ArgChangeOptions& opts, ArgStats* stats) {
  const int n = std::max(8, opts.initial_samples);
  std::vector<Cplx> values(static_cast<std::size_t>(n + 1));
  double sup = 0.0;
  for (int i = 0; i <= n; ++i) {
    Cplx v = psi(curve(static_cast<double>(i) / n));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonConvergent("sampler returned a non-finite value on the contour");
    values[static_cast<std::size_t>(i)] = v;
    sup = std::max(sup, std::abs(v));
  }
  double floor = opts.floor > 0.0 ? opts.floor : 1e-7 * sup;
  if (sup == 0.0) throw ZeroOnContour("sampler vanishes identically on the contour");

  Tracker tracker{curve, psi, floor, opts.unwrap_threshold, opts.max_depth, {}};
  tracker.stats.floor_used = floor;
  tracker.stats.evaluations = n + 1;
  for (const Cplx& v : values) {
    double m = std::abs(v);
    if (m < floor)
      throw ZeroOnContour("|psi| = " + std::to_string(m) + " fell below the floor " +
                          std::to_string(floor) + " on the contour");
    if (tracker.stats.min_modulus == 0.0 || m < tracker.stats.min_modulus)
      tracker.stats.min_modulus = m;
  }

  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += tracker.step(static_cast<double>(i) / n, values[static_cast<std::size_t>(i)],
                          static_cast<double>(i + 1) / n, values[static_cast<std::size_t>(i + 1)],
                          0);
  if (stats) *stats = tracker.stats;
  return total;
}

double arg_change(const Contour& contour, const Sampler& psi, double floor,
                  const ArgChangeOptions& opts, ArgStats* stats) {
  ArgChangeOptions local = opts;
  local.floor = floor;
  double total =
      arg_change_curve([&](double t) { return contour.point(t); }, psi, local, stats);
  double nearest = kTwoPi * std::round(total / kTwoPi);
  if (std::abs(total - nearest) > 1e-6)
    throw NonConvergent("closed-contour argument change " + std::to_string(total) +
                        " is not within 1e-6 of a multiple of 2*pi");
  return total;
}

DegreeResult degree_near_boundary(const CircleDomain& domain, const Sampler& psi,
                                  const ContourFamily& schedule, double floor) {
  if (schedule.domain().num_components() != domain.num_components())
    throw InvalidInput("contour schedule was built for a different domain");
  DegreeResult result;
  BoundedAwayCertificate cert;
  int agree_count = 0;
  bool has_last = false;
  int last_value = 0;
  std::string last_failure;

  for (int m = 0; m < schedule.size(); ++m) {
    double eps = schedule.epsilon(m);
    double total = 0.0;
    double min_mod = 0.0, max_step = 0.0;
    bool ok = true;
    try {
      for (const Contour& contour : schedule.contours(m)) {
        ArgStats stats;
        total += arg_change(contour, psi, floor, {}, &stats);
        min_mod = min_mod == 0.0 ? stats.min_modulus : std::min(min_mod, stats.min_modulus);
        max_step = std::max(max_step, stats.max_arg_step);
      }
    } catch (const ZeroOnContour& e) {
      ok = false;
      last_failure = e.what();
    }
    if (!ok) {
      agree_count = 0;
      has_last = false;
      cert = {};
      continue;
    }
    double turns = total / kTwoPi;
    int winding = static_cast<int>(std::llround(turns));
    result.stabilization.emplace_back(eps, turns);
    if (std::abs(turns - winding) > 1e-6)
      throw NonConvergent("winding sum " + std::to_string(turns) + " is not near an integer");

    if (has_last && last_value == winding) {
      ++agree_count;
    } else {
      agree_count = 1;
      cert = {};
      cert.epsilon = eps;
    }
    has_last = true;
    last_value = winding;
    cert.delta = cert.systems_sampled == 0 ? min_mod : std::min(cert.delta, min_mod);
    ++cert.systems_sampled;
    result.min_modulus = result.min_modulus == 0.0 ? min_mod
                                                   : std::min(result.min_modulus, min_mod);
    result.max_arg_step = std::max(result.max_arg_step, max_step);

    if (agree_count >= 3) {
      result.degree = winding;
      result.epsilon_used = eps;
      result.certificate = cert;
      return result;
    }
  }
  if (!last_failure.empty() && !has_last)
    throw ZeroOnContour("no contour system admitted the sampler: " + last_failure);
  throw Unstable("winding sums did not agree on three consecutive contour systems");
}

DegreeResult degree_near_boundary(const CircleDomain& domain, const Sampler& psi, double floor) {
  return degree_near_boundary(domain, psi, ContourFamily::geometric(domain), floor);
}

int zero_count(const Sampler& g, const CircleDomain& domain, const ContourFamily& schedule) {
  return degree_near_boundary(domain, g, schedule).degree;
}

int zero_count(const Sampler& g, const CircleDomain& domain) {
  return degree_near_boundary(domain, g).degree;
}

std::vector<TraceRow> trace_contour(const Contour& contour, const Sampler& psi, int samples) {
  std::vector<TraceRow> rows;
  rows.reserve(static_cast<std::size_t>(samples + 1));
  double phase = 0.0;
  Cplx prev;
  for (int i = 0; i <= samples; ++i) {
    double t = static_cast<double>(i) / samples;
    Cplx v = psi(contour.point(t));
    if (i > 0) phase += std::arg(v / prev);
    rows.push_back(TraceRow{t, v, phase});
    prev = v;
  }
  return rows;
}

} // namespace wgate
