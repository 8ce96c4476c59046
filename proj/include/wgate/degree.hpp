#ifndef WGATE_DEGREE_HPP
#define WGATE_DEGREE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wgate/common.hpp"
#include "wgate/geometry.hpp"

namespace wgate {

using Sampler = std::function<Cplx(Cplx)>;

struct ArgChangeOptions {
  double floor = 0.0;          // 0 = derive as 1e-7 * sup |psi| over initial samples
  int initial_samples = 256;
  int max_depth = 24;
  double unwrap_threshold = kPi / 2;
};

struct ArgStats {
  double min_modulus = 0.0;
  double max_arg_step = 0.0;
  double floor_used = 0.0;
  long evaluations = 0;
};

/// Total continuous change of argument of psi along the curve t -> curve(t),
/// t in [0,1]. Phase steps above the unwrap threshold, and any midpoint with
/// |psi| < 4*floor, trigger bisection down to max_depth.
double arg_change_curve(const std::function<Cplx(double)>& curve, const Sampler& psi,
                        const ArgChangeOptions& opts = {}, ArgStats* stats = nullptr);

/// Closed-contour version; asserts the result is within 1e-6 of a multiple
/// of 2*pi.
double arg_change(const Contour& contour, const Sampler& psi, double floor,
                  const ArgChangeOptions& opts = {}, ArgStats* stats = nullptr);

struct BoundedAwayCertificate {
  double delta = 0.0;    // inf |psi| over the sampled band
  double epsilon = 0.0;  // outer edge of the band (largest epsilon sampled)
  int systems_sampled = 0;
};

struct DegreeResult {
  int degree = 0;
  double epsilon_used = 0.0;
  double min_modulus = 0.0;
  double max_arg_step = 0.0;
  std::vector<std::pair<double, double>> stabilization; // (epsilon, raw winding / 2*pi)
  BoundedAwayCertificate certificate;
};

/// Mapping degree of psi near the boundary: winding sum over the oriented
/// contour system (outer positive, holes negative) per schedule step, accepted
/// once three consecutive systems agree.
DegreeResult degree_near_boundary(const CircleDomain& domain, const Sampler& psi,
                                  const ContourFamily& schedule, double floor = 0.0);
DegreeResult degree_near_boundary(const CircleDomain& domain, const Sampler& psi,
                                  double floor = 0.0);

/// Argument-principle zero counter for holomorphic samplers; the oracle for
/// the only-if direction.
int zero_count(const Sampler& g, const CircleDomain& domain, const ContourFamily& schedule);
int zero_count(const Sampler& g, const CircleDomain& domain);

struct TraceRow {
  double t;
  Cplx value;
  double phase; // cumulative unwrapped phase
};

/// Fixed-resolution trace of psi along a contour for external plotting.
std::vector<TraceRow> trace_contour(const Contour& contour, const Sampler& psi, int samples = 1024);

} // namespace wgate

#endif
