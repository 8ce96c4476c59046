#ifndef WGATE_SLIT_PUNCTURE_HPP
#define WGATE_SLIT_PUNCTURE_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wgate/common.hpp"
#include "wgate/degree.hpp"
#include "wgate/laurent.hpp"

namespace wgate {

// ---------------------------------------------------------------------------
// slit disc: unit disc minus the radial slit [0, 1)
// ---------------------------------------------------------------------------

enum class SlitProfile { LinearBump, QuadraticBump };

struct SlitDiscCase {
  double epsilon_slit = 0.1;  // bump width of the continuous extension
  std::vector<Cplx> h;        // polynomial coefficients, ascending powers
  double r = 0.004;           // starting slit-neighborhood radius
  SlitProfile profile = SlitProfile::LinearBump;
};

/// Distance from z to the segment [0, 1] on the real axis.
double slit_distance(Cplx z);

/// Continuous extension of the slit boundary data: equals z on the circle
/// and 1 on the slit; f~(z) = z + (1-z) * bump(dist(z, [0,1]) / eps).
Cplx slit_extension_value(double epsilon_slit, Cplx z,
                          SlitProfile profile = SlitProfile::LinearBump);
std::function<Cplx(Cplx)> slit_extension(double epsilon_slit,
                                         SlitProfile profile = SlitProfile::LinearBump);

/// Piecewise parameterization (one circular arc, two segments, one cap arc)
/// of the positively oriented boundary of the disc minus the r-neighborhood
/// of the slit.
struct PathPiece {
  std::function<Cplx(double)> curve; // t in [0, 1]
  int initial_samples = 256;
};
std::vector<PathPiece> slit_contour(double r);

/// Change of argument of psi along a concatenation of pieces, divided by
/// 2*pi; asserts integer quantization for closed paths.
int path_winding(std::span<const PathPiece> path, const Sampler& psi, double floor = 0.0);

/// Degree of f~ + h along the slit contour, stabilized over r, r/2, r/4.
int slit_degree(const SlitDiscCase& scase);
int slit_degree(const std::vector<Cplx>& h, double r);

/// Fixed-resolution trace of psi along a concatenated path, with t rescaled
/// to [0, 1] across the pieces; feeds the CSV trace export.
std::vector<TraceRow> trace_path(std::span<const PathPiece> path, const Sampler& psi,
                                 int samples_per_piece = 256);

// ---------------------------------------------------------------------------
// punctured disc: unit disc minus the origin
// ---------------------------------------------------------------------------

struct PuncturedDiscCase {
  LaurentPoly h;
  double R = 0.95;   // outer test radius, < 1
  double rho = 0.01; // inner test radius, > 0
};

/// Degree (V_R - V_rho)/(2*pi) of f~ + h with the radial extension
/// f~(z) = 1 - |z|; certificates |h| >= delta near the circle and
/// |h+1| >= delta near 0 are sampled first, and the homotopy-replaced
/// computation (h on the outer circle, h+1 on the inner) must agree.
int punctured_degree(const PuncturedDiscCase& pcase);

// ---------------------------------------------------------------------------
// sweeps
// ---------------------------------------------------------------------------

struct SweepEntry {
  std::string label;
  bool certified = false;
  std::string skip_reason;
  int degree = 0;
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  int certified_count = 0;
  bool all_nonnegative = true;
};

SweepReport slit_sweep(std::span<const std::vector<Cplx>> polynomials, double r,
                       double epsilon_slit = 0.1);
SweepReport puncture_sweep(std::span<const LaurentPoly> members, double R, double rho);

/// Named for what the sweeps assert: every certified member has degree >= 0.
inline SweepReport nonnegativity_sweep(std::span<const std::vector<Cplx>> polynomials, double r,
                                       double epsilon_slit = 0.1) {
  return slit_sweep(polynomials, r, epsilon_slit);
}
inline SweepReport nonnegativity_sweep(std::span<const LaurentPoly> members, double R,
                                       double rho) {
  return puncture_sweep(members, R, rho);
}

/// Seeded families; generation continues until `count` members pass the
/// pre-certification margins, so every member is usable.
std::vector<std::vector<Cplx>> make_slit_family(unsigned long seed, int count);
std::vector<LaurentPoly> make_puncture_family(unsigned long seed, int count);

} // namespace wgate

#endif
