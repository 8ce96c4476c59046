#ifndef WGATE_EXTEND_HPP
#define WGATE_EXTEND_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wgate/boundary.hpp"
#include "wgate/common.hpp"
#include "wgate/degree.hpp"
#include "wgate/dirichlet.hpp"

namespace wgate {

/// Rational function with a polynomial part and simple/multiple pole terms;
/// the trial shape whose zero count the argument principle certifies.
struct RationalFunction {
  std::vector<Cplx> poly; // ascending powers of z
  struct PoleTerm {
    Cplx location;
    int order = 1;
    Cplx coefficient;
  };
  std::vector<PoleTerm> poles;

  Cplx eval(Cplx z) const;
  std::string to_string() const;
};

enum class Verdict { Extendible, NotExtendible };

struct ExtendibilityReport {
  Verdict verdict = Verdict::Extendible;
  double antiholomorphic_residual = 0.0; // norm of Q-part and log-part coefficients
  double max_abs_A = 0.0;
  double tol_extend = 0.0;
  double tol_A = 0.0;
  double solver_residual = 0.0;
  std::vector<Cplx> probe_grid;
  std::vector<Cplx> A_values;
  std::optional<HoloFunction> extension; // present iff extendible
  double extension_boundary_error = 0.0; // sup |g - f| on the verification grid
  HarmonicField Hf;
};

/// A(a, f) = H((Z-a) f)(a) = H(Zf)(a) - a H(f)(a).
Cplx A_value(Cplx a, const HarmonicField& Hf, const HarmonicField& HZf);
Cplx A_value(Cplx a, const BoundaryFunction& f, const SolverConfig& config = {});

/// Verdict combination for the two independent routes (coefficient residual
/// and the A probe grid); disagreement flags solver trouble.
Verdict combine_verdicts(bool residual_says_extendible, bool grid_says_extendible);

ExtendibilityReport test_extendibility(const BoundaryFunction& f, const SolverConfig& config = {});

/// The P-part of H(f) as the holomorphic extension; its boundary values were
/// checked against f within 10x the solver residual when the report was built.
HoloFunction extract_extension(const ExtendibilityReport& report);

struct OnlyIfTrialResult {
  std::string trial;
  bool certified = false;
  std::string skip_reason;
  int degree = 0;
  int zeros = 0;
};

/// For extendible f with extension g and each certified trial h:
/// degree(f~ + h) == zero_count(g + h) >= 0, exact integers.
std::vector<OnlyIfTrialResult> only_if_check(const BoundaryFunction& f,
                                             std::span<const RationalFunction> trials,
                                             const SolverConfig& config = {});

/// Seeded trial generator: rational functions with poles inside holes and
/// outside the closure, degree <= 4.
std::vector<RationalFunction> make_random_trials(const CircleDomain& domain, unsigned long seed,
                                                 int count);

} // namespace wgate

#endif
