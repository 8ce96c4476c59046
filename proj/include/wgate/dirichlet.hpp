#ifndef WGATE_DIRICHLET_HPP
#define WGATE_DIRICHLET_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wgate/boundary.hpp"
#include "wgate/common.hpp"
#include "wgate/geometry.hpp"

namespace wgate {

struct SolverConfig {
  int degree = 24;                 // truncation N of the series basis
  int oversampling = 4;            // collocation points per unknown
  double sv_cutoff = 1e-12;        // relative singular-value threshold
  int samples_per_component = 0;   // 0 = derived from degree and oversampling

  void validate() const;
};

/// Single-valued holomorphic function in the circle-domain series basis:
/// scaled nonnegative powers of (z - c0)/R0 at the outer center and scaled
/// negative powers of (z - a_j)/r_j at each hole center.
class HoloFunction {
public:
  HoloFunction() = default;
  HoloFunction(CircleDomain domain, int degree);

  bool empty() const { return domain_ == nullptr; }
  const CircleDomain& domain() const;
  int degree() const { return degree_; }

  std::vector<Cplx>& outer() { return outer_; }              // powers 0..N of w
  const std::vector<Cplx>& outer() const { return outer_; }
  std::vector<Cplx>& hole(int j) { return holes_.at(static_cast<std::size_t>(j)); }
  const std::vector<Cplx>& hole(int j) const { return holes_.at(static_cast<std::size_t>(j)); }
  int num_holes() const { return static_cast<int>(holes_.size()); }

  Cplx eval(Cplx z) const;
  Cplx eval_derivative(Cplx z) const;

  HoloFunction& operator+=(const HoloFunction& other);
  HoloFunction& operator-=(const HoloFunction& other);
  HoloFunction& operator*=(Cplx factor);
  HoloFunction operator+(const HoloFunction& other) const;
  HoloFunction operator-() const;
  void add_constant(Cplx c);

  /// Exact coefficient-level division (g - g(a)) / (z - a); no pointwise
  /// arithmetic near a.
  HoloFunction deflate_at(Cplx a) const;

  double coeff_norm() const;
  double max_coeff() const;

private:
  std::shared_ptr<const CircleDomain> domain_;
  int degree_ = 0;
  std::vector<Cplx> outer_;
  std::vector<std::vector<Cplx>> holes_;
};

/// Complex-valued harmonic function u = P(z) + conj(Q(z)) + sum mu_j log|z-a_j|
/// with P, Q in the series basis above.
class HarmonicField {
public:
  HarmonicField() = default;
  HarmonicField(CircleDomain domain, int degree);

  const CircleDomain& domain() const { return P_.domain(); }
  int degree() const { return P_.degree(); }

  HoloFunction& P() { return P_; }
  const HoloFunction& P() const { return P_; }
  HoloFunction& Q() { return Q_; }
  const HoloFunction& Q() const { return Q_; }
  std::vector<Cplx>& logs() { return logs_; }
  const std::vector<Cplx>& logs() const { return logs_; }

  double residual() const { return residual_; }
  void set_residual(double r) { residual_ = r; }
  bool real_valued() const { return real_valued_; }
  void set_real_valued(bool v) { real_valued_ = v; }

  /// Interior evaluation; throws OutsideDomain if z is not strictly inside.
  Cplx evaluate(Cplx z) const;
  Cplx evaluate_unchecked(Cplx z) const;
  /// Complex-valued partial derivatives (du/dx, du/dy).
  std::pair<Cplx, Cplx> gradient(Cplx z) const;

  HarmonicField& operator+=(const HarmonicField& other);
  /// u -> factor * u (the Q part picks up conj(factor)).
  HarmonicField& scale(Cplx factor);
  void add_constant(Cplx c);

  double anti_log_norm() const; // norm of Q-part and log-part coefficients
  double coeff_norm() const;

private:
  HoloFunction P_, Q_;
  std::vector<Cplx> logs_;
  double residual_ = 0.0;
  bool real_valued_ = false;
};

/// Free-function evaluation entry point.
Cplx evaluate(const HarmonicField& field, Cplx z);

/// Batch kernels (OpenMP when enabled; *_serial are the reference paths).
void evaluate_batch(const HarmonicField& field, std::span<const Cplx> pts, std::span<Cplx> out);
void evaluate_batch_serial(const HarmonicField& field, std::span<const Cplx> pts,
                           std::span<Cplx> out);

/// Number of real basis columns for the given domain and truncation degree.
int basis_size(const CircleDomain& domain, int degree);
/// One collocation row (all basis functions at z); row.size() == basis_size.
void fill_basis_row(const CircleDomain& domain, int degree, Cplx z, std::span<double> row);
/// Row-major collocation matrix over the given points.
std::vector<double> assemble_basis_matrix(const CircleDomain& domain, int degree,
                                          std::span<const Cplx> pts);
std::vector<double> assemble_basis_matrix_serial(const CircleDomain& domain, int degree,
                                                 std::span<const Cplx> pts);

/// Least-squares collocation solver for the Dirichlet problem on a circle
/// domain. One factorization per (domain, config); solves share it.
class DirichletSolver {
public:
  using BoundaryData = std::function<Cplx(int component, Cplx point)>;

  DirichletSolver(CircleDomain domain, SolverConfig config = {});
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;
  DirichletSolver& operator=(DirichletSolver&&) = delete;
  DirichletSolver(const DirichletSolver&) = delete;

  const CircleDomain& domain() const;
  const SolverConfig& config() const { return config_; }
  int unknown_count() const;
  int collocation_count() const;

  HarmonicField solve(const BoundaryData& data) const;
  /// Harmonic measure of hole j (1 on that hole circle, 0 elsewhere); cached.
  const HarmonicField& harmonic_measure(int j) const;

  HarmonicField extend_H(const BoundaryFunction& f) const;
  HarmonicField extend_HZ(const BoundaryFunction& f) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SolverConfig config_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<int, HarmonicField> measure_cache_;
};

/// Free-function forms of the solver operations.
HarmonicField solve_dirichlet(const CircleDomain& domain,
                              const DirichletSolver::BoundaryData& data,
                              const SolverConfig& config = {});
HarmonicField harmonic_measure(const CircleDomain& domain, int hole_index,
                               const SolverConfig& config = {});
HarmonicField extend_H(const BoundaryFunction& f, const SolverConfig& config = {});
HarmonicField extend_HZ(const BoundaryFunction& f, const SolverConfig& config = {});

/// The canonical continuous extension f~ = H(f).
HarmonicField canonical_extension(const BoundaryFunction& f, const SolverConfig& config = {},
                                  ExtensionChoice choice = ExtensionChoice::Harmonic);

} // namespace wgate

#endif
