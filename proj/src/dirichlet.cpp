#include "wgate/dirichlet.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "wgate/error.hpp"
#include "wgate/parallel.hpp"

namespace wgate {

void SolverConfig::validate() const {
  if (degree < 4) throw InvalidInput("solver degree must be >= 4");
  if (oversampling < 2) throw InvalidInput("solver oversampling must be >= 2");
  if (!(sv_cutoff > 0.0 && sv_cutoff < 1.0)) throw InvalidInput("sv_cutoff must lie in (0,1)");
  if (samples_per_component < 0) throw InvalidInput("samples_per_component must be >= 0");
}

// ---------------------------------------------------------------------------
// basis layout
//
// column 0:                 1
// columns 2k-1, 2k:         Re w^k, Im w^k                  w  = (z-c0)/R0
// per hole j, base b_j:     log(|z-a_j|/r_j)
// columns b_j+2k-1, b_j+2k: Re w_j^-k, Im w_j^-k            w_j = (z-a_j)/r_j
// ---------------------------------------------------------------------------

int basis_size(const CircleDomain& domain, int degree) {
  return (domain.num_holes() + 1) * (1 + 2 * degree);
}

void fill_basis_row(const CircleDomain& domain, int degree, Cplx z, std::span<double> row) {
  const int N = degree;
  std::size_t col = 0;
  row[col++] = 1.0;
  Cplx w = (z - domain.outer().center) / domain.outer().radius;
  Cplx wk = w;
  for (int k = 1; k <= N; ++k) {
    row[col++] = wk.real();
    row[col++] = wk.imag();
    wk *= w;
  }
  for (const Circle& h : domain.holes()) {
    Cplx d = z - h.center;
    row[col++] = std::log(std::abs(d) / h.radius);
    Cplx v = h.radius / d; // w_j^-1
    Cplx vk = v;
    for (int k = 1; k <= N; ++k) {
      row[col++] = vk.real();
      row[col++] = vk.imag();
      vk *= v;
    }
  }
}

std::vector<double> assemble_basis_matrix_serial(const CircleDomain& domain, int degree,
                                                 std::span<const Cplx> pts) {
  const std::size_t K = static_cast<std::size_t>(basis_size(domain, degree));
  std::vector<double> rows(pts.size() * K);
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pts.size()); ++i)
    fill_basis_row(domain, degree, pts[static_cast<std::size_t>(i)],
                   std::span<double>(rows.data() + static_cast<std::size_t>(i) * K, K));
  return rows;
}

std::vector<double> assemble_basis_matrix(const CircleDomain& domain, int degree,
                                          std::span<const Cplx> pts) {
  const std::size_t K = static_cast<std::size_t>(basis_size(domain, degree));
  std::vector<double> rows(pts.size() * K);
  parallel::parallel_for(static_cast<std::ptrdiff_t>(pts.size()), [&](std::ptrdiff_t i) {
    fill_basis_row(domain, degree, pts[static_cast<std::size_t>(i)],
                   std::span<double>(rows.data() + static_cast<std::size_t>(i) * K, K));
  });
  return rows;
}

// ---------------------------------------------------------------------------
// HoloFunction
// ---------------------------------------------------------------------------

HoloFunction::HoloFunction(CircleDomain domain, int degree)
    : domain_(std::make_shared<CircleDomain>(std::move(domain))),
      degree_(degree),
      outer_(static_cast<std::size_t>(degree + 1), Cplx(0, 0)),
      holes_(static_cast<std::size_t>(domain_->num_holes()),
             std::vector<Cplx>(static_cast<std::size_t>(degree), Cplx(0, 0))) {}

const CircleDomain& HoloFunction::domain() const {
  if (!domain_) throw InvalidInput("empty holomorphic coefficient set");
  return *domain_;
}

Cplx HoloFunction::eval(Cplx z) const {
  if (!domain_) return Cplx(0, 0);
  Cplx w = (z - domain_->outer().center) / domain_->outer().radius;
  Cplx acc(0, 0);
  for (auto it = outer_.rbegin(); it != outer_.rend(); ++it) acc = acc * w + *it;
  for (std::size_t j = 0; j < holes_.size(); ++j) {
    const Circle& h = domain_->holes()[j];
    Cplx v = h.radius / (z - h.center);
    Cplx tail(0, 0);
    for (auto it = holes_[j].rbegin(); it != holes_[j].rend(); ++it) tail = (tail + *it) * v;
    acc += tail;
  }
  return acc;
}

Cplx HoloFunction::eval_derivative(Cplx z) const {
  if (!domain_) return Cplx(0, 0);
  const double R0 = domain_->outer().radius;
  Cplx w = (z - domain_->outer().center) / R0;
  Cplx acc(0, 0);
  Cplx wk(1, 0);
  for (std::size_t k = 1; k < outer_.size(); ++k) {
    acc += static_cast<double>(k) * outer_[k] * wk / R0;
    wk *= w;
  }
  for (std::size_t j = 0; j < holes_.size(); ++j) {
    const Circle& h = domain_->holes()[j];
    Cplx v = h.radius / (z - h.center);
    Cplx vk = v * v; // w_j^-(k+1) at k=1
    for (std::size_t k = 1; k <= holes_[j].size(); ++k) {
      acc += -static_cast<double>(k) * holes_[j][k - 1] * vk / h.radius;
      vk *= v;
    }
  }
  return acc;
}

namespace {
void check_compatible(const HoloFunction& a, const HoloFunction& b) {
  if (a.degree() != b.degree() || a.num_holes() != b.num_holes())
    throw InvalidInput("holomorphic coefficient sets have mismatched shapes");
}
} // namespace

HoloFunction& HoloFunction::operator+=(const HoloFunction& other) {
  check_compatible(*this, other);
  for (std::size_t k = 0; k < outer_.size(); ++k) outer_[k] += other.outer_[k];
  for (std::size_t j = 0; j < holes_.size(); ++j)
    for (std::size_t k = 0; k < holes_[j].size(); ++k) holes_[j][k] += other.holes_[j][k];
  return *this;
}

HoloFunction& HoloFunction::operator-=(const HoloFunction& other) {
  check_compatible(*this, other);
  for (std::size_t k = 0; k < outer_.size(); ++k) outer_[k] -= other.outer_[k];
  for (std::size_t j = 0; j < holes_.size(); ++j)
    for (std::size_t k = 0; k < holes_[j].size(); ++k) holes_[j][k] -= other.holes_[j][k];
  return *this;
}

HoloFunction& HoloFunction::operator*=(Cplx factor) {
  for (Cplx& c : outer_) c *= factor;
  for (auto& hole : holes_)
    for (Cplx& c : hole) c *= factor;
  return *this;
}

HoloFunction HoloFunction::operator+(const HoloFunction& other) const {
  HoloFunction out = *this;
  out += other;
  return out;
}

HoloFunction HoloFunction::operator-() const {
  HoloFunction out = *this;
  out *= Cplx(-1, 0);
  return out;
}

void HoloFunction::add_constant(Cplx c) {
  if (outer_.empty()) throw InvalidInput("empty holomorphic coefficient set");
  outer_[0] += c;
}

HoloFunction HoloFunction::deflate_at(Cplx a) const {
  if (!domain_) throw InvalidInput("empty holomorphic coefficient set");
  HoloFunction out(*domain_, degree_);
  const double R0 = domain_->outer().radius;
  const Cplx wa = (a - domain_->outer().center) / R0;

  // outer part: synthetic division of (p(w) - p(wa)) by (w - wa), then by R0
  if (degree_ >= 1) {
    std::vector<Cplx> q(static_cast<std::size_t>(degree_), Cplx(0, 0));
    q[static_cast<std::size_t>(degree_ - 1)] = outer_[static_cast<std::size_t>(degree_)];
    for (int k = degree_ - 1; k >= 1; --k)
      q[static_cast<std::size_t>(k - 1)] =
          outer_[static_cast<std::size_t>(k)] + wa * q[static_cast<std::size_t>(k)];
    for (int k = 0; k < degree_; ++k)
      out.outer_[static_cast<std::size_t>(k)] = q[static_cast<std::size_t>(k)] / R0;
  }

  // hole parts: (v^-k - va^-k)/(z - a) = -(1/r_j) sum_{i=1..k} v^-i va^-(k+1-i)
  for (std::size_t j = 0; j < holes_.size(); ++j) {
    const Circle& h = domain_->holes()[j];
    const Cplx va = (a - h.center) / h.radius;
    const Cplx va_inv = Cplx(1, 0) / va;
    std::vector<Cplx> va_inv_pow(static_cast<std::size_t>(degree_ + 1));
    va_inv_pow[0] = Cplx(1, 0);
    for (int m = 1; m <= degree_; ++m) va_inv_pow[static_cast<std::size_t>(m)] =
        va_inv_pow[static_cast<std::size_t>(m - 1)] * va_inv;
    for (int k = 1; k <= degree_; ++k) {
      Cplx ck = holes_[j][static_cast<std::size_t>(k - 1)];
      if (ck == Cplx(0, 0)) continue;
      Cplx scale = -ck / h.radius;
      for (int i = 1; i <= k; ++i)
        out.holes_[j][static_cast<std::size_t>(i - 1)] +=
            scale * va_inv_pow[static_cast<std::size_t>(k + 1 - i)];
    }
  }
  return out;
}

double HoloFunction::coeff_norm() const {
  double s = 0;
  for (const Cplx& c : outer_) s += std::norm(c);
  for (const auto& hole : holes_)
    for (const Cplx& c : hole) s += std::norm(c);
  return std::sqrt(s);
}

double HoloFunction::max_coeff() const {
  double m = 0;
  for (const Cplx& c : outer_) m = std::max(m, std::abs(c));
  for (const auto& hole : holes_)
    for (const Cplx& c : hole) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------------------
// HarmonicField
// ---------------------------------------------------------------------------

HarmonicField::HarmonicField(CircleDomain domain, int degree)
    : P_(domain, degree),
      Q_(domain, degree),
      logs_(static_cast<std::size_t>(domain.num_holes()), Cplx(0, 0)) {}

Cplx HarmonicField::evaluate(Cplx z) const {
  const CircleDomain& d = domain();
  if (d.boundary_distance(z) <= 1e-9 * d.outer().radius)
    throw OutsideDomain("evaluation point is not strictly inside the domain");
  return evaluate_unchecked(z);
}

Cplx HarmonicField::evaluate_unchecked(Cplx z) const {
  Cplx acc = P_.eval(z) + std::conj(Q_.eval(z));
  const auto& holes = domain().holes();
  for (std::size_t j = 0; j < logs_.size(); ++j)
    acc += logs_[j] * std::log(std::abs(z - holes[j].center));
  return acc;
}

std::pair<Cplx, Cplx> HarmonicField::gradient(Cplx z) const {
  Cplx dz = P_.eval_derivative(z);
  Cplx dzbar = std::conj(Q_.eval_derivative(z));
  const auto& holes = domain().holes();
  for (std::size_t j = 0; j < logs_.size(); ++j) {
    Cplx d = z - holes[j].center;
    dz += logs_[j] * 0.5 / d;
    dzbar += logs_[j] * 0.5 / std::conj(d);
  }
  return {dz + dzbar, Cplx(0, 1) * (dz - dzbar)};
}

HarmonicField& HarmonicField::operator+=(const HarmonicField& other) {
  P_ += other.P_;
  Q_ += other.Q_;
  if (logs_.size() != other.logs_.size()) throw InvalidInput("field shapes differ");
  for (std::size_t j = 0; j < logs_.size(); ++j) logs_[j] += other.logs_[j];
  residual_ = std::max(residual_, other.residual_);
  real_valued_ = real_valued_ && other.real_valued_;
  return *this;
}

HarmonicField& HarmonicField::scale(Cplx factor) {
  P_ *= factor;
  Q_ *= std::conj(factor);
  for (Cplx& mu : logs_) mu *= factor;
  if (factor.imag() != 0.0) real_valued_ = false;
  return *this;
}

void HarmonicField::add_constant(Cplx c) {
  P_.add_constant(c);
  if (c.imag() != 0.0) real_valued_ = false;
}

double HarmonicField::anti_log_norm() const {
  double s = Q_.coeff_norm();
  double logs2 = 0;
  for (const Cplx& mu : logs_) logs2 += std::norm(mu);
  return std::sqrt(s * s + logs2);
}

double HarmonicField::coeff_norm() const {
  double p = P_.coeff_norm(), q = Q_.coeff_norm();
  double logs2 = 0;
  for (const Cplx& mu : logs_) logs2 += std::norm(mu);
  return std::sqrt(p * p + q * q + logs2);
}

Cplx evaluate(const HarmonicField& field, Cplx z) { return field.evaluate(z); }

void evaluate_batch_serial(const HarmonicField& field, std::span<const Cplx> pts,
                           std::span<Cplx> out) {
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = field.evaluate_unchecked(pts[i]);
}

void evaluate_batch(const HarmonicField& field, std::span<const Cplx> pts, std::span<Cplx> out) {
  parallel::parallel_for(static_cast<std::ptrdiff_t>(pts.size()), [&](std::ptrdiff_t i) {
    out[static_cast<std::size_t>(i)] = field.evaluate_unchecked(pts[static_cast<std::size_t>(i)]);
  });
}

// ---------------------------------------------------------------------------
// DirichletSolver
// ---------------------------------------------------------------------------

struct DirichletSolver::Impl {
  CircleDomain domain;
  int N = 0;
  int K = 0;
  int per_comp = 0;
  std::vector<Cplx> colloc_pts;
  std::vector<int> colloc_comp;
  std::vector<Cplx> verif_pts;
  std::vector<int> verif_comp;
  Eigen::BDCSVD<Eigen::MatrixXd> svd;
  int truncated = 0;

  Impl(CircleDomain dom, const SolverConfig& cfg) : domain(std::move(dom)), N(cfg.degree) {
    K = basis_size(domain, N);
    per_comp = cfg.samples_per_component > 0 ? cfg.samples_per_component
                                             : cfg.oversampling * (2 * N + 2);
    const int n = domain.num_components();
    if (per_comp * n < cfg.oversampling * K)
      throw InsufficientSamples("need at least " + std::to_string(cfg.oversampling * K) +
                                " collocation points, have " + std::to_string(per_comp * n));
    for (int comp = 0; comp < n; ++comp) {
      const Circle& c = domain.component(comp);
      for (int i = 0; i < per_comp; ++i) {
        colloc_pts.push_back(c.point(kTwoPi * i / per_comp));
        colloc_comp.push_back(comp);
      }
      const int fine = 2 * per_comp;
      for (int i = 0; i < fine; ++i) {
        verif_pts.push_back(c.point(kTwoPi * (i + 0.5) / fine));
        verif_comp.push_back(comp);
      }
    }
    std::vector<double> rows = assemble_basis_matrix(domain, N, colloc_pts);
    Eigen::MatrixXd A = Eigen::Map<
        const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        rows.data(), static_cast<Eigen::Index>(colloc_pts.size()), K);
    svd.setThreshold(ThresholdFromConfig(cfg));
    svd.compute(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    truncated = K - static_cast<int>(svd.rank());
  }

  static double ThresholdFromConfig(const SolverConfig& cfg) { return cfg.sv_cutoff; }
};

DirichletSolver::DirichletSolver(CircleDomain domain, SolverConfig config) : config_(config) {
  config_.validate();
  impl_ = std::make_unique<Impl>(std::move(domain), config_);
}

DirichletSolver::~DirichletSolver() = default;

DirichletSolver::DirichletSolver(DirichletSolver&& other) noexcept
    : impl_(std::move(other.impl_)),
      config_(other.config_),
      measure_cache_(std::move(other.measure_cache_)) {}

const CircleDomain& DirichletSolver::domain() const { return impl_->domain; }
int DirichletSolver::unknown_count() const { return impl_->K; }
int DirichletSolver::collocation_count() const {
  return static_cast<int>(impl_->colloc_pts.size());
}

HarmonicField DirichletSolver::solve(const BoundaryData& data) const {
  const Impl& im = *impl_;
  if (im.truncated > im.K * 3 / 10)
    throw IllConditioned("singular-value cutoff removed " + std::to_string(im.truncated) +
                         " of " + std::to_string(im.K) + " basis columns");

  const Eigen::Index m = static_cast<Eigen::Index>(im.colloc_pts.size());
  Eigen::MatrixXd rhs(m, 2);
  double max_abs = 0, max_imag = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    Cplx v = data(im.colloc_comp[static_cast<std::size_t>(i)],
                  im.colloc_pts[static_cast<std::size_t>(i)]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidBoundaryData("boundary target is not finite");
    rhs(i, 0) = v.real();
    rhs(i, 1) = v.imag();
    max_abs = std::max(max_abs, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  Eigen::MatrixXd X = im.svd.solve(rhs);

  HarmonicField field(im.domain, im.N);
  auto coeff = [&](int col) { return Cplx(X(col, 0), X(col, 1)); };
  int col = 0;
  Cplx c0 = coeff(col++);
  field.P().outer()[0] = c0;
  for (int k = 1; k <= im.N; ++k) {
    Cplx a = coeff(col++);
    Cplx b = coeff(col++);
    field.P().outer()[static_cast<std::size_t>(k)] = 0.5 * (a - Cplx(0, 1) * b);
    field.Q().outer()[static_cast<std::size_t>(k)] = std::conj(0.5 * (a + Cplx(0, 1) * b));
  }
  for (int j = 0; j < im.domain.num_holes(); ++j) {
    Cplx mu = coeff(col++);
    field.logs()[static_cast<std::size_t>(j)] = mu;
    // the assembled column is log(|z-a_j|/r_j); fold the -log r_j part into
    // the constant so the stored representation uses plain log|z-a_j|
    field.P().add_constant(-mu * std::log(im.domain.holes()[static_cast<std::size_t>(j)].radius));
    for (int k = 1; k <= im.N; ++k) {
      Cplx a = coeff(col++);
      Cplx b = coeff(col++);
      field.P().hole(j)[static_cast<std::size_t>(k - 1)] = 0.5 * (a - Cplx(0, 1) * b);
      field.Q().hole(j)[static_cast<std::size_t>(k - 1)] = std::conj(0.5 * (a + Cplx(0, 1) * b));
    }
  }
  field.set_real_valued(max_imag <= 1e-14 * std::max(1.0, max_abs));

  // sup residual on the shifted, denser verification grid
  std::vector<Cplx> values(im.verif_pts.size());
  evaluate_batch(field, im.verif_pts, values);
  double resid = 0;
  for (std::size_t i = 0; i < im.verif_pts.size(); ++i)
    resid = std::max(resid, std::abs(values[i] - data(im.verif_comp[i], im.verif_pts[i])));
  field.set_residual(resid);
  return field;
}

const HarmonicField& DirichletSolver::harmonic_measure(int j) const {
  if (impl_->domain.num_holes() == 0)
    throw IndexError("harmonic measures need at least one hole");
  if (j < 0 || j >= impl_->domain.num_holes())
    throw IndexError("hole index " + std::to_string(j) + " out of range 0.." +
                     std::to_string(impl_->domain.num_holes() - 1));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = measure_cache_.find(j);
  if (it != measure_cache_.end()) return it->second;
  HarmonicField w = solve([&](int comp, Cplx) { return comp == j ? Cplx(1, 0) : Cplx(0, 0); });
  w.set_real_valued(true);
  auto [pos, inserted] = measure_cache_.emplace(j, std::move(w));
  (void)inserted;
  return pos->second;
}

HarmonicField DirichletSolver::extend_H(const BoundaryFunction& f) const {
  f.validate();
  return solve([&](int comp, Cplx pt) { return f.eval(pt, comp); });
}

HarmonicField DirichletSolver::extend_HZ(const BoundaryFunction& f) const {
  f.validate();
  return solve([&](int comp, Cplx pt) { return pt * f.eval(pt, comp); });
}

HarmonicField solve_dirichlet(const CircleDomain& domain,
                              const DirichletSolver::BoundaryData& data,
                              const SolverConfig& config) {
  return DirichletSolver(domain, config).solve(data);
}

HarmonicField harmonic_measure(const CircleDomain& domain, int hole_index,
                               const SolverConfig& config) {
  return DirichletSolver(domain, config).harmonic_measure(hole_index);
}

HarmonicField extend_H(const BoundaryFunction& f, const SolverConfig& config) {
  return DirichletSolver(f.domain(), config).extend_H(f);
}

HarmonicField extend_HZ(const BoundaryFunction& f, const SolverConfig& config) {
  return DirichletSolver(f.domain(), config).extend_HZ(f);
}

HarmonicField canonical_extension(const BoundaryFunction& f, const SolverConfig& config,
                                  ExtensionChoice choice) {
  (void)choice; // only the harmonic extension is implemented
  return extend_H(f, config);
}

} // namespace wgate
