// Timing comparison of the OpenMP kernels against their serial references:
// collocation-matrix assembly and batch field evaluation.

#include <chrono>
#include <cstdio>
#include <vector>

#include "wgate/dirichlet.hpp"
#include "wgate/geometry.hpp"
#include "wgate/parallel.hpp"

using namespace wgate;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <typename Fn>
double time_best_of(int reps, const Fn& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    fn();
    best = std::min(best, ms_since(t0));
  }
  return best;
}

} // namespace

int main() {
  CircleDomain domain(Circle{Cplx(0, 0), 1.0},
                      {Circle{Cplx(-0.4, 0), 0.15}, Circle{Cplx(0.4, 0), 0.15}});
  const int degree = 32;

  std::vector<Cplx> pts;
  for (int comp = 0; comp < domain.num_components(); ++comp)
    for (auto& [z, c] : sample_component(domain, comp, 4096)) pts.push_back(z);

  std::printf("kernel benchmark: %zu points, basis size %d\n", pts.size(),
              basis_size(domain, degree));

  double t_assemble_serial =
      time_best_of(3, [&] { assemble_basis_matrix_serial(domain, degree, pts); });
  parallel::set_enabled(true);
  double t_assemble_omp = time_best_of(3, [&] { assemble_basis_matrix(domain, degree, pts); });
  std::printf("  assemble   serial %8.2f ms   openmp %8.2f ms   speedup %.2fx\n",
              t_assemble_serial, t_assemble_omp, t_assemble_serial / t_assemble_omp);

  DirichletSolver solver(domain, SolverConfig{degree, 4});
  const HarmonicField& field = solver.harmonic_measure(0);
  std::vector<Cplx> values(pts.size());
  double t_eval_serial =
      time_best_of(3, [&] { evaluate_batch_serial(field, pts, values); });
  double t_eval_omp = time_best_of(3, [&] { evaluate_batch(field, pts, values); });
  std::printf("  eval batch serial %8.2f ms   openmp %8.2f ms   speedup %.2fx\n", t_eval_serial,
              t_eval_omp, t_eval_serial / t_eval_omp);

#ifdef _OPENMP
  std::printf("  openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("  built without openmp; both paths are serial\n");
#endif
  return 0;
}
