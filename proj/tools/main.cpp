#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wgate/boundary.hpp"
#include "wgate/degree.hpp"
#include "wgate/dirichlet.hpp"
#include "wgate/error.hpp"
#include "wgate/extend.hpp"
#include "wgate/geometry.hpp"
#include "wgate/laurent.hpp"
#include "wgate/periods.hpp"
#include "wgate/report.hpp"
#include "wgate/slit_puncture.hpp"
#include "wgate/witness.hpp"

namespace {

using namespace wgate;

struct Options {
  std::string domain_path;
  std::string f_expr;
  std::string boundary_path;
  std::string psi_expr;
  std::string h_expr;
  std::string out_dir = "out";
  int N = 24;
  int oversample = 4;
  double eps0 = 0.2;
  unsigned long seed = 1;
  double r = 0.05;
  double R = 0.95;
  double rho = 0.01;
  std::string example_kind;
};

SolverConfig solver_config(const Options& opt) {
  SolverConfig cfg;
  cfg.degree = opt.N;
  cfg.oversampling = opt.oversample;
  return cfg;
}

CircleDomain require_domain(const Options& opt) {
  if (opt.domain_path.empty()) throw InvalidInput("--domain PATH is required");
  return load_domain_file(opt.domain_path);
}

BoundaryFunction require_boundary(const Options& opt, const CircleDomain& domain) {
  if (!opt.f_expr.empty() && !opt.boundary_path.empty())
    throw InvalidInput("--f and --boundary are mutually exclusive");
  if (!opt.f_expr.empty()) return BoundaryFunction::uniform_expression(domain, opt.f_expr);
  if (!opt.boundary_path.empty())
    return BoundaryFunction::from_json_file(domain, opt.boundary_path);
  throw InvalidInput("one of --f EXPR or --boundary PATH is required");
}

JVal base_report(const std::string& command, const Options& opt) {
  JVal report = JVal::object();
  report.set("schema", kReportSchema);
  report.set("command", command);
  JVal params = JVal::object();
  if (!opt.domain_path.empty()) params.set("domain", opt.domain_path);
  if (!opt.f_expr.empty()) params.set("f", opt.f_expr);
  if (!opt.boundary_path.empty()) params.set("boundary", opt.boundary_path);
  if (!opt.psi_expr.empty()) params.set("psi", opt.psi_expr);
  if (!opt.h_expr.empty()) params.set("h", opt.h_expr);
  params.set("N", opt.N);
  params.set("oversample", opt.oversample);
  params.set("eps0", opt.eps0);
  params.set("seed", static_cast<long long>(opt.seed));
  if (command == "example-slit") params.set("r", opt.r);
  if (command == "example-puncture") {
    params.set("R", opt.R);
    params.set("rho", opt.rho);
  }
  report.set("parameters", std::move(params));
  return report;
}

std::filesystem::path out_path(const Options& opt, const std::string& name) {
  return std::filesystem::path(opt.out_dir) / name;
}

void emit(const Options& opt, const std::string& name, const std::string& content) {
  write_file_atomic(out_path(opt, name).string(), content);
}

int cmd_solve(const Options& opt) {
  CircleDomain domain = require_domain(opt);
  BoundaryFunction f = require_boundary(opt, domain);
  DirichletSolver solver(domain, solver_config(opt));
  HarmonicField field = solver.extend_H(f);

  JVal report = base_report("solve", opt);
  JVal results = JVal::object();
  JVal sv = JVal::object();
  sv.set("unknowns", solver.unknown_count());
  sv.set("collocation_points", solver.collocation_count());
  sv.set("residual", field.residual());
  results.set("solver", std::move(sv));
  results.set("field", field_to_json(field));
  report.set("results", std::move(results));
  emit(opt, "report.json", report.dump());
  emit(opt, "field.csv", field_probe_csv(field));
  std::cout << "solve: residual=" << format_double_17(field.residual()) << " ("
            << out_path(opt, "report.json").string() << ")\n";
  return 0;
}

int cmd_measure(const Options& opt) {
  CircleDomain domain = require_domain(opt);
  if (domain.num_holes() == 0)
    throw InvalidInput("harmonic measures need a domain with at least one hole");
  DirichletSolver solver(domain, solver_config(opt));

  JVal report = base_report("measure", opt);
  JVal results = JVal::object();
  JVal measures = JVal::array();
  double max_resid = 0;
  for (int j = 0; j < domain.num_holes(); ++j) {
    const HarmonicField& w = solver.harmonic_measure(j);
    JVal entry = JVal::object();
    entry.set("hole", j);
    entry.set("residual", w.residual());
    entry.set("field", field_to_json(w));
    measures.push(std::move(entry));
    emit(opt, "measure_" + std::to_string(j) + ".csv", field_probe_csv(w));
    max_resid = std::max(max_resid, w.residual());
  }
  results.set("measures", std::move(measures));
  report.set("results", std::move(results));
  emit(opt, "report.json", report.dump());
  std::cout << "measure: " << domain.num_holes()
            << " harmonic measures, max residual=" << format_double_17(max_resid) << "\n";
  return 0;
}

int cmd_periods(const Options& opt) {
  CircleDomain domain = require_domain(opt);
  PeriodMatrix pm = period_matrix(domain, solver_config(opt));
  JVal report = base_report("periods", opt);
  JVal results = JVal::object();
  results.set("period_matrix", period_matrix_to_json(pm));
  report.set("results", std::move(results));
  emit(opt, "report.json", report.dump());
  std::cout << "periods: " << pm.size() << "x" << pm.size()
            << " matrix, sigma_min=" << format_double_17(pm.smallest_singular_value) << "\n";
  return 0;
}

int cmd_degree(const Options& opt) {
  CircleDomain domain = require_domain(opt);
  if (opt.psi_expr.empty()) throw InvalidInput("--psi EXPR is required");
  expr::NodePtr psi_ast = expr::parse(opt.psi_expr);
  auto psi = [&](Cplx z) { return expr::eval(*psi_ast, z); };

  ContourFamily family = ContourFamily::geometric(domain, opt.eps0);
  DegreeResult result = degree_near_boundary(domain, psi, family);

  JVal report = base_report("degree", opt);
  JVal results = JVal::object();
  results.set("degree", degree_to_json(result));
  report.set("results", std::move(results));
  emit(opt, "report.json", report.dump());

  std::vector<Contour> contours = exhausting_contours(domain, result.epsilon_used);
  for (std::size_t k = 0; k < contours.size(); ++k)
    emit(opt, "trace_" + std::to_string(k) + ".csv",
         trace_csv(trace_contour(contours[k], psi)));

  std::cout << "degree=" << result.degree
            << " eps=" << format_double_17(result.epsilon_used)
            << " min_modulus=" << format_double_17(result.min_modulus) << "\n";
  return 0;
}

int cmd_test_extend(const Options& opt) {
  CircleDomain domain = require_domain(opt);
  BoundaryFunction f = require_boundary(opt, domain);
  SolverConfig cfg = solver_config(opt);
  ExtendibilityReport ext = test_extendibility(f, cfg);

  JVal report = base_report("test-extend", opt);
  JVal results = JVal::object();
  results.set("extendibility", extendibility_to_json(ext));

  std::string summary;
  if (ext.verdict == Verdict::Extendible) {
    summary = "verdict=extendible";
  } else {
    auto [a, gamma] = find_good_a_gamma(f, cfg);
    Witness witness = build_witness(f, a, gamma, cfg);
    results.set("witness", witness_to_json(witness));
    emit(opt, "witness.json", witness_to_json(witness).dump());
    summary = "verdict=not_extendible witness_degree=" + std::to_string(witness.degree.degree);
  }
  report.set("results", std::move(results));
  emit(opt, "report.json", report.dump());
  std::cout << summary << " (" << out_path(opt, "report.json").string() << ")\n";
  return 0;
}

int cmd_witness(const Options& opt) {
  CircleDomain domain = require_domain(opt);
  BoundaryFunction f = require_boundary(opt, domain);
  SolverConfig cfg = solver_config(opt);
  ExtendibilityReport ext = test_extendibility(f, cfg);
  if (ext.verdict == Verdict::Extendible)
    throw NotExtendible("boundary data extends holomorphically; no witness exists");

  auto [a, gamma] = find_good_a_gamma(f, cfg);
  Witness witness = build_witness(f, a, gamma, cfg);
  DegreeResult recheck = verify_witness(witness, domain);

  JVal report = base_report("witness", opt);
  JVal results = JVal::object();
  results.set("witness", witness_to_json(witness));
  results.set("reverified_degree", degree_to_json(recheck));
  report.set("results", std::move(results));
  emit(opt, "witness.json", witness_to_json(witness).dump());
  emit(opt, "report.json", report.dump());
  std::cout << "witness: degree=" << witness.degree.degree << " a=("
            << format_double_17(witness.a.real()) << "," << format_double_17(witness.a.imag())
            << ") gamma=" << format_double_17(witness.gamma) << "\n";
  return 0;
}

int cmd_example(const Options& opt) {
  if (opt.example_kind == "slit") {
    JVal report = base_report("example-slit", opt);
    JVal results = JVal::object();
    std::string summary;
    if (!opt.h_expr.empty()) {
      LaurentPoly poly = parse_laurent(opt.h_expr);
      if (!poly.is_polynomial())
        throw InvalidInput("slit example needs a polynomial h (no negative powers)");
      SlitDiscCase scase;
      scase.h = poly.polynomial_coeffs();
      scase.r = opt.r;
      int degree = slit_degree(scase);
      results.set("degree", degree);
      results.set("r", opt.r);
      results.set("epsilon_slit", scase.epsilon_slit);
      auto psi = [&](Cplx z) {
        return slit_extension_value(scase.epsilon_slit, z) + poly.eval(z);
      };
      auto path = slit_contour(opt.r);
      emit(opt, "trace.csv", trace_csv(trace_path(path, psi)));
      summary = "slit degree=" + std::to_string(degree);
    } else {
      auto family = make_slit_family(opt.seed, 20);
      SweepReport sweep = slit_sweep(family, opt.r);
      results.set("sweep", sweep_to_json(sweep));
      emit(opt, "sweep.json", sweep_to_json(sweep).dump());
      summary = "slit sweep: " + std::to_string(sweep.certified_count) + "/" +
                std::to_string(sweep.entries.size()) +
                (sweep.all_nonnegative ? " certified, all degrees >= 0"
                                       : " certified, NEGATIVE DEGREE FOUND");
    }
    report.set("results", std::move(results));
    emit(opt, "report.json", report.dump());
    std::cout << summary << "\n";
    return 0;
  }
  if (opt.example_kind == "puncture") {
    JVal report = base_report("example-puncture", opt);
    JVal results = JVal::object();
    std::string summary;
    if (!opt.h_expr.empty()) {
      PuncturedDiscCase pcase{parse_laurent(opt.h_expr), opt.R, opt.rho};
      int degree = punctured_degree(pcase);
      results.set("degree", degree);
      results.set("R", opt.R);
      results.set("rho", opt.rho);
      auto psi = [&](Cplx z) { return Cplx(1.0 - std::abs(z), 0) + pcase.h.eval(z); };
      emit(opt, "trace_R.csv",
           trace_csv(trace_contour(Contour{Circle{Cplx(0, 0), opt.R}, +1}, psi)));
      emit(opt, "trace_rho.csv",
           trace_csv(trace_contour(Contour{Circle{Cplx(0, 0), opt.rho}, +1}, psi)));
      summary = "puncture degree=" + std::to_string(degree);
    } else {
      auto family = make_puncture_family(opt.seed, 20);
      SweepReport sweep = puncture_sweep(family, opt.R, opt.rho);
      results.set("sweep", sweep_to_json(sweep));
      emit(opt, "sweep.json", sweep_to_json(sweep).dump());
      summary = "puncture sweep: " + std::to_string(sweep.certified_count) + "/" +
                std::to_string(sweep.entries.size()) +
                (sweep.all_nonnegative ? " certified, all degrees >= 0"
                                       : " certified, NEGATIVE DEGREE FOUND");
    }
    report.set("results", std::move(results));
    emit(opt, "report.json", report.dump());
    std::cout << summary << "\n";
    return 0;
  }
  throw InvalidInput("example kind must be 'slit' or 'puncture'");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"winding-gate: holomorphic extendibility via mapping degree"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help"); // frees -h / --h for the data flag

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--domain", opt.domain_path, "domain-spec JSON path");
    sub->add_option("--f", opt.f_expr, "boundary data expression");
    sub->add_option("--boundary", opt.boundary_path, "boundary-data JSON path");
    sub->add_option("--psi", opt.psi_expr, "sampler expression for degree runs");
    sub->add_option("--h", opt.h_expr, "holomorphic perturbation expression");
    sub->add_option("--N", opt.N, "solver truncation degree");
    sub->add_option("--oversample", opt.oversample, "collocation oversampling factor");
    sub->add_option("--eps0", opt.eps0, "leading epsilon of the contour schedule");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "seed for randomized families");
    sub->add_option("--r", opt.r, "slit neighborhood radius");
    sub->add_option("--R", opt.R, "punctured-disc outer test radius");
    sub->add_option("--rho", opt.rho, "punctured-disc inner test radius");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the Dirichlet problem for --f");
  CLI::App* measure = app.add_subcommand("measure", "compute all harmonic measures");
  CLI::App* periods = app.add_subcommand("periods", "compute the conjugate period matrix");
  CLI::App* degree = app.add_subcommand("degree", "mapping degree of --psi near the boundary");
  CLI::App* test_extend =
      app.add_subcommand("test-extend", "decide holomorphic extendibility of --f");
  CLI::App* witness =
      app.add_subcommand("witness", "build the degree -1 certificate for non-extendible --f");
  CLI::App* example = app.add_subcommand("example", "slit-disc and punctured-disc cases");
  example->add_option("kind", opt.example_kind, "slit | puncture")->required();
  for (CLI::App* sub : {solve, measure, periods, degree, test_extend, witness, example})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(opt);
    if (measure->parsed()) return cmd_measure(opt);
    if (periods->parsed()) return cmd_periods(opt);
    if (degree->parsed()) return cmd_degree(opt);
    if (test_extend->parsed()) return cmd_test_extend(opt);
    if (witness->parsed()) return cmd_witness(opt);
    if (example->parsed()) return cmd_example(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
