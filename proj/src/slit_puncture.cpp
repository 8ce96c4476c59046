#include "wgate/slit_puncture.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wgate/error.hpp"
#include "wgate/parallel.hpp"

namespace wgate {

double slit_distance(Cplx z) {
  double x = std::clamp(z.real(), 0.0, 1.0);
  return std::abs(z - Cplx(x, 0.0));
}

Cplx slit_extension_value(double epsilon_slit, Cplx z, SlitProfile profile) {
  double b = std::max(0.0, 1.0 - slit_distance(z) / epsilon_slit);
  if (profile == SlitProfile::QuadraticBump) b *= b;
  return z + (Cplx(1, 0) - z) * b;
}

std::function<Cplx(Cplx)> slit_extension(double epsilon_slit, SlitProfile profile) {
  if (!(epsilon_slit > 0.0 && epsilon_slit < 0.2))
    throw InvalidInput("slit extension width must lie in (0, 0.2)");
  return [epsilon_slit, profile](Cplx z) { return slit_extension_value(epsilon_slit, z, profile); };
}

std::vector<PathPiece> slit_contour(double r) {
  if (!(r > 0.0 && r < 0.5)) throw InvalidInput("slit contour radius must lie in (0, 0.5)");
  const double theta_c = std::asin(r);
  const double x_c = std::sqrt(1.0 - r * r);

  std::vector<PathPiece> path;
  // outer circle arc, counterclockwise from theta_c to 2*pi - theta_c
  path.push_back({[theta_c](double t) {
                    double th = theta_c + t * (kTwoPi - 2 * theta_c);
                    return Cplx(std::cos(th), std::sin(th));
                  },
                  512});
  // bottom edge of the slit neighborhood, from (x_c, -r) to (0, -r)
  path.push_back({[x_c, r](double t) { return Cplx(x_c * (1.0 - t), -r); }, 128});
  // cap around the origin, clockwise from (0, -r) through (-r, 0) to (0, r)
  path.push_back({[r](double t) {
                    double th = -kPi / 2 - t * kPi;
                    return Cplx(r * std::cos(th), r * std::sin(th));
                  },
                  128});
  // top edge, from (0, r) to (x_c, r)
  path.push_back({[x_c, r](double t) { return Cplx(x_c * t, r); }, 128});
  return path;
}

int path_winding(std::span<const PathPiece> path, const Sampler& psi, double floor) {
  if (path.empty()) throw InvalidInput("empty path");
  double derived = floor;
  if (derived <= 0.0) {
    double sup = 0.0;
    for (const PathPiece& piece : path)
      for (int i = 0; i <= piece.initial_samples; ++i)
        sup = std::max(sup, std::abs(psi(piece.curve(static_cast<double>(i) /
                                                     piece.initial_samples))));
    if (sup == 0.0) throw ZeroOnContour("sampler vanishes identically on the path");
    derived = 1e-7 * sup;
  }
  double total = 0.0;
  for (const PathPiece& piece : path) {
    ArgChangeOptions opts;
    opts.floor = derived;
    opts.initial_samples = piece.initial_samples;
    total += arg_change_curve(piece.curve, psi, opts);
  }
  double turns = total / kTwoPi;
  int winding = static_cast<int>(std::llround(turns));
  if (std::abs(turns - winding) > 1e-6)
    throw NonConvergent("path winding " + std::to_string(turns) + " is not near an integer");
  return winding;
}

int slit_degree(const SlitDiscCase& scase) {
  if (!(scase.epsilon_slit > 0.0 && scase.epsilon_slit < 0.2))
    throw InvalidInput("epsilon_slit must lie in (0, 0.2)");
  if (!(scase.r > 0.0 && scase.r < 0.5)) throw InvalidInput("r must lie in (0, 0.5)");

  auto psi = [&](Cplx z) {
    Cplx acc(0, 0);
    for (auto it = scase.h.rbegin(); it != scase.h.rend(); ++it) acc = acc * z + *it;
    return slit_extension_value(scase.epsilon_slit, z, scase.profile) + acc;
  };

  int first = 0;
  for (int k = 0; k < 3; ++k) {
    double rk = scase.r / std::pow(2.0, k);
    int w = path_winding(slit_contour(rk), psi);
    if (k == 0)
      first = w;
    else if (w != first)
      throw Unstable("slit winding changed from " + std::to_string(first) + " to " +
                     std::to_string(w) + " at r = " + std::to_string(rk));
  }
  return first;
}

int slit_degree(const std::vector<Cplx>& h, double r) {
  SlitDiscCase scase;
  scase.h = h;
  scase.r = r;
  return slit_degree(scase);
}

std::vector<TraceRow> trace_path(std::span<const PathPiece> path, const Sampler& psi,
                                 int samples_per_piece) {
  std::vector<TraceRow> rows;
  double phase = 0.0;
  Cplx prev;
  bool first = true;
  for (std::size_t p = 0; p < path.size(); ++p) {
    for (int i = 0; i <= samples_per_piece; ++i) {
      if (p > 0 && i == 0) continue; // junction point already emitted
      double local = static_cast<double>(i) / samples_per_piece;
      Cplx v = psi(path[p].curve(local));
      if (!first) phase += std::arg(v / prev);
      rows.push_back(TraceRow{(static_cast<double>(p) + local) / path.size(), v, phase});
      prev = v;
      first = false;
    }
  }
  return rows;
}

namespace {

double min_abs_on_circles(const Sampler& fn, std::span<const double> radii, int angles) {
  double m = std::numeric_limits<double>::infinity();
  for (double r : radii)
    for (int i = 0; i < angles; ++i) {
      double th = kTwoPi * i / angles;
      m = std::min(m, std::abs(fn(Cplx(r * std::cos(th), r * std::sin(th)))));
    }
  return m;
}

int circle_winding(double radius, const Sampler& psi) {
  Contour c{Circle{Cplx(0, 0), radius}, +1};
  double total = arg_change(c, psi, 0.0);
  return static_cast<int>(std::llround(total / kTwoPi));
}

} // namespace

int punctured_degree(const PuncturedDiscCase& pcase) {
  if (!(pcase.rho > 0.0 && pcase.rho < pcase.R && pcase.R < 1.0))
    throw InvalidInput("need 0 < rho < R < 1");
  const LaurentPoly& h = pcase.h;

  auto h_fn = [&](Cplx z) { return h.eval(z); };
  auto h1_fn = [&](Cplx z) { return h.eval(z) + Cplx(1, 0); };
  auto psi = [&](Cplx z) { return Cplx(1.0 - std::abs(z), 0.0) + h.eval(z); };

  // certificate (4.1): |h| >= delta on a band along the circle, with the
  // extension small against it there
  const double R = pcase.R, rho = pcase.rho;
  double band_out[4] = {R, R + (1 - R) / 4, R + (1 - R) / 2, R + 3 * (1 - R) / 4};
  double delta1 = min_abs_on_circles(h_fn, band_out, 256);
  if (!(1.0 - R < delta1 / 2))
    throw CertificateFailed("|h| >= delta fails near the circle: delta = " +
                            std::to_string(delta1) + ", 1 - R = " + std::to_string(1.0 - R));

  // certificate (4.2): |h + 1| >= delta near the puncture
  double band_in[4] = {rho, rho / 2, rho / 4, rho / 8};
  double delta2 = min_abs_on_circles(h1_fn, band_in, 256);
  if (!(rho < delta2 / 2))
    throw CertificateFailed("|h + 1| >= delta fails near 0: delta = " + std::to_string(delta2) +
                            ", rho = " + std::to_string(rho));

  int VR = circle_winding(R, psi);
  int Vrho = circle_winding(rho, psi);

  // homotopy replacements: h on the outer circle, h + 1 on the inner one
  int VR_h = circle_winding(R, h_fn);
  int Vrho_h1 = circle_winding(rho, h1_fn);
  if (VR != VR_h || Vrho != Vrho_h1)
    throw HomotopyMismatch("direct windings (" + std::to_string(VR) + ", " +
                           std::to_string(Vrho) + ") disagree with homotopy-replaced (" +
                           std::to_string(VR_h) + ", " + std::to_string(Vrho_h1) + ")");
  return VR - Vrho;
}

SweepReport slit_sweep(std::span<const std::vector<Cplx>> polynomials, double r,
                       double epsilon_slit) {
  SweepReport report;
  report.entries.resize(polynomials.size());
  parallel::parallel_for(static_cast<std::ptrdiff_t>(polynomials.size()), [&](std::ptrdiff_t i) {
    SweepEntry& e = report.entries[static_cast<std::size_t>(i)];
    SlitDiscCase scase;
    scase.h = polynomials[static_cast<std::size_t>(i)];
    scase.r = r;
    scase.epsilon_slit = epsilon_slit;
    LaurentPoly poly(0, scase.h);
    e.label = poly.to_string();
    try {
      e.degree = slit_degree(scase);
      e.certified = true;
    } catch (const ZeroOnContour& ex) {
      e.skip_reason = ex.what();
    } catch (const Unstable& ex) {
      e.skip_reason = ex.what();
    } catch (const NonConvergent& ex) {
      e.skip_reason = ex.what();
    }
  });
  for (const SweepEntry& e : report.entries) {
    if (!e.certified) continue;
    ++report.certified_count;
    if (e.degree < 0) report.all_nonnegative = false;
  }
  return report;
}

SweepReport puncture_sweep(std::span<const LaurentPoly> members, double R, double rho) {
  SweepReport report;
  report.entries.resize(members.size());
  parallel::parallel_for(static_cast<std::ptrdiff_t>(members.size()), [&](std::ptrdiff_t i) {
    SweepEntry& e = report.entries[static_cast<std::size_t>(i)];
    const LaurentPoly& h = members[static_cast<std::size_t>(i)];
    e.label = h.to_string();
    try {
      e.degree = punctured_degree(PuncturedDiscCase{h, R, rho});
      e.certified = true;
    } catch (const CertificateFailed& ex) {
      e.skip_reason = ex.what();
    } catch (const ZeroOnContour& ex) {
      e.skip_reason = ex.what();
    } catch (const NonConvergent& ex) {
      e.skip_reason = ex.what();
    }
  });
  for (const SweepEntry& e : report.entries) {
    if (!e.certified) continue;
    ++report.certified_count;
    if (e.degree < 0) report.all_nonnegative = false;
  }
  return report;
}

std::vector<std::vector<Cplx>> make_slit_family(unsigned long seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> degree(1, 4);

  std::vector<std::vector<Cplx>> family;
  int attempts = 0;
  while (static_cast<int>(family.size()) < count) {
    if (++attempts > 100 * count) throw NonConvergent("slit family generation stalled");
    std::vector<Cplx> h(static_cast<std::size_t>(degree(rng)) + 1);
    for (Cplx& c : h) {
      double mag = 0.5 * unit(rng);
      double ang = kTwoPi * unit(rng);
      c = Cplx(mag * std::cos(ang), mag * std::sin(ang));
    }
    auto h_at = [&](Cplx z) {
      Cplx acc(0, 0);
      for (auto it = h.rbegin(); it != h.rend(); ++it) acc = acc * z + *it;
      return acc;
    };
    // margins keep z + h away from zero on the circle and 1 + h away from
    // zero on the slit, so the contour certification and the root-count
    // oracle see the same zeros
    double m_circle = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 2048; ++i) {
      double th = kTwoPi * i / 2048;
      Cplx z(std::cos(th), std::sin(th));
      m_circle = std::min(m_circle, std::abs(z + h_at(z)));
    }
    if (m_circle < 0.2) continue;
    double m_slit = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 512; ++i) {
      Cplx z(static_cast<double>(i) / 512, 0.0);
      m_slit = std::min(m_slit, std::abs(Cplx(1, 0) + h_at(z)));
    }
    if (m_slit < 0.2) continue;
    family.push_back(std::move(h));
  }
  return family;
}

std::vector<LaurentPoly> make_puncture_family(unsigned long seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> power(-3, 3);
  std::uniform_int_distribution<int> n_terms(1, 4);

  std::vector<LaurentPoly> family;
  int attempts = 0;
  while (static_cast<int>(family.size()) < count) {
    if (++attempts > 200 * count) throw NonConvergent("puncture family generation stalled");
    LaurentPoly h;
    int terms = n_terms(rng);
    for (int t = 0; t < terms; ++t) {
      double mag = 0.2 + unit(rng);
      double ang = kTwoPi * unit(rng);
      h = h + LaurentPoly::monomial(power(rng), Cplx(mag * std::cos(ang), mag * std::sin(ang)));
    }
    if (h.is_zero()) continue;
    auto h_fn = [&](Cplx z) { return h.eval(z); };
    auto h1_fn = [&](Cplx z) { return h.eval(z) + Cplx(1, 0); };
    double band_out[4] = {0.95, 0.9625, 0.975, 0.9875};
    double band_in[4] = {0.01, 0.005, 0.0025, 0.00125};
    if (min_abs_on_circles(h_fn, band_out, 256) < 0.15) continue;
    if (min_abs_on_circles(h1_fn, band_in, 256) < 0.15) continue;
    family.push_back(std::move(h));
  }
  return family;
}

} // namespace wgate
