#ifndef WGATE_GEOMETRY_HPP
#define WGATE_GEOMETRY_HPP

#include <string>
#include <utility>
#include <vector>

#include "wgate/common.hpp"

namespace wgate {

struct Circle {
  Cplx center;
  double radius = 0.0;

  Cplx point(double angle) const { return center + radius * Cplx(std::cos(angle), std::sin(angle)); }
};

/// Outer circle minus finitely many disjoint closed discs. Component indices
/// are holes first (0..n-2, in construction order), outer circle last (n-1).
class CircleDomain {
public:
  CircleDomain(Circle outer, std::vector<Circle> holes);

  const Circle& outer() const { return outer_; }
  const std::vector<Circle>& holes() const { return holes_; }
  int num_components() const { return static_cast<int>(holes_.size()) + 1; }
  int num_holes() const { return static_cast<int>(holes_.size()); }

  const Circle& component(int index) const;
  bool is_outer_component(int index) const { return index == num_components() - 1; }

  bool contains(Cplx z) const;
  /// Distance from an interior point to the boundary (negative outside).
  double boundary_distance(Cplx z) const;

  /// Low-discrepancy interior points with distance >= margin_factor * outer
  /// radius from the boundary. Deterministic (Halton bases 2 and 3).
  std::vector<Cplx> interior_probes(int count, double margin_factor) const;

private:
  Circle outer_;
  std::vector<Circle> holes_;
};

/// Parses and validates the domain-spec JSON document.
CircleDomain build_domain(const std::string& json_text);
CircleDomain load_domain_file(const std::string& path);

struct Contour {
  Circle circle;
  int orientation = +1; // +1 counterclockwise, -1 clockwise

  Cplx point(double t) const {
    double angle = kTwoPi * t * orientation;
    return circle.point(angle);
  }
  std::vector<Cplx> samples(int count) const;
};

/// Contours of the exhausting subdomain at parameter epsilon: outer circle
/// shrunk by (1-eps) and positively oriented, holes inflated by (1+eps) and
/// negatively oriented.
std::vector<Contour> exhausting_contours(const CircleDomain& domain, double epsilon);

class ContourFamily {
public:
  ContourFamily(CircleDomain domain, std::vector<double> epsilons);

  /// Geometric schedule eps0 * 2^-m, m = 0..levels-1, keeping only the
  /// entries for which the contour system is valid.
  static ContourFamily geometric(const CircleDomain& domain, double eps0 = 0.2, int levels = 13);

  int size() const { return static_cast<int>(epsilons_.size()); }
  double epsilon(int m) const { return epsilons_.at(m); }
  std::vector<Contour> contours(int m) const;
  const CircleDomain& domain() const { return domain_; }

private:
  CircleDomain domain_;
  std::vector<double> epsilons_;
};

/// Equispaced-in-angle samples on one boundary component, paired with the
/// component index.
std::vector<std::pair<Cplx, int>> sample_component(const CircleDomain& domain, int component_index,
                                                   int count);

} // namespace wgate

#endif
