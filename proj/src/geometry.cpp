#include "wgate/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wgate/error.hpp"

namespace wgate {

double halton(std::size_t index, int base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::size_t>(base));
    i /= static_cast<std::size_t>(base);
  }
  return r;
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

CircleDomain::CircleDomain(Circle outer, std::vector<Circle> holes)
    : outer_(outer), holes_(std::move(holes)) {
  if (!(outer_.radius > 0.0))
    throw DegenerateError("outer radius must be positive");
  for (std::size_t j = 0; j < holes_.size(); ++j) {
    const Circle& h = holes_[j];
    if (!(h.radius > 0.0))
      throw DegenerateError("hole " + std::to_string(j) + " radius must be positive");
    if (!(std::abs(h.center - outer_.center) + h.radius < outer_.radius))
      throw ContainmentError("hole " + std::to_string(j) + " is not strictly inside the outer disc");
  }
  for (std::size_t j = 0; j < holes_.size(); ++j)
    for (std::size_t k = j + 1; k < holes_.size(); ++k) {
      double gap = std::abs(holes_[j].center - holes_[k].center) -
                   (holes_[j].radius + holes_[k].radius);
      if (!(gap > 0.0))
        throw OverlapError("holes " + std::to_string(j) + " and " + std::to_string(k) +
                           " intersect or touch");
    }
}

const Circle& CircleDomain::component(int index) const {
  int n = num_components();
  if (index < 0 || index >= n)
    throw IndexError("component index " + std::to_string(index) + " out of range 0.." +
                     std::to_string(n - 1));
  if (index == n - 1) return outer_;
  return holes_[static_cast<std::size_t>(index)];
}

bool CircleDomain::contains(Cplx z) const { return boundary_distance(z) > 0.0; }

double CircleDomain::boundary_distance(Cplx z) const {
  double d = outer_.radius - std::abs(z - outer_.center);
  for (const Circle& h : holes_) d = std::min(d, std::abs(z - h.center) - h.radius);
  return d;
}

std::vector<Cplx> CircleDomain::interior_probes(int count, double margin_factor) const {
  std::vector<Cplx> pts;
  pts.reserve(static_cast<std::size_t>(count));
  double margin = margin_factor * outer_.radius;
  std::size_t i = 1;
  while (pts.size() < static_cast<std::size_t>(count)) {
    double u = halton(i, 2), v = halton(i, 3);
    ++i;
    Cplx z = outer_.center + Cplx((2 * u - 1) * outer_.radius, (2 * v - 1) * outer_.radius);
    if (boundary_distance(z) >= margin) pts.push_back(z);
    if (i > 1000000u) throw NonConvergent("interior probe generation exhausted");
  }
  return pts;
}

namespace {

Circle circle_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    throw InvalidInput(std::string(what) + " must be {\"center\": [re, im], \"radius\": r}");
  const auto& c = j.at("center");
  if (!c.is_array() || c.size() != 2)
    throw InvalidInput(std::string(what) + " center must be [re, im]");
  Circle out;
  out.center = Cplx(c.at(0).get<double>(), c.at(1).get<double>());
  out.radius = j.at("radius").get<double>();
  return out;
}

} // namespace

CircleDomain build_domain(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("domain document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("outer"))
    throw InvalidInput("domain document must contain \"outer\"");
  Circle outer = circle_from_json(doc.at("outer"), "outer");
  std::vector<Circle> holes;
  if (doc.contains("holes")) {
    if (!doc.at("holes").is_array()) throw InvalidInput("\"holes\" must be an array");
    for (const auto& h : doc.at("holes")) holes.push_back(circle_from_json(h, "hole"));
  }
  return CircleDomain(outer, std::move(holes));
}

CircleDomain load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open domain file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return build_domain(ss.str());
}

std::vector<Cplx> Contour::samples(int count) const {
  std::vector<Cplx> pts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    pts[static_cast<std::size_t>(i)] = point(static_cast<double>(i) / count);
  return pts;
}

std::vector<Contour> exhausting_contours(const CircleDomain& domain, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw EpsilonTooLarge("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  Circle outer{domain.outer().center, domain.outer().radius * (1.0 - epsilon)};
  std::vector<Contour> result;
  result.push_back(Contour{outer, +1});
  for (const Circle& h : domain.holes()) {
    Circle inflated{h.center, h.radius * (1.0 + epsilon)};
    if (!(std::abs(inflated.center - outer.center) + inflated.radius < outer.radius))
      throw EpsilonTooLarge("inflated hole exits the shrunken outer circle at epsilon = " +
                            std::to_string(epsilon));
    result.push_back(Contour{inflated, -1});
  }
  for (std::size_t j = 1; j < result.size(); ++j)
    for (std::size_t k = j + 1; k < result.size(); ++k) {
      double gap = std::abs(result[j].circle.center - result[k].circle.center) -
                   (result[j].circle.radius + result[k].circle.radius);
      if (!(gap > 0.0))
        throw EpsilonTooLarge("inflated holes collide at epsilon = " + std::to_string(epsilon));
    }
  return result;
}

ContourFamily::ContourFamily(CircleDomain domain, std::vector<double> epsilons)
    : domain_(std::move(domain)), epsilons_(std::move(epsilons)) {
  if (epsilons_.empty()) throw InvalidInput("contour family needs a nonempty schedule");
  for (std::size_t m = 0; m + 1 < epsilons_.size(); ++m)
    if (!(epsilons_[m] > epsilons_[m + 1]))
      throw InvalidInput("epsilon schedule must be strictly decreasing");
  for (double e : epsilons_) exhausting_contours(domain_, e); // validates nesting
}

ContourFamily ContourFamily::geometric(const CircleDomain& domain, double eps0, int levels) {
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw EpsilonTooLarge("eps0 must lie in (0,1)");
  std::vector<double> eps;
  for (int m = 0; m < levels; ++m) {
    double e = eps0 * std::pow(2.0, -m);
    try {
      exhausting_contours(domain, e);
    } catch (const EpsilonTooLarge&) {
      continue; // cramped geometry: drop the coarse leading entries
    }
    eps.push_back(e);
  }
  if (eps.size() < 3)
    throw EpsilonTooLarge("no usable contour schedule for this domain (eps0 = " +
                          std::to_string(eps0) + ")");
  return ContourFamily(domain, std::move(eps));
}

std::vector<Contour> ContourFamily::contours(int m) const {
  return exhausting_contours(domain_, epsilon(m));
}

std::vector<std::pair<Cplx, int>> sample_component(const CircleDomain& domain, int component_index,
                                                   int count) {
  if (count < 1) throw InvalidInput("sample_component requires count >= 1");
  const Circle& c = domain.component(component_index);
  std::vector<std::pair<Cplx, int>> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    pts.emplace_back(c.point(kTwoPi * i / count), component_index);
  return pts;
}

} // namespace wgate
