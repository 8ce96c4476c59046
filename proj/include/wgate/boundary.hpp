#ifndef WGATE_BOUNDARY_HPP
#define WGATE_BOUNDARY_HPP

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wgate/common.hpp"
#include "wgate/geometry.hpp"

namespace wgate {

namespace expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Z, Literal, Conj, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Z;
  Cplx literal;      // Kind::Literal
  int exponent = 0;  // Kind::Pow
  NodePtr lhs, rhs;
};

/// Recursive-descent parse of the boundary-expression grammar. Throws
/// SyntaxError carrying the byte offset of the first bad token.
NodePtr parse(std::string_view text);

Cplx eval(const Node& node, Cplx z);

/// Canonical rendering; a fixed point of parse-then-print.
std::string pretty_print(const Node& node);

} // namespace expr

/// Continuous complex boundary data, one payload per component (component
/// order matches CircleDomain indexing: holes first, outer last).
class BoundaryFunction {
public:
  struct ExpressionData {
    expr::NodePtr ast;
    std::string source;
  };
  struct RationalData {
    std::vector<Cplx> num; // polynomial coefficients in z, ascending powers
    std::vector<Cplx> den;
  };
  struct TableData {
    std::vector<double> angles; // strictly increasing in [0, 2*pi)
    std::vector<Cplx> values;   // linear interpolation between knots, wrapping
  };
  using Payload = std::variant<ExpressionData, RationalData, TableData>;

  BoundaryFunction(CircleDomain domain, std::vector<Payload> per_component);

  static BoundaryFunction uniform_expression(const CircleDomain& domain, std::string_view text);
  static BoundaryFunction from_json(const CircleDomain& domain, const std::string& json_text);
  static BoundaryFunction from_json_file(const CircleDomain& domain, const std::string& path);

  /// Value at a boundary point; the point must lie on the indexed component
  /// circle within 1e-9 * radius.
  Cplx eval(Cplx point, int component_index) const;
  /// Value parameterized by angle on the component circle.
  Cplx eval_angle(int component_index, double angle) const;

  /// Dense-sample continuity/finiteness check; throws InvalidBoundaryData.
  void validate() const;

  BoundaryFunction scaled(Cplx factor) const;

  const CircleDomain& domain() const { return domain_; }
  const std::vector<Payload>& payloads() const { return payloads_; }
  std::string describe(int component_index) const;

private:
  CircleDomain domain_;
  std::vector<Payload> payloads_;
  std::vector<Cplx> scale_; // per-component multiplier (used by scaled())
};

/// Parses a table CSV with rows `angle,re[,im]`.
BoundaryFunction::TableData load_table_csv(const std::string& path);

/// The canonical continuous extension used throughout is the harmonic one;
/// the mapping degree does not depend on this choice, which is what licenses
/// fixing it.
enum class ExtensionChoice { Harmonic };

} // namespace wgate

#endif
