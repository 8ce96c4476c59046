#include "wgate/boundary.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wgate/error.hpp"

namespace wgate {

namespace expr {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_literal(Cplx v) {
  if (v.imag() == 0.0) return format_double(v.real());
  if (v.real() == 0.0) return format_double(v.imag()) + "i";
  return "(" + format_double(v.real()) + "," + format_double(v.imag()) + ")";
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr make(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  NodePtr parse_expr() {
    bool negate = false;
    skip_ws();
    if (consume('-'))
      negate = true;
    else
      consume('+');
    NodePtr acc = parse_term();
    if (negate) acc = make(Node::Kind::Neg, acc);
    for (;;) {
      if (consume('+'))
        acc = make(Node::Kind::Add, acc, parse_term());
      else if (consume('-'))
        acc = make(Node::Kind::Sub, acc, parse_term());
      else
        break;
    }
    return acc;
  }

  NodePtr parse_term() {
    NodePtr acc = parse_factor();
    for (;;) {
      if (consume('*'))
        acc = make(Node::Kind::Mul, acc, parse_factor());
      else if (consume('/'))
        acc = make(Node::Kind::Div, acc, parse_factor());
      else
        break;
    }
    return acc;
  }

  NodePtr parse_factor() {
    NodePtr base = parse_atom();
    if (consume('^')) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Pow;
      n->lhs = base;
      n->exponent = parse_integer();
      return n;
    }
    return base;
  }

  int parse_integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer exponent");
    }
    int value = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc()) {
      pos_ = start;
      fail("exponent out of range");
    }
    return value;
  }

  bool try_decimal(double& out) {
    skip_ws();
    std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    std::size_t digits = p;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p == digits) return false;
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    }
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      std::size_t edigits = q;
      while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
      if (q > edigits) p = q;
    }
    auto res = std::from_chars(text_.data() + start, text_.data() + p, out);
    if (res.ec != std::errc()) return false;
    pos_ = p;
    return true;
  }

  NodePtr literal(Cplx v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Literal;
    n->literal = v;
    return n;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected operand");
    char c = text_[pos_];
    if (c == 'z') {
      ++pos_;
      return make(Node::Kind::Z);
    }
    if (text_.substr(pos_, 4) == "conj") {
      pos_ += 4;
      if (!consume('(')) fail("expected '(' after conj");
      NodePtr inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return make(Node::Kind::Conj, inner);
    }
    if (c == 'i') {
      ++pos_;
      return literal(Cplx(0, 1));
    }
    if (c == '(') {
      // either a parenthesized expression or a "(re,im)" literal
      std::size_t save = pos_;
      ++pos_;
      double re = 0, im = 0;
      if (try_decimal(re) && consume(',')) {
        if (!try_decimal(im)) fail("expected imaginary part");
        if (!consume(')')) fail("expected ')'");
        return literal(Cplx(re, im));
      }
      pos_ = save;
      consume('(');
      NodePtr inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      double v = 0;
      if (!try_decimal(v)) fail("malformed number");
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return literal(Cplx(0, v));
      }
      return literal(Cplx(v, 0));
    }
    fail("expected operand");
  }
};

Cplx int_pow(Cplx base, int e) {
  if (e < 0) {
    if (base == Cplx(0, 0)) throw DivisionByZero("0 raised to a negative power");
    return Cplx(1, 0) / int_pow(base, -e);
  }
  Cplx acc(1, 0), b = base;
  unsigned n = static_cast<unsigned>(e);
  while (n) {
    if (n & 1u) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

int precedence(Node::Kind k) {
  switch (k) {
    case Node::Kind::Add:
    case Node::Kind::Sub:
    case Node::Kind::Neg: return 1;
    case Node::Kind::Mul:
    case Node::Kind::Div: return 2;
    case Node::Kind::Pow: return 3;
    default: return 4;
  }
}

void print_node(const Node& n, int min_prec, std::string& out) {
  int prec = precedence(n.kind);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (n.kind) {
    case Node::Kind::Z: out += 'z'; break;
    case Node::Kind::Literal: out += format_literal(n.literal); break;
    case Node::Kind::Conj:
      out += "conj(";
      print_node(*n.lhs, 1, out);
      out += ')';
      break;
    case Node::Kind::Neg:
      out += '-';
      print_node(*n.lhs, 2, out);
      break;
    case Node::Kind::Add:
      print_node(*n.lhs, 1, out);
      out += " + ";
      print_node(*n.rhs, 2, out);
      break;
    case Node::Kind::Sub:
      print_node(*n.lhs, 1, out);
      out += " - ";
      print_node(*n.rhs, 2, out);
      break;
    case Node::Kind::Mul:
      print_node(*n.lhs, 2, out);
      out += " * ";
      print_node(*n.rhs, 3, out);
      break;
    case Node::Kind::Div:
      print_node(*n.lhs, 2, out);
      out += " / ";
      print_node(*n.rhs, 3, out);
      break;
    case Node::Kind::Pow:
      print_node(*n.lhs, 4, out);
      out += '^';
      out += std::to_string(n.exponent);
      break;
  }
  if (parens) out += ')';
}

} // namespace

NodePtr parse(std::string_view text) { return Parser(text).run(); }

Cplx eval(const Node& node, Cplx z) {
  switch (node.kind) {
    case Node::Kind::Z: return z;
    case Node::Kind::Literal: return node.literal;
    case Node::Kind::Conj: return std::conj(eval(*node.lhs, z));
    case Node::Kind::Neg: return -eval(*node.lhs, z);
    case Node::Kind::Add: return eval(*node.lhs, z) + eval(*node.rhs, z);
    case Node::Kind::Sub: return eval(*node.lhs, z) - eval(*node.rhs, z);
    case Node::Kind::Mul: return eval(*node.lhs, z) * eval(*node.rhs, z);
    case Node::Kind::Div: {
      Cplx den = eval(*node.rhs, z);
      if (den == Cplx(0, 0)) throw DivisionByZero("expression denominator vanished");
      return eval(*node.lhs, z) / den;
    }
    case Node::Kind::Pow: return int_pow(eval(*node.lhs, z), node.exponent);
  }
  throw InvalidInput("corrupt expression node");
}

std::string pretty_print(const Node& node) {
  std::string out;
  print_node(node, 1, out);
  return out;
}

} // namespace expr

namespace {

Cplx horner(const std::vector<Cplx>& coeffs, Cplx z) {
  Cplx acc(0, 0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void check_table(const BoundaryFunction::TableData& t) {
  if (t.angles.size() != t.values.size() || t.angles.size() < 2)
    throw InvalidBoundaryData("table needs >= 2 (angle, value) knots");
  for (std::size_t i = 0; i < t.angles.size(); ++i) {
    if (!(t.angles[i] >= 0.0 && t.angles[i] < kTwoPi))
      throw InvalidBoundaryData("table angles must lie in [0, 2*pi)");
    if (i > 0 && !(t.angles[i] > t.angles[i - 1]))
      throw InvalidBoundaryData("table angles must be strictly increasing");
  }
}

Cplx table_eval(const BoundaryFunction::TableData& t, double angle) {
  double theta = wrap_angle(angle);
  const auto& a = t.angles;
  const auto& v = t.values;
  std::size_t n = a.size();
  if (theta < a.front() || theta >= a.back()) {
    // wrap-around segment between the last and first knots
    double span = (a.front() + kTwoPi) - a.back();
    double local = theta >= a.back() ? theta - a.back() : theta + kTwoPi - a.back();
    double s = local / span;
    return v.back() + s * (v.front() - v.back());
  }
  auto it = std::upper_bound(a.begin(), a.end(), theta);
  std::size_t hi = static_cast<std::size_t>(it - a.begin());
  std::size_t lo = hi - 1;
  (void)n;
  double s = (theta - a[lo]) / (a[hi] - a[lo]);
  return v[lo] + s * (v[hi] - v[lo]);
}

std::vector<Cplx> coeffs_from_json(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array() || arr.empty())
    throw InvalidInput(std::string(what) + " must be a nonempty array of [re, im] pairs");
  std::vector<Cplx> out;
  for (const auto& c : arr) {
    if (!c.is_array() || c.size() != 2)
      throw InvalidInput(std::string(what) + " entries must be [re, im]");
    out.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  }
  return out;
}

} // namespace

BoundaryFunction::BoundaryFunction(CircleDomain domain, std::vector<Payload> per_component)
    : domain_(std::move(domain)), payloads_(std::move(per_component)) {
  if (payloads_.size() != static_cast<std::size_t>(domain_.num_components()))
    throw InvalidBoundaryData("expected one payload per boundary component (" +
                              std::to_string(domain_.num_components()) + "), got " +
                              std::to_string(payloads_.size()));
  for (const Payload& p : payloads_)
    if (const auto* t = std::get_if<TableData>(&p)) check_table(*t);
  scale_.assign(payloads_.size(), Cplx(1, 0));
}

BoundaryFunction BoundaryFunction::uniform_expression(const CircleDomain& domain,
                                                      std::string_view text) {
  ExpressionData data{expr::parse(text), std::string(text)};
  std::vector<Payload> payloads(static_cast<std::size_t>(domain.num_components()), Payload(data));
  return BoundaryFunction(domain, std::move(payloads));
}

BoundaryFunction BoundaryFunction::from_json(const CircleDomain& domain,
                                             const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("boundary document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("components") || !doc.at("components").is_array())
    throw InvalidInput("boundary document must contain a \"components\" array");
  std::vector<Payload> payloads;
  for (const auto& comp : doc.at("components")) {
    std::string kind = comp.value("kind", "");
    if (kind == "expr") {
      std::string text = comp.value("expr", comp.value("text", ""));
      if (text.empty()) throw InvalidInput("expr component needs an \"expr\" string");
      payloads.emplace_back(ExpressionData{expr::parse(text), text});
    } else if (kind == "rational") {
      RationalData r;
      r.num = coeffs_from_json(comp.at("num"), "num");
      r.den = comp.contains("den") ? coeffs_from_json(comp.at("den"), "den")
                                   : std::vector<Cplx>{Cplx(1, 0)};
      payloads.emplace_back(std::move(r));
    } else if (kind == "table") {
      if (comp.contains("csv")) {
        payloads.emplace_back(load_table_csv(comp.at("csv").get<std::string>()));
      } else {
        if (!comp.contains("points") || !comp.at("points").is_array())
          throw InvalidInput("table component needs \"points\" or \"csv\"");
        TableData t;
        for (const auto& row : comp.at("points")) {
          if (!row.is_array() || row.size() < 2 || row.size() > 3)
            throw InvalidInput("table points must be [angle, re] or [angle, re, im]");
          t.angles.push_back(row.at(0).get<double>());
          double re = row.at(1).get<double>();
          double im = row.size() == 3 ? row.at(2).get<double>() : 0.0;
          t.values.emplace_back(re, im);
        }
        payloads.emplace_back(std::move(t));
      }
    } else {
      throw InvalidInput("unknown boundary component kind: \"" + kind + "\"");
    }
  }
  return BoundaryFunction(domain, std::move(payloads));
}

BoundaryFunction BoundaryFunction::from_json_file(const CircleDomain& domain,
                                                  const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open boundary file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(domain, ss.str());
}

Cplx BoundaryFunction::eval(Cplx point, int component_index) const {
  const Circle& c = domain_.component(component_index);
  double off = std::abs(std::abs(point - c.center) - c.radius);
  if (off > 1e-9 * c.radius)
    throw OffBoundaryError("point is not on component " + std::to_string(component_index) +
                           " (offset " + std::to_string(off) + ")");
  const Payload& p = payloads_[static_cast<std::size_t>(component_index)];
  Cplx s = scale_[static_cast<std::size_t>(component_index)];
  if (const auto* e = std::get_if<ExpressionData>(&p)) return s * expr::eval(*e->ast, point);
  if (const auto* r = std::get_if<RationalData>(&p)) {
    Cplx den = horner(r->den, point);
    if (den == Cplx(0, 0)) throw DivisionByZero("rational boundary data denominator vanished");
    return s * horner(r->num, point) / den;
  }
  const auto& t = std::get<TableData>(p);
  return s * table_eval(t, std::arg(point - c.center));
}

Cplx BoundaryFunction::eval_angle(int component_index, double angle) const {
  const Circle& c = domain_.component(component_index);
  const Payload& p = payloads_[static_cast<std::size_t>(component_index)];
  Cplx s = scale_[static_cast<std::size_t>(component_index)];
  if (const auto* t = std::get_if<TableData>(&p)) return s * table_eval(*t, angle);
  return eval(c.point(angle), component_index);
}

void BoundaryFunction::validate() const {
  constexpr int kDense = 512;
  for (int comp = 0; comp < domain_.num_components(); ++comp) {
    for (int i = 0; i < kDense; ++i) {
      double angle = kTwoPi * i / kDense;
      Cplx v;
      try {
        v = eval_angle(comp, angle);
      } catch (const DivisionByZero&) {
        throw InvalidBoundaryData("boundary data has a pole on component " +
                                  std::to_string(comp) + " near angle " + std::to_string(angle));
      }
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InvalidBoundaryData("boundary data is not finite on component " +
                                  std::to_string(comp));
    }
  }
}

BoundaryFunction BoundaryFunction::scaled(Cplx factor) const {
  BoundaryFunction out = *this;
  for (Cplx& s : out.scale_) s *= factor;
  return out;
}

std::string BoundaryFunction::describe(int component_index) const {
  const Payload& p = payloads_[static_cast<std::size_t>(component_index)];
  if (const auto* e = std::get_if<ExpressionData>(&p)) return e->source;
  if (const auto* r = std::get_if<RationalData>(&p))
    return "rational(" + std::to_string(r->num.size() - 1) + "/" +
           std::to_string(r->den.size() - 1) + ")";
  const auto& t = std::get<TableData>(p);
  return "table(" + std::to_string(t.angles.size()) + " knots)";
}

BoundaryFunction::TableData load_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table CSV: " + path);
  BoundaryFunction::TableData t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double angle, re, im = 0.0;
    if (!(row >> angle >> re)) {
      if (lineno == 1) continue; // header
      throw InvalidInput("malformed CSV row " + std::to_string(lineno) + " in " + path);
    }
    row >> im;
    t.angles.push_back(angle);
    t.values.emplace_back(re, im);
  }
  check_table(t);
  return t;
}

} // namespace wgate
