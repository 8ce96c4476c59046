#include "wgate/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wgate/error.hpp"

namespace wgate {

std::string format_double_17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JVal JVal::array() {
  JVal v;
  v.kind_ = Kind::Array;
  return v;
}

JVal JVal::object() {
  JVal v;
  v.kind_ = Kind::Object;
  return v;
}

JVal& JVal::push(JVal v) {
  if (kind_ != Kind::Array) throw InvalidInput("push on a non-array JSON value");
  items_.push_back(std::move(v));
  return *this;
}

JVal& JVal::set(std::string key, JVal v) {
  if (kind_ != Kind::Object) throw InvalidInput("set on a non-object JSON value");
  fields_.emplace_back(std::move(key), std::move(v));
  return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void indent_to(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

} // namespace

void JVal::dump_to(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += bool_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(int_); break;
    case Kind::Double: out += format_double_17(double_); break;
    case Kind::String: append_escaped(out, string_); break;
    case Kind::Array: {
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += '[';
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        indent_to(out, indent, depth + 1);
        items_[i].dump_to(out, indent, depth + 1);
      }
      indent_to(out, indent, depth);
      out += ']';
      break;
    }
    case Kind::Object: {
      if (fields_.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (i) out += ',';
        indent_to(out, indent, depth + 1);
        append_escaped(out, fields_[i].first);
        out += indent > 0 ? ": " : ":";
        fields_[i].second.dump_to(out, indent, depth + 1);
      }
      indent_to(out, indent, depth);
      out += '}';
      break;
    }
  }
}

std::string JVal::dump(int indent) const {
  std::string out;
  dump_to(out, indent, 0);
  out += '\n';
  return out;
}

JVal json_complex(Cplx z) {
  JVal arr = JVal::array();
  arr.push(z.real());
  arr.push(z.imag());
  return arr;
}

JVal json_complex_vector(const std::vector<Cplx>& v) {
  JVal arr = JVal::array();
  for (const Cplx& z : v) arr.push(json_complex(z));
  return arr;
}

JVal holo_to_json(const HoloFunction& g) {
  JVal out = JVal::object();
  JVal outer = JVal::array();
  for (const Cplx& c : g.outer()) outer.push(json_complex(c));
  out.set("outer", std::move(outer));
  JVal holes = JVal::array();
  for (int j = 0; j < g.num_holes(); ++j) {
    JVal hole = JVal::array();
    for (const Cplx& c : g.hole(j)) hole.push(json_complex(c));
    holes.push(std::move(hole));
  }
  out.set("holes", std::move(holes));
  return out;
}

JVal field_to_json(const HarmonicField& field) {
  const CircleDomain& dom = field.domain();
  JVal out = JVal::object();
  out.set("N", field.degree());
  out.set("residual", field.residual());
  out.set("real_valued", field.real_valued());
  JVal centers = JVal::array();
  centers.push(json_complex(dom.outer().center));
  for (const Circle& h : dom.holes()) centers.push(json_complex(h.center));
  out.set("centers", std::move(centers));
  out.set("holo", holo_to_json(field.P()));
  out.set("anti", holo_to_json(field.Q()));
  out.set("logs", json_complex_vector(field.logs()));
  return out;
}

JVal period_matrix_to_json(const PeriodMatrix& pm) {
  JVal out = JVal::object();
  JVal alpha = JVal::array();
  for (const auto& row : pm.alpha) {
    JVal jrow = JVal::array();
    for (double v : row) jrow.push(v);
    alpha.push(std::move(jrow));
  }
  out.set("alpha", std::move(alpha));
  out.set("smallest_singular_value", pm.smallest_singular_value);
  out.set("largest_singular_value", pm.largest_singular_value);
  out.set("condition",
          pm.smallest_singular_value > 0 ? pm.largest_singular_value / pm.smallest_singular_value
                                         : 0.0);
  return out;
}

JVal degree_to_json(const DegreeResult& result) {
  JVal out = JVal::object();
  out.set("degree", result.degree);
  out.set("epsilon_used", result.epsilon_used);
  out.set("min_modulus", result.min_modulus);
  out.set("max_arg_step", result.max_arg_step);
  JVal stab = JVal::array();
  for (const auto& [eps, turns] : result.stabilization) {
    JVal entry = JVal::object();
    entry.set("epsilon", eps);
    entry.set("winding", turns);
    stab.push(std::move(entry));
  }
  out.set("stabilization", std::move(stab));
  JVal cert = JVal::object();
  cert.set("delta", result.certificate.delta);
  cert.set("epsilon", result.certificate.epsilon);
  cert.set("systems_sampled", result.certificate.systems_sampled);
  out.set("bounded_away_certificate", std::move(cert));
  return out;
}

JVal extendibility_to_json(const ExtendibilityReport& report) {
  JVal out = JVal::object();
  out.set("verdict", report.verdict == Verdict::Extendible ? "extendible" : "not_extendible");
  out.set("antiholomorphic_residual", report.antiholomorphic_residual);
  out.set("max_abs_A", report.max_abs_A);
  out.set("tol_extend", report.tol_extend);
  out.set("tol_A", report.tol_A);
  out.set("solver_residual", report.solver_residual);
  out.set("probe_grid", json_complex_vector(report.probe_grid));
  out.set("A_values", json_complex_vector(report.A_values));
  if (report.extension) {
    out.set("extension", holo_to_json(*report.extension));
    out.set("extension_boundary_error", report.extension_boundary_error);
  }
  return out;
}

JVal witness_to_json(const Witness& witness) {
  JVal out = JVal::object();
  out.set("a", json_complex(witness.a));
  out.set("gamma", witness.gamma);
  out.set("c", json_complex_vector(witness.c));
  out.set("d", json_complex_vector(witness.d));
  out.set("beta", json_complex_vector(witness.beta));
  out.set("F_a", holo_to_json(witness.F_a));
  out.set("G_a", holo_to_json(witness.G_a));
  out.set("h", holo_to_json(witness.h));
  out.set("f_tilde_numerator", field_to_json(witness.numerator));
  out.set("re_w_residual", witness.re_w_residual);
  out.set("degree", degree_to_json(witness.degree));
  return out;
}

JVal sweep_to_json(const SweepReport& report) {
  JVal out = JVal::object();
  out.set("certified", report.certified_count);
  out.set("total", static_cast<long long>(report.entries.size()));
  out.set("all_nonnegative", report.all_nonnegative);
  JVal entries = JVal::array();
  for (const SweepEntry& e : report.entries) {
    JVal entry = JVal::object();
    entry.set("h", e.label);
    entry.set("certified", e.certified);
    if (e.certified)
      entry.set("degree", e.degree);
    else
      entry.set("skip_reason", e.skip_reason);
    entries.push(std::move(entry));
  }
  out.set("entries", std::move(entries));
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
  }
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out.good()) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

CsvWriter::CsvWriter(std::string header) : buffer_(std::move(header)) { buffer_ += '\n'; }

void CsvWriter::row(std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) buffer_ += ',';
    buffer_ += format_double_17(v);
    first = false;
  }
  buffer_ += '\n';
}

std::string field_probe_csv(const HarmonicField& field, int resolution) {
  const CircleDomain& dom = field.domain();
  const Circle& outer = dom.outer();
  CsvWriter csv("x,y,re,im");
  std::vector<Cplx> pts;
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix) {
      Cplx z = outer.center + Cplx((2.0 * ix / (resolution - 1) - 1.0) * outer.radius,
                                   (2.0 * iy / (resolution - 1) - 1.0) * outer.radius);
      if (dom.boundary_distance(z) > 1e-6 * outer.radius) pts.push_back(z);
    }
  std::vector<Cplx> vals(pts.size());
  evaluate_batch(field, pts, vals);
  for (std::size_t i = 0; i < pts.size(); ++i)
    csv.row({pts[i].real(), pts[i].imag(), vals[i].real(), vals[i].imag()});
  return csv.str();
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  CsvWriter csv("t,re,im,phase");
  for (const TraceRow& r : rows) csv.row({r.t, r.value.real(), r.value.imag(), r.phase});
  return csv.str();
}

} // namespace wgate
