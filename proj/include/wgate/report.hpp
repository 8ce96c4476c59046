#ifndef WGATE_REPORT_HPP
#define WGATE_REPORT_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wgate/common.hpp"
#include "wgate/degree.hpp"
#include "wgate/dirichlet.hpp"
#include "wgate/extend.hpp"
#include "wgate/periods.hpp"
#include "wgate/slit_puncture.hpp"
#include "wgate/witness.hpp"

namespace wgate {

inline constexpr const char* kReportSchema = "winding-gate/1";

/// Small JSON value with insertion-ordered objects and floats pinned to 17
/// significant digits, so identical runs dump identical bytes.
class JVal {
public:
  JVal() : kind_(Kind::Null) {}
  JVal(bool b) : kind_(Kind::Bool), bool_(b) {}
  JVal(int v) : kind_(Kind::Int), int_(v) {}
  JVal(long long v) : kind_(Kind::Int), int_(v) {}
  JVal(double v) : kind_(Kind::Double), double_(v) {}
  JVal(const char* s) : kind_(Kind::String), string_(s) {}
  JVal(std::string s) : kind_(Kind::String), string_(std::move(s)) {}

  static JVal array();
  static JVal object();

  JVal& push(JVal v);                      // array append
  JVal& set(std::string key, JVal v);      // ordered object insert
  bool is_array() const { return kind_ == Kind::Array; }

  std::string dump(int indent = 2) const;

private:
  enum class Kind { Null, Bool, Int, Double, String, Array, Object };
  void dump_to(std::string& out, int indent, int depth) const;

  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<JVal> items_;
  std::vector<std::pair<std::string, JVal>> fields_;
};

JVal json_complex(Cplx z);                 // [re, im]
JVal json_complex_vector(const std::vector<Cplx>& v);

JVal field_to_json(const HarmonicField& field);
JVal holo_to_json(const HoloFunction& g);
JVal period_matrix_to_json(const PeriodMatrix& pm);
JVal degree_to_json(const DegreeResult& result);
JVal extendibility_to_json(const ExtendibilityReport& report);
JVal witness_to_json(const Witness& witness);
JVal sweep_to_json(const SweepReport& report);

/// write-then-rename; no partial files on failure.
void write_file_atomic(const std::string& path, const std::string& content);

struct CsvWriter {
  explicit CsvWriter(std::string header);
  void row(std::initializer_list<double> values);
  const std::string& str() const { return buffer_; }

private:
  std::string buffer_;
};

/// Cartesian probe-grid evaluation of a field, exported as x,y,re,im rows.
std::string field_probe_csv(const HarmonicField& field, int resolution = 64);
/// Contour trace export: t, re psi, im psi, unwrapped phase.
std::string trace_csv(const std::vector<TraceRow>& rows);

std::string format_double_17(double v);

} // namespace wgate

#endif
