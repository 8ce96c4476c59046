#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string report;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "wgate_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_doc(const std::string& name, const std::string& content) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

RunResult run_cli(const std::string& args, const std::string& out_name) {
  fs::path out_dir = scratch_dir() / out_name;
  std::string cmd = std::string(WGATE_CLI_PATH) + " " + args + " --out " + out_dir.string() +
                    " > " + (scratch_dir() / (out_name + ".stdout")).string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  fs::path report = out_dir / "report.json";
  if (fs::exists(report)) r.report = slurp(report);
  return r;
}

const char* kDisc = R"({"outer": {"center": [0, 0], "radius": 1}})";
const char* kAnnulus =
    R"({"outer": {"center": [0, 0], "radius": 1}, "holes": [{"center": [0, 0], "radius": 0.3}]})";

} // namespace

TEST_CASE("degree command reports winding 0 for z on the annulus") {
  fs::path dom = write_doc("annulus.json", kAnnulus);
  RunResult r = run_cli("degree --domain " + dom.string() + " --psi z", "deg_ann");
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("\"degree\": 0") != std::string::npos);
  CHECK(r.report.find("\"schema\": \"winding-gate/1\"") != std::string::npos);
  // contour traces exist for plotting
  CHECK(fs::exists(scratch_dir() / "deg_ann" / "trace_0.csv"));
  CHECK(fs::exists(scratch_dir() / "deg_ann" / "trace_1.csv"));
}

TEST_CASE("test-extend attaches a witness for conj z on the disc") {
  fs::path dom = write_doc("disc.json", kDisc);
  RunResult r = run_cli("test-extend --domain " + dom.string() + " --f \"conj(z)\"", "ext_disc");
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("\"verdict\": \"not_extendible\"") != std::string::npos);
  CHECK(r.report.find("\"witness\"") != std::string::npos);
  CHECK(r.report.find("\"degree\": -1") != std::string::npos);
  CHECK(fs::exists(scratch_dir() / "ext_disc" / "witness.json"));
}

TEST_CASE("extendible data exits 0 with the extension attached") {
  fs::path dom = write_doc("disc.json", kDisc);
  RunResult r = run_cli("test-extend --domain " + dom.string() + " --f \"z^2\"", "ext_ok");
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("\"verdict\": \"extendible\"") != std::string::npos);
  CHECK(r.report.find("\"extension\"") != std::string::npos);
}

TEST_CASE("numerical failures exit 3") {
  fs::path dom = write_doc("disc.json", kDisc);
  RunResult r = run_cli("degree --domain " + dom.string() + " --psi 0", "deg_zero");
  CHECK(r.exit_code == 3);
}

TEST_CASE("input errors exit 2") {
  RunResult missing = run_cli("degree --psi z", "no_domain");
  CHECK(missing.exit_code == 2);

  fs::path bad = write_doc("bad.json", "{not json");
  RunResult malformed = run_cli("degree --domain " + bad.string() + " --psi z", "bad_domain");
  CHECK(malformed.exit_code == 2);

  fs::path dom = write_doc("disc.json", kDisc);
  RunResult bad_expr =
      run_cli("test-extend --domain " + dom.string() + " --f \"z +\"", "bad_expr");
  CHECK(bad_expr.exit_code == 2);
}

TEST_CASE("witness on extendible data is a certificate failure, exit 4") {
  fs::path dom = write_doc("disc.json", kDisc);
  RunResult r = run_cli("witness --domain " + dom.string() + " --f z", "wit_ok");
  CHECK(r.exit_code == 4);
}

TEST_CASE("witness command re-verifies the annulus certificate") {
  fs::path dom = write_doc("annulus.json", kAnnulus);
  RunResult r = run_cli("witness --domain " + dom.string() + " --f \"conj(z)\"", "wit_ann");
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("\"degree\": -1") != std::string::npos);
  CHECK(r.report.find("reverified_degree") != std::string::npos);
}

TEST_CASE("solve and measure and periods produce their documents") {
  fs::path dom = write_doc("annulus.json", kAnnulus);
  RunResult s = run_cli("solve --domain " + dom.string() + " --f \"conj(z)\"", "solve_ann");
  CHECK(s.exit_code == 0);
  CHECK(fs::exists(scratch_dir() / "solve_ann" / "field.csv"));
  std::string csv = slurp(scratch_dir() / "solve_ann" / "field.csv");
  CHECK(csv.rfind("x,y,re,im", 0) == 0);

  RunResult m = run_cli("measure --domain " + dom.string(), "measure_ann");
  CHECK(m.exit_code == 0);
  CHECK(fs::exists(scratch_dir() / "measure_ann" / "measure_0.csv"));

  RunResult p = run_cli("periods --domain " + dom.string(), "periods_ann");
  CHECK(p.exit_code == 0);
  CHECK(p.report.find("period_matrix") != std::string::npos);

  fs::path disc = write_doc("disc.json", kDisc);
  RunResult pd = run_cli("measure --domain " + disc.string(), "measure_disc");
  CHECK(pd.exit_code == 2); // no holes
}

TEST_CASE("boundary documents drive test-extend through --boundary") {
  fs::path dom = write_doc("annulus2.json", kAnnulus);
  fs::path bdata = write_doc("bdata.json", R"json({"components": [
    {"kind": "expr", "expr": "1/z"},
    {"kind": "rational", "num": [[1, 0]], "den": [[0, 0], [1, 0]]}
  ]})json");
  RunResult r = run_cli(
      "test-extend --domain " + dom.string() + " --boundary " + bdata.string(), "ext_doc");
  CHECK(r.exit_code == 0);
  CHECK(r.report.find("\"verdict\": \"extendible\"") != std::string::npos);

  RunResult both = run_cli("test-extend --domain " + dom.string() + " --boundary " +
                               bdata.string() + " --f z",
                           "ext_both");
  CHECK(both.exit_code == 2); // mutually exclusive
}

TEST_CASE("example commands run single cases and sweeps") {
  RunResult single = run_cli("example slit --h \"-z^2\" --r 0.01", "slit_one");
  CHECK(single.exit_code == 0);
  CHECK(single.report.find("\"degree\": 1") != std::string::npos);
  CHECK(fs::exists(scratch_dir() / "slit_one" / "trace.csv"));

  RunResult punct = run_cli("example puncture --h \"z - 0.5\" --R 0.95 --rho 0.01", "punct_one");
  CHECK(punct.exit_code == 0);
  CHECK(punct.report.find("\"degree\": 1") != std::string::npos);
  CHECK(fs::exists(scratch_dir() / "punct_one" / "trace_R.csv"));
  CHECK(fs::exists(scratch_dir() / "punct_one" / "trace_rho.csv"));

  RunResult sweep = run_cli("example puncture --seed 5", "punct_sweep");
  CHECK(sweep.exit_code == 0);
  CHECK(sweep.report.find("\"all_nonnegative\": true") != std::string::npos);
  CHECK(fs::exists(scratch_dir() / "punct_sweep" / "sweep.json"));
}

TEST_CASE("identical seeds produce byte-identical reports") {
  fs::path dom = write_doc("annulus.json", kAnnulus);
  RunResult a = run_cli("degree --domain " + dom.string() + " --psi \"z^2 + 0.5\"", "det_a");
  RunResult b = run_cli("degree --domain " + dom.string() + " --psi \"z^2 + 0.5\"", "det_b");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.report == b.report);

  RunResult s1 = run_cli("example slit --seed 9", "det_s1");
  RunResult s2 = run_cli("example slit --seed 9", "det_s2");
  REQUIRE(s1.exit_code == 0);
  CHECK(s1.report == s2.report);
  CHECK(slurp(scratch_dir() / "det_s1" / "sweep.json") ==
        slurp(scratch_dir() / "det_s2" / "sweep.json"));
}
