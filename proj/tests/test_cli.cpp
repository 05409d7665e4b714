// End-to-end checks of the quaddom binary: spawns the tool found via the
// QUADDOM_CLI environment variable and inspects outputs and exit codes.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "quaddom/families.hpp"
#include "quaddom/io.hpp"

using namespace quaddom;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr interleaved
};

std::string cli_path() {
  const char* env = std::getenv("QUADDOM_CLI");
  REQUIRE_MESSAGE(env != nullptr, "QUADDOM_CLI must point at the built binary");
  return env;
}

fs::path tmp_dir() {
  const char* env = std::getenv("QUADDOM_TEST_TMP");
  fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "quaddom_cli_test";
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
    output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), output};
}

std::string write_family1_spec() {
  const FamilySolution sol = solve_family1(1.0);
  const fs::path path = tmp_dir() / "fam1_b1.json";
  save_spec_file(sol.spec, path.string());
  return path.string();
}

std::string write_identity_spec() {
  const ConformalMapSpec id{QuadraticPoly{{0, 0}, {1, 0}, {0, 0}}};
  const fs::path path = tmp_dir() / "identity.json";
  save_spec_file(id, path.string());
  return path.string();
}

}  // namespace

TEST_CASE("cli: map eval prints psi(-ib) = 0 for the solved conchoid") {
  const RunResult res = run("map eval --spec " + write_family1_spec() + " --w 0,-1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"psi\":[0,0]") != std::string::npos);
  CHECK(res.output.find("\"psi_prime\":[1.2071067811865475") != std::string::npos);
}

TEST_CASE("cli: map trace uniform n=3 emits the three identity rows") {
  const RunResult res = run("map trace --spec " + write_identity_spec() +
                            " --tmin -1 --tmax 1 --n 3 --grading uniform");
  CHECK(res.exit_code == 0);
  CHECK(res.output == "t,x,y\n-1,-1,0\n0,0,0\n1,1,0\n");
}

TEST_CASE("cli: map classify reports the parabola class with coefficients") {
  const FamilySolution sol = solve_family2(0.05);
  const fs::path path = tmp_dir() / "fam2.json";
  save_spec_file(sol.spec, path.string());
  const RunResult res = run("map classify --spec " + path.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"class\":\"parabola\"") != std::string::npos);
  CHECK(res.output.find("\"A2\":[0,1]") != std::string::npos);
  CHECK(res.output.find("\"A1\":[2,0]") != std::string::npos);
}

TEST_CASE("cli: map univalence flags the looped spec with a location") {
  QuadraticPoly q{{0, 0}, {2, 0}, {0, 1}};
  ConformalMapSpec bad(q, {PoleGroup{Complex{0.0, 0.1}, {Complex{1.0, 0.0}}}}, {});
  const fs::path path = tmp_dir() / "looped.json";
  save_spec_file(bad, path.string());
  const RunResult res = run("map univalence --spec " + path.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"verdict\":\"fail\"") != std::string::npos);
  CHECK(res.output.find("\"location\":[") != std::string::npos);

  const RunResult ok = run("map univalence --spec " + write_family1_spec());
  CHECK(ok.output.find("\"verdict\":\"pass\"") != std::string::npos);
}

TEST_CASE("cli: qd derive emits the pi Dirac mass; verify passes and gates") {
  const std::string spec = write_family1_spec();
  const RunResult derive = run("qd derive --spec " + spec);
  CHECK(derive.exit_code == 0);
  CHECK(derive.output.find("\"points\":[{\"beta\":[") != std::string::npos);
  CHECK(derive.output.find("3.14159265") != std::string::npos);

  const RunResult verify = run("qd verify --spec " + spec + " --testfn 0,3,3 --tol 1e-7");
  CHECK(verify.exit_code == 0);
  CHECK(verify.output.find("\"verdict\":\"pass\"") != std::string::npos);

  // Pole below the domain: rejected by the admissibility screen, exit 4.
  const RunResult bad = run("qd verify --spec " + spec + " --testfn 0,-5,3");
  CHECK(bad.exit_code == 4);
}

TEST_CASE("cli: schema errors exit with code 2 and name the problem") {
  const fs::path path = tmp_dir() / "broken.json";
  write_text_file(path.string(), "{\"version\":1,\"q\":{\"A0\":[0,0],\"A1\":[1,0]}}");
  const RunResult res = run("map classify --spec " + path.string());
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("q.A2") != std::string::npos);
}

TEST_CASE("cli: family sweep CSV with limits plus SVG figure") {
  const fs::path svg = tmp_dir() / "conchoids.svg";
  const fs::path csv = tmp_dir() / "sweep.csv";
  const RunResult res = run("family --kind 1 --grid r=0.5,0.7,0.9,0.99 --limits --trace-n 2048 --figure " +
                            svg.string() + " --out " + csv.string());
  CHECK(res.exit_code == 0);
  const std::string sweep = read_text_file(csv.string());
  CHECK(sweep.find("kind,param,a,b,h,univalent,type,weight,hausdorff,note") !=
        std::string::npos);
  CHECK(sweep.find("pass") != std::string::npos);
  CHECK(sweep.find("3.14159265") != std::string::npos);

  const std::string figure = read_text_file(svg.string());
  CHECK(figure.find("<svg xmlns") != std::string::npos);
  CHECK(figure.find("viewBox=\"0 0 720 720\"") != std::string::npos);
  CHECK(figure.find("stroke-dasharray") != std::string::npos);  // dashed limit set
  CHECK(figure.find("limit circle") != std::string::npos);
  // Self-contained: no external references.
  CHECK(figure.find("href") == std::string::npos);
  CHECK(figure.find("url(") == std::string::npos);
}

TEST_CASE("cli: family sweep is deterministic byte for byte") {
  const fs::path csv1 = tmp_dir() / "det1.csv";
  const fs::path csv2 = tmp_dir() / "det2.csv";
  const std::string args = "family --kind 3 --grid a=0.3,0.5 --out ";
  CHECK(run(args + csv1.string()).exit_code == 0);
  CHECK(run(args + csv2.string()).exit_code == 0);
  CHECK(read_text_file(csv1.string()) == read_text_file(csv2.string()));
}

TEST_CASE("cli: family kind 3 emits both root branches with type tags") {
  const RunResult res = run("family --kind 3 --grid a=0.3");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find(",two,") != std::string::npos);
  CHECK(res.output.find(",one_looped,") != std::string::npos);
  CHECK(res.output.find(",fail,") != std::string::npos);  // looped member flagged
}

TEST_CASE("cli: contact field and the below-strip gate") {
  const std::string spec = write_family1_spec();
  const RunResult res = run("contact --spec " + spec + " --sigma 1 --z 0,5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("0.2000000000000") != std::string::npos);

  const RunResult below = run("contact --spec " + spec + " --sigma 1 --z 0,0.5");
  CHECK(below.exit_code == 5);
}

TEST_CASE("cli: contact on a flat CSV curve gives a zero field") {
  BoundaryTrace line;
  for (int i = 0; i <= 200; ++i) {
    line.params.push_back(-100.0 + i);
    line.points.emplace_back(-100.0 + i, 0.25);
  }
  const fs::path path = tmp_dir() / "flat.csv";
  write_text_file(path.string(), trace_to_csv(line));
  const RunResult res = run("contact --curve " + path.string() + " --sigma 2 --z 0,4");
  CHECK(res.exit_code == 0);
  // Field columns are exactly zero for the flat interface.
  CHECK(res.output.find(",0,0,") != std::string::npos);
}

TEST_CASE("cli: contact sweep reports a tiny cross-member deviation") {
  const RunResult res = run("contact --sweep b=0.5,1,2 --sigma 1 --z 0,5 --tol 1e-7");
  CHECK(res.exit_code == 0);
  const auto pos = res.output.find("# max cross-member deviation,");
  REQUIRE(pos != std::string::npos);
  const double dev = std::stod(res.output.substr(pos + 29));
  CHECK(dev < 1e-7);
}

TEST_CASE("cli: QUADDOM_TOL env var overrides the default tolerance") {
  const std::string spec = write_family1_spec();
  auto run_env = [&](const std::string& env_prefix, const std::string& args) {
    FILE* pipe =
        popen(("env " + env_prefix + " " + cli_path() + " " + args + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
      output.append(buf.data(), got);
    }
    return RunResult{WEXITSTATUS(pclose(pipe)), output};
  };

  const RunResult ok = run_env("QUADDOM_TOL=1e-6", "qd derive --spec " + spec);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("3.14159265") != std::string::npos);

  // An unparsable override warns and falls back to the default.
  const RunResult warned = run_env("QUADDOM_TOL=banana", "qd derive --spec " + spec);
  CHECK(warned.exit_code == 0);
  CHECK(warned.output.find("QUADDOM_TOL") != std::string::npos);
}
