// Command-line front end for the quadrature-domain library: map
// evaluation/tracing/classification, distribution derivation and identity
// verification, family sweeps with SVG figures, and contact-field reports.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quaddom/contact.hpp"
#include "quaddom/families.hpp"
#include "quaddom/io.hpp"
#include "quaddom/svg.hpp"

namespace {

using namespace quaddom;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitAdmissibility = 4;
constexpr int kExitGeometry = 5;

double default_rel_tol() {
  if (const char* env = std::getenv("QUADDOM_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring unparsable QUADDOM_TOL\n";
  }
  return 1e-8;
}

ToleranceSpec make_tol(double rel) {
  ToleranceSpec tol;
  tol.rel_tol = rel;
  tol.abs_tol = std::max(rel * 1e-4, 1e-13);
  return tol;
}

Complex parse_complex_flag(const std::string& text, const std::string& flag) {
  double re = 0.0, im = 0.0;
  char comma = 0;
  std::istringstream in(text);
  in >> re >> comma >> im;
  if (!in || comma != ',') {
    throw Error(Errc::SchemaError, "flag " + flag + " expects 're,im', got '" + text + "'");
  }
  return Complex{re, im};
}

TestFunction parse_testfn(const std::string& text) {
  double re = 0.0, im = 0.0;
  int k = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  in >> re >> c1 >> im >> c2 >> k;
  if (!in || c1 != ',' || c2 != ',') {
    throw Error(Errc::SchemaError, "--testfn expects 're,im,k', got '" + text + "'");
  }
  if (k < 3) throw Error(Errc::SchemaError, "--testfn needs decay order k >= 3");
  return TestFunction{Complex{re, im}, k};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(out_path, text);
  }
}

// ---- map subcommands ---------------------------------------------------

struct MapArgs {
  std::string spec_path;
  std::string w_flag;
  std::string out_path;
  double t_min = -1e3, t_max = 1e3;
  int n = 2048;
  std::string grading = "tan";
  int uni_n = 4096;
  double uni_span = 1e3;
};

int run_map_eval(const MapArgs& args) {
  const ConformalMapSpec spec = load_spec_file(args.spec_path);
  const Complex w = parse_complex_flag(args.w_flag, "--w");
  const Complex z = eval_map(spec, w);
  const Complex dz = eval_map_derivative(spec, w);
  emit("{\"psi\":" + format_complex(z) + ",\"psi_prime\":" + format_complex(dz) + "}",
       args.out_path);
  return kExitOk;
}

int run_map_trace(const MapArgs& args) {
  const ConformalMapSpec spec = load_spec_file(args.spec_path);
  const Grading grading = (args.grading == "uniform") ? Grading::Uniform : Grading::TanGraded;
  const BoundaryTrace trace = trace_boundary(spec, args.t_min, args.t_max, args.n, grading);
  emit(trace_to_csv(trace), args.out_path);
  return kExitOk;
}

int run_map_classify(const MapArgs& args) {
  const ConformalMapSpec spec = load_spec_file(args.spec_path);
  emit(asymptote_to_json(classify_asymptote(spec)), args.out_path);
  return kExitOk;
}

int run_map_univalence(const MapArgs& args) {
  const ConformalMapSpec spec = load_spec_file(args.spec_path);
  const UnivalenceVerdict verdict = check_univalence_boundary(spec, args.uni_n, args.uni_span);
  std::string out = std::string("{\"verdict\":\"") + (verdict.pass ? "pass" : "fail") + "\"";
  if (!verdict.pass && verdict.failure_location) {
    out += ",\"location\":" + format_complex(*verdict.failure_location);
  }
  out += ",\"reason\":\"" + verdict.reason + "\"}";
  emit(out, args.out_path);
  return kExitOk;
}

// ---- qd subcommands ------------------------------------------------------

struct QdArgs {
  std::string spec_path;
  std::vector<std::string> testfns;
  std::string out_path;
  double rel_tol = 1e-8;
};

int run_qd_derive(const QdArgs& args) {
  const ConformalMapSpec spec = load_spec_file(args.spec_path);
  const QuadratureDistribution dist = derive_distribution(spec, make_tol(args.rel_tol));
  emit(distribution_to_json(dist), args.out_path);
  return kExitOk;
}

int run_qd_verify(const QdArgs& args) {
  const ConformalMapSpec spec = load_spec_file(args.spec_path);
  if (args.testfns.empty()) {
    throw Error(Errc::SchemaError, "qd verify needs at least one --testfn re,im,k");
  }
  std::vector<TestFunction> fs;
  for (const std::string& text : args.testfns) fs.push_back(parse_testfn(text));
  for (const TestFunction& f : fs) {
    if (!point_outside_domain(spec, f.z0)) {
      std::cerr << "error: test-function pole " << f.z0 << " lies inside the image domain\n";
      return kExitAdmissibility;
    }
  }
  const ToleranceSpec tol = make_tol(args.rel_tol);
  const QuadratureDistribution dist = derive_distribution(spec, tol);
  const IdentityReport report = verify_quadrature_identity(spec, dist, fs, tol);
  emit(identity_report_to_json(report), args.out_path);
  return report.pass ? kExitOk : 1;
}

// ---- family subcommand ---------------------------------------------------

struct FamilyArgs {
  int kind = 1;
  std::string grid;
  std::string out_path;
  std::string figure_path;
  bool limits = false;
  int trace_n = 4096;
};

struct GridSpec {
  std::string param;
  std::vector<double> values;
};

GridSpec parse_grid(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
    throw Error(Errc::SchemaError, "--grid expects 'name=v1,v2,...', got '" + text + "'");
  }
  GridSpec grid;
  grid.param = text.substr(0, eq);
  std::istringstream in(text.substr(eq + 1));
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      grid.values.push_back(std::stod(tok));
    } catch (...) {
      throw Error(Errc::SchemaError, "--grid value '" + tok + "' is not a number");
    }
  }
  if (grid.values.empty()) throw Error(Errc::SchemaError, "--grid has no values");
  return grid;
}

std::string family3_type_name(const FamilySolution& sol) {
  if (!sol.type) return sol.univalent ? "boundary" : "one_looped";
  return *sol.type == Family3Type::TypeOne ? "one" : "two";
}

int run_family(const FamilyArgs& args) {
  const GridSpec grid = parse_grid(args.grid);
  struct Row {
    double param = 0.0;
    std::optional<FamilySolution> sol;
    std::string note;
    double hausdorff = -1.0;
  };
  std::vector<Row> rows;

  for (double value : grid.values) {
    Row row;
    row.param = value;
    try {
      switch (args.kind) {
        case 1: {
          const double b = (grid.param == "r") ? conchoid_b_from_r(value) : value;
          row.sol = solve_family1(b);
          break;
        }
        case 2:
          row.sol = solve_family2(value);
          break;
        case 3: {
          auto sols = solve_family3(value);
          if (sols.empty()) {
            row.note = "no admissible roots";
          } else {
            // Extra positive roots get their own rows; the largest root is
            // the canonical member.
            for (std::size_t i = 0; i + 1 < sols.size(); ++i) {
              Row extra;
              extra.param = value;
              extra.sol = std::move(sols[i]);
              rows.push_back(std::move(extra));
            }
            row.sol = std::move(sols.back());
          }
          break;
        }
        default:
          throw Error(Errc::SchemaError, "--kind must be 1, 2, or 3");
      }
    } catch (const Error& e) {
      if (e.code() == Errc::SchemaError) throw;
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }

  // Optional Hausdorff-to-limit distances for kinds 1 and 2.
  if (args.limits && args.kind != 3) {
    const FamilyKind kind = args.kind == 1 ? FamilyKind::Conchoid : FamilyKind::ParabolaFamily;
    if (args.kind == 1 && grid.param != "r") {
      throw Error(Errc::SchemaError, "--limits for kind 1 needs an r= grid");
    }
    std::vector<double> params;
    for (const Row& row : rows) {
      if (row.sol) params.push_back(row.param);
    }
    const auto report = family_limit_report(kind, params, args.trace_n);
    std::size_t next = 0;
    for (Row& row : rows) {
      if (row.sol && next < report.size()) row.hausdorff = report[next++].hausdorff;
    }
  }

  // Sweep CSV.
  std::string csv = "kind,param,a,b,h,univalent,type,weight,hausdorff,note\n";
  const ToleranceSpec tol = make_tol(default_rel_tol());
  bool any_ok = false;
  for (const Row& row : rows) {
    csv += std::to_string(args.kind) + "," + format_double(row.param) + ",";
    if (row.sol) {
      any_ok = true;
      const FamilySolution& sol = *row.sol;
      Complex weight{0.0, 0.0};
      try {
        const QuadratureDistribution dist = derive_distribution(sol.spec, tol);
        if (!dist.points.empty()) weight = dist.points[0].weights[0];
      } catch (const Error&) {
      }
      csv += format_double(sol.a) + "," + format_double(sol.b) + "," + format_double(sol.h) +
             "," + (sol.univalent ? "pass" : "fail") + ",";
      csv += (args.kind == 3) ? family3_type_name(sol) : "-";
      csv += "," + format_double(weight.real());
      csv += (row.hausdorff >= 0.0) ? ("," + format_double(row.hausdorff)) : ",";
      csv += ",\n";
    } else {
      csv += ",,,,,,,," + row.note + "\n";
    }
  }
  emit(csv, args.out_path);

  // Figure: member traces plus the dashed limit set.
  if (!args.figure_path.empty()) {
    const double window = 5.0;
    double y_lo = -3.0, y_hi = 3.0;
    if (args.kind == 2) y_lo = -1.6, y_hi = 5.5;
    if (args.kind == 3) y_lo = -1.5, y_hi = 1.5;
    SvgFigure fig(-window, window, y_lo, y_hi);
    const auto& palette = default_palette();
    std::size_t color = 0;
    for (const Row& row : rows) {
      if (!row.sol) continue;
      const BoundaryTrace trace =
          trace_boundary(row.sol->spec, -1e3, 1e3, args.trace_n, Grading::TanGraded);
      std::ostringstream label;
      label << grid.param << "=" << row.param;
      if (args.kind == 3) label << " (type " << family3_type_name(*row.sol) << ")";
      if (!row.sol->univalent) label << " [univalence fail]";
      fig.add_curve(trace.points, palette[color % palette.size()], label.str());
      ++color;
    }
    if (args.kind == 1 || args.kind == 2) {
      std::vector<Complex> circle;
      for (int i = 0; i <= 512; ++i) {
        const double th = 2.0 * kPi * i / 512.0;
        circle.emplace_back(std::cos(th), std::sin(th));
      }
      fig.add_curve(circle, "#555555", "limit circle", true);
      std::vector<Complex> curve;
      for (int i = 0; i <= 256; ++i) {
        const double x = -window + 2.0 * window * i / 256.0;
        curve.emplace_back(x, args.kind == 1 ? -1.0 : 0.25 * x * x - 1.0);
      }
      fig.add_curve(curve, "#999999", args.kind == 1 ? "limit line" : "limit parabola", true);
    }
    fig.save(args.figure_path);
  }
  return any_ok ? kExitOk : 1;
}

// ---- contact subcommand ----------------------------------------------------

struct ContactArgs {
  std::string spec_path;
  std::string curve_path;
  double sigma = 1.0;
  std::vector<std::string> z_flags;
  std::string strip;
  std::string sweep;
  std::string out_path;
  double rel_tol = 1e-8;
};

int run_contact(const ContactArgs& args) {
  std::vector<Complex> zs;
  for (const std::string& flag : args.z_flags) zs.push_back(parse_complex_flag(flag, "--z"));
  if (zs.empty()) throw Error(Errc::SchemaError, "contact needs at least one --z re,im");
  const ToleranceSpec tol = make_tol(args.rel_tol);

  auto strip_of = [&](const ConformalMapSpec& spec, double h) -> std::pair<double, double> {
    if (!args.strip.empty()) {
      const Complex pair = parse_complex_flag(args.strip, "--strip");
      return {pair.real(), pair.imag()};
    }
    // Default strip hugs the traced curve.
    const BoundaryTrace probe = trace_boundary(spec, -1e3, 1e3, 2048, Grading::TanGraded);
    double lo = h, hi = h;
    for (const Complex& p : probe.points) {
      lo = std::min(lo, p.imag());
      hi = std::max(hi, p.imag());
    }
    return {lo - 0.5, hi + 0.05};
  };

  if (!args.sweep.empty()) {
    // Non-uniqueness exhibit over conchoid members: same field points for
    // every member, maximum cross-member deviation appended.
    const GridSpec grid = parse_grid(args.sweep);
    std::string csv =
        "b,z_re,z_im,F_boundary_re,F_boundary_im,F_residue_re,F_residue_im,rel_gap\n";
    std::vector<std::vector<Complex>> fields;
    for (double b : grid.values) {
      FamilySolution sol = solve_family1(b);
      const auto [lo, hi] = strip_of(sol.spec, sol.h);
      for (const Complex& z : zs) {
        if (!(z.imag() > hi)) {
          std::cerr << "error: --z " << z << " does not lie above the strip\n";
          return kExitGeometry;
        }
      }
      const ContactConfig cfg =
          ContactConfig::from_spec(std::move(sol.spec), args.sigma, lo, hi);
      const ContactReport report = contact_equivalence_report(cfg, zs, tol);
      std::vector<Complex> member;
      for (const ContactRecord& rec : report.records) {
        csv += format_double(b) + "," + format_double(rec.z.real()) + "," +
               format_double(rec.z.imag()) + "," + format_double(rec.f_boundary.real()) + "," +
               format_double(rec.f_boundary.imag()) + "," +
               format_double(rec.f_residue.real()) + "," + format_double(rec.f_residue.imag()) +
               "," + format_double(rec.rel_gap) + "\n";
        member.push_back(rec.f_residue);
      }
      fields.push_back(std::move(member));
    }
    double max_dev = 0.0;
    for (std::size_t m = 1; m < fields.size(); ++m) {
      for (std::size_t i = 0; i < zs.size(); ++i) {
        max_dev = std::max(max_dev, std::abs(fields[m][i] - fields[0][i]));
      }
    }
    csv += "# max cross-member deviation," + format_double(max_dev) + "\n";
    emit(csv, args.out_path);
    return kExitOk;
  }

  ContactReport report;
  if (!args.spec_path.empty()) {
    ConformalMapSpec spec = load_spec_file(args.spec_path);
    const AsymptoteClass cls = classify_asymptote(spec);
    const double h = std::imag(cls.a0);
    const auto [lo, hi] = strip_of(spec, h);
    for (const Complex& z : zs) {
      if (!(z.imag() > hi)) {
        std::cerr << "error: --z " << z << " does not lie above the strip\n";
        return kExitGeometry;
      }
    }
    const ContactConfig cfg = ContactConfig::from_spec(std::move(spec), args.sigma, lo, hi);
    report = contact_equivalence_report(cfg, zs, tol);
  } else if (!args.curve_path.empty()) {
    const BoundaryTrace trace = load_trace_csv(args.curve_path);
    double lo = 1e300, hi = -1e300;
    for (const Complex& p : trace.points) {
      lo = std::min(lo, p.imag());
      hi = std::max(hi, p.imag());
    }
    const double h = 0.5 * (trace.points.front().imag() + trace.points.back().imag());
    if (!args.strip.empty()) {
      const Complex pair = parse_complex_flag(args.strip, "--strip");
      lo = pair.real();
      hi = pair.imag();
    } else {
      lo -= 0.5;
      hi += 0.05;
    }
    for (const Complex& z : zs) {
      if (!(z.imag() > hi)) {
        std::cerr << "error: --z " << z << " does not lie above the strip\n";
        return kExitGeometry;
      }
    }
    const ContactConfig cfg = ContactConfig::from_trace(trace, args.sigma, h, lo, hi);
    // Raw curves carry no Schwarz data; only the boundary route applies.
    for (const Complex& z : zs) {
      ContactRecord rec;
      rec.z = z;
      rec.f_boundary = contact_field_boundary(cfg, z, tol);
      rec.f_residue = rec.f_boundary;
      report.records.push_back(rec);
    }
    report.pass = true;
  } else {
    throw Error(Errc::SchemaError, "contact needs --spec or --curve");
  }
  emit(contact_report_to_csv(report), args.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quaddom: unbounded quadrature domains from half-plane conformal maps"};
  app.require_subcommand(1);

  MapArgs map_args;
  CLI::App* map = app.add_subcommand("map", "evaluate, trace, classify, screen a map spec");
  map->require_subcommand(1);
  CLI::App* map_eval = map->add_subcommand("eval", "print psi(w) and psi'(w)");
  map_eval->add_option("--spec", map_args.spec_path, "map spec JSON")->required();
  map_eval->add_option("--w", map_args.w_flag, "evaluation point re,im")->required();
  map_eval->add_option("--out", map_args.out_path, "output file (default stdout)");
  CLI::App* map_trace = map->add_subcommand("trace", "sample the boundary psi(t) to CSV");
  map_trace->add_option("--spec", map_args.spec_path)->required();
  map_trace->add_option("--tmin", map_args.t_min);
  map_trace->add_option("--tmax", map_args.t_max);
  map_trace->add_option("--n", map_args.n);
  map_trace->add_option("--grading", map_args.grading)->check(CLI::IsMember({"uniform", "tan"}));
  map_trace->add_option("--out", map_args.out_path);
  CLI::App* map_classify = map->add_subcommand("classify", "asymptote class as JSON");
  map_classify->add_option("--spec", map_args.spec_path)->required();
  map_classify->add_option("--out", map_args.out_path);
  CLI::App* map_uni = map->add_subcommand("univalence", "boundary univalence screen");
  map_uni->add_option("--spec", map_args.spec_path)->required();
  map_uni->add_option("--n", map_args.uni_n);
  map_uni->add_option("--span", map_args.uni_span);
  map_uni->add_option("--out", map_args.out_path);

  QdArgs qd_args;
  qd_args.rel_tol = default_rel_tol();
  CLI::App* qd = app.add_subcommand("qd", "derive or verify the quadrature distribution");
  qd->require_subcommand(1);
  CLI::App* qd_derive = qd->add_subcommand("derive", "distribution JSON from a map spec");
  qd_derive->add_option("--spec", qd_args.spec_path)->required();
  qd_derive->add_option("--tol", qd_args.rel_tol, "relative tolerance");
  qd_derive->add_option("--out", qd_args.out_path);
  CLI::App* qd_verify = qd->add_subcommand("verify", "two-route identity report");
  qd_verify->add_option("--spec", qd_args.spec_path)->required();
  qd_verify->add_option("--testfn", qd_args.testfns, "test function re,im,k (repeatable)");
  qd_verify->add_option("--tol", qd_args.rel_tol);
  qd_verify->add_option("--out", qd_args.out_path);

  FamilyArgs family_args;
  CLI::App* family = app.add_subcommand("family", "solve and sweep the example families");
  family->add_option("--kind", family_args.kind, "1 = conchoid, 2 = parabola, 3 = ray")
      ->required()
      ->check(CLI::Range(1, 3));
  family->add_option("--grid", family_args.grid, "parameter grid, e.g. r=0.5,0.9 or b=0.05")
      ->required();
  family->add_option("--out", family_args.out_path, "sweep CSV (default stdout)");
  family->add_option("--figure", family_args.figure_path, "write an SVG overlay");
  family->add_flag("--limits", family_args.limits, "append Hausdorff-to-limit distances");
  family->add_option("--trace-n", family_args.trace_n, "trace resolution");

  ContactArgs contact_args;
  contact_args.rel_tol = default_rel_tol();
  CLI::App* contact = app.add_subcommand("contact", "two-layer contact-surface fields");
  contact->add_option("--spec", contact_args.spec_path, "map spec JSON curve");
  contact->add_option("--curve", contact_args.curve_path, "raw curve CSV (t,x,y)");
  contact->add_option("--sigma", contact_args.sigma, "density contrast");
  contact->add_option("--z", contact_args.z_flags, "field point re,im (repeatable)");
  contact->add_option("--strip", contact_args.strip, "strip bounds h1,h2");
  contact->add_option("--sweep", contact_args.sweep,
                      "conchoid member grid b=..., non-uniqueness exhibit");
  contact->add_option("--tol", contact_args.rel_tol);
  contact->add_option("--out", contact_args.out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (map_eval->parsed()) return run_map_eval(map_args);
    if (map_trace->parsed()) return run_map_trace(map_args);
    if (map_classify->parsed()) return run_map_classify(map_args);
    if (map_uni->parsed()) return run_map_univalence(map_args);
    if (qd_derive->parsed()) return run_qd_derive(qd_args);
    if (qd_verify->parsed()) return run_qd_verify(qd_args);
    if (family->parsed()) return run_family(family_args);
    if (contact->parsed()) return run_contact(contact_args);
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
    if (e.code() == Errc::SchemaError) return kExitSchema;
    if (e.code() == Errc::EvaluationBelowStrip) return kExitGeometry;
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
