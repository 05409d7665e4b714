#include "quaddom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace quaddom {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(Complex z) {
  return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

namespace {

using nlohmann::json;

Complex parse_complex(const json& node, const std::string& field) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
    throw Error(Errc::SchemaError, "field '" + field + "' must be a [re, im] number pair");
  }
  return Complex{node[0].get<double>(), node[1].get<double>()};
}

std::vector<Complex> parse_complex_list(const json& node, const std::string& field) {
  if (!node.is_array()) {
    throw Error(Errc::SchemaError, "field '" + field + "' must be an array");
  }
  std::vector<Complex> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(parse_complex(node[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string complex_list(const std::vector<Complex>& zs) {
  std::string out = "[";
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (i) out += ",";
    out += format_complex(zs[i]);
  }
  out += "]";
  return out;
}

}  // namespace

std::string spec_to_json(const ConformalMapSpec& spec) {
  // Canonical form: keys in sorted order, floats at 17 significant digits.
  std::string out = "{\"poles\":[";
  for (std::size_t i = 0; i < spec.poles().size(); ++i) {
    const PoleGroup& g = spec.poles()[i];
    if (i) out += ",";
    out += "{\"b\":" + format_complex(g.b) + ",\"coeffs\":" + complex_list(g.coeffs) + "}";
  }
  out += "],\"q\":{\"A0\":" + format_complex(spec.q().a0) +
         ",\"A1\":" + format_complex(spec.q().a1) + ",\"A2\":" + format_complex(spec.q().a2) +
         "},\"segments\":[";
  for (std::size_t i = 0; i < spec.segments().size(); ++i) {
    const SegmentChain& chain = spec.segments()[i];
    if (i) out += ",";
    out += "{\"coeffs\":" + complex_list(chain.coeffs) +
           ",\"nodes\":" + complex_list(chain.nodes) + "}";
  }
  out += "],\"version\":1}";
  return out;
}

ConformalMapSpec spec_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::SchemaError, "spec document must be an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != 1) {
    throw Error(Errc::SchemaError, "field 'version' must be the integer 1");
  }
  if (!doc.contains("q") || !doc["q"].is_object()) {
    throw Error(Errc::SchemaError, "field 'q' must be an object with A0, A1, A2");
  }
  QuadraticPoly q;
  for (const char* key : {"A0", "A1", "A2"}) {
    if (!doc["q"].contains(key)) {
      throw Error(Errc::SchemaError, std::string("field 'q.") + key + "' is missing");
    }
  }
  q.a0 = parse_complex(doc["q"]["A0"], "q.A0");
  q.a1 = parse_complex(doc["q"]["A1"], "q.A1");
  q.a2 = parse_complex(doc["q"]["A2"], "q.A2");

  std::vector<PoleGroup> poles;
  if (doc.contains("poles")) {
    if (!doc["poles"].is_array()) throw Error(Errc::SchemaError, "field 'poles' must be an array");
    for (std::size_t i = 0; i < doc["poles"].size(); ++i) {
      const json& p = doc["poles"][i];
      const std::string where = "poles[" + std::to_string(i) + "]";
      if (!p.is_object() || !p.contains("b") || !p.contains("coeffs")) {
        throw Error(Errc::SchemaError, "field '" + where + "' needs 'b' and 'coeffs'");
      }
      PoleGroup g;
      g.b = parse_complex(p["b"], where + ".b");
      g.coeffs = parse_complex_list(p["coeffs"], where + ".coeffs");
      poles.push_back(std::move(g));
    }
  }
  std::vector<SegmentChain> segments;
  if (doc.contains("segments")) {
    if (!doc["segments"].is_array()) {
      throw Error(Errc::SchemaError, "field 'segments' must be an array");
    }
    for (std::size_t i = 0; i < doc["segments"].size(); ++i) {
      const json& s = doc["segments"][i];
      const std::string where = "segments[" + std::to_string(i) + "]";
      if (!s.is_object() || !s.contains("nodes") || !s.contains("coeffs")) {
        throw Error(Errc::SchemaError, "field '" + where + "' needs 'nodes' and 'coeffs'");
      }
      SegmentChain chain;
      chain.nodes = parse_complex_list(s["nodes"], where + ".nodes");
      chain.coeffs = parse_complex_list(s["coeffs"], where + ".coeffs");
      segments.push_back(std::move(chain));
    }
  }
  try {
    return ConformalMapSpec(q, std::move(poles), std::move(segments));
  } catch (const Error& e) {
    throw Error(Errc::SchemaError, std::string("invalid spec: ") + e.what());
  }
}

ConformalMapSpec load_spec_file(const std::string& path) {
  return spec_from_json(read_text_file(path));
}

void save_spec_file(const ConformalMapSpec& spec, const std::string& path) {
  write_text_file(path, spec_to_json(spec) + "\n");
}

std::string distribution_to_json(const QuadratureDistribution& dist) {
  std::string out = "{\"points\":[";
  for (std::size_t i = 0; i < dist.points.size(); ++i) {
    const PointNode& node = dist.points[i];
    if (i) out += ",";
    out += "{\"beta\":" + format_complex(node.beta) + ",\"weights\":" +
           complex_list(node.weights) + "}";
  }
  out += "],\"segments\":[";
  for (std::size_t i = 0; i < dist.segments.size(); ++i) {
    const SegmentNode& seg = dist.segments[i];
    if (i) out += ",";
    out += "{\"from\":" + format_complex(seg.delta_from) + ",\"to\":" +
           format_complex(seg.delta_to) + ",\"weight\":" + format_complex(seg.weight) + "}";
  }
  out += "],\"version\":1}";
  return out;
}

std::string identity_report_to_json(const IdentityReport& report) {
  std::string out = "{\"records\":[";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const IdentityRecord& r = report.records[i];
    if (i) out += ",";
    out += "{\"T_of_f\":" + format_complex(r.t_of_f) +
           ",\"abs_gap\":" + format_double(r.abs_gap) +
           ",\"boundary_integral\":" + format_complex(r.boundary_integral) +
           ",\"k\":" + std::to_string(r.k) + ",\"rel_gap\":" + format_double(r.rel_gap) +
           ",\"z0\":" + format_complex(r.z0) + "}";
  }
  out += "],\"tolerance\":" + format_double(report.tolerance) +
         ",\"verdict\":" + std::string(report.pass ? "\"pass\"" : "\"fail\"") +
         ",\"version\":1}";
  return out;
}

std::string asymptote_to_json(const AsymptoteClass& cls) {
  const char* name = cls.kind == AsymptoteKind::Line      ? "line"
                     : cls.kind == AsymptoteKind::Parabola ? "parabola"
                                                           : "ray";
  std::string out = std::string("{\"A0\":") + format_complex(cls.a0) +
                    ",\"A1\":" + format_complex(cls.a1) + ",\"A2\":" + format_complex(cls.a2) +
                    ",\"class\":\"" + name + "\"";
  if (cls.near_threshold) out += ",\"warning\":\"near classification threshold\"";
  out += "}";
  return out;
}

std::string trace_to_csv(const BoundaryTrace& trace) {
  std::string out = "t,x,y\n";
  for (std::size_t i = 0; i < trace.params.size(); ++i) {
    out += format_double(trace.params[i]) + "," + format_double(trace.points[i].real()) + "," +
           format_double(trace.points[i].imag()) + "\n";
  }
  return out;
}

BoundaryTrace trace_from_csv(const std::string& text) {
  BoundaryTrace trace;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (first) {
      first = false;
      if (line.find_first_not_of("txy, \r") == std::string::npos) continue;  // header row
    }
    double t, x, y;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &y) != 3) {
      throw Error(Errc::SchemaError,
                  "curve CSV line " + std::to_string(lineno) + " is not 't,x,y'");
    }
    trace.params.push_back(t);
    trace.points.emplace_back(x, y);
  }
  if (trace.params.size() < 2) {
    throw Error(Errc::SchemaError, "curve CSV needs at least two samples");
  }
  for (std::size_t i = 0; i + 1 < trace.params.size(); ++i) {
    if (!(trace.params[i] < trace.params[i + 1])) {
      throw Error(Errc::SchemaError, "curve CSV parameters must be strictly increasing");
    }
  }
  return trace;
}

BoundaryTrace load_trace_csv(const std::string& path) {
  return trace_from_csv(read_text_file(path));
}

std::string contact_report_to_csv(const ContactReport& report) {
  std::string out = "z_re,z_im,F_boundary_re,F_boundary_im,F_residue_re,F_residue_im,abs_gap,rel_gap\n";
  for (const ContactRecord& r : report.records) {
    out += format_double(r.z.real()) + "," + format_double(r.z.imag()) + "," +
           format_double(r.f_boundary.real()) + "," + format_double(r.f_boundary.imag()) + "," +
           format_double(r.f_residue.real()) + "," + format_double(r.f_residue.imag()) + "," +
           format_double(r.abs_gap) + "," + format_double(r.rel_gap) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(Errc::InvalidArgument, "short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace quaddom
