#pragma once

#include <iosfwd>
#include <string>

#include "quaddom/contact.hpp"
#include "quaddom/families.hpp"
#include "quaddom/quadrature.hpp"

namespace quaddom {

/// Canonical JSON for map specs (version 1): keys sorted, complex numbers
/// as [re, im] arrays, floats printed with 17 significant digits so that
/// serialize(parse(x)) is byte-stable.
std::string spec_to_json(const ConformalMapSpec& spec);
ConformalMapSpec spec_from_json(const std::string& text);
ConformalMapSpec load_spec_file(const std::string& path);
void save_spec_file(const ConformalMapSpec& spec, const std::string& path);

std::string distribution_to_json(const QuadratureDistribution& dist);
std::string identity_report_to_json(const IdentityReport& report);

std::string asymptote_to_json(const AsymptoteClass& cls);

/// CSV with header "t,x,y", one row per trace sample.
std::string trace_to_csv(const BoundaryTrace& trace);
BoundaryTrace trace_from_csv(const std::string& text);
BoundaryTrace load_trace_csv(const std::string& path);

std::string contact_report_to_csv(const ContactReport& report);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

/// 17-significant-digit float formatting shared by every writer.
std::string format_double(double v);
std::string format_complex(Complex z);

}  // namespace quaddom
