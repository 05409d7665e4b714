#pragma once

#include <span>
#include <variant>
#include <vector>

#include "quaddom/quadrature.hpp"

namespace quaddom {

/// Two-layer contact model: a curve with a horizontal asymptote Im z = h
/// separates a strip {strip_lo < Im z < strip_hi} into layers whose
/// density contrast is sigma. The curve is either a conformal-map spec
/// (h is read off the map) or a raw sampled polyline with caller-supplied h.
class ContactConfig {
 public:
  static ContactConfig from_spec(ConformalMapSpec spec, double sigma, double strip_lo,
                                 double strip_hi);
  static ContactConfig from_trace(BoundaryTrace trace, double sigma, double h, double strip_lo,
                                  double strip_hi);

  double sigma() const noexcept { return sigma_; }
  double asymptote_height() const noexcept { return h_; }
  double strip_lo() const noexcept { return strip_lo_; }
  double strip_hi() const noexcept { return strip_hi_; }
  bool has_spec() const noexcept { return std::holds_alternative<ConformalMapSpec>(curve_); }
  const ConformalMapSpec& spec() const { return std::get<ConformalMapSpec>(curve_); }
  const BoundaryTrace& trace() const { return std::get<BoundaryTrace>(curve_); }

 private:
  ContactConfig(std::variant<ConformalMapSpec, BoundaryTrace> curve, double sigma, double h,
                double strip_lo, double strip_hi);

  std::variant<ConformalMapSpec, BoundaryTrace> curve_;
  double sigma_;
  double h_;
  double strip_lo_;
  double strip_hi_;
};

/// Complex gravitational field above the strip via the boundary Cauchy
/// integral of sigma (conj(zeta) - zeta + 2ih)/(zeta - z) along the curve
/// (domain below on the left). Spec curves integrate adaptively over the
/// parametrization; raw traces use the trapezoid rule.
Complex contact_field_boundary(const ContactConfig& cfg, Complex z, const ToleranceSpec& tol);

/// Same field via the Schwarz-function singularities: sigma/(2*pi*i) times
/// the sum of contour integrals of psi*(w) psi'(w)/(psi(w) - z) around the
/// conjugated poles. Requires a spec curve.
Complex contact_field_residue(const ContactConfig& cfg, Complex z, const ToleranceSpec& tol);

struct ContactRecord {
  Complex z;
  Complex f_boundary;
  Complex f_residue;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
};

struct ContactReport {
  std::vector<ContactRecord> records;
  double max_rel_gap = 0.0;
  bool pass = false;
};

/// Evaluates both routes at each z and reports the gaps; pass means every
/// relative gap is below tol.rel_tol.
ContactReport contact_equivalence_report(const ContactConfig& cfg, std::span<const Complex> zs,
                                         const ToleranceSpec& tol);

}  // namespace quaddom
