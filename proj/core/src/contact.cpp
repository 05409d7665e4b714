#include "quaddom/contact.hpp"

#include <cmath>

namespace quaddom {

ContactConfig::ContactConfig(std::variant<ConformalMapSpec, BoundaryTrace> curve, double sigma,
                             double h, double strip_lo, double strip_hi)
    : curve_(std::move(curve)), sigma_(sigma), h_(h), strip_lo_(strip_lo), strip_hi_(strip_hi) {
  if (!(strip_lo_ < strip_hi_)) {
    throw Error(Errc::InvalidArgument, "strip needs h1 < h2");
  }
  if (!(h_ > strip_lo_ && h_ < strip_hi_)) {
    throw Error(Errc::InvalidArgument, "asymptote height must lie inside the strip");
  }
  // Sampled config invariants: the curve stays inside the strip and its
  // height approaches h in the tails.
  auto check_points = [&](const std::vector<Complex>& pts, const std::vector<double>& ts) {
    for (const Complex& p : pts) {
      if (!(p.imag() > strip_lo_ && p.imag() < strip_hi_)) {
        throw Error(Errc::InvalidArgument, "curve leaves the declared strip");
      }
    }
    if (!ts.empty()) {
      const double tail_dev =
          std::max(std::abs(pts.front().imag() - h_), std::abs(pts.back().imag() - h_));
      const double mid_span = strip_hi_ - strip_lo_;
      if (tail_dev > 0.25 * mid_span) {
        throw Error(Errc::SlowDecay, "curve height does not approach h in the sampled tails");
      }
    }
  };
  if (has_spec()) {
    const BoundaryTrace probe = trace_boundary(spec(), -1e4, 1e4, 512, Grading::TanGraded);
    check_points(probe.points, probe.params);
  } else {
    check_points(trace().points, trace().params);
  }
}

ContactConfig ContactConfig::from_spec(ConformalMapSpec spec, double sigma, double strip_lo,
                                       double strip_hi) {
  const AsymptoteClass cls = classify_asymptote(spec);
  if (cls.kind != AsymptoteKind::Line) {
    throw Error(Errc::InvalidArgument, "contact curves need a line asymptote");
  }
  // The asymptote Im psi(t) -> Im(a1) t + Im(a0) must be horizontal.
  if (std::abs(std::imag(cls.a1)) > 1e-12) {
    throw Error(Errc::InvalidArgument, "asymptotic line is not horizontal");
  }
  const double h = std::imag(cls.a0);
  return ContactConfig(std::move(spec), sigma, h, strip_lo, strip_hi);
}

ContactConfig ContactConfig::from_trace(BoundaryTrace trace, double sigma, double h,
                                        double strip_lo, double strip_hi) {
  if (trace.points.size() < 2 || trace.points.size() != trace.params.size()) {
    throw Error(Errc::InvalidArgument, "trace needs matching params/points with >= 2 samples");
  }
  return ContactConfig(std::move(trace), sigma, h, strip_lo, strip_hi);
}

namespace {

void require_above_strip(const ContactConfig& cfg, Complex z) {
  if (!(z.imag() > cfg.strip_hi())) {
    throw Error(Errc::EvaluationBelowStrip, "field evaluation needs Im(z) > h2");
  }
}

}  // namespace

Complex contact_field_boundary(const ContactConfig& cfg, Complex z, const ToleranceSpec& tol) {
  require_above_strip(cfg, z);
  const double sigma = cfg.sigma();
  const Complex two_ih{0.0, 2.0 * cfg.asymptote_height()};
  if (cfg.has_spec()) {
    const ConformalMapSpec& spec = cfg.spec();
    if (asymptote_deviation(spec, 1e4) > 1e-2) {
      throw Error(Errc::SlowDecay, "perturbation does not vanish along the asymptote");
    }
    auto integrand = [&](double t) {
      const Complex w{t, 0.0};
      const Complex zeta = eval_map(spec, w);
      return sigma * (eval_star(spec, w) - zeta + two_ih) * eval_map_derivative(spec, w) /
             (zeta - z);
    };
    const Complex line = integrate_real_line(integrand, tol);
    // Domain below the curve on the left: parametrization runs right to
    // left, so negate the t-increasing integral.
    return -line / (Complex{0.0, 2.0} * kPi);
  }
  // Raw trace: trapezoid rule over the sampled parametrization.
  const auto& pts = cfg.trace().points;
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    auto value = [&](const Complex& zeta) {
      return sigma * (std::conj(zeta) - zeta + two_ih) / (zeta - z);
    };
    sum += 0.5 * (value(pts[i]) + value(pts[i + 1])) * (pts[i + 1] - pts[i]);
  }
  return -sum / (Complex{0.0, 2.0} * kPi);
}

Complex contact_field_residue(const ContactConfig& cfg, Complex z, const ToleranceSpec& tol) {
  require_above_strip(cfg, z);
  if (!cfg.has_spec()) {
    throw Error(Errc::InvalidArgument, "the residue route needs a conformal-map curve");
  }
  const ConformalMapSpec& spec = cfg.spec();
  const double sigma = cfg.sigma();
  Complex total{0.0, 0.0};
  for (std::size_t idx = 0; idx < spec.poles().size(); ++idx) {
    const Complex bbar = std::conj(spec.poles()[idx].b);
    double gap = std::abs(bbar.imag());
    for (std::size_t j = 0; j < spec.poles().size(); ++j) {
      const double d1 = std::abs(bbar - spec.poles()[j].b);
      gap = std::min(gap, d1);
      if (j != idx) gap = std::min(gap, std::abs(bbar - std::conj(spec.poles()[j].b)));
    }
    const double radius = 0.4 * gap;
    // The contour must not wrap a preimage of z; its image must stay away
    // from z.
    const int n_check = 64;
    for (int i = 0; i < n_check; ++i) {
      const Complex w = bbar + std::polar(radius, 2.0 * kPi * i / n_check);
      if (std::abs(eval_map(spec, w) - z) < 1e-6) {
        throw Error(Errc::ContourCollision, "residue contour image touches the field point");
      }
    }
    auto g = [&](Complex w) {
      return eval_star(spec, w) * eval_map_derivative(spec, w) / (eval_map(spec, w) - z);
    };
    total += residue_numeric(g, bbar, radius, tol);
  }
  return sigma * total;
}

ContactReport contact_equivalence_report(const ContactConfig& cfg, std::span<const Complex> zs,
                                         const ToleranceSpec& tol) {
  ContactReport report;
  report.pass = true;
  for (const Complex& z : zs) {
    ContactRecord rec;
    rec.z = z;
    rec.f_boundary = contact_field_boundary(cfg, z, tol);
    rec.f_residue = contact_field_residue(cfg, z, tol);
    rec.abs_gap = std::abs(rec.f_boundary - rec.f_residue);
    const double scale = std::abs(rec.f_residue);
    rec.rel_gap = (scale < 1e-12) ? rec.abs_gap : rec.abs_gap / scale;
    report.max_rel_gap = std::max(report.max_rel_gap, rec.rel_gap);
    if (rec.rel_gap >= tol.rel_tol) report.pass = false;
    report.records.push_back(rec);
  }
  return report;
}

}  // namespace quaddom
