#include "quaddom/confmap.hpp"

#include <algorithm>
#include <cmath>

namespace quaddom {

namespace {

constexpr double kSingularDistance = 1e-12;

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

ConformalMapSpec::ConformalMapSpec(QuadraticPoly q, std::vector<PoleGroup> poles,
                                   std::vector<SegmentChain> segments)
    : q_(q), poles_(std::move(poles)), segments_(std::move(segments)) {
  if (!is_finite(q_.a0) || !is_finite(q_.a1) || !is_finite(q_.a2)) {
    throw Error(Errc::InvalidArgument, "quadratic coefficients must be finite");
  }
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    const PoleGroup& g = poles_[i];
    if (!(g.b.imag() > 0.0)) {
      throw Error(Errc::InvalidArgument, "pole location must lie strictly above the real axis");
    }
    if (g.coeffs.empty()) {
      throw Error(Errc::InvalidArgument, "pole group needs at least one coefficient");
    }
    if (std::abs(g.coeffs.back()) == 0.0) {
      throw Error(Errc::InvalidArgument, "highest-order pole coefficient must be nonzero");
    }
    for (const Complex& c : g.coeffs) {
      if (!is_finite(c)) throw Error(Errc::InvalidArgument, "pole coefficient must be finite");
    }
    for (std::size_t j = i + 1; j < poles_.size(); ++j) {
      if (std::abs(g.b - poles_[j].b) < kSingularDistance) {
        throw Error(Errc::InvalidArgument, "pole locations must be pairwise distinct");
      }
    }
  }
  for (const SegmentChain& chain : segments_) {
    if (chain.nodes.size() < 2 || chain.coeffs.size() + 1 != chain.nodes.size()) {
      throw Error(Errc::InvalidArgument,
                  "segment chain needs n+1 nodes and n coefficients with n >= 1");
    }
    for (const Complex& d : chain.nodes) {
      if (!(d.imag() > 0.0)) {
        throw Error(Errc::InvalidArgument, "chain nodes must lie strictly above the real axis");
      }
    }
    for (std::size_t k = 0; k + 1 < chain.nodes.size(); ++k) {
      if (std::abs(chain.nodes[k] - chain.nodes[k + 1]) < kSingularDistance) {
        throw Error(Errc::InvalidArgument, "consecutive chain nodes must be distinct");
      }
      for (const PoleGroup& g : poles_) {
        if (point_segment_distance(g.b, chain.nodes[k], chain.nodes[k + 1]) < kSingularDistance) {
          throw Error(Errc::InvalidArgument, "segment chain passes through a pole");
        }
      }
    }
  }
}

ConformalMapSpec ConformalMapSpec::reflected() const {
  // Mirror of the image domain across the real axis: the reflected map is
  // w -> conj(psi(-conj(w))), which is again of the canonical form with
  // singularities in the upper half-plane.
  QuadraticPoly rq{std::conj(q_.a0), -std::conj(q_.a1), std::conj(q_.a2)};
  std::vector<PoleGroup> rpoles;
  rpoles.reserve(poles_.size());
  for (const PoleGroup& g : poles_) {
    PoleGroup rg;
    rg.b = -std::conj(g.b);
    rg.coeffs.reserve(g.coeffs.size());
    double sign = -1.0;  // (-1)^(j+1) from rewriting (-w - conj(b))^-(j+1)
    for (const Complex& c : g.coeffs) {
      rg.coeffs.push_back(sign * std::conj(c));
      sign = -sign;
    }
    rpoles.push_back(std::move(rg));
  }
  std::vector<SegmentChain> rchains;
  rchains.reserve(segments_.size());
  for (const SegmentChain& chain : segments_) {
    SegmentChain rc;
    rc.nodes.reserve(chain.nodes.size());
    rc.coeffs.reserve(chain.coeffs.size());
    for (const Complex& d : chain.nodes) rc.nodes.push_back(-std::conj(d));
    for (const Complex& c : chain.coeffs) rc.coeffs.push_back(std::conj(c));
    rchains.push_back(std::move(rc));
  }
  return ConformalMapSpec(rq, std::move(rpoles), std::move(rchains));
}

Complex segment_log_term(Complex d_from, Complex d_to, Complex w) {
  if (point_segment_distance(w, d_from, d_to) < kSingularDistance) {
    throw Error(Errc::OnSegment, "evaluation point lies on a chain segment");
  }
  if (d_from == d_to) return Complex{0.0, 0.0};
  return std::log((w - d_from) / (w - d_to));
}

namespace {

// Shared core of eval/derivative so the singularity checks stay in one place.
void check_singular(const ConformalMapSpec& spec, Complex w) {
  for (const PoleGroup& g : spec.poles()) {
    if (std::abs(w - g.b) < kSingularDistance) {
      throw Error(Errc::SingularArgument, "evaluation point coincides with a pole");
    }
  }
  for (const SegmentChain& chain : spec.segments()) {
    for (std::size_t k = 0; k + 1 < chain.nodes.size(); ++k) {
      if (point_segment_distance(w, chain.nodes[k], chain.nodes[k + 1]) < kSingularDistance) {
        throw Error(Errc::SingularArgument, "evaluation point lies on a segment chain");
      }
    }
  }
}

}  // namespace

Complex eval_map(const ConformalMapSpec& spec, Complex w) {
  check_singular(spec, w);
  Complex z = spec.q().eval(w);
  for (const PoleGroup& g : spec.poles()) {
    const Complex inv = 1.0 / (w - g.b);
    Complex power = inv;
    for (const Complex& c : g.coeffs) {
      z += c * power;
      power *= inv;
    }
  }
  for (const SegmentChain& chain : spec.segments()) {
    for (std::size_t k = 0; k + 1 < chain.nodes.size(); ++k) {
      z += chain.coeffs[k] * std::log((w - chain.nodes[k]) / (w - chain.nodes[k + 1]));
    }
  }
  return z;
}

Complex eval_map_derivative(const ConformalMapSpec& spec, Complex w) {
  check_singular(spec, w);
  Complex dz = spec.q().deriv(w);
  for (const PoleGroup& g : spec.poles()) {
    const Complex inv = 1.0 / (w - g.b);
    Complex power = inv * inv;  // d/dw (w-b)^-(j+1) = -(j+1) (w-b)^-(j+2)
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
      dz -= static_cast<double>(j + 1) * g.coeffs[j] * power;
      power *= inv;
    }
  }
  for (const SegmentChain& chain : spec.segments()) {
    for (std::size_t k = 0; k + 1 < chain.nodes.size(); ++k) {
      dz += chain.coeffs[k] * (1.0 / (w - chain.nodes[k]) - 1.0 / (w - chain.nodes[k + 1]));
    }
  }
  return dz;
}

Complex eval_star(const ConformalMapSpec& spec, Complex w) {
  return std::conj(eval_map(spec, std::conj(w)));
}

Complex eval_star_derivative(const ConformalMapSpec& spec, Complex w) {
  // (psi*)'(w) = conj(psi'(conj w)).
  return std::conj(eval_map_derivative(spec, std::conj(w)));
}

AsymptoteClass classify_asymptote(const ConformalMapSpec& spec, double a2_tol,
                                  double im_ratio_tol) {
  const QuadraticPoly& q = spec.q();
  AsymptoteClass out;
  out.a2 = q.a2;
  out.a1 = q.a1;
  out.a0 = q.a0;
  const double a2_mag = std::abs(q.a2);
  const double a2_cut = a2_tol * (1.0 + std::abs(q.a1));
  if (a2_mag <= a2_cut) {
    out.kind = AsymptoteKind::Line;
    out.near_threshold = a2_mag > 0.1 * a2_cut;
    return out;
  }
  const double im_ratio = std::abs(std::imag(q.a1 / q.a2));
  if (im_ratio > im_ratio_tol) {
    out.kind = AsymptoteKind::Parabola;
    out.near_threshold = (im_ratio < 10.0 * im_ratio_tol) || (a2_mag < 10.0 * a2_cut);
  } else {
    out.kind = AsymptoteKind::Ray;
    out.near_threshold = (im_ratio > 0.1 * im_ratio_tol) || (a2_mag < 10.0 * a2_cut);
  }
  return out;
}

BoundaryTrace trace_boundary(const ConformalMapSpec& spec, double t_min, double t_max, int n,
                             Grading grading) {
  if (n < 2) throw Error(Errc::InvalidArgument, "trace needs at least 2 samples");
  if (!(t_min < t_max)) throw Error(Errc::InvalidArgument, "trace needs t_min < t_max");
  BoundaryTrace trace;
  trace.params.reserve(n);
  trace.points.reserve(n);
  if (grading == Grading::Uniform) {
    for (int i = 0; i < n; ++i) {
      trace.params.push_back(t_min + (t_max - t_min) * i / static_cast<double>(n - 1));
    }
  } else {
    const double th_min = std::atan(t_min);
    const double th_max = std::atan(t_max);
    for (int i = 0; i < n; ++i) {
      const double th = th_min + (th_max - th_min) * i / static_cast<double>(n - 1);
      trace.params.push_back(std::tan(th));
    }
    // tan(atan(.)) round-off can perturb the endpoints; pin them.
    trace.params.front() = t_min;
    trace.params.back() = t_max;
  }
  for (double t : trace.params) {
    trace.points.push_back(eval_map(spec, Complex{t, 0.0}));
  }
  return trace;
}

UnivalenceVerdict check_univalence_boundary(const ConformalMapSpec& spec, int n, double t_span) {
  if (n < 64) throw Error(Errc::InvalidArgument, "univalence screen needs n >= 64");
  if (!(t_span > 0.0)) throw Error(Errc::InvalidArgument, "t_span must be positive");
  UnivalenceVerdict verdict;
  const BoundaryTrace trace = trace_boundary(spec, -t_span, t_span, n, Grading::TanGraded);
  if (auto hit = polyline_self_intersection(trace.to_polyline())) {
    verdict.pass = false;
    verdict.failure_location = hit->where;
    verdict.reason = "boundary trace self-intersects";
    return verdict;
  }
  // Derivative screen on a coarse grid in the lower half-plane.
  double scale = 1.0;
  for (const PoleGroup& g : spec.poles()) scale = std::max(scale, std::abs(g.b));
  for (const SegmentChain& chain : spec.segments()) {
    for (const Complex& d : chain.nodes) scale = std::max(scale, std::abs(d));
  }
  const int grid = 32;
  for (int i = 0; i < grid; ++i) {
    for (int j = 1; j <= grid; ++j) {
      const double x = -4.0 * scale + 8.0 * scale * i / (grid - 1.0);
      const double y = -4.0 * scale * j / static_cast<double>(grid);
      const Complex w{x, y};
      const Complex d = eval_map_derivative(spec, w);
      if (std::abs(d) < 1e-9) {
        verdict.pass = false;
        verdict.failure_location = w;
        verdict.reason = "psi' vanishes near a sampled interior point";
        return verdict;
      }
    }
  }
  verdict.reason = "no boundary self-intersection; psi' nonzero on sample grid";
  return verdict;
}

double asymptote_deviation(const ConformalMapSpec& spec, double T) {
  if (!(T > 0.0)) throw Error(Errc::InvalidArgument, "T must be positive");
  const int samples = 128;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = T * std::pow(10.0, i / (samples - 1.0));  // log-spaced on [T, 10T]
    for (double s : {-t, t}) {
      const Complex w{s, 0.0};
      worst = std::max(worst, std::abs(eval_map(spec, w) - spec.q().eval(w)));
    }
  }
  return worst;
}

}  // namespace quaddom
