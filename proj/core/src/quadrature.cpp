#include "quaddom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quaddom {

Complex TestFunction::operator()(Complex z) const {
  return std::pow(z - z0, static_cast<double>(-k));
}

Complex TestFunction::derivative(int j, Complex z) const {
  double factor = 1.0;
  for (int m = 0; m < j; ++m) factor *= static_cast<double>(k + m);
  if (j % 2 == 1) factor = -factor;
  return factor * std::pow(z - z0, static_cast<double>(-k - j));
}

namespace {

// Degree of the polynomial part, with the thresholds of the asymptote
// classifier. 0 means the spec has no usable growth at infinity.
int polynomial_degree(const ConformalMapSpec& spec) {
  const QuadraticPoly& q = spec.q();
  if (std::abs(q.a2) > 1e-12 * (1.0 + std::abs(q.a1))) return 2;
  if (std::abs(q.a1) > 1e-12) return 1;
  return 0;
}

double min_singularity_gap(const ConformalMapSpec& spec, Complex at) {
  double gap = std::numeric_limits<double>::infinity();
  for (const PoleGroup& g : spec.poles()) {
    const double d_pole = std::abs(at - g.b);       // pole of psi itself
    const double d_conj = std::abs(at - std::conj(g.b));  // pole of psi*
    if (d_pole > 0.0) gap = std::min(gap, d_pole);
    if (d_conj > 0.0) gap = std::min(gap, d_conj);
  }
  for (const SegmentChain& chain : spec.segments()) {
    for (const Complex& d : chain.nodes) {
      const double dd = std::abs(at - d);
      const double dc = std::abs(at - std::conj(d));
      if (dd > 0.0) gap = std::min(gap, dd);
      if (dc > 0.0) gap = std::min(gap, dc);
    }
  }
  gap = std::min(gap, std::abs(at.imag()));  // stay off the real axis
  return gap;
}

}  // namespace

bool point_outside_domain(const ConformalMapSpec& spec, Complex z0) {
  // Argument-principle count of preimages of z0 in the lower half-plane:
  // the winding of psi - z0 along the positively oriented boundary of
  // H_- (real line traversed right to left, closed by the large arc where
  // psi ~ q). z0 is admissible iff the count is zero.
  const int deg = polynomial_degree(spec);
  if (deg == 0) {
    throw Error(Errc::InvalidArgument, "admissibility screen needs a non-constant q");
  }
  // Total argument change along t: -inf -> +inf, accumulated over a
  // tan-graded grid fine enough that increments stay below pi.
  const int n = 8192;
  const double span = 1e6;
  double accum = 0.0;
  Complex prev = eval_map(spec, Complex{-span, 0.0}) - z0;
  const double th_min = std::atan(-span);
  const double th_max = std::atan(span);
  for (int i = 1; i < n; ++i) {
    const double th = th_min + (th_max - th_min) * i / static_cast<double>(n - 1);
    const Complex cur = eval_map(spec, Complex{std::tan(th), 0.0}) - z0;
    accum += std::arg(cur / prev);
    prev = cur;
  }
  // Closing arc in the lower half-plane: psi(w) - z0 ~ q(w), whose argument
  // advances by -deg * pi as w sweeps the arc from +span to -span below.
  const double closure = -static_cast<double>(deg) * kPi;
  const double winding_line = (accum + closure) / (2.0 * kPi);
  // Preimage count = -(winding along t increasing + closure)/2pi.
  const long count = std::lround(-winding_line);
  return count == 0;
}

QuadratureDistribution derive_distribution(const ConformalMapSpec& spec,
                                           const ToleranceSpec& tol) {
  tol.validate();
  QuadratureDistribution dist;
  for (const PoleGroup& g : spec.poles()) {
    const Complex bbar = std::conj(g.b);
    const Complex beta = eval_map(spec, bbar);
    if (point_outside_domain(spec, beta)) {
      throw Error(Errc::InvalidArgument,
                  "derived node falls outside the image domain");
    }
    const Complex dpsi = eval_map_derivative(spec, bbar);
    if (std::abs(dpsi) < 1e-10) {
      throw Error(Errc::IllConditionedJetSystem,
                  "psi' nearly vanishes at a conjugated pole; jet extraction is singular");
    }
    const double radius = 0.4 * min_singularity_gap(spec, bbar);
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw Error(Errc::InvalidArgument, "no valid residue contour around conjugated pole");
    }
    // Probe the residue functional with f_i(z) = (z - beta)^i whose jets at
    // beta are canonical: the i-th probe isolates the weight of f^(i).
    const std::size_t order = g.coeffs.size();
    PointNode node;
    node.beta = beta;
    node.weights.resize(order);
    double factorial = 1.0;
    for (std::size_t i = 0; i < order; ++i) {
      if (i > 0) factorial *= static_cast<double>(i);
      auto probe = [&](Complex w) {
        const Complex fz = (i == 0) ? Complex{1.0, 0.0}
                                    : std::pow(eval_map(spec, w) - beta, static_cast<double>(i));
        return eval_star(spec, w) * fz * eval_map_derivative(spec, w);
      };
      const Complex phi = kPi * residue_numeric(probe, bbar, radius, tol);
      node.weights[i] = phi / factorial;
    }
    dist.points.push_back(std::move(node));
  }
  for (const SegmentChain& chain : spec.segments()) {
    for (std::size_t k = 0; k + 1 < chain.nodes.size(); ++k) {
      SegmentNode seg;
      seg.delta_from = eval_map(spec, std::conj(chain.nodes[k]));
      seg.delta_to = eval_map(spec, std::conj(chain.nodes[k + 1]));
      // The contour computation around the conjugated chain contributes
      // pi * conj(c_k) times the line integral of f between the images.
      seg.weight = kPi * std::conj(chain.coeffs[k]);
      dist.segments.push_back(seg);
    }
  }
  return dist;
}

Complex evaluate_distribution(const QuadratureDistribution& dist, const TestFunction& f) {
  for (const PointNode& node : dist.points) {
    if (std::abs(node.beta - f.z0) < 1e-10) {
      throw Error(Errc::NodeAtPole, "test-function pole coincides with a distribution node");
    }
  }
  Complex total{0.0, 0.0};
  for (const PointNode& node : dist.points) {
    for (std::size_t j = 0; j < node.weights.size(); ++j) {
      total += node.weights[j] * f.derivative(static_cast<int>(j), node.beta);
    }
  }
  if (!dist.segments.empty()) {
    ToleranceSpec tol;  // closed-form antiderivative exists, but quadrature keeps it generic
    for (const SegmentNode& seg : dist.segments) {
      if (std::abs(seg.delta_from - f.z0) < 1e-10 || std::abs(seg.delta_to - f.z0) < 1e-10) {
        throw Error(Errc::NodeAtPole, "test-function pole touches a distribution segment node");
      }
      total += seg.weight * integrate_segment([&](Complex s) { return f(s); }, seg.delta_from,
                                              seg.delta_to, tol);
    }
  }
  return total;
}

Complex boundary_quadrature_integral(const ConformalMapSpec& spec, const TestFunction& f,
                                     const ToleranceSpec& tol) {
  if (f.k < 3 && polynomial_degree(spec) == 2) {
    throw Error(Errc::SlowDecay, "k < 3 does not decay on quadratic-growth maps");
  }
  if (!point_outside_domain(spec, f.z0)) {
    throw Error(Errc::InvalidArgument,
                "test-function pole lies inside the image domain (admissibility screen)");
  }
  auto integrand = [&](double t) {
    const Complex w{t, 0.0};
    return eval_star(spec, w) * f(eval_map(spec, w)) * eval_map_derivative(spec, w);
  };
  const Complex line = integrate_real_line(integrand, tol);
  // Boundary of the lower half-plane with the domain on the left runs from
  // +inf to -inf, so the t-increasing integral enters with a minus sign.
  return -line / Complex{0.0, 2.0};
}

Complex pullback_area_integral(const ConformalMapSpec& spec, const TestFunction& f, double R,
                               const ToleranceSpec& tol) {
  tol.validate();
  if (!(R > 0.0)) throw Error(Errc::InvalidArgument, "R must be positive");
  if (!point_outside_domain(spec, f.z0)) {
    throw Error(Errc::InvalidArgument,
                "test-function pole lies inside the image domain (admissibility screen)");
  }
  const int deg = polynomial_degree(spec);
  if (deg == 0) throw Error(Errc::InvalidArgument, "pullback needs a non-constant q");

  // Product quadrature in polar coordinates over H_- cap B_R. The inner
  // theta integral runs at a tighter tolerance than the outer rho one.
  ToleranceSpec inner = tol;
  inner.abs_tol = std::max(0.25 * tol.abs_tol / std::max(R, 1.0), 1e-13);
  inner.rel_tol = std::max(0.1 * tol.rel_tol, 1e-12);

  auto outer_fn = [&](double rho) -> Complex {
    if (rho <= 0.0) return Complex{0.0, 0.0};
    auto g = [&](double theta) {
      const Complex w = std::polar(rho, theta);
      const Complex d = eval_map_derivative(spec, w);
      return f(eval_map(spec, w)) * std::norm(d);
    };
    Complex th_int = integrate_segment(
        [&](Complex theta) { return g(theta.real()); }, Complex{-kPi, 0.0}, Complex{0.0, 0.0},
        inner);
    return rho * th_int;
  };
  const Complex value =
      integrate_segment([&](Complex rho) { return outer_fn(rho.real()); }, Complex{0.0, 0.0},
                        Complex{R, 0.0}, tol);

  // No-cancellation tail bound: integrand ~ |A_deg|^(2-k) deg^2 r^(deg(2-k)+2deg-2)
  // beyond R, integrated over the half-plane.
  const double lead = (deg == 2) ? std::abs(spec.q().a2) : std::abs(spec.q().a1);
  const double expo = deg * (2.0 - f.k);
  const double tail = kPi * deg / (f.k - 2.0) * std::pow(lead, 2.0 - f.k) *
                      std::pow(R, expo) * 2.0;
  if (tail > std::max(tol.abs_tol, tol.rel_tol * std::abs(value))) {
    throw Error(Errc::TruncationDominates,
                "estimated truncation tail " + std::to_string(tail) +
                    " exceeds the requested tolerance at R = " + std::to_string(R));
  }
  return value;
}

IdentityReport verify_quadrature_identity(const ConformalMapSpec& spec,
                                          const QuadratureDistribution& dist,
                                          std::span<const TestFunction> fs,
                                          const ToleranceSpec& tol) {
  IdentityReport report;
  report.tolerance = tol.rel_tol;
  report.pass = true;
  for (const TestFunction& f : fs) {
    IdentityRecord rec;
    rec.z0 = f.z0;
    rec.k = f.k;
    rec.t_of_f = evaluate_distribution(dist, f);
    rec.boundary_integral = boundary_quadrature_integral(spec, f, tol);
    rec.abs_gap = std::abs(rec.t_of_f - rec.boundary_integral);
    const double scale = std::abs(rec.t_of_f);
    rec.rel_gap = (scale < 1e-12) ? rec.abs_gap : rec.abs_gap / scale;
    if (rec.rel_gap >= tol.rel_tol) report.pass = false;
    report.records.push_back(rec);
  }
  return report;
}

Complex cauchy_kernel(Complex zeta, Complex z, Complex a, Complex b) {
  if (std::abs(a - b) < 1e-12) {
    throw Error(Errc::CoincidentAuxPoints, "auxiliary points a and b coincide");
  }
  if (std::abs(zeta - z) < 1e-300 || std::abs(zeta - a) < 1e-300 ||
      std::abs(zeta - b) < 1e-300) {
    throw Error(Errc::SingularArgument, "kernel evaluated at one of its poles");
  }
  const Complex term1 = 1.0 / (zeta - z);
  const Complex term2 = (z - b) / ((b - a) * (zeta - a));
  const Complex term3 = (z - a) / ((a - b) * (zeta - b));
  return (term1 + term2 + term3) / kPi;
}

CompactDensity::CompactDensity(Complex corner_lo, Complex corner_hi, int nx, int ny,
                               std::vector<Complex> values)
    : lo_(corner_lo), hi_(corner_hi), nx_(nx), ny_(ny), values_(std::move(values)) {
  if (!(lo_.real() < hi_.real()) || !(lo_.imag() < hi_.imag())) {
    throw Error(Errc::InvalidArgument, "degenerate support rectangle");
  }
  if (nx_ < 1 || ny_ < 1 ||
      values_.size() != static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_)) {
    throw Error(Errc::InvalidArgument, "grid dimensions do not match the value array");
  }
  for (const Complex& v : values_) {
    if (!is_finite(v)) throw Error(Errc::InvalidArgument, "density values must be finite");
  }
  hx_ = (hi_.real() - lo_.real()) / nx_;
  hy_ = (hi_.imag() - lo_.imag()) / ny_;
}

CompactDensity CompactDensity::from_function(Complex corner_lo, Complex corner_hi, int nx,
                                             int ny, const ComplexFn& g) {
  std::vector<Complex> values(static_cast<std::size_t>(nx) * ny);
  const double hx = (corner_hi.real() - corner_lo.real()) / nx;
  const double hy = (corner_hi.imag() - corner_lo.imag()) / ny;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Complex c{corner_lo.real() + (i + 0.5) * hx, corner_lo.imag() + (j + 0.5) * hy};
      values[static_cast<std::size_t>(j) * nx + i] = g(c);
    }
  }
  return CompactDensity(corner_lo, corner_hi, nx, ny, std::move(values));
}

Complex CompactDensity::center(int i, int j) const {
  return Complex{lo_.real() + (i + 0.5) * hx_, lo_.imag() + (j + 0.5) * hy_};
}

bool CompactDensity::contains(Complex z) const {
  return z.real() >= lo_.real() && z.real() <= hi_.real() && z.imag() >= lo_.imag() &&
         z.imag() <= hi_.imag();
}

CompactDensity::GridSum CompactDensity::integrate(const ComplexFn& integrand) const {
  const double cell = cell_area();
  // One term per cell; the four stride-2 phase decimations of the terms are
  // rectangle rules at spacing 2h whose average is the full midpoint sum, so
  // their spread is a coarse-vs-fine comparison that costs nothing extra.
  std::array<Complex, 4> phase{};
  Complex tail{0.0, 0.0};  // odd strip not covered by 2x2 blocks
  const int bx = 2 * (nx_ / 2);
  const int by = 2 * (ny_ / 2);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const Complex term = integrand(center(i, j)) * value(i, j);
      if (i < bx && j < by) {
        phase[static_cast<std::size_t>((i % 2) + 2 * (j % 2))] += term;
      } else {
        tail += term;
      }
    }
  }
  const Complex blocks = phase[0] + phase[1] + phase[2] + phase[3];
  const Complex fine = (blocks + tail) * cell;
  double spread = 0.0;
  if (nx_ >= 2 && ny_ >= 2) {
    for (const Complex& p : phase) {
      spread = std::max(spread, std::abs(4.0 * p - blocks) * cell);
    }
  }
  return GridSum{fine, spread / 3.0};
}

Complex cauchy_transform_compact(const CompactDensity& g, Complex z, const ToleranceSpec& tol) {
  (void)tol;
  if (g.contains(z)) {
    throw Error(Errc::InsideSupport, "evaluation point lies inside the support rectangle");
  }
  auto kernel = [&](Complex zeta) { return 1.0 / (zeta - z); };
  return g.integrate(kernel).value / kPi;
}

Complex generalized_cauchy_transform(const CompactDensity& g, Complex z, Complex a, Complex b,
                                     const ToleranceSpec& tol) {
  (void)tol;
  if (std::abs(a - b) < 1e-12) {
    throw Error(Errc::CoincidentAuxPoints, "auxiliary points a and b coincide");
  }
  auto kernel = [&](Complex zeta) { return cauchy_kernel(zeta, z, a, b); };
  return g.integrate(kernel).value;
}

std::vector<Complex> log_to_segments(std::span<const Complex> gammas,
                                     std::span<const Complex> nodes) {
  if (gammas.size() != nodes.size() || gammas.empty()) {
    throw Error(Errc::InvalidArgument, "gammas and nodes must have equal nonzero length");
  }
  Complex total{0.0, 0.0};
  for (const Complex& gamma : gammas) total += gamma;
  if (std::abs(total) >= 1e-12) {
    throw Error(Errc::NonzeroTotalCharge, "log weights must sum to zero");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (std::abs(nodes[i] - nodes[j]) < 1e-12) {
        throw Error(Errc::InvalidArgument, "log nodes must be distinct");
      }
    }
  }
  std::vector<Complex> chain(gammas.size() - 1);
  Complex partial{0.0, 0.0};
  for (std::size_t k = 0; k + 1 < gammas.size(); ++k) {
    partial += gammas[k];
    chain[k] = partial;
  }
  return chain;
}

SchwarzResidue schwarz_residue(const ConformalMapSpec& spec, std::size_t pole_index,
                               const ToleranceSpec& tol) {
  if (pole_index >= spec.poles().size()) {
    throw Error(Errc::InvalidArgument, "pole index out of range");
  }
  const Complex bbar = std::conj(spec.poles()[pole_index].b);
  const double radius = 0.4 * min_singularity_gap(spec, bbar);
  return schwarz_residue(spec, pole_index, tol, radius);
}

SchwarzResidue schwarz_residue(const ConformalMapSpec& spec, std::size_t pole_index,
                               const ToleranceSpec& tol, double radius) {
  if (pole_index >= spec.poles().size()) {
    throw Error(Errc::InvalidArgument, "pole index out of range");
  }
  const Complex bbar = std::conj(spec.poles()[pole_index].b);
  if (!(radius > 0.0) || radius > 0.95 * min_singularity_gap(spec, bbar)) {
    throw Error(Errc::InvalidArgument, "contour radius collides with another singularity");
  }
  auto g = [&](Complex w) { return eval_star(spec, w) * eval_map_derivative(spec, w); };
  SchwarzResidue out;
  out.location = eval_map(spec, bbar);
  out.residue = residue_numeric(g, bbar, radius, tol);
  return out;
}

}  // namespace quaddom
