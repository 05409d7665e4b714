#include "quaddom/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/multiprecision/cpp_int.hpp>

namespace quaddom {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SubdivisionLimit: return "SubdivisionLimit";
    case Errc::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case Errc::SlowDecay: return "SlowDecay";
    case Errc::NoSignChange: return "NoSignChange";
    case Errc::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case Errc::SingularArgument: return "SingularArgument";
    case Errc::OnSegment: return "OnSegment";
    case Errc::IllConditionedJetSystem: return "IllConditionedJetSystem";
    case Errc::NodeAtPole: return "NodeAtPole";
    case Errc::CoincidentAuxPoints: return "CoincidentAuxPoints";
    case Errc::InsideSupport: return "InsideSupport";
    case Errc::NonzeroTotalCharge: return "NonzeroTotalCharge";
    case Errc::TruncationDominates: return "TruncationDominates";
    case Errc::NoPositiveRoot: return "NoPositiveRoot";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::UnclassifiedBoundary: return "UnclassifiedBoundary";
    case Errc::EvaluationBelowStrip: return "EvaluationBelowStrip";
    case Errc::ContourCollision: return "ContourCollision";
    case Errc::UnsupportedKind: return "UnsupportedKind";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SchemaError: return "SchemaError";
  }
  return "UnknownError";
}

void ToleranceSpec::validate() const {
  const double floor = 100.0 * std::numeric_limits<double>::epsilon();
  if (!(abs_tol >= floor) || !(rel_tol >= floor)) {
    throw Error(Errc::InvalidArgument, "tolerances must be >= 100 * machine epsilon");
  }
  if (max_subdivisions <= 0) {
    throw Error(Errc::InvalidArgument, "max_subdivisions must be positive");
  }
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[15] = {
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691, -0.7415311855993944,
    -0.5860872354676911, -0.4058451513773972, -0.2077849550078985, 0.0,
    0.2077849550078985,  0.4058451513773972,  0.5860872354676911,  0.7415311855993944,
    0.8648644233597691,  0.9491079123427585,  0.9914553711208126};

constexpr double kKronrodWeights[15] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278,
    0.2044329400752989, 0.1903505780647854, 0.1690047266392679, 0.1406532597155259,
    0.1047900103222502, 0.0630920926299785, 0.0229353220105292};

constexpr double kGaussWeights[7] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                                     0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
                                     0.1294849661688697};

struct Panel {
  double lo, hi;
  Complex value;
  double error;
  double resabs;  // integral of |g|, used for the roundoff floor
};

struct PanelWorse {
  bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

// One Gauss-Kronrod pass of g over [lo, hi]; g must be smooth there.
Panel gk15(const RealToComplexFn& g, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Complex kron{0.0, 0.0};
  Complex gauss{0.0, 0.0};
  double resabs = 0.0;
  for (int i = 0; i < 15; ++i) {
    const Complex v = g(mid + half * kKronrodNodes[i]);
    if (!is_finite(v)) {
      throw Error(Errc::NonFiniteEvaluation, "integrand returned a non-finite value");
    }
    kron += kKronrodWeights[i] * v;
    resabs += kKronrodWeights[i] * std::abs(v);
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * v;
  }
  kron *= half;
  gauss *= half;
  resabs *= std::abs(half);
  const double diff = std::abs(kron - gauss);
  // QUADPACK-style sharpened estimate; the raw |K - G| is kept as a cap.
  const double scale = std::abs(kron) + 1e-300;
  double err = diff;
  if (diff > 0.0 && diff < scale) {
    err = scale * std::pow(200.0 * diff / scale, 1.5);
    err = std::min(err, diff);
  }
  return Panel{lo, hi, kron, err, resabs};
}

// Globally adaptive driver: keep splitting the worst panel until the
// summed error estimate meets max(abs_tol, rel_tol * |total|) or the
// roundoff floor of the accumulated |g| mass, whichever is larger.
Complex adaptive_gk(const RealToComplexFn& g, double lo, double hi, const ToleranceSpec& tol) {
  tol.validate();
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
  queue.push(gk15(g, lo, hi));
  Complex total = queue.top().value;
  double total_err = queue.top().error;
  double total_resabs = queue.top().resabs;
  int splits = 0;
  auto target = [&]() {
    const double noise_floor = 50.0 * kEps * total_resabs;
    return std::max({tol.abs_tol, tol.rel_tol * std::abs(total), noise_floor});
  };
  while (total_err > target()) {
    if (splits >= tol.max_subdivisions) {
      throw Error(Errc::SubdivisionLimit, "adaptive quadrature did not converge within " +
                                              std::to_string(tol.max_subdivisions) +
                                              " subdivisions");
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval at floating-point resolution; nothing left to refine.
      queue.push(Panel{worst.lo, worst.hi, worst.value, 0.0, worst.resabs});
      continue;
    }
    Panel left = gk15(g, worst.lo, mid);
    Panel right = gk15(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_resabs += left.resabs + right.resabs - worst.resabs;
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  return total;
}

}  // namespace

Complex integrate_segment(const ComplexFn& f, Complex a, Complex b, const ToleranceSpec& tol) {
  const Complex dir = b - a;
  if (std::abs(dir) == 0.0) return Complex{0.0, 0.0};
  auto g = [&](double s) { return f(a + s * dir) * dir; };
  return adaptive_gk(g, 0.0, 1.0, tol);
}

Complex integrate_circle(const ComplexFn& f, Complex center, double radius,
                         const ToleranceSpec& tol) {
  if (!(radius > 0.0)) {
    throw Error(Errc::InvalidArgument, "circle radius must be positive");
  }
  auto g = [&](double theta) {
    const Complex e = std::polar(radius, theta);
    return f(center + e) * Complex{0.0, 1.0} * e;
  };
  return adaptive_gk(g, 0.0, 2.0 * kPi, tol);
}

Complex integrate_real_line(const RealToComplexFn& f, const ToleranceSpec& tol) {
  // Decay screen: |f(t)| t^2 must not grow between |t| = 1e5 and 1e6.
  for (double sign : {-1.0, 1.0}) {
    const double v5 = std::abs(f(sign * 1e5)) * 1e10;
    const double v6 = std::abs(f(sign * 1e6)) * 1e12;
    if (!std::isfinite(v5) || !std::isfinite(v6)) {
      throw Error(Errc::NonFiniteEvaluation, "integrand non-finite at decay-check samples");
    }
    if (v6 > 2.0 * v5 + 1e-12) {
      throw Error(Errc::SlowDecay, "integrand decays slower than t^-2 at t = " +
                                       std::to_string(sign * 1e6));
    }
  }
  auto g = [&](double theta) {
    const double c = std::cos(theta);
    const double t = std::tan(theta);
    return f(t) / (c * c);
  };
  const double half = 0.5 * kPi;
  // Split at 0 so the two tails are refined independently.
  ToleranceSpec half_tol = tol;
  half_tol.abs_tol = 0.5 * tol.abs_tol;
  return adaptive_gk(g, -half, 0.0, half_tol) + adaptive_gk(g, 0.0, half, half_tol);
}

Complex residue_numeric(const ComplexFn& g, Complex pole, double radius,
                        const ToleranceSpec& tol) {
  const Complex loop = integrate_circle(g, pole, radius, tol);
  return loop / (Complex{0.0, 2.0} * kPi);
}

double find_root_1d(const RealFn& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw Error(Errc::InvalidArgument, "invalid bracket: lo >= hi");
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "root tolerance must be positive");
  double flo = f(lo);
  double fhi = f(hi);
  if (std::abs(flo) <= tol) return lo;
  if (std::abs(fhi) <= tol) return hi;
  if (flo * fhi > 0.0) {
    throw Error(Errc::NoSignChange, "f(lo) and f(hi) have the same sign");
  }
  double a = lo, b = hi, fa = flo, fb = fhi;
  for (int iter = 0; iter < 200; ++iter) {
    // Secant proposal, clamped into the bracket; bisection fallback.
    double x = b - fb * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    if (!(x > a && x < b)) x = mid;
    // Keep proposals away from the stagnating endpoint.
    const double gap = b - a;
    x = std::clamp(x, a + 0.01 * gap, b - 0.01 * gap);
    const double fx = f(x);
    if (std::abs(fx) <= tol) return x;
    if (fa * fx < 0.0) {
      b = x;
      fb = fx;
    } else {
      a = x;
      fa = fx;
    }
    if (b - a <= std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b) + 1.0)) {
      break;
    }
  }
  const double x = 0.5 * (a + b);
  if (std::abs(f(x)) <= tol) return x;
  throw Error(Errc::SubdivisionLimit, "root refinement stalled above the requested tolerance");
}

std::array<Complex, 3> cubic_roots(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0) {
    throw Error(Errc::DegenerateLeadingCoefficient, "leading cubic coefficient is zero");
  }
  // Depressed form: x = t - c2/(3 c3), t^3 + p t + q = 0.
  const double b = c2 / c3;
  const double c = c1 / c3;
  const double d = c0 / c3;
  const double shift = b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

  std::array<Complex, 3> roots;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  if (disc >= 0.0) {
    // Three real roots: trigonometric form.
    if (p == 0.0) {
      const double r = std::cbrt(-q);
      roots = {Complex{r, 0.0}, Complex{r, 0.0}, Complex{r, 0.0}};
    } else {
      const double m = 2.0 * std::sqrt(-p / 3.0);
      double arg = 3.0 * q / (p * m);
      arg = std::clamp(arg, -1.0, 1.0);
      const double phi = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k) {
        roots[k] = Complex{m * std::cos(phi - 2.0 * kPi * k / 3.0), 0.0};
      }
    }
  } else {
    // One real root via Cardano with the large-magnitude cube root.
    const double half_q = 0.5 * q;
    const double rad = std::sqrt(half_q * half_q + p * p * p / 27.0);
    const double u3 = -half_q + (half_q >= 0.0 ? -rad : rad);
    const double u = std::cbrt(u3);
    const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    const double t0 = u + v;
    const double re = -0.5 * t0;
    const double im = 0.5 * std::sqrt(3.0) * std::abs(u - v);
    roots = {Complex{t0, 0.0}, Complex{re, im}, Complex{re, -im}};
  }

  auto poly = [&](Complex x) { return ((Complex{c3} * x + c2) * x + c1) * x + c0; };
  auto dpoly = [&](Complex x) { return (Complex{3.0 * c3} * x + 2.0 * c2) * x + c1; };
  for (auto& r : roots) {
    r -= shift;
    for (int it = 0; it < 2; ++it) {
      const Complex num = poly(r);
      const Complex den = dpoly(r);
      if (std::abs(den) < 1e-300) break;
      const Complex next = r - num / den;
      if (std::abs(poly(next)) < std::abs(num)) r = next;
    }
  }
  return roots;
}

Polyline::Polyline(std::vector<Complex> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(Errc::InvalidArgument, "polyline needs at least 2 points");
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (!is_finite(points_[i])) {
      throw Error(Errc::InvalidArgument, "polyline point is not finite");
    }
    if (points_[i] == points_[i + 1]) {
      throw Error(Errc::InvalidArgument,
                  "consecutive polyline points coincide at index " + std::to_string(i));
    }
  }
  if (!is_finite(points_.back())) {
    throw Error(Errc::InvalidArgument, "polyline point is not finite");
  }
}

namespace {

using BigRational = boost::multiprecision::cpp_rational;

// Sign of the orientation determinant (b - a) x (c - a). Double filter with
// forward error bound; exact rational arithmetic on near-degenerate input.
int orient2d(Complex a, Complex b, Complex c) {
  const double detleft = (b.real() - a.real()) * (c.imag() - a.imag());
  const double detright = (b.imag() - a.imag()) * (c.real() - a.real());
  const double det = detleft - detright;
  const double detsum = std::abs(detleft) + std::abs(detright);
  constexpr double kFilter = 8.8872057372592758e-16;  // (3 + 16 eps) eps
  if (std::abs(det) > kFilter * detsum) return det > 0.0 ? 1 : -1;
  const BigRational ax(a.real()), ay(a.imag()), bx(b.real()), by(b.imag()), cx(c.real()),
      cy(c.imag());
  const BigRational exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  if (exact > 0) return 1;
  if (exact < 0) return -1;
  return 0;
}

bool on_segment_collinear(Complex p, Complex q, Complex r) {
  // Assumes p, q, r collinear: is r within the box of [p, q]?
  return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
         std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
}

bool segments_cross(Complex a, Complex b, Complex c, Complex d, Complex* where) {
  const int d1 = orient2d(a, b, c);
  const int d2 = orient2d(a, b, d);
  const int d3 = orient2d(c, d, a);
  const int d4 = orient2d(c, d, b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    if (where) {
      const double denom = (b.real() - a.real()) * (d.imag() - c.imag()) -
                           (b.imag() - a.imag()) * (d.real() - c.real());
      double s = 0.5;
      if (denom != 0.0) {
        s = ((c.real() - a.real()) * (d.imag() - c.imag()) -
             (c.imag() - a.imag()) * (d.real() - c.real())) /
            denom;
      }
      *where = a + s * (b - a);
    }
    return true;
  }
  // Collinear overlap with interior contact counts as a crossing too.
  if (d1 == 0 && on_segment_collinear(a, b, c)) { if (where) *where = c; return true; }
  if (d2 == 0 && on_segment_collinear(a, b, d)) { if (where) *where = d; return true; }
  if (d3 == 0 && on_segment_collinear(c, d, a)) { if (where) *where = a; return true; }
  if (d4 == 0 && on_segment_collinear(c, d, b)) { if (where) *where = b; return true; }
  return false;
}

}  // namespace

std::optional<IntersectionHit> polyline_self_intersection(const Polyline& p) {
  const auto& pts = p.points();
  if (pts.size() < 4) return std::nullopt;
  const std::size_t nseg = pts.size() - 1;

  struct Box {
    double xmin, xmax, ymin, ymax;
    std::size_t idx;
  };
  std::vector<Box> boxes(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    boxes[i] = Box{std::min(pts[i].real(), pts[i + 1].real()),
                   std::max(pts[i].real(), pts[i + 1].real()),
                   std::min(pts[i].imag(), pts[i + 1].imag()),
                   std::max(pts[i].imag(), pts[i + 1].imag()), i};
  }
  std::vector<std::size_t> order(nseg);
  for (std::size_t i = 0; i < nseg; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return boxes[a].xmin < boxes[b].xmin; });

  for (std::size_t oi = 0; oi < nseg; ++oi) {
    const Box& bi = boxes[order[oi]];
    for (std::size_t oj = oi + 1; oj < nseg; ++oj) {
      const Box& bj = boxes[order[oj]];
      if (bj.xmin > bi.xmax) break;  // sorted by xmin: no later box can overlap
      const std::size_t i = std::min(bi.idx, bj.idx);
      const std::size_t j = std::max(bi.idx, bj.idx);
      if (j <= i + 1) continue;  // identical or adjacent segments
      if (bj.ymin > bi.ymax || bj.ymax < bi.ymin) continue;
      Complex where;
      if (segments_cross(pts[i], pts[i + 1], pts[j], pts[j + 1], &where)) {
        return IntersectionHit{i, j, where};
      }
    }
  }
  return std::nullopt;
}

double hausdorff_distance(const Polyline& p, const Polyline& q) {
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (const Complex& a : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& b : to) {
        const double dx = a.real() - b.real();
        const double dy = a.imag() - b.imag();
        const double d2 = dx * dx + dy * dy;
        if (d2 < best) {
          best = d2;
          if (best <= worst) break;  // cannot raise the running maximum
        }
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  const double fwd = directed(p.points(), q.points());
  const double bwd = directed(q.points(), p.points());
  return std::sqrt(std::max(fwd, bwd));
}

}  // namespace quaddom
