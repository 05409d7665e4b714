#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "quaddom/common.hpp"

namespace quaddom {

/// Accuracy request for the adaptive quadrature routines. Both tolerances
/// must stay a couple of orders of magnitude above machine epsilon; the
/// subdivision cap bounds work on integrands that refuse to converge.
struct ToleranceSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;

  void validate() const;
};

using ComplexFn = std::function<Complex(Complex)>;
using RealFn = std::function<double(double)>;
using RealToComplexFn = std::function<Complex(double)>;

/// Adaptive estimate of the straight-line integral of f from a to b.
Complex integrate_segment(const ComplexFn& f, Complex a, Complex b, const ToleranceSpec& tol);

/// Counterclockwise contour integral of f over |w - center| = radius.
Complex integrate_circle(const ComplexFn& f, Complex center, double radius,
                         const ToleranceSpec& tol);

/// Integral of f over the whole real line via the t = tan(theta)
/// substitution. Requires |f(t)| = O(t^-2); a sampled decay check rejects
/// slower integrands up front.
Complex integrate_real_line(const RealToComplexFn& f, const ToleranceSpec& tol);

/// (1/2*pi*i) times the circle integral of g around the pole: the residue,
/// provided no other singularity sits inside the contour.
Complex residue_numeric(const ComplexFn& g, Complex pole, double radius,
                        const ToleranceSpec& tol);

/// Bracketed bisection/secant hybrid. Needs a sign change on [lo, hi];
/// stops when |f(x)| <= tol.
double find_root_1d(const RealFn& f, double lo, double hi, double tol);

/// The three roots (with multiplicity) of c3 x^3 + c2 x^2 + c1 x + c0,
/// Cardano closed form followed by one Newton polish per root.
std::array<Complex, 3> cubic_roots(double c3, double c2, double c1, double c0);

/// Sampled planar curve. Consecutive points must be distinct.
class Polyline {
 public:
  explicit Polyline(std::vector<Complex> points);

  const std::vector<Complex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  std::vector<Complex> points_;
};

struct IntersectionHit {
  std::size_t seg_a = 0;
  std::size_t seg_b = 0;
  Complex where;
};

/// Tests whether any two non-adjacent segments properly cross. The
/// orientation predicate is exact (double filter with a rational fallback),
/// pairs are pruned with bounding boxes. Returns the first hit found.
std::optional<IntersectionHit> polyline_self_intersection(const Polyline& p);

inline bool polyline_self_intersects(const Polyline& p) {
  return polyline_self_intersection(p).has_value();
}

/// Symmetric Hausdorff distance between the vertex sets of two polylines.
/// Dense sampling is the caller's responsibility.
double hausdorff_distance(const Polyline& p, const Polyline& q);

}  // namespace quaddom
