#pragma once

#include <span>
#include <vector>

#include "quaddom/confmap.hpp"

namespace quaddom {

/// Point mass of the distribution: weights[j] multiplies the j-th
/// derivative of the test function at beta.
struct PointNode {
  Complex beta;
  std::vector<Complex> weights;
};

/// Weighted straight segment of the distribution; weight multiplies the
/// line integral of the test function from delta_from to delta_to.
struct SegmentNode {
  Complex delta_from;
  Complex delta_to;
  Complex weight;
};

struct QuadratureDistribution {
  std::vector<PointNode> points;
  std::vector<SegmentNode> segments;

  bool empty() const noexcept { return points.empty() && segments.empty(); }
};

/// f(z) = (z - z0)^(-k) with k >= 3, the decaying test-function family the
/// identity is verified on. Derivatives come from the closed form.
struct TestFunction {
  Complex z0;
  int k = 3;

  Complex operator()(Complex z) const;
  /// j-th derivative at z: (-1)^j k (k+1) ... (k+j-1) (z - z0)^(-k-j).
  Complex derivative(int j, Complex z) const;
};

/// Winding-number screen for the admissibility requirement that z0 lies
/// outside the closed image domain. Counts preimages of z0 in the lower
/// half-plane by the argument principle along the traced boundary.
bool point_outside_domain(const ConformalMapSpec& spec, Complex z0);

/// Reads the quadrature distribution off the map: node locations are the
/// images of the conjugated poles/chain nodes, point weights are extracted
/// from the residue functional by probing with canonical jets, segment
/// weights are pi * conj(chain coefficient).
QuadratureDistribution derive_distribution(const ConformalMapSpec& spec,
                                           const ToleranceSpec& tol);

Complex evaluate_distribution(const QuadratureDistribution& dist, const TestFunction& f);

/// Area integral of f over the image domain, computed as a line integral
/// over the boundary parametrized with the domain on the left.
Complex boundary_quadrature_integral(const ConformalMapSpec& spec, const TestFunction& f,
                                     const ToleranceSpec& tol);

/// Brute-force oracle for the same area integral: 2-D quadrature of
/// f(psi(w)) |psi'(w)|^2 over the lower half-disk of radius R. Raises
/// TruncationDominates when the no-cancellation tail bound exceeds the
/// requested tolerance.
Complex pullback_area_integral(const ConformalMapSpec& spec, const TestFunction& f, double R,
                               const ToleranceSpec& tol);

struct IdentityRecord {
  Complex z0;
  int k = 0;
  Complex t_of_f;
  Complex boundary_integral;
  double abs_gap = 0.0;
  double rel_gap = 0.0;
};

struct IdentityReport {
  std::vector<IdentityRecord> records;
  double tolerance = 0.0;
  bool pass = false;
};

/// Per-test-function comparison of T(f) against the boundary integral.
/// The verdict threshold is tol.rel_tol; the absolute gap is used when
/// |T(f)| < 1e-12.
IdentityReport verify_quadrature_identity(const ConformalMapSpec& spec,
                                          const QuadratureDistribution& dist,
                                          std::span<const TestFunction> fs,
                                          const ToleranceSpec& tol);

/// Modified Cauchy kernel with auxiliary points a, b; decays like
/// |zeta|^-3 so unbounded-support densities integrate.
Complex cauchy_kernel(Complex zeta, Complex z, Complex a, Complex b);

/// Complex density on a rectangular cell grid; values live at cell
/// centers. Quadrature over the support is the midpoint rule with a
/// coarse-grid Richardson error estimate.
class CompactDensity {
 public:
  CompactDensity(Complex corner_lo, Complex corner_hi, int nx, int ny,
                 std::vector<Complex> values);

  static CompactDensity from_function(Complex corner_lo, Complex corner_hi, int nx, int ny,
                                      const ComplexFn& g);

  Complex corner_lo() const noexcept { return lo_; }
  Complex corner_hi() const noexcept { return hi_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double cell_area() const noexcept { return hx_ * hy_; }
  Complex center(int i, int j) const;
  Complex value(int i, int j) const { return values_[static_cast<std::size_t>(j) * nx_ + i]; }
  bool contains(Complex z) const;

  /// Midpoint-rule integral of integrand(center) * value over all cells.
  /// The error estimate is Richardson-style: the spread between the full
  /// sum and the four stride-2 subsample rules at spacing 2h, divided by 3.
  /// An order-of-magnitude indicator: conservative for smooth densities;
  /// sign cancellation along a discontinuity can make it optimistic there.
  struct GridSum {
    Complex value;
    double error_estimate;
  };
  GridSum integrate(const ComplexFn& integrand) const;

 private:
  Complex lo_, hi_;
  int nx_, ny_;
  double hx_, hy_;
  std::vector<Complex> values_;
};

/// (1/pi) integral of g(zeta)/(zeta - z); z must be outside the support.
Complex cauchy_transform_compact(const CompactDensity& g, Complex z, const ToleranceSpec& tol);

/// Integral of K(zeta, z, a, b) g(zeta) over the support.
Complex generalized_cauchy_transform(const CompactDensity& g, Complex z, Complex a, Complex b,
                                     const ToleranceSpec& tol);

/// Converts log-charge weights (sum zero) into chain weights: c_k is the
/// k-th partial sum of gammas, so the weighted log sum equals the weighted
/// segment-term sum off the chain.
std::vector<Complex> log_to_segments(std::span<const Complex> gammas,
                                     std::span<const Complex> nodes);

struct SchwarzResidue {
  Complex location;
  Complex residue;
};

/// Residue of the Schwarz function at the image of the pole preimage,
/// computed in the w-plane as (1/2*pi*i) of the contour integral of
/// psi*(w) psi'(w) around the conjugated pole.
SchwarzResidue schwarz_residue(const ConformalMapSpec& spec, std::size_t pole_index,
                               const ToleranceSpec& tol);
SchwarzResidue schwarz_residue(const ConformalMapSpec& spec, std::size_t pole_index,
                               const ToleranceSpec& tol, double radius);

}  // namespace quaddom
