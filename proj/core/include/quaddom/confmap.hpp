#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quaddom/numerics.hpp"

namespace quaddom {

/// q(w) = a2 w^2 + a1 w + a0.
struct QuadraticPoly {
  Complex a0{0.0, 0.0};
  Complex a1{0.0, 0.0};
  Complex a2{0.0, 0.0};

  Complex eval(Complex w) const { return (a2 * w + a1) * w + a0; }
  Complex deriv(Complex w) const { return 2.0 * a2 * w + a1; }
};

/// Rational part anchored at a single pole b in the upper half-plane:
/// sum_j coeffs[j] / (w - b)^(j+1). The last coefficient must be nonzero.
struct PoleGroup {
  Complex b;
  std::vector<Complex> coeffs;
};

/// Weighted chain of straight segments between nodes d_1..d_{n+1} in the
/// upper half-plane; coeffs[k] weights the log term of segment k.
struct SegmentChain {
  std::vector<Complex> nodes;
  std::vector<Complex> coeffs;
};

/// psi(w) = q(w) + sum of pole-group terms + sum of segment log terms,
/// mapping the lower half-plane onto its image domain. Construction
/// validates the structural invariants (poles strictly above the real
/// axis, pairwise distinct, chains well formed).
class ConformalMapSpec {
 public:
  ConformalMapSpec(QuadraticPoly q, std::vector<PoleGroup> poles,
                   std::vector<SegmentChain> segments);
  explicit ConformalMapSpec(QuadraticPoly q) : ConformalMapSpec(q, {}, {}) {}

  const QuadraticPoly& q() const noexcept { return q_; }
  const std::vector<PoleGroup>& poles() const noexcept { return poles_; }
  const std::vector<SegmentChain>& segments() const noexcept { return segments_; }

  bool is_pure_polynomial() const noexcept { return poles_.empty() && segments_.empty(); }

  /// Map whose image is the mirror of this one across the real axis
  /// (w -> conj(psi(-conj(w)))), again in canonical form.
  ConformalMapSpec reflected() const;

 private:
  QuadraticPoly q_;
  std::vector<PoleGroup> poles_;
  std::vector<SegmentChain> segments_;
};

/// Principal-branch Log((w - d_from)/(w - d_to)); equals the straight-line
/// integral of 1/(w - s) from d_from to d_to for w off the closed segment.
Complex segment_log_term(Complex d_from, Complex d_to, Complex w);

Complex eval_map(const ConformalMapSpec& spec, Complex w);
Complex eval_map_derivative(const ConformalMapSpec& spec, Complex w);

/// psi*(w) = conj(psi(conj(w))); agrees with conj(psi) on the real line and
/// carries the reflected singularities in the lower half-plane.
Complex eval_star(const ConformalMapSpec& spec, Complex w);
Complex eval_star_derivative(const ConformalMapSpec& spec, Complex w);

enum class AsymptoteKind { Line, Parabola, Ray };

/// Classification of the asymptotic curve {q(t) : t real} with the
/// coefficients that define it. For a line, direction() and offset() give
/// the parametric form a1 t + a0. near_threshold flags inputs within a
/// decade of a classification cutoff.
struct AsymptoteClass {
  AsymptoteKind kind = AsymptoteKind::Line;
  Complex a2, a1, a0;
  bool near_threshold = false;

  Complex direction() const { return a1; }
  Complex offset() const { return a0; }
};

AsymptoteClass classify_asymptote(const ConformalMapSpec& spec, double a2_tol = 1e-12,
                                  double im_ratio_tol = 1e-10);

enum class Grading { Uniform, TanGraded };

/// Boundary samples {t_i, psi(t_i)} with strictly increasing parameters.
struct BoundaryTrace {
  std::vector<double> params;
  std::vector<Complex> points;

  Polyline to_polyline() const { return Polyline(points); }
};

/// Samples psi on [t_min, t_max] with n points. TanGraded spaces the
/// parameters uniformly in atan(t), concentrating samples where the
/// compact perturbation lives.
BoundaryTrace trace_boundary(const ConformalMapSpec& spec, double t_min, double t_max, int n,
                             Grading grading);

struct UnivalenceVerdict {
  bool pass = true;
  std::optional<Complex> failure_location;
  std::string reason;
};

/// Necessary-condition univalence screen: the tan-graded boundary trace
/// must be free of self-intersections and psi' must stay away from zero on
/// a sample grid in the lower half-plane. Not a proof of injectivity.
UnivalenceVerdict check_univalence_boundary(const ConformalMapSpec& spec, int n = 4096,
                                            double t_span = 1e3);

/// max over sampled |t| in [T, 10T] of |psi(t) - q(t)|.
double asymptote_deviation(const ConformalMapSpec& spec, double T);

}  // namespace quaddom
