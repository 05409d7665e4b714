#include "quaddom/families.hpp"

#include <algorithm>
#include <cmath>

namespace quaddom {

namespace {

ConformalMapSpec family1_spec(double a, double b, double h) {
  QuadraticPoly q{Complex{0.0, h}, Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  PoleGroup pole{Complex{0.0, b}, {Complex{a, 0.0}}};
  return ConformalMapSpec(q, {pole}, {});
}

ConformalMapSpec family2_spec(double a, double b, double h) {
  QuadraticPoly q{Complex{0.0, h}, Complex{2.0, 0.0}, Complex{0.0, 1.0}};
  PoleGroup pole{Complex{0.0, b}, {Complex{a, 0.0}}};
  return ConformalMapSpec(q, {pole}, {});
}

ConformalMapSpec family3_spec(double a, double b, double h) {
  QuadraticPoly q{Complex{h, 0.0}, Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  PoleGroup pole{Complex{0.0, b}, {Complex{0.0, -a}}};
  return ConformalMapSpec(q, {pole}, {});
}

}  // namespace

double conchoid_b_from_r(double r) {
  if (!(r > 0.0) || !(r < 1.0)) {
    throw Error(Errc::ParameterOutOfRange, "conchoid parameter r must lie in (0, 1)");
  }
  return (1.0 - r * r) / (2.0 * r);
}

FamilySolution solve_family1(double b) {
  if (!(b > 0.0)) throw Error(Errc::ParameterOutOfRange, "family 1 needs b > 0");
  // Positive root of a + a^2/(4 b^2) = 1, written to avoid cancellation.
  const double a = 2.0 * b * (std::sqrt(b * b + 1.0) - b);
  const double h = b - a / (2.0 * b);
  const double r = a / (2.0 * b);
  const double alpha = b;
  FamilySolution sol{FamilyKind::Conchoid, a,           b,
                     h,                    {{"r", r}, {"alpha", alpha}},
                     family1_spec(a, b, h), true,
                     std::nullopt};
  sol.univalent = check_univalence_boundary(sol.spec).pass;
  return sol;
}

double conchoid_residual(double x, double y, double alpha, double r) {
  const double yr = y + r;
  return (yr - alpha) * (x * x + yr * yr) - 2.0 * r * yr * yr;
}

FamilySolution solve_family2(double b) {
  if (!(b > 0.0)) throw Error(Errc::ParameterOutOfRange, "family 2 needs b > 0");
  // Positive root of a^2 + 8 b^2 (1 + b) a - 4 b^2 = 0.
  const double p = 4.0 * b * b * (1.0 + b);
  const double disc = p * p + 4.0 * b * b;
  const double a = -p + std::sqrt(disc);
  if (!(a > 0.0)) {
    throw Error(Errc::NoPositiveRoot, "family 2 parameter equation has no positive root");
  }
  const double h = 2.0 * b + b * b - a / (2.0 * b);
  FamilySolution sol{FamilyKind::ParabolaFamily, a,    b, h, {}, family2_spec(a, b, h),
                     true,                          std::nullopt};
  sol.univalent = check_univalence_boundary(sol.spec).pass;
  return sol;
}

Family2Criticals family2_critical_points(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(Errc::ParameterOutOfRange, "family 2 criticals need a, b > 0");
  }
  Family2Criticals out;
  const double y_tsq = std::sqrt(a * b) - b * b;
  if (y_tsq >= 0.0) out.y_crit_tsq = y_tsq;
  const double disc = a * a - 16.0 * a * b * b;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double lo = 0.25 * (-s + a - 4.0 * b * b);
    const double hi = 0.25 * (s + a - 4.0 * b * b);
    if (lo >= 0.0 && hi >= 0.0) {
      out.x_crit_tsq = std::make_pair(lo, hi);
    }
  }
  return out;
}

bool family2_loop_free(double a, double b) {
  const Family2Criticals crit = family2_critical_points(a, b);
  if (!crit.x_crit_tsq || !crit.y_crit_tsq) return true;
  const auto [lo, hi] = *crit.x_crit_tsq;
  const double y = *crit.y_crit_tsq;
  return !(y > lo && y < hi);
}

std::vector<FamilySolution> solve_family3(double a) {
  const double a_max = std::pow(4.0 / 27.0, 0.25);
  if (!(a > 0.0) || a > a_max + 1e-12) {
    throw Error(Errc::ParameterOutOfRange,
                "family 3 needs 0 < a <= (4/27)^(1/4) ~= " + std::to_string(a_max));
  }
  const auto roots = cubic_roots(8.0 * a, -4.0, 0.0, a * a);
  std::vector<double> positive;
  for (const Complex& root : roots) {
    if (std::abs(root.imag()) <= 1e-9 * (1.0 + std::abs(root.real())) && root.real() > 0.0) {
      positive.push_back(root.real());
    }
  }
  std::sort(positive.begin(), positive.end());
  std::vector<FamilySolution> out;
  for (double b : positive) {
    const double h = b * b - a / (2.0 * b);
    if (!(b * b + a / (2.0 * b) > 0.0)) continue;  // origin-in-image sign condition
    FamilySolution sol{FamilyKind::RayFamily, a,    b, h, {{"b_cubed", b * b * b}},
                       family3_spec(a, b, h),     true, std::nullopt};
    sol.univalent = check_univalence_boundary(sol.spec).pass;
    const double b3 = b * b * b;
    if (std::abs(a - b3) > 1e-10 && std::abs(a - 4.0 * b3) > 1e-10 && a < 4.0 * b3) {
      sol.type = family3_type(a, b);
    }
    out.push_back(std::move(sol));
  }
  return out;
}

Family3Type family3_type(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(Errc::ParameterOutOfRange, "family 3 type needs a, b > 0");
  }
  const double b3 = b * b * b;
  if (std::abs(a - b3) <= 1e-10 || std::abs(a - 4.0 * b3) <= 1e-10) {
    throw Error(Errc::UnclassifiedBoundary, "parameters sit on a type boundary");
  }
  if (a < b3) return Family3Type::TypeTwo;
  if (a < 4.0 * b3) return Family3Type::TypeOne;
  throw Error(Errc::UnclassifiedBoundary,
              "a > 4 b^3: X has critical points but the trace closes a loop");
}

std::vector<LimitDistance> family_limit_report(FamilyKind kind, std::span<const double> params,
                                               int n_trace) {
  if (kind == FamilyKind::RayFamily) {
    throw Error(Errc::UnsupportedKind, "the ray family has no circle-union-curve limit set");
  }
  if (n_trace < 64) throw Error(Errc::InvalidArgument, "n_trace too small");

  const double window = 5.0;
  // Dense sampling of the limit set, clipped to |x| <= window.
  std::vector<Complex> limit;
  const int n_circle = 4096;
  for (int i = 0; i < n_circle; ++i) {
    const double th = 2.0 * kPi * i / n_circle;
    limit.emplace_back(std::cos(th), std::sin(th));
  }
  const int n_curve = 2048;
  for (int i = 0; i < n_curve; ++i) {
    const double x = -window + 2.0 * window * i / (n_curve - 1.0);
    if (kind == FamilyKind::Conchoid) {
      limit.emplace_back(x, -1.0);
    } else {
      limit.emplace_back(x, 0.25 * x * x - 1.0);
    }
  }
  const Polyline limit_poly(std::move(limit));

  std::vector<LimitDistance> report;
  for (double param : params) {
    FamilySolution sol = (kind == FamilyKind::Conchoid) ? solve_family1(conchoid_b_from_r(param))
                                                        : solve_family2(param);
    const BoundaryTrace trace =
        trace_boundary(sol.spec, -1e3, 1e3, n_trace, Grading::TanGraded);
    std::vector<Complex> clipped;
    for (const Complex& p : trace.points) {
      if (std::abs(p.real()) <= window) clipped.push_back(p);
    }
    if (clipped.size() < 2) {
      throw Error(Errc::InvalidArgument, "trace leaves the clipping window almost everywhere");
    }
    report.push_back({param, hausdorff_distance(Polyline(clipped), limit_poly)});
  }
  return report;
}

}  // namespace quaddom
