#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quaddom/quadrature.hpp"

namespace quaddom {

enum class FamilyKind { Conchoid, ParabolaFamily, RayFamily };

/// Shape classification of a ray-family member: TypeOne when the real part
/// of the boundary parametrization has off-origin critical points (b^3 < a
/// < 4 b^3), TypeTwo when it is monotone for t away from 0 (a < b^3).
enum class Family3Type { TypeOne, TypeTwo };

/// Solved member of one of the example families: the parameters (a, b, h),
/// named derived quantities, the assembled map, and the univalence-screen
/// verdict.
struct FamilySolution {
  FamilyKind kind;
  double a = 0.0;
  double b = 0.0;
  double h = 0.0;
  std::map<std::string, double> derived;
  ConformalMapSpec spec;
  bool univalent = true;
  std::optional<Family3Type> type;
};

/// Line-asymptote family psi(w) = w + ih + a/(w - ib): a is the positive
/// root of a + a^2/(4 b^2) = 1 and h = b - a/(2 b), which places the image
/// of -ib at the origin with unit Schwarz residue.
FamilySolution solve_family1(double b);

/// Implicit-equation residual of the Conchoid of de Sluze:
/// (y + r - alpha)(x^2 + (y + r)^2) - 2 r (y + r)^2.
double conchoid_residual(double x, double y, double alpha, double r);

/// Parabola-asymptote family psi(w) = 2w + i w^2 + ih + a/(w - ib):
/// a is the positive root of 2a + 2ab + a^2/(4 b^2) = 1 and
/// h = 2b + b^2 - a/(2 b).
FamilySolution solve_family2(double b);

struct Family2Criticals {
  /// t^2 at the two critical points of X, ascending; absent when the
  /// discriminant a^2 - 16 a b^2 is negative or a root is negative.
  std::optional<std::pair<double, double>> x_crit_tsq;
  /// t^2 at the critical point of Y; absent when sqrt(ab) < b^2.
  std::optional<double> y_crit_tsq;
};

Family2Criticals family2_critical_points(double a, double b);

/// Loop criterion for the parabola family: the trace closes a loop exactly
/// when Y's critical point falls strictly between the two critical points
/// of X.
bool family2_loop_free(double a, double b);

/// Ray-asymptote family psi(w) = w^2 + h - ia/(w - ib): solves the cubic
/// 8 a b^3 - 4 b^2 + a^2 = 0 for positive roots b, builds one member per
/// root with h = b^2 - a/(2 b). Members failing the univalence screen are
/// returned flagged. Valid only for 0 < a <= (4/27)^(1/4).
std::vector<FamilySolution> solve_family3(double a);

/// Throws UnclassifiedBoundary within 1e-10 of a = b^3 or a = 4 b^3, and
/// for the looped regime a > 4 b^3 which has no univalent type.
Family3Type family3_type(double a, double b);

struct LimitDistance {
  double param = 0.0;
  double hausdorff = 0.0;
};

/// Window-clipped Hausdorff distance (|x| <= 5) between each member's
/// traced boundary and the family's limit set: unit circle + line y = -1
/// for the Conchoid family (parametrized by r), unit circle + parabola
/// y = (x/2)^2 - 1 for the parabola family (parametrized by b).
std::vector<LimitDistance> family_limit_report(FamilyKind kind, std::span<const double> params,
                                               int n_trace);

/// Conchoid parameter conversions: r = a/(2b) in (0,1) maps to b = alpha =
/// (1 - r^2)/(2 r).
double conchoid_b_from_r(double r);

}  // namespace quaddom
