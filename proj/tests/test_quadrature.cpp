#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "quaddom/families.hpp"
#include "quaddom/quadrature.hpp"

using namespace quaddom;
using std::abs;

namespace {

const Complex I{0.0, 1.0};
const ToleranceSpec kTight{1e-13, 1e-12, 4000};

ConformalMapSpec identity_spec() {
  return ConformalMapSpec(QuadraticPoly{{0, 0}, {1, 0}, {0, 0}});
}

// w + c * (segment log term between i and 0.5 + 2i).
ConformalMapSpec chain_spec() {
  QuadraticPoly q{{0, 0}, {1, 0}, {0, 0}};
  SegmentChain chain{{Complex{0.0, 1.0}, Complex{0.5, 2.0}}, {Complex{0.3, -0.1}}};
  return ConformalMapSpec(q, {}, {chain});
}

// w + a0/(w - 0.8i) + a1/(w - 0.8i)^2: exercises the order-2 jet extraction.
ConformalMapSpec double_pole_spec() {
  QuadraticPoly q{{0, 0}, {1, 0}, {0, 0}};
  PoleGroup pole{Complex{0.0, 0.8}, {Complex{0.05, 0.0}, Complex{0.0, 0.02}}};
  return ConformalMapSpec(q, {pole}, {});
}

}  // namespace

TEST_CASE("TestFunction: closed-form derivatives against finite differences") {
  const TestFunction f{Complex{2.0, 3.0}, 4};
  const Complex z{-1.0, 0.5};
  const double step = 1e-6;
  for (int j = 1; j <= 3; ++j) {
    const Complex fd =
        (f.derivative(j - 1, z + step) - f.derivative(j - 1, z - step)) / (2.0 * step);
    CHECK(abs(fd - f.derivative(j, z)) < 1e-5 * abs(f.derivative(j, z)));
  }
  CHECK(f.derivative(0, z) == f(z));
}

TEST_CASE("point_outside_domain: half-plane and family geometries") {
  // Identity map: the image is the lower half-plane.
  CHECK(point_outside_domain(identity_spec(), I));
  CHECK(!point_outside_domain(identity_spec(), -I));

  // Family 1 at b = 1: the domain is everything below the conchoid, which
  // tops out at y = alpha + r < 2.
  const FamilySolution fam1 = solve_family1(1.0);
  CHECK(point_outside_domain(fam1.spec, 3.0 * I));
  CHECK(point_outside_domain(fam1.spec, Complex{2.0, 4.0}));
  CHECK(!point_outside_domain(fam1.spec, -5.0 * I));
  CHECK(!point_outside_domain(fam1.spec, Complex{3.0, 0.0}));

  // Ray family: the complement is a thin tongue around the positive x-axis,
  // so points well above it sit inside the domain.
  const FamilySolution fam3 = solve_family3(0.3).back();
  const double apex = fam3.h + fam3.a / fam3.b;
  CHECK(point_outside_domain(fam3.spec, Complex{apex + 3.0, 0.0}));
  CHECK(!point_outside_domain(fam3.spec, Complex{0.0, 5.0}));
  CHECK(!point_outside_domain(fam3.spec, Complex{apex - 1.0, 0.0}));
}

TEST_CASE("derive_distribution: family 1 reduces to pi times the Dirac mass at 0") {
  const FamilySolution fam1 = solve_family1(1.0);
  const QuadratureDistribution dist = derive_distribution(fam1.spec, kTight);
  REQUIRE(dist.points.size() == 1);
  REQUIRE(dist.points[0].weights.size() == 1);
  CHECK(dist.segments.empty());
  CHECK(abs(dist.points[0].beta) < 1e-13);
  CHECK(abs(dist.points[0].weights[0] - Complex{kPi, 0.0}) < 1e-10);
}

TEST_CASE("derive_distribution: empty for pure polynomials") {
  CHECK(derive_distribution(identity_spec(), kTight).empty());
}

TEST_CASE("derive_distribution: simple-pole closed form alpha00 = pi conj(a) psi'(conj b)") {
  QuadraticPoly q{{0, 0}, {1, 0}, {0, 0}};
  const Complex coeff{0.1, 0.0};
  PoleGroup pole{I, {coeff}};
  ConformalMapSpec spec(q, {pole}, {});
  const QuadratureDistribution dist = derive_distribution(spec, kTight);
  REQUIRE(dist.points.size() == 1);
  const Complex expected = kPi * std::conj(coeff) * eval_map_derivative(spec, -I);
  CHECK(abs(dist.points[0].weights[0] - expected) < 1e-10);
  CHECK(abs(dist.points[0].beta - eval_map(spec, -I)) < 1e-14);
}

TEST_CASE("derive_distribution: random simple poles match the closed form") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  std::uniform_real_distribution<double> im(0.4, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    QuadraticPoly q{{re(rng), re(rng)}, {1.0, re(rng)}, {re(rng), re(rng)}};
    const Complex b{re(rng), im(rng)};
    const Complex a{re(rng) * 0.2, re(rng) * 0.2};
    if (abs(a) < 1e-3) continue;
    ConformalMapSpec spec(q, {PoleGroup{b, {a}}}, {});
    const QuadratureDistribution dist = derive_distribution(spec, kTight);
    const Complex expected = kPi * std::conj(a) * eval_map_derivative(spec, std::conj(b));
    CHECK(abs(dist.points[0].weights[0] - expected) < 1e-9 * (1.0 + abs(expected)));
  }
}

TEST_CASE("evaluate_distribution: point mass, empty, and segment antiderivative") {
  QuadratureDistribution point_pi;
  point_pi.points.push_back(PointNode{{0, 0}, {Complex{kPi, 0.0}}});
  const TestFunction f{3.0 * I, 3};
  // pi * (0 - 3i)^-3 = -i pi / 27.
  const Complex expected = -I * kPi / 27.0;
  CHECK(abs(evaluate_distribution(point_pi, f) - expected) < 1e-15);
  CHECK(abs(expected - Complex{0.0, -0.116355}) < 1e-6);

  CHECK(evaluate_distribution(QuadratureDistribution{}, f) == Complex{0, 0});

  QuadratureDistribution seg;
  seg.segments.push_back(SegmentNode{I, 2.0 * I, Complex{1.0, 0.0}});
  const TestFunction g{Complex{10.0, 0.0}, 3};
  auto anti = [&](Complex z) { return -0.5 / ((z - g.z0) * (z - g.z0)); };
  CHECK(abs(evaluate_distribution(seg, g) - (anti(2.0 * I) - anti(I))) < 1e-12);
}

TEST_CASE("evaluate_distribution: linearity in the test function") {
  const FamilySolution fam1 = solve_family1(0.5);
  const QuadratureDistribution dist = derive_distribution(fam1.spec, kTight);
  const TestFunction f{3.0 * I, 3};
  const TestFunction g{Complex{2.0, 4.0}, 5};
  const Complex sum = evaluate_distribution(dist, f) + evaluate_distribution(dist, g);
  // Point-only distribution: T(f) + T(g) assembled from the same weights.
  Complex combined{0.0, 0.0};
  for (const PointNode& node : dist.points) {
    for (std::size_t j = 0; j < node.weights.size(); ++j) {
      combined += node.weights[j] * (f.derivative(static_cast<int>(j), node.beta) +
                                     g.derivative(static_cast<int>(j), node.beta));
    }
  }
  CHECK(abs(sum - combined) < 1e-15);
}

TEST_CASE("evaluate_distribution: pole-on-node guard") {
  QuadratureDistribution dist;
  dist.points.push_back(PointNode{{0, 0}, {Complex{kPi, 0.0}}});
  try {
    (void)evaluate_distribution(dist, TestFunction{{0, 0}, 3});
    FAIL("expected NodeAtPole");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NodeAtPole);
  }
}

TEST_CASE("boundary_quadrature_integral: family 1 quadrature identity") {
  const FamilySolution fam1 = solve_family1(1.0);
  const TestFunction f{3.0 * I, 3};
  const Complex expected = -I * kPi / 27.0;  // pi * f(0)
  const Complex got = boundary_quadrature_integral(fam1.spec, f, kTight);
  CHECK(abs(got - expected) < 1e-8 * abs(expected));
}

TEST_CASE("boundary_quadrature_integral: the half-plane is a null QD") {
  const ConformalMapSpec id = identity_spec();
  for (int k : {3, 4, 5}) {
    CHECK(abs(boundary_quadrature_integral(id, TestFunction{I, k}, kTight)) < 1e-10);
    CHECK(abs(boundary_quadrature_integral(id, TestFunction{Complex{1.5, 2.0}, k}, kTight)) <
          1e-10);
  }
}

TEST_CASE("boundary_quadrature_integral: two-route identity with a double pole") {
  const ConformalMapSpec spec = double_pole_spec();
  const QuadratureDistribution dist = derive_distribution(spec, kTight);
  REQUIRE(dist.points.size() == 1);
  REQUIRE(dist.points[0].weights.size() == 2);
  const TestFunction f{4.0 * I, 3};
  const Complex via_T = evaluate_distribution(dist, f);
  const Complex via_line = boundary_quadrature_integral(spec, f, kTight);
  CHECK(abs(via_T - via_line) < 1e-9 * (1.0 + abs(via_T)));
}

TEST_CASE("boundary_quadrature_integral: two-route identity with a segment chain") {
  const ConformalMapSpec spec = chain_spec();
  const QuadratureDistribution dist = derive_distribution(spec, kTight);
  REQUIRE(dist.segments.size() == 1);
  const TestFunction f{6.0 * I, 3};
  const Complex via_T = evaluate_distribution(dist, f);
  const Complex via_line = boundary_quadrature_integral(spec, f, kTight);
  CHECK(abs(via_T - via_line) < 1e-9 * (1.0 + abs(via_T)));
}

TEST_CASE("boundary_quadrature_integral: ray family against its distribution") {
  const FamilySolution fam3 = solve_family3(0.3).back();
  const QuadratureDistribution dist = derive_distribution(fam3.spec, kTight);
  const double apex = fam3.h + fam3.a / fam3.b;
  const TestFunction f{Complex{apex + 2.7, 0.0}, 4};
  const Complex via_T = evaluate_distribution(dist, f);
  const Complex via_line = boundary_quadrature_integral(fam3.spec, f, kTight);
  CHECK(abs(via_T - via_line) < 1e-7 * abs(via_T));
}

TEST_CASE("boundary_quadrature_integral: inadmissible poles are rejected by the screen") {
  const FamilySolution fam1 = solve_family1(1.0);
  CHECK_THROWS_AS(
      (void)boundary_quadrature_integral(fam1.spec, TestFunction{-5.0 * I, 3}, kTight), Error);

  // For the ray family even a high point is inside the domain.
  const FamilySolution fam3 = solve_family3(0.3).back();
  CHECK_THROWS_AS(
      (void)boundary_quadrature_integral(fam3.spec, TestFunction{5.0 * I, 4}, kTight), Error);
}

TEST_CASE("pullback_area_integral: null QD baseline and oracle agreement") {
  // k = 4 keeps the R = 500 truncation tail well under the tolerance.
  ToleranceSpec tol{1e-4, 1e-6, 4000};
  const Complex null_val =
      pullback_area_integral(identity_spec(), TestFunction{I, 4}, 500.0, tol);
  CHECK(abs(null_val) < 1e-4);

  const FamilySolution fam1 = solve_family1(1.0);
  const TestFunction f{3.0 * I, 5};
  ToleranceSpec tight{1e-7, 1e-7, 4000};
  const Complex area = pullback_area_integral(fam1.spec, f, 500.0, tight);
  const Complex line = boundary_quadrature_integral(fam1.spec, f, kTight);
  CHECK(abs(area - line) < 1e-4 * abs(line));
}

TEST_CASE("pullback_area_integral: linearity") {
  const FamilySolution fam1 = solve_family1(1.0);
  ToleranceSpec tol{1e-6, 1e-6, 4000};
  const TestFunction f{3.0 * I, 5};
  const TestFunction g{Complex{2.0, 4.0}, 5};
  const Complex lf = pullback_area_integral(fam1.spec, f, 200.0, tol);
  const Complex lg = pullback_area_integral(fam1.spec, g, 200.0, tol);
  // Sum of integrals vs the closed boundary values of the sum.
  const Complex bf = boundary_quadrature_integral(fam1.spec, f, kTight);
  const Complex bg = boundary_quadrature_integral(fam1.spec, g, kTight);
  CHECK(abs((lf + lg) - (bf + bg)) < 1e-5 * (1.0 + abs(bf + bg)));
}

TEST_CASE("pullback_area_integral: truncation guard fires when the tail dominates") {
  const FamilySolution fam1 = solve_family1(1.0);
  // Linear-growth map with k = 3 has an O(1/R) tail bound: 1e-4 absolute
  // is not certifiable even at R = 500.
  ToleranceSpec tol{1e-4, 1e-6, 4000};
  try {
    (void)pullback_area_integral(fam1.spec, TestFunction{3.0 * I, 3}, 500.0, tol);
    FAIL("expected TruncationDominates");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TruncationDominates);
  }
}

TEST_CASE("verify_quadrature_identity: parabola family across k") {
  const FamilySolution fam2 = solve_family2(0.05);
  const QuadratureDistribution dist = derive_distribution(fam2.spec, kTight);
  // Trace maximum height is small; poles well above it are admissible.
  std::vector<TestFunction> fs;
  for (int k : {3, 4, 5}) fs.push_back(TestFunction{Complex{0.4, 2.0}, k});
  fs.push_back(TestFunction{Complex{-1.0, 3.0}, 3});
  fs.push_back(TestFunction{Complex{0.0, 5.0}, 4});
  ToleranceSpec tol = kTight;
  tol.rel_tol = 1e-7;
  const IdentityReport report = verify_quadrature_identity(fam2.spec, dist, fs, tol);
  CHECK(report.pass);
  for (const IdentityRecord& rec : report.records) {
    CHECK(rec.rel_gap < 1e-7);
  }
}

TEST_CASE("verify_quadrature_identity: null distribution on the half-plane") {
  const ConformalMapSpec id = identity_spec();
  const QuadratureDistribution dist = derive_distribution(id, kTight);
  std::vector<TestFunction> fs = {
      TestFunction{I, 3}, TestFunction{2.0 * I, 4}, TestFunction{Complex{1.0, 1.0}, 5}};
  const IdentityReport report = verify_quadrature_identity(id, dist, fs, kTight);
  for (const IdentityRecord& rec : report.records) {
    CHECK(abs(rec.boundary_integral) < 1e-8);
    CHECK(rec.t_of_f == Complex{0, 0});
  }
}

TEST_CASE("cauchy_kernel: algebraic cancellation at z = a and z = b") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  const Complex a{1.0, -0.5};
  const Complex b{-2.0, 1.5};
  for (int trial = 0; trial < 100; ++trial) {
    Complex zeta{coord(rng), coord(rng)};
    if (std::min(abs(zeta - a), abs(zeta - b)) < 1e-6) continue;
    CHECK(abs(cauchy_kernel(zeta, a, a, b)) < 1e-14);
    CHECK(abs(cauchy_kernel(zeta, b, a, b)) < 1e-14);
  }
}

TEST_CASE("cauchy_kernel: cubic decay with a stable |K| |zeta|^3 limit") {
  const Complex z{1.0, 2.0};
  const Complex a{-1.0, 0.0};
  const Complex b{0.0, 0.5};
  const double limit = abs((z - a) * (z - b)) / kPi;
  double prev = 0.0;
  for (int m = 2; m <= 6; ++m) {
    const Complex zeta = std::pow(10.0, m) * Complex{1.0, 1.0};
    const double scaled = abs(cauchy_kernel(zeta, z, a, b)) * std::pow(abs(zeta), 3.0);
    CHECK(scaled == doctest::Approx(limit).epsilon(0.05));
    if (m > 2) CHECK(scaled == doctest::Approx(prev).epsilon(0.05));
    prev = scaled;
  }
}

TEST_CASE("cauchy_kernel: coincident auxiliary points are rejected") {
  try {
    (void)cauchy_kernel({1, 1}, {0, 0}, {2, 0}, {2, 0});
    FAIL("expected CoincidentAuxPoints");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CoincidentAuxPoints);
  }
}

TEST_CASE("cauchy_transform_compact: unit-disk indicator has transform -1/z outside") {
  const int n = 512;
  auto disk = [](Complex zeta) {
    return abs(zeta) <= 1.0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  };
  const CompactDensity g = CompactDensity::from_function({-1.0, -1.0}, {1.0, 1.0}, n, n, disk);
  const Complex got = cauchy_transform_compact(g, {3.0, 0.0}, kTight);
  // Mean-value property of the Cauchy kernel over the disk: C(z) = -1/z.
  // The staircase boundary of the indicator limits the midpoint rule to
  // O(1/n) accuracy.
  CHECK(abs(got - Complex{-1.0 / 3.0, 0.0}) < 5e-3);

  const CompactDensity zero = CompactDensity::from_function(
      {-1.0, -1.0}, {1.0, 1.0}, 32, 32, [](Complex) { return Complex{0.0, 0.0}; });
  CHECK(cauchy_transform_compact(zero, {3.0, 0.0}, kTight) == Complex{0, 0});
}

TEST_CASE("cauchy_transform_compact: linearity in the density") {
  auto g1 = [&](Complex zeta) { return Complex{zeta.real(), 0.3 * zeta.imag()}; };
  auto g2 = [&](Complex zeta) { return std::exp(-std::norm(zeta)) * Complex{0.5, 1.0}; };
  const CompactDensity d1 = CompactDensity::from_function({-1, -1}, {1, 1}, 64, 64, g1);
  const CompactDensity d2 = CompactDensity::from_function({-1, -1}, {1, 1}, 64, 64, g2);
  const CompactDensity dsum = CompactDensity::from_function(
      {-1, -1}, {1, 1}, 64, 64, [&](Complex zeta) { return g1(zeta) + g2(zeta); });
  const Complex z{2.5, 1.0};
  const Complex lhs = cauchy_transform_compact(dsum, z, kTight);
  const Complex rhs =
      cauchy_transform_compact(d1, z, kTight) + cauchy_transform_compact(d2, z, kTight);
  CHECK(abs(lhs - rhs) < 1e-10);
}

TEST_CASE("CompactDensity: Richardson estimate tracks the midpoint error") {
  auto smooth = [](Complex zeta) { return Complex{std::exp(-std::norm(zeta)), 0.0}; };
  const Complex z{3.0, 0.5};
  auto kernel = [&](Complex zeta) { return 1.0 / (zeta - z); };
  const CompactDensity coarse = CompactDensity::from_function({-1, -1}, {1, 1}, 32, 32, smooth);
  const CompactDensity fine = CompactDensity::from_function({-1, -1}, {1, 1}, 256, 256, smooth);
  const auto coarse_sum = coarse.integrate(kernel);
  const auto fine_sum = fine.integrate(kernel);
  const double true_err = abs(coarse_sum.value - fine_sum.value);
  // Order-of-magnitude indicator for a smooth density: conservative but
  // not wildly so, and shrinking under refinement.
  CHECK(coarse_sum.error_estimate > 0.3 * true_err);
  CHECK(coarse_sum.error_estimate < 100.0 * true_err + 1e-12);
  CHECK(fine_sum.error_estimate < coarse_sum.error_estimate);
}

TEST_CASE("cauchy_transform_compact: interior evaluation is rejected") {
  const CompactDensity g = CompactDensity::from_function(
      {-1, -1}, {1, 1}, 16, 16, [](Complex) { return Complex{1.0, 0.0}; });
  try {
    (void)cauchy_transform_compact(g, {0.2, 0.3}, kTight);
    FAIL("expected InsideSupport");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsideSupport);
  }
}

TEST_CASE("generalized_cauchy_transform: zero density and constant-density identity") {
  const CompactDensity zero = CompactDensity::from_function(
      {-1, -1}, {1, 1}, 16, 16, [](Complex) { return Complex{0.0, 0.0}; });
  CHECK(generalized_cauchy_transform(zero, {3, 0}, {5, 0}, {0, 7}, kTight) == Complex{0, 0});

  // For any density the generalized transform equals the plain transform
  // plus the two auxiliary-point corrections with the same density.
  auto bump = [](Complex zeta) {
    return Complex{std::exp(-2.0 * std::norm(zeta)), 0.1 * zeta.real()};
  };
  const CompactDensity g = CompactDensity::from_function({-1, -1}, {1, 1}, 128, 128, bump);
  const Complex z{4.0, 1.0}, a{6.0, 0.0}, b{0.0, 6.0};
  const Complex lhs = generalized_cauchy_transform(g, z, a, b, kTight);
  const Complex plain = cauchy_transform_compact(g, z, kTight);
  const Complex corr_a = cauchy_transform_compact(g, a, kTight);
  const Complex corr_b = cauchy_transform_compact(g, b, kTight);
  const Complex rhs = plain + (z - b) / (b - a) * corr_a + (z - a) / (a - b) * corr_b;
  CHECK(abs(lhs - rhs) < 1e-11);
}

TEST_CASE("generalized_cauchy_transform: conjugation symmetry") {
  auto density = [](Complex zeta) { return Complex{zeta.real() + 0.2, zeta.imag() - 0.1}; };
  const CompactDensity g = CompactDensity::from_function({-1, -0.5}, {1, 1.5}, 64, 64, density);
  // Reflected density on the reflected rectangle.
  auto refl = [&](Complex zeta) { return std::conj(density(std::conj(zeta))); };
  const CompactDensity gr = CompactDensity::from_function({-1, -1.5}, {1, 0.5}, 64, 64, refl);
  const Complex z{3.0, 1.0}, a{5.0, 2.0}, b{-4.0, 3.0};
  const Complex lhs =
      generalized_cauchy_transform(gr, std::conj(z), std::conj(a), std::conj(b), kTight);
  const Complex rhs = std::conj(generalized_cauchy_transform(g, z, a, b, kTight));
  CHECK(abs(lhs - rhs) < 1e-12);
}

TEST_CASE("generalized Cauchy transform: discrete d-bar (Pompeiu) identity") {
  // Smooth bump supported inside [-1,1]^2; Q is a square containing the
  // whole support, so the contour stays in the clean far field.
  auto bump = [](Complex zeta) {
    const double r2 = std::norm(zeta);
    return r2 >= 1.0 ? Complex{0.0, 0.0}
                     : Complex{std::exp(-1.0 / (1.0 - r2)), 0.3 * std::exp(-2.0 / (1.0 - r2))};
  };
  const int n = 256;
  const CompactDensity g = CompactDensity::from_function({-1, -1}, {1, 1}, n, n, bump);
  const Complex a{4.0, 0.5}, b{-3.5, 2.0};

  // Contour integral of C_K^g over the square |Re|, |Im| <= 2.
  const std::array<Complex, 5> corners = {Complex{2, -2}, Complex{2, 2}, Complex{-2, 2},
                                          Complex{-2, -2}, Complex{2, -2}};
  Complex loop{0.0, 0.0};
  ToleranceSpec edge_tol{1e-9, 1e-9, 2000};
  for (int e = 0; e < 4; ++e) {
    loop += integrate_segment(
        [&](Complex z) { return generalized_cauchy_transform(g, z, a, b, kTight); }, corners[e],
        corners[e + 1], edge_tol);
  }
  const Complex mass = g.integrate([](Complex) { return Complex{1.0, 0.0}; }).value;
  const Complex expected = -2.0 * I * mass;
  CHECK(abs(loop - expected) < 1e-3 * abs(expected));
}

TEST_CASE("log_to_segments: dipole, telescoping, and reconstruction") {
  const std::array<Complex, 2> dipole = {Complex{1, 0}, Complex{-1, 0}};
  const std::array<Complex, 2> nodes2 = {I, 2.0 * I};
  const auto c1 = log_to_segments(dipole, nodes2);
  REQUIRE(c1.size() == 1);
  CHECK(abs(c1[0] - Complex{1, 0}) < 1e-15);

  const std::array<Complex, 3> gammas = {Complex{1, 0}, Complex{1, 0}, Complex{-2, 0}};
  const std::array<Complex, 3> nodes3 = {I, 2.0 * I, Complex{1.0, 1.0}};
  const auto c2 = log_to_segments(gammas, nodes3);
  REQUIRE(c2.size() == 2);
  CHECK(abs(c2[0] - Complex{1, 0}) < 1e-15);
  CHECK(abs(c2[1] - Complex{2, 0}) < 1e-15);

  try {
    const std::array<Complex, 2> badg = {Complex{1, 0}, Complex{-0.5, 0}};
    (void)log_to_segments(badg, nodes2);
    FAIL("expected NonzeroTotalCharge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonzeroTotalCharge);
  }
}

TEST_CASE("log_to_segments: log sum equals segment sum off the chain") {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  std::uniform_real_distribution<double> im(0.5, 3.0);
  std::uniform_real_distribution<double> wre(-8.0, 8.0);
  std::uniform_real_distribution<double> wim(-8.0, 8.0);
  for (int config = 0; config < 20; ++config) {
    const std::size_t m = 3 + config % 3;  // 3..5 nodes
    std::vector<Complex> nodes, gammas;
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
      nodes.emplace_back(re(rng), im(rng));
      if (i + 1 == m) {
        gammas.push_back(-total);
      } else {
        const Complex gamma{re(rng), re(rng)};
        gammas.push_back(gamma);
        total += gamma;
      }
    }
    const auto chain = log_to_segments(gammas, nodes);
    // The principal-branch log sum equals the segment sum off the cut
    // structure: the chain itself plus the leftward branch-cut shadow at
    // chain heights (inside the shadow the two sides differ by 2 pi i
    // times a partial charge).
    double im_lo = 1e300, im_hi = -1e300, re_hi = -1e300;
    for (const Complex& d : nodes) {
      im_lo = std::min(im_lo, d.imag());
      im_hi = std::max(im_hi, d.imag());
      re_hi = std::max(re_hi, d.real());
    }
    int tested = 0;
    while (tested < 50) {
      const Complex w{wre(rng), wim(rng)};
      bool ok = true;
      if (w.imag() > im_lo - 0.05 && w.imag() < im_hi + 0.05 && w.real() < re_hi + 0.05) {
        ok = false;  // inside the shadow band
      }
      for (const Complex& d : nodes) {
        if (abs(w - d) < 0.1) ok = false;
      }
      if (!ok) continue;
      Complex log_sum{0.0, 0.0};
      for (std::size_t i = 0; i < m; ++i) log_sum += gammas[i] * std::log(w - nodes[i]);
      Complex seg_sum{0.0, 0.0};
      for (std::size_t k = 0; k + 1 < m; ++k) {
        seg_sum += chain[k] * segment_log_term(nodes[k], nodes[k + 1], w);
      }
      CHECK(abs(log_sum - seg_sum) < 1e-12 * (1.0 + abs(log_sum)));
      ++tested;
    }
  }
}

TEST_CASE("schwarz_residue: unit residue at the origin for all three families") {
  const FamilySolution members[] = {solve_family1(1.0), solve_family2(0.05),
                                    solve_family3(0.3).back()};
  for (const FamilySolution& sol : members) {
    const SchwarzResidue res = schwarz_residue(sol.spec, 0, kTight);
    CHECK(abs(res.location) < 1e-10);
    CHECK(abs(res.residue - Complex{1, 0}) < 1e-10);
  }
}

TEST_CASE("schwarz_residue: contour-radius independence") {
  const FamilySolution fam1 = solve_family1(1.0);
  const SchwarzResidue r1 = schwarz_residue(fam1.spec, 0, kTight, 0.2);
  const SchwarzResidue r2 = schwarz_residue(fam1.spec, 0, kTight, 0.4);
  CHECK(abs(r1.residue - r2.residue) < 1e-8);
}

TEST_CASE("schwarz_residue: radius collisions are rejected") {
  const FamilySolution fam1 = solve_family1(1.0);
  // The pole of psi sits at distance 2b from the contour center.
  CHECK_THROWS_AS((void)schwarz_residue(fam1.spec, 0, kTight, 5.0), Error);
  CHECK_THROWS_AS((void)schwarz_residue(fam1.spec, 5, kTight), Error);
}
