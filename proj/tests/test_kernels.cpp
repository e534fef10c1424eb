#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "singpot/kernels.hpp"
#include "singpot/lauricella.hpp"

using namespace singpot;

TEST_CASE("SingularParams derived constants") {
  SingularParams sp(3, {0.3});
  CHECK(sp.alpha_bar() == doctest::Approx(1.2).epsilon(1e-15));
  CHECK(sp.kappa() > 0.0);
  SingularParams sp42(4, {0.2, 0.4});
  CHECK(sp42.alpha_bar() == doctest::Approx(1.0 + 0.8 + 0.6).epsilon(1e-15));
  CHECK_THROWS_AS(SingularParams(2, {0.3}), PreconditionError);
  CHECK_THROWS_AS(SingularParams(3, {}), PreconditionError);
  CHECK_THROWS_AS(SingularParams(3, {0.6}), PreconditionError);
  CHECK_THROWS_AS(SingularParams(3, {0.3, 0.2, 0.1, 0.4}), PreconditionError);
}

TEST_CASE("KernelGeometry invariants") {
  SingularParams sp(4, {0.2, 0.4});
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(0.0, 2.0);
  for (int t = 0; t < 300; ++t) {
    Point xi(4), x(4);
    for (int i = 0; i < 4; ++i) {
      xi[i] = (i < 2) ? U(rng) : U(rng) - 1.0;
      x[i] = (i < 2) ? U(rng) : U(rng) - 1.0;
    }
    if (dist2(xi, x) == 0.0) continue;
    const auto g = KernelGeometry::make(xi, x, sp);
    for (int k = 0; k < 2; ++k) {
      CHECK(g.sigma[k] <= 0.0);
      CHECK(g.omega[k] >= 0.0);
      CHECK(g.omega[k] < 1.0);
      CHECK(g.rk2[k] >= g.r2);
    }
  }
  CHECK_THROWS_AS(KernelGeometry::make({1, 1, 1, 1}, {1, 1, 1, 1}, sp), DiagonalError);
  CHECK_THROWS_AS(KernelGeometry::make({0, 1, 1, 1}, {0, 1, 1, 1}, sp), DegenerateGeometryError);
  CHECK_THROWS_AS(KernelGeometry::make({-0.1, 1, 1, 1}, {1, 1, 1, 1}, sp), PreconditionError);
}

TEST_CASE("fundamental solution vanishes on singular hyperplanes") {
  KernelSet K(SingularParams(3, {0.3}));
  CHECK(K.fundamental({1, 0, 0.5}, {0.0, 0.1, 0.6}) == 0.0);
  CHECK(K.fundamental({0.0, 0.2, 0.5}, {0.7, 0.1, 0.6}) == 0.0);
  KernelSet K42(SingularParams(4, {0.2, 0.4}));
  CHECK(K42.fundamental({1, 0.5, 0.2, 0.1}, {0.8, 0.0, 0.3, 0.6}) == 0.0);
}

TEST_CASE("fundamental solution symmetry") {
  KernelSet K(SingularParams(3, {0.3}));
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(0.05, 1.5);
  for (int t = 0; t < 50; ++t) {
    const Point xi{U(rng), U(rng), U(rng)};
    const Point x{U(rng), U(rng), U(rng)};
    const double a = K.fundamental(xi, x), b = K.fundamental(x, xi);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(a > 0.0);  // positivity, observed throughout the admissible range
  }
}

TEST_CASE("transformed representation equals the raw multi-series") {
  // admissible pairs must keep |sigma_1| < 1, i.e. 4 xi_1 x_1 < r^2
  SingularParams sp(3, {0.3});
  KernelSet K(sp);
  const Point xi{0.05, 0.0, 0.5};
  const Point x{0.04, 1.5, 0.6};
  const auto g = KernelGeometry::make(xi, x, sp);
  REQUIRE(std::abs(g.sigma[0]) < 1.0);
  FAParams fp{sp.alpha_bar(), {0.7}, {1.4}};
  const double raw = sp.kappa() * std::pow(g.r2, -sp.alpha_bar()) * g.xi_x_weight *
                     fa_direct(fp, {g.sigma[0]});
  CHECK(K.fundamental(xi, x) == doctest::Approx(raw).epsilon(1e-8));
}

TEST_CASE("far-field decay along a non-singular ray") {
  KernelSet K(SingularParams(3, {0.3}));
  const Point pole{0.5, 0.2, 0.3};
  const double t1 = 10.0, t2 = 1e4;
  const double q1 = K.fundamental(pole, {0.9, 0.7, t1});
  const double q2 = K.fundamental(pole, {0.9, 0.7, t2});
  const double slope = std::log(q1 / q2) / std::log(t2 / t1);
  CHECK(std::abs(slope - 2.0 * 1.2) < 0.05);
}

TEST_CASE("double-layer kernel against finite-difference conormal") {
  SingularParams sp(3, {0.3});
  KernelSet K(sp);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> U(0.1, 1.2);
  for (int t = 0; t < 30; ++t) {
    const Point xi{U(rng), U(rng), U(rng)};
    const Point x{U(rng), U(rng), U(rng)};
    if (dist2(xi, x) < 0.04) continue;
    Point nrm{U(rng), U(rng), U(rng)};
    const double len = norm(nrm);
    for (auto& v : nrm) v /= len;
    ScalarField f{[&](const Point& p) { return K.fundamental(p, x); }, nullptr};
    const double fd = conormal_derivative(f, xi, nrm, sp);
    CHECK(K.double_layer(xi, nrm, x) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("double-layer kernel vanishes toward the hyperplanes") {
  KernelSet K(SingularParams(3, {0.3}));
  const Point x{0.8, 0.4, 0.3};
  const Point nrm{0.0, 1.0, 0.0};
  double prev = 1e300;
  for (double e : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double v = std::abs(K.double_layer({e, 0.9, 0.2}, nrm, x));
    CHECK(v < prev);
    prev = v;
  }
  CHECK(K.double_layer({0.0, 0.9, 0.2}, nrm, x) == 0.0);
  CHECK(K.double_layer({0.5, 0.9, 0.2}, nrm, {0.0, 0.4, 0.3}) == 0.0);
}

TEST_CASE("weighted kernel bound near the diagonal") {
  // |K| r^{m-2} r^{(2-2a)} stays bounded on near-diagonal sphere pairs
  SingularParams sp(3, {0.3});
  KernelSet K(sp);
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> ang1(0.1, 1.4), ang2(0.1, 3.0), eps(1e-6, 1e-2);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::vector<double> a{ang1(rng), ang2(rng)};
    const std::vector<double> b{a[0] + eps(rng), a[1] + eps(rng)};
    const Point xi{std::cos(a[0]), std::sin(a[0]) * std::cos(a[1]),
                   std::sin(a[0]) * std::sin(a[1])};
    const Point x{std::cos(b[0]), std::sin(b[0]) * std::cos(b[1]),
                  std::sin(b[0]) * std::sin(b[1])};
    const auto g = KernelGeometry::make(xi, x, sp);
    const double v = std::abs(K.double_layer(xi, xi, x)) * g.r_pow_m2 * g.r_weight;
    worst = std::max(worst, v);
  }
  CHECK(worst < 10.0);
  CHECK(worst > 0.0);
}

TEST_CASE("conormal derivative") {
  SingularParams sp(3, {0.3});
  ScalarField cst{[](const Point&) { return 2.5; }, nullptr};
  CHECK(conormal_derivative(cst, {0.4, 0.2, 0.7}, {1, 0, 0}, sp) == doctest::Approx(0.0));

  ScalarField lin{[](const Point& p) { return p[0]; }, nullptr};
  const Point x{0.4, 0.2, 0.7};
  const double w = std::pow(x[0], 0.6);
  CHECK(conormal_derivative(lin, x, {1, 0, 0}, sp) == doctest::Approx(w).epsilon(1e-9));

  // ln(1/r) closed form vs finite differences
  const Point ctr{1.0, 0.6, 0.2};
  ScalarField logf{[&](const Point& p) { return -0.5 * std::log(dist2(p, ctr)); }, nullptr};
  const Point at{0.5, 0.3, 0.8};
  Point nrm{0.3, -0.5, 0.81};
  const double len = norm(nrm);
  for (auto& v : nrm) v /= len;
  double closed = 0.0;
  for (int i = 0; i < 3; ++i) closed += (ctr[i] - at[i]) / dist2(at, ctr) * nrm[i];
  closed *= std::pow(at[0], 0.6);
  CHECK(conormal_derivative(logf, at, nrm, sp) == doctest::Approx(closed).epsilon(1e-7));
}

TEST_CASE("operator residual of the fundamental solution") {
  SingularParams sp(3, {0.3});
  ScalarField one{[](const Point&) { return 1.0; }, nullptr};
  CHECK(pde_residual(one, {0.5, 0.4, 0.2}, sp, 1e-3) == 0.0);

  KernelSet K(sp);
  const Point pole{0.5, 0.2, 0.1};
  ScalarField f{[&](const Point& p) { return K.fundamental(pole, p); }, nullptr};
  const Point probe{1.1, 0.7, 0.9};
  const double r2 = pde_residual(f, probe, sp, 1e-2);
  const double r4 = pde_residual(f, probe, sp, 1e-4);
  CHECK(r4 <= 1e-5);
  CHECK(r2 / pde_residual(f, probe, sp, 1e-3) > 30.0);  // near O(h^2)

  CHECK_THROWS_AS(pde_residual(f, {0.001, 0.7, 0.9}, sp, 1e-2), PreconditionError);
}

TEST_CASE("hyperplane kernel equals the weighted flux limit") {
  SingularParams sp(3, {0.3});
  KernelSet K(sp);
  const Point p{0.7, 0.3, 0.4};
  const Point s{0.0, 0.5, 0.2};
  const double hk = K.hyperplane(p, s, 0);
  // numeric limit d^{2 alpha} dq/ds_1 at s_1 = d, d -> 0
  auto lim = [&](double d) {
    const double h = 1e-6;
    Point sp1 = s, sm = s;
    sp1[0] = d + h;
    sm[0] = d - h;
    return std::pow(d, 0.6) * (K.fundamental(sp1, p) - K.fundamental(sm, p)) / (2 * h);
  };
  CHECK(hk == doctest::Approx(lim(1e-4)).epsilon(1e-3));

  // n = 2: includes the reduced one-variable factor
  SingularParams sp2(3, {0.3, 0.4});
  KernelSet K2(sp2);
  const Point p2{0.7, 0.3, 0.4};
  const Point s2{0.0, 0.5, 0.2};
  auto lim2 = [&](double d) {
    const double h = 1e-6;
    Point spl = s2, sm = s2;
    spl[0] = d + h;
    sm[0] = d - h;
    return std::pow(d, 2 * 0.3) * std::pow(s2[1], 2 * 0.4) *
           (K2.fundamental(spl, p2) - K2.fundamental(sm, p2)) / (2 * h);
  };
  CHECK(K2.hyperplane(p2, s2, 0) == doctest::Approx(lim2(1e-4)).epsilon(1e-3));
}
