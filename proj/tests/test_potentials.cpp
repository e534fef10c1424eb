#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "singpot/potentials.hpp"

using namespace singpot;

namespace {

SurfaceDensity sampled(const std::shared_ptr<const QuadratureRule>& rule,
                       double (*f)(const Point&)) {
  SurfaceDensity d{rule, {}};
  d.values.reserve(rule->size());
  for (const auto& node : rule->nodes) d.values.push_back(f(node.x));
  return d;
}

double smooth_density(const Point& p) { return p[2] * p[2] + p[0]; }

}  // namespace

TEST_CASE("layer potentials: zero density and linearity") {
  SingularParams sp(3, {0.3});
  OctantBallDomain dom(1.0, sp);
  KernelSet K(sp);
  auto rule = std::make_shared<const QuadratureRule>(sphere_patch_rule(dom, 16));

  SurfaceDensity zero{rule, std::vector<double>(rule->size(), 0.0)};
  const Point x{0.3, 0.2, 0.1};
  CHECK(double_layer(zero, x, K) == 0.0);
  CHECK(simple_layer(zero, x, K) == 0.0);

  auto mu1 = sampled(rule, smooth_density);
  auto mu2 = sampled(rule, [](const Point& p) { return 1.0 + p[1]; });
  SurfaceDensity mix{rule, {}};
  for (int i = 0; i < rule->size(); ++i)
    mix.values.push_back(0.6 * mu1.values[i] - 1.7 * mu2.values[i]);
  const double combo = 0.6 * double_layer(mu1, x, K) - 1.7 * double_layer(mu2, x, K);
  CHECK(double_layer(mix, x, K) == doctest::Approx(combo).epsilon(1e-12));
}

TEST_CASE("density csv round-trip") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  auto rule = std::make_shared<const QuadratureRule>(sphere_patch_rule(dom, 8));
  auto dens = sampled(rule, smooth_density);
  const auto back = density_from_csv(density_to_csv(dens), rule);
  REQUIRE(back.values.size() == dens.values.size());
  for (std::size_t i = 0; i < dens.values.size(); ++i)
    CHECK(back.values[i] == dens.values[i]);  // 17 digits: bit-exact
}

TEST_CASE("gauss integral identities at moderate order") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  const auto gi = gauss_integral(dom, {0.3, 0.1, 0.2}, Region::Interior, 32);
  CHECK(std::abs(gi.layer - (gi.hyperplane - 1.0)) < 1e-6);
  const auto ge = gauss_integral(dom, {1.5, 0.3, 0.2}, Region::Exterior, 32);
  CHECK(std::abs(ge.layer - ge.hyperplane) < 1e-6);
  const Point xb = spherical_map(1.0, {0.8, 1.1}, {0, 0, 0}, 3);
  const auto gb = gauss_integral(dom, xb, Region::Boundary, 32);
  CHECK(std::abs(gb.layer - (gb.hyperplane - 0.5)) < 1e-4);
}

TEST_CASE("unit-density double layer at an interior point") {
  SingularParams sp(3, {0.3});
  OctantBallDomain dom(1.0, sp);
  KernelSet K(sp);
  auto rule = std::make_shared<const QuadratureRule>(sphere_patch_rule(dom, 48));
  SurfaceDensity one{rule, std::vector<double>(rule->size(), 1.0)};
  const Point x{0.3, 0.1, 0.2};
  const auto gi = gauss_integral(dom, x, Region::Interior, 48);
  CHECK(double_layer(one, x, K) == doctest::Approx(gi.hyperplane - 1.0).epsilon(1e-6));
}

TEST_CASE("simple layer continuity across the carrier") {
  SingularParams sp(3, {0.3});
  OctantBallDomain dom(1.0, sp);
  KernelSet K(sp);
  auto rule = std::make_shared<const QuadratureRule>(sphere_patch_rule(dom, 64));
  const auto rho = sampled(rule, smooth_density);

  // node in the middle of the patch, +-0.02R along the normal
  int pick = 0;
  for (int i = 0; i < rule->size(); ++i)
    if (rule->nodes[i].x[0] > rule->nodes[pick].x[0]) pick = i;
  const Point& t = rule->nodes[pick].x;
  const Point& nrm = rule->nodes[pick].normal;
  auto across = [&](double eps) {
    Point above(t), below(t);
    for (int i = 0; i < 3; ++i) {
      above[i] += eps * nrm[i];
      below[i] -= eps * nrm[i];
    }
    return std::make_pair(simple_layer(rho, above, K), simple_layer(rho, below, K));
  };
  // the difference across the carrier is a smooth O(eps) drift, no jump:
  // bounded at 0.02R and shrinking linearly with eps
  const auto [va, vb] = across(0.02);
  CHECK(std::abs(va - vb) <= 4e-2 * std::abs(va));
  const auto [va2, vb2] = across(0.01);
  CHECK(std::abs(va2 - vb2) <= 0.65 * std::abs(va - vb));
  Point probe(t);
  for (int i = 0; i < 3; ++i) probe[i] += 0.02 * nrm[i];
  CHECK(near_surface(*rule, probe));

  // far-field decay
  const double f1 = simple_layer(rho, {0.4, 0.3, 10.0}, K);
  const double f2 = simple_layer(rho, {0.4, 0.3, 100.0}, K);
  CHECK(std::abs(f2) < std::abs(f1));
  CHECK(std::log(std::abs(f1 / f2)) / std::log(10.0) > 0.5);  // negative slope
}

TEST_CASE("boundary operator: unit density, edges, transpose") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  BoundaryOperator op(dom, 20);
  const auto rule = op.rule_ptr();
  const int N = op.size();

  int pick = 0;
  for (int i = 0; i < N; ++i)
    if (rule->nodes[i].x[0] > rule->nodes[pick].x[0]) pick = i;

  // unit density interior limit equals i(t) - 1 (two computation paths)
  SurfaceDensity one{rule, std::vector<double>(N, 1.0)};
  const double wi = op.layer_limit(LayerKind::Double, one, pick, Side::Interior);
  CHECK(wi == doctest::Approx(op.i_value(pick) - 1.0).epsilon(1e-12));
  const auto gi = gauss_integral(dom, rule->nodes[pick].x, Region::Boundary, 40);
  CHECK(wi == doctest::Approx(gi.hyperplane - 1.0).epsilon(2e-2));

  // jump identities of the on-surface limits
  const auto mu = sampled(rule, smooth_density);
  const double li = op.layer_limit(LayerKind::Double, mu, pick, Side::Interior);
  const double le = op.layer_limit(LayerKind::Double, mu, pick, Side::Exterior);
  CHECK(le - li == doctest::Approx(mu.values[pick]).epsilon(1e-12));
  const double si = op.layer_limit(LayerKind::SimpleConormal, mu, pick, Side::Interior);
  const double se = op.layer_limit(LayerKind::SimpleConormal, mu, pick, Side::Exterior);
  CHECK(si - se == doctest::Approx(mu.values[pick]).epsilon(1e-12));

  // edge proximity: node nearest the hyperplane
  int edge = 0;
  for (int i = 0; i < N; ++i)
    if (rule->nodes[i].x[0] < rule->nodes[edge].x[0]) edge = i;
  CHECK_THROWS_AS(op.layer_limit(LayerKind::Double, mu, edge, Side::Interior),
                  EdgeProximityError);

  // discrete operators for the two density equations are weighted transposes
  for (int i : {0, 3, 11})
    for (int j : {2, 7, 17}) {
      const double wi_ = rule->nodes[i].w, wj_ = rule->nodes[j].w;
      const double d52 = op.operator_entry(EquationKind::SimpleLayerDensity, i, j) -
                         (i == j ? 1.0 : 0.0);
      const double d46 = op.operator_entry(EquationKind::DoubleLayerDensity, j, i) -
                         (i == j ? 1.0 : 0.0);
      CHECK(d52 == doctest::Approx(d46 * wj_ / wi_).epsilon(1e-13));
    }
}

TEST_CASE("nystrom solve: homogeneous, residual, reconstruction") {
  SingularParams sp(3, {0.3});
  OctantBallDomain dom(1.0, sp);
  BoundaryOperator op(dom, 24);
  const int N = op.size();

  const SurfaceDensity z = op.solve(EquationKind::SimpleLayerDensity,
                                    std::vector<double>(N, 0.0));
  for (double v : z.values) CHECK(v == 0.0);

  const Point xi0{0.3, 0.25, 0.2};
  std::vector<double> rhs(N);
  for (int i = 0; i < N; ++i) {
    const auto& node = op.rule().nodes[i];
    rhs[i] = 2.0 * op.kernels().double_layer(node.x, node.normal, xi0);
  }
  const SurfaceDensity rho = op.solve(EquationKind::SimpleLayerDensity, rhs);
  CHECK(op.last_residual() <= 1e-10);

  const double rho2 = norm2(xi0);
  const double scale = std::pow(1.0 / std::sqrt(rho2), 1.0 + 2.0 * 0.3);
  Point star(xi0);
  for (auto& v : star) v /= rho2;
  const Point x{0.5, 0.3, 0.1};
  const double vn = simple_layer(rho, x, op.kernels());
  const double want = -scale * op.kernels().fundamental(x, star);
  CHECK(vn == doctest::Approx(want).epsilon(5e-2));

  // the interior Dirichlet route: mu-equation and the on-node boundary values
  for (int i = 0; i < N; ++i) rhs[i] = 2.0 * op.kernels().fundamental(op.rule().nodes[i].x, xi0);
  const SurfaceDensity mu = op.solve(EquationKind::DoubleLayerDensity, rhs);
  int pick = 0;
  for (int i = 0; i < N; ++i)
    if (op.rule().nodes[i].x[0] > op.rule().nodes[pick].x[0]) pick = i;
  const double vi = op.layer_limit(LayerKind::Double, mu, pick, Side::Interior);
  CHECK(vi == doctest::Approx(-op.kernels().fundamental(op.rule().nodes[pick].x, xi0))
                  .epsilon(1e-10));
}

TEST_CASE("gauss integral identity for two singular coefficients, m = 4") {
  SingularParams sp(4, {0.2, 0.4});
  OctantBallDomain dom(1.0, sp);
  const auto gi = gauss_integral(dom, {0.3, 0.25, 0.2, 0.1}, Region::Interior, 20);
  CHECK(std::abs(gi.layer - (gi.hyperplane - 1.0)) < 1e-6);
  const auto ge = gauss_integral(dom, {0.8, 0.9, 0.5, 0.4}, Region::Exterior, 20);
  CHECK(std::abs(ge.layer - ge.hyperplane) < 1e-4);
}

TEST_CASE("nystrom on the quarter-sphere (n = 2)") {
  SingularParams sp(3, {0.3, 0.4});
  OctantBallDomain dom(1.0, sp);
  BoundaryOperator op(dom, 14);
  const int N = op.size();

  // unit-density interior limit against the hyperplane integral
  SurfaceDensity one{op.rule_ptr(), std::vector<double>(N, 1.0)};
  int pick = 0;
  double best = 0.0;
  for (int i = 0; i < N; ++i) {
    const double m = std::min(op.rule().nodes[i].x[0], op.rule().nodes[i].x[1]);
    if (m > best) {
      best = m;
      pick = i;
    }
  }
  const double wi = op.layer_limit(LayerKind::Double, one, pick, Side::Interior);
  CHECK(wi == doctest::Approx(op.i_value(pick) - 1.0).epsilon(1e-12));

  // the density solve reconstructs the reflected Green term
  const Point xi0{0.25, 0.3, 0.2};
  std::vector<double> rhs(N);
  for (int i = 0; i < N; ++i) {
    const auto& nd = op.rule().nodes[i];
    rhs[i] = 2.0 * op.kernels().double_layer(nd.x, nd.normal, xi0);
  }
  const SurfaceDensity rho = op.solve(EquationKind::SimpleLayerDensity, rhs);
  const double rho2 = norm2(xi0);
  const double scale = std::pow(1.0 / std::sqrt(rho2), 1.0 + 2.0 * (0.3 + 0.4));
  Point star(xi0);
  for (auto& v : star) v /= rho2;
  const Point x{0.35, 0.3, 0.15};
  const double vn = simple_layer(rho, x, op.kernels());
  const double want = -scale * op.kernels().fundamental(x, star);
  CHECK(vn == doctest::Approx(want).epsilon(2e-2));
}

TEST_CASE("boundary flux of regular solutions") {
  SingularParams sp(3, {0.3});
  OctantBallDomain dom(1.0, sp);
  auto kernels = std::make_shared<const KernelSet>(sp);

  // constant field: flux density vanishes identically
  BoundaryFluxField constant;
  constant.conormal = [](const Point&, const Point&) { return 0.0; };
  constant.flat_flux = [](int, const Point&) { return 0.0; };
  const auto f0 = total_boundary_flux(dom, constant, 16);
  CHECK(f0.flux == 0.0);

  // fundamental solution with an exterior pole
  const auto fp = total_boundary_flux(dom, pole_flux_field(kernels, {1.5, 0.5, 0.3}), 40);
  CHECK(std::abs(fp.flux) <= 1e-3 * fp.scale);
}
