#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "singpot/geometry.hpp"

using namespace singpot;

TEST_CASE("spherical map basics") {
  const Point c{0.1, -0.2, 0.3};
  CHECK(spherical_map(0.0, {0.7, 1.9}, c, 3) == c);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(0.0, M_PI);
  for (int m : {3, 4, 5}) {
    for (int t = 0; t < 100; ++t) {
      std::vector<double> phi(m - 1);
      for (auto& v : phi) v = U(rng);
      phi.back() *= 2.0;
      const Point p = spherical_map(1.0, phi, Point(m, 0.0), m);
      CHECK(std::abs(norm2(p) - 1.0) < 1e-14);
    }
  }

  const Point p = spherical_map(1.0, {M_PI / 2, 0.0}, {0, 0, 0}, 3);
  CHECK(std::abs(p[0]) < 1e-15);
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(p[2]) < 1e-15);
}

TEST_CASE("angle inversion round-trip") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(0.05, M_PI - 0.05);
  for (int t = 0; t < 50; ++t) {
    const std::vector<double> phi{U(rng), U(rng) / 2};
    const Point p = spherical_map(2.0, phi, {0, 0, 0}, 3);
    const auto back = sphere_angles_of(p, 2.0);
    CHECK(back[0] == doctest::Approx(phi[0]).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(phi[1]).epsilon(1e-12));
  }
}

TEST_CASE("full sphere measure") {
  // n = 0 box: the tensor rule over the whole sphere reproduces the total
  // measure 2 pi^{m/2} / Gamma(m/2) R^{m-1}
  for (int m : {3, 4}) {
    const AngleBox box = sphere_angle_box(m, 0);
    std::vector<std::vector<double>> xs(m - 1), ws(m - 1);
    for (int d = 0; d < m - 1; ++d) gauss_legendre(32, box.lo[d], box.hi[d], xs[d], ws[d]);
    double area = 0.0;
    std::vector<int> idx(m - 1, 0);
    while (true) {
      std::vector<double> phi(m - 1);
      double w = 1.0;
      for (int d = 0; d < m - 1; ++d) {
        phi[d] = xs[d][idx[d]];
        w *= ws[d][idx[d]];
      }
      area += w * sphere_jacobian(1.5, phi, m);
      int d = m - 2;
      while (d >= 0 && ++idx[d] == 32) {
        idx[d] = 0;
        --d;
      }
      if (d < 0) break;
    }
    const double want = 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m) *
                        std::pow(1.5, m - 1);
    CHECK(area == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("patch areas") {
  SingularParams sp1(3, {0.3});
  OctantBallDomain half(1.0, sp1);
  CHECK(sphere_patch_rule(half, 32).total_weight() == doctest::Approx(2 * M_PI).epsilon(1e-8));
  CHECK(flat_patch_rule(half, 0, 32).total_weight() == doctest::Approx(M_PI).epsilon(1e-8));

  SingularParams sp2(3, {0.3, 0.4});
  OctantBallDomain quarter(1.0, sp2);
  CHECK(sphere_patch_rule(quarter, 32).total_weight() == doctest::Approx(M_PI).epsilon(1e-8));
  CHECK(flat_patch_rule(quarter, 0, 32).total_weight() ==
        doctest::Approx(M_PI / 2).epsilon(1e-8));
  CHECK(flat_patch_rule(quarter, 1, 32).total_weight() ==
        doctest::Approx(M_PI / 2).epsilon(1e-8));

  SingularParams sp42(4, {0.2, 0.4});
  OctantBallDomain dom42(2.0, sp42);
  CHECK(sphere_patch_rule(dom42, 16).total_weight() ==
        doctest::Approx(2 * M_PI * M_PI * 8 / 4).epsilon(1e-8));
  // flat patch: half of a 3-ball of radius 2
  CHECK(flat_patch_rule(dom42, 0, 16).total_weight() ==
        doctest::Approx(0.5 * 4.0 / 3.0 * M_PI * 8).epsilon(1e-8));
}

TEST_CASE("refinement convergence of patch areas") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  const double exact = 2 * M_PI;
  for (int q : {8, 16, 32}) {
    const double aq = sphere_patch_rule(dom, q).total_weight();
    const double a2q = sphere_patch_rule(dom, 2 * q).total_weight();
    CHECK(std::abs(a2q - aq) <= 1.5 * std::abs(aq - exact) + 5e-14);
    CHECK(std::abs(a2q - exact) <= std::abs(aq - exact) + 5e-14);
  }
}

TEST_CASE("node positions and normals") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3, 0.4}));
  const auto rule = sphere_patch_rule(dom, 16);
  for (const auto& node : rule.nodes) {
    CHECK(node.x[0] > 0.0);
    CHECK(node.x[1] > 0.0);
    CHECK(std::abs(norm(node.normal) - 1.0) < 1e-14);
    for (int i = 0; i < 3; ++i)
      CHECK(node.normal[i] == doctest::Approx(node.x[i] / 1.0).epsilon(1e-14));
    CHECK(node.w > 0.0);
  }
  const auto flat = flat_patch_rule(dom, 1, 16);
  for (const auto& node : flat.nodes) {
    CHECK(node.x[1] == 0.0);
    CHECK(node.x[0] > 0.0);
    CHECK(node.normal[1] == -1.0);
    CHECK(node.w > 0.0);
  }
}

TEST_CASE("csv round-trip") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  const auto rule = flat_patch_rule(dom, 0, 12);
  const auto back = rule_from_csv(rule_to_csv(rule));
  REQUIRE(back.size() == rule.size());
  for (int i = 0; i < rule.size(); ++i) {
    for (int d = 0; d < 3; ++d) {
      CHECK(back.nodes[i].x[d] == rule.nodes[i].x[d]);  // 17 digits: bit-exact
      CHECK(back.nodes[i].normal[d] == rule.nodes[i].normal[d]);
    }
    CHECK(back.nodes[i].w == rule.nodes[i].w);
  }
}

TEST_CASE("singular vertex rule") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  const Point v = spherical_map(1.0, {0.7, 2.1}, {0, 0, 0}, 3);
  const auto rule = sphere_patch_rule_singular(dom, v, 24);
  CHECK(rule.total_weight() == doctest::Approx(2 * M_PI).epsilon(1e-8));

  // integral of the weakly singular 1/r: Cauchy convergence under refinement
  auto integrate = [&](int order) {
    const auto r = sphere_patch_rule_singular(dom, v, order);
    double s = 0.0;
    for (const auto& node : r.nodes) s += node.w / std::sqrt(dist2(node.x, v));
    return s;
  };
  const double i16 = integrate(16), i24 = integrate(24), i32 = integrate(32);
  CHECK(std::abs(i32 - i24) < std::abs(i24 - i16) + 1e-12);
  CHECK(std::abs(i32 - i24) / i32 < 1e-6);
}
