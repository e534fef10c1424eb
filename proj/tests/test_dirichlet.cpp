#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "singpot/dirichlet.hpp"

using namespace singpot;

namespace {

BoundaryData from_function(double (*f)(const Point&), int n) {
  BoundaryData d;
  d.phi = f;
  for (int k = 0; k < n; ++k) d.tau.push_back(f);
  return d;
}

}  // namespace

TEST_CASE("matching validation") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  auto good = from_function([](const Point& p) { return p[2]; }, 1);
  CHECK_NOTHROW(good.check_matching(dom));

  BoundaryData bad;
  bad.phi = [](const Point&) { return 1.0; };
  bad.tau = {[](const Point&) { return 0.0; }};
  CHECK_THROWS_AS(bad.check_matching(dom), PreconditionError);
}

TEST_CASE("ball Green's function") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  const Point xi{0.3, 0.2, 0.4};

  // vanishes on the sphere patch
  for (const auto& ang : {std::pair{0.9, 0.7}, std::pair{0.4, 2.2}, std::pair{1.2, 5.1}}) {
    const Point x = spherical_map(1.0, {ang.first, ang.second}, {0, 0, 0}, 3);
    CHECK(std::abs(ball_green_function(x, xi, dom)) < 1e-8);
  }
  // vanishes exactly on the hyperplane
  CHECK(ball_green_function({0.0, 0.5, 0.3}, xi, dom) == 0.0);

  // symmetric in its arguments
  for (const auto& pr :
       {std::pair{Point{0.2, 0.3, 0.1}, Point{0.5, 0.1, 0.35}},
        std::pair{Point{0.4, 0.15, -0.2}, Point{0.1, 0.5, 0.3}}}) {
    const double a = ball_green_function(pr.first, pr.second, dom);
    const double b = ball_green_function(pr.second, pr.first, dom);
    CHECK(a == doctest::Approx(b).epsilon(1e-8));
  }

  CHECK_THROWS_AS(ball_green_function({0.1, 0.1, 0.1}, {0, 0, 0}, dom),
                  DegenerateGeometryError);
  CHECK_THROWS_AS(ball_green_function({0.3, 0.2, 0.4}, xi, dom), DiagonalError);
}

TEST_CASE("reflected flat kernel paths") {
  // n = 1: both candidate forms coincide and match the finite-difference
  // limit of the reflected term
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  const Point xi{0.4, 0.3, 0.2};
  const Point s{0.0, 0.5, 0.25};
  const double kb = reflected_hyperplane_kernel(xi, s, 0, dom);
  const double ka = reflected_hyperplane_rescaled(xi, s, 0, dom);
  CHECK(kb == doctest::Approx(ka).epsilon(1e-12));

  KernelSet K(dom.params());
  const double rho2 = norm2(xi);
  const double scale = std::pow(1.0 / std::sqrt(rho2), 1.0 + 0.6);
  Point star(xi);
  for (auto& v : star) v /= rho2;
  auto fd_limit = [&](double d) {
    const double h = 1e-6;
    Point sp = s, sm = s;
    sp[0] = d + h;
    sm[0] = d - h;
    return std::pow(d, 0.6) * scale * (K.fundamental(sp, star) - K.fundamental(sm, star)) /
           (2 * h);
  };
  CHECK(kb == doctest::Approx(fd_limit(1e-4)).epsilon(1e-3));

  // n = 2: the reflected-pole form passes the finite-difference oracle, the
  // alternative argument scaling does not; the solver therefore uses the
  // reflected-pole path.
  OctantBallDomain dom2(1.0, SingularParams(3, {0.3, 0.4}));
  const double kb2 = reflected_hyperplane_kernel(xi, s, 0, dom2);
  const double ka2 = reflected_hyperplane_rescaled(xi, s, 0, dom2);
  KernelSet K2(dom2.params());
  const double scale2 = std::pow(1.0 / std::sqrt(rho2), 1.0 + 2.0 * (0.3 + 0.4));
  auto fd_limit2 = [&](double d) {
    const double h = 1e-6;
    Point sp = s, sm = s;
    sp[0] = d + h;
    sm[0] = d - h;
    return std::pow(d, 0.6) * std::pow(s[1], 0.8) * scale2 *
           (K2.fundamental(sp, star) - K2.fundamental(sm, star)) / (2 * h);
  };
  CHECK(kb2 == doctest::Approx(fd_limit2(1e-4)).epsilon(1e-3));
  CHECK(std::abs(ka2 - kb2) / std::abs(kb2) > 0.05);  // literal form fails the oracle
}

TEST_CASE("ball solver: exact data reproduction") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));

  auto zero = from_function([](const Point&) { return 0.0; }, 1);
  CHECK(solve_dirichlet_ball(zero, {0.3, 0.2, 0.1}, dom, 24).value == 0.0);

  auto one = from_function([](const Point&) { return 1.0; }, 1);
  auto coord = from_function([](const Point& p) { return p[2]; }, 1);
  for (const Point& xi : {Point{0.3, 0.1, 0.2}, Point{0.5, 0.4, 0.3}, Point{0.2, 0.2, -0.5}}) {
    CHECK(solve_dirichlet_ball(one, xi, dom, 48).value ==
          doctest::Approx(1.0).epsilon(1e-4));
    // u = x3 solves the operator and matches the data, so the formula must
    // reproduce it
    CHECK(solve_dirichlet_ball(coord, xi, dom, 48).value ==
          doctest::Approx(xi[2]).epsilon(1e-4));
  }

  // degraded-accuracy flag near the boundary
  const auto res = solve_dirichlet_ball(one, {0.97, 0.1, 0.1}, dom, 24);
  CHECK(res.degraded);
  CHECK(res.flat_kernel_path == "reflected-pole");
  CHECK_THROWS_AS(solve_dirichlet_ball(one, {1.5, 0.1, 0.1}, dom, 24), PreconditionError);
}

TEST_CASE("general pipeline agrees with the explicit formula") {
  OctantBallDomain dom(1.0, SingularParams(3, {0.3}));
  auto data = from_function([](const Point& p) { return p[2] * p[2] + 0.5 * p[0]; }, 1);
  data.check_matching(dom);

  GeneralSolver gen(dom, data, 24);
  for (const Point& xi : {Point{0.3, 0.1, 0.2}, Point{0.45, 0.35, 0.25}}) {
    const double ug = gen.evaluate(xi).value;
    const double ub = solve_dirichlet_ball(data, xi, dom, 48).value;
    CHECK(ug == doctest::Approx(ub).epsilon(2e-2));
  }

  // the Green correction vanishes on the ball geometry (the ball Green
  // function is zero at the collocation nodes)
  CHECK(std::abs(gen.green_correction({0.25, 0.2, 0.15}, {0.4, 0.3, 0.1})) < 1e-10);

  // zero data solves to exactly zero through the whole pipeline
  auto zero = from_function([](const Point&) { return 0.0; }, 1);
  GeneralSolver gz(dom, zero, 16);
  CHECK(gz.evaluate({0.3, 0.2, 0.1}).value == 0.0);
}
