#include "singpot/verify.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "singpot/config.hpp"
#include "singpot/dirichlet.hpp"
#include "singpot/lauricella.hpp"
#include "singpot/potentials.hpp"

namespace singpot {

namespace {

using Clock = std::chrono::steady_clock;

struct Part {
  double worst_ratio = 0.0;
  std::string note;

  void add(const std::string& label, double value, double limit) {
    worst_ratio = std::max(worst_ratio, value / limit);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g (limit %.1g)", note.empty() ? "" : "; ",
                  label.c_str(), value, limit);
    note += buf;
  }
};

double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// ----- 1. decomposition equivalence -----
CriterionResult c1_decomposition() {
  CriterionResult r{"decomposition-equivalence", false, 0, 0, 10.0, ""};
  std::mt19937 rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    FAParams p;
    p.a = uniform(rng, 0.5, 3.0);
    for (int k = 0; k < n; ++k) {
      p.b.push_back(uniform(rng, 0.2, 1.0));
      p.c.push_back(uniform(rng, 1.1, 3.0));
    }
    std::vector<double> y(n);
    const double scale = uniform(rng, 0.1, 0.4);
    double ysum = 0.0;
    for (double& v : y) {
      v = uniform(rng, 0.05, 1.0);
      ysum += v;
    }
    for (double& v : y) {
      v *= scale / ysum;
      if (uniform(rng, 0.0, 1.0) < 0.5) v = -v;
    }
    const double fd = fa_direct(p, y);
    const double fc = fa_decomposed(p, y);
    worst = std::max(worst, std::abs(fd - fc) / std::abs(fd));
  }
  Part part;
  part.add("rel", worst, 1e-9);
  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 2. summation formula -----
CriterionResult c2_summation() {
  CriterionResult r{"summation-formula", false, 0, 0, 5.0, ""};
  std::mt19937 rng(1002);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<double> b(n);
    double bsum = 0.0;
    for (double& v : b) {
      v = uniform(rng, 0.2, 1.2);
      bsum += v;
    }
    const double a = bsum + uniform(rng, 0.5, 2.5);
    const auto sides = gamma_summation_sides(n, a, b);
    worst = std::max(worst, std::abs(sides.lhs - sides.rhs) / std::abs(sides.rhs));
  }
  Part part;
  part.add("rel", worst, 1e-6);
  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 3. limit formula -----
double aitken_limit(std::vector<double> seq) {
  while (seq.size() >= 3) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
      const double d2 = seq[i + 2] - 2.0 * seq[i + 1] + seq[i];
      if (d2 == 0.0)
        next.push_back(seq[i + 2]);
      else
        next.push_back(seq[i + 2] - (seq[i + 2] - seq[i + 1]) * (seq[i + 2] - seq[i + 1]) / d2);
    }
    seq = std::move(next);
  }
  return seq.back();
}

CriterionResult c3_limit() {
  CriterionResult r{"limit-formula", false, 0, 0, 5.0, ""};
  Part part;
  const FAParams cases[] = {{2.0, {0.6}, {1.5}}, {3.0, {0.5, 0.5}, {1.5, 1.6}}};
  for (const FAParams& p : cases) {
    std::vector<double> seq;
    for (int j = 4; j <= 10; ++j) {
      const std::vector<double> y(p.n(), std::exp2(-j));
      seq.push_back(fa_scaled_limit(p, y));
    }
    const double lim = aitken_limit(seq);
    const double want = fa_scaled_limit_value(p);
    part.add(p.n() == 1 ? "n1" : "n2", std::abs(lim - want) / std::abs(want), 1e-4);
  }
  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 4. relation residuals -----
CriterionResult c4_relations() {
  CriterionResult r{"relation-residuals", false, 0, 0, 10.0, ""};
  std::mt19937 rng(1004);
  double worst_d = 0.0, worst_a = 0.0, worst_c = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2;
    FAParams p;
    p.a = uniform(rng, 0.5, 3.0);
    for (int k = 0; k < n; ++k) {
      p.b.push_back(uniform(rng, 0.2, 1.0));
      p.c.push_back(uniform(rng, 1.1, 3.0));
    }
    std::vector<double> y(n);
    for (double& v : y) v = uniform(rng, 0.02, 0.2);
    const int k = trial % n;
    worst_d = std::max(worst_d, fa_relation_residual(FaRelation::DerivativeK, p, y, k));
    worst_a = std::max(worst_a, fa_relation_residual(FaRelation::ContiguousA, p, y, k));
    worst_c = std::max(worst_c, fa_relation_residual(FaRelation::ContiguousCk, p, y, k));
  }
  Part part;
  part.add("derivative", worst_d, 1e-6);
  part.add("contiguous-a", worst_a, 1e-9);
  part.add("contiguous-c", worst_c, 1e-9);
  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 5. fundamental solution -----
CriterionResult c5_fundamental() {
  CriterionResult r{"fundamental-solution", false, 0, 0, 30.0, ""};
  Part part;
  std::mt19937 rng(1005);

  struct Case {
    SingularParams sp;
    Point pole, probe;
  };
  const Case cases[] = {
      {SingularParams(3, {0.3}), {0.5, 0.2, 0.1}, {1.1, 0.7, 0.9}},
      {SingularParams(4, {0.2, 0.4}), {0.5, 0.4, 0.1, 0.2}, {1.2, 0.8, 0.6, 1.0}},
  };
  for (const Case& c : cases) {
    const KernelSet K(c.sp);
    const int m = c.sp.m(), n = c.sp.n();
    // vanishing on singular hyperplanes (exact zeros)
    double vanish = 0.0;
    for (int t = 0; t < 20; ++t) {
      Point x(m), xi(m);
      for (int i = 0; i < m; ++i) {
        x[i] = uniform(rng, 0.05, 1.0);
        xi[i] = uniform(rng, 0.05, 1.0);
      }
      x[t % n] = 0.0;
      vanish = std::max(vanish, std::abs(K.fundamental(xi, x)));
    }
    part.add("vanish", vanish, 1e-12);
    // symmetry
    double sym = 0.0;
    for (int t = 0; t < 50; ++t) {
      Point x(m), xi(m);
      for (int i = 0; i < m; ++i) {
        x[i] = uniform(rng, 0.05, 1.5);
        xi[i] = uniform(rng, 0.05, 1.5);
      }
      const double a = K.fundamental(xi, x), b = K.fundamental(x, xi);
      sym = std::max(sym, std::abs(a - b) / std::abs(a));
    }
    part.add("symmetry", sym, 1e-12);
    // operator residual with O(h^2) decay
    ScalarField f{[&](const Point& p) { return K.fundamental(c.pole, p); }, nullptr};
    const double r2 = pde_residual(f, c.probe, c.sp, 1e-2);
    const double r3 = pde_residual(f, c.probe, c.sp, 1e-3);
    const double r4 = pde_residual(f, c.probe, c.sp, 1e-4);
    part.add("residual", r4, 1e-4);
    const double order = std::log10(r2 / r3);
    part.add("order-deficit", std::max(0.0, 1.5 - order), 1.0);  // want order >= 1.5
  }
  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 6. Gauss integral identities -----
CriterionResult c6_gauss_integral() {
  CriterionResult r{"gauss-integral-identities", false, 0, 0, 30.0, ""};
  Part part;
  const SingularParams sp(3, {0.3});
  const OctantBallDomain dom(1.0, sp);
  const int order = 64;

  double worst = 0.0;
  for (const Point& x : {Point{0.3, 0.1, 0.2}, Point{0.5, 0.45, 0.3}, Point{0.1, 0.2, -0.6}}) {
    const auto g = gauss_integral(dom, x, Region::Interior, order);
    worst = std::max(worst, std::abs(g.layer - (g.hyperplane - 1.0)));
  }
  part.add("interior", worst, 1e-3);

  worst = 0.0;
  for (const Point& x : {Point{3.0, 0.001, 0.5}, Point{0.4, 1.2, 0.8}}) {
    const auto g = gauss_integral(dom, x, Region::Exterior, order);
    worst = std::max(worst, std::abs(g.layer - g.hyperplane));
  }
  part.add("exterior", worst, 1e-3);

  worst = 0.0;
  for (const auto& ang : {std::pair{0.8, 1.1}, std::pair{0.5, 2.6}}) {
    const Point x = spherical_map(1.0, {ang.first, ang.second}, {0, 0, 0}, 3);
    const auto g = gauss_integral(dom, x, Region::Boundary, order);
    worst = std::max(worst, std::abs(g.layer - (g.hyperplane - 0.5)));
  }
  part.add("boundary", worst, 5e-3);

  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 7. zero-flux identity -----
CriterionResult c7_flux() {
  CriterionResult r{"zero-flux-identity", false, 0, 0, 10.0, ""};
  Part part;
  const SingularParams sp(3, {0.3});
  const OctantBallDomain dom(1.0, sp);
  auto kernels = std::make_shared<const KernelSet>(sp);
  const int order = 48;

  double worst = 0.0;
  for (const Point& pole : {Point{1.5, 0.5, 0.3}, Point{0.2, 0.4, 1.4}}) {
    const FluxResult f = total_boundary_flux(dom, pole_flux_field(kernels, pole), order);
    worst = std::max(worst, std::abs(f.flux) / f.scale);
  }
  part.add("pole", worst, 1e-3);

  // simple layer with smooth density on an exterior carrier
  const OctantBallDomain carrier(2.0, sp);
  const auto crule = std::make_shared<QuadratureRule>(sphere_patch_rule(carrier, 24));
  SurfaceDensity dens{crule, {}};
  dens.values.resize(crule->size());
  for (int i = 0; i < crule->size(); ++i) dens.values[i] = 1.0 + crule->nodes[i].x[2];
  const FluxResult f = total_boundary_flux(dom, simple_layer_flux_field(kernels, dens), order);
  part.add("simple-layer", std::abs(f.flux) / f.scale, 1e-3);

  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 8. jump relations -----
// Oracle: one-sided boundary values obtained by evaluating the potentials
// off-surface on a fine reference rule and Richardson-extrapolating the
// approach distance to zero.  Against it we check (i) the recovered jumps
// equal the density and (ii) the singularity-subtracted on-surface limits of
// the collocation rule, whose error must shrink from order 48 to 96.
double smooth_mu(const Point& p) { return p[2] * p[2] + p[0]; }

double richardson3(double f1, double f2, double f3) {
  // distances d, d/2, d/4: eliminate the O(d) and O(d^2) terms
  const double g1 = 2.0 * f2 - f1;
  const double g2 = 2.0 * f3 - f2;
  return (4.0 * g2 - g1) / 3.0;
}

struct JumpErrors {
  double jump_double = 0.0;
  double jump_simple = 0.0;
  double one_sided = 0.0;
};

JumpErrors jump_errors(const OctantBallDomain& dom, const KernelSet& K, int order,
                       const QuadratureRule& ref, const SurfaceDensity& mu_ref) {
  const auto rule = std::make_shared<QuadratureRule>(sphere_patch_rule(dom, order));
  const int N = rule->size();
  SurfaceDensity mu{rule, {}};
  mu.values.resize(N);
  for (int i = 0; i < N; ++i) mu.values[i] = smooth_mu(rule->nodes[i].x);

  // collocation nodes away from the patch edge and the parametrization pole
  std::vector<int> picks;
  for (int i = 0; i < N && static_cast<int>(picks.size()) < 3; i += N / 5)
    if (rule->nodes[i].x[0] > 0.45) picks.push_back(i);

  const double d0 = 0.08 * dom.R();
  JumpErrors err;
  for (int i : picks) {
    const Point& t = rule->nodes[i].x;
    const Point& nrm = rule->nodes[i].normal;
    const double dens = mu.values[i];
    const double scale = std::max(1.0, std::abs(dens));

    auto offset = [&](double eps) {
      Point p(t);
      for (int d = 0; d < 3; ++d) p[d] += eps * nrm[d];
      return p;
    };
    auto wlim = [&](double sign) {
      double f[3];
      for (int k = 0; k < 3; ++k)
        f[k] = double_layer(mu_ref, offset(sign * d0 / (1 << k)), K);
      return richardson3(f[0], f[1], f[2]);
    };
    const double W_in = wlim(-1.0), W_out = wlim(+1.0);
    err.jump_double = std::max(err.jump_double, std::abs((W_out - W_in) - dens) / scale);

    const double li = on_surface_layer_limit(dom, K, mu, i, LayerKind::Double, Side::Interior,
                                             order);
    const double le = on_surface_layer_limit(dom, K, mu, i, LayerKind::Double, Side::Exterior,
                                             order);
    err.one_sided = std::max(err.one_sided, std::abs(li - W_in) / scale);
    err.one_sided = std::max(err.one_sided, std::abs(le - W_out) / scale);

    // simple-layer conormal (normal frozen at t)
    auto conrm = [&](const Point& x) {
      double v = 0.0;
      for (std::size_t j = 0; j < ref.nodes.size(); ++j)
        v += ref.nodes[j].w * mu_ref.values[j] * K.double_layer(x, nrm, ref.nodes[j].x);
      return v;
    };
    auto blim = [&](double sign) {
      double f[3];
      for (int k = 0; k < 3; ++k) f[k] = conrm(offset(sign * d0 / (1 << k)));
      return richardson3(f[0], f[1], f[2]);
    };
    err.jump_simple =
        std::max(err.jump_simple, std::abs((blim(-1.0) - blim(+1.0)) - dens) / scale);
  }
  return err;
}

CriterionResult c8_jumps() {
  CriterionResult r{"jump-relations", false, 0, 0, 60.0, ""};
  Part part;
  const SingularParams sp(3, {0.3});
  const OctantBallDomain dom(1.0, sp);
  const KernelSet K(sp);
  const QuadratureRule ref = sphere_patch_rule(dom, 384);
  SurfaceDensity mu_ref{std::make_shared<QuadratureRule>(ref), {}};
  for (const auto& node : ref.nodes) mu_ref.values.push_back(smooth_mu(node.x));

  const JumpErrors e48 = jump_errors(dom, K, 48, ref, mu_ref);
  const JumpErrors e96 = jump_errors(dom, K, 96, ref, mu_ref);
  part.add("double-jump", std::max(e48.jump_double, e96.jump_double), 1e-2);
  part.add("simple-jump", std::max(e48.jump_simple, e96.jump_simple), 1e-2);
  part.add("one-sided-48", e48.one_sided, 1e-2);
  // refinement must not grow the one-sided error above the oracle's own
  // Richardson floor (~1e-3): below it the ratio only measures oracle noise
  part.add("refines", e96.one_sided / std::max(e48.one_sided, 1e-3), 1.0);
  char buf[48];
  std::snprintf(buf, sizeof buf, "; one-sided-96=%.3g", e96.one_sided);
  r.note = part.note + buf;
  r.measured = part.worst_ratio;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 9. Nystrom vs closed form -----
CriterionResult c9_nystrom() {
  CriterionResult r{"nystrom-vs-closed-form", false, 0, 0, 60.0, ""};
  Part part;
  const SingularParams sp(3, {0.3});
  const OctantBallDomain dom(1.0, sp);
  BoundaryOperator op(dom, 48);
  const int N = op.size();
  const Point xi0{0.3, 0.25, 0.2};

  std::vector<double> rhs(N);
  for (int i = 0; i < N; ++i) {
    const auto& node = op.rule().nodes[i];
    rhs[i] = 2.0 * op.kernels().double_layer(node.x, node.normal, xi0);
  }
  const SurfaceDensity rho = op.solve(EquationKind::SimpleLayerDensity, rhs);
  part.add("linear-residual", op.last_residual(), 1e-10);

  // closed form: the reflected term of the ball Green's function
  const double rho2 = norm2(xi0);
  double s = sp.m() - 2.0;
  for (double a : sp.alpha()) s += 2.0 * a;
  const double scale = std::pow(1.0 / std::sqrt(rho2), s);
  Point star(xi0);
  for (auto& v : star) v /= rho2;
  double worst = 0.0;
  for (const Point& x : {Point{0.5, 0.3, 0.1}, Point{0.1, 0.6, 0.4}, Point{0.25, 0.2, 0.25}}) {
    const double vn = simple_layer(rho, x, op.kernels());
    const double want = -scale * op.kernels().fundamental(x, star);
    worst = std::max(worst, std::abs(vn - want) / std::abs(want));
  }
  part.add("reconstruction", worst, 2e-2);

  // homogeneous equation: zero density
  const double rhs_scale = [&] {
    double m = 0.0;
    for (double v : rhs) m = std::max(m, std::abs(v));
    return m;
  }();
  const SurfaceDensity zero = op.solve(EquationKind::SimpleLayerDensity,
                                       std::vector<double>(N, 0.0));
  double znorm = 0.0;
  for (double v : zero.values) znorm = std::max(znorm, std::abs(v));
  part.add("homogeneous", znorm / rhs_scale, 1e-10);

  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 10. ball Dirichlet solver -----
std::vector<Point> interior_samples(const OctantBallDomain& dom, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Point> pts;
  const int m = dom.params().m();
  while (static_cast<int>(pts.size()) < count) {
    Point p(m);
    for (int i = 0; i < m; ++i) p[i] = uniform(rng, -0.8, 0.8);
    for (int k = 0; k < dom.params().n(); ++k) p[k] = std::abs(p[k]);
    if (dom.boundary_distance(p) > 0.15 * dom.R()) pts.push_back(p);
  }
  return pts;
}

CriterionResult c10_ball_solver() {
  CriterionResult r{"ball-dirichlet-solver", false, 0, 0, 120.0, ""};
  Part part;

  BoundaryData const1;
  const1.phi = [](const Point&) { return 1.0; };
  BoundaryData coord;
  coord.phi = [](const Point& p) { return p[2]; };
  BoundaryData quad;  // phi = x3^2: not itself a solution, exercises the formula
  quad.phi = [](const Point& p) { return p[2] * p[2]; };

  struct Geometry {
    OctantBallDomain dom;
    int order;
    int const_points;
  };
  const Geometry geoms[] = {
      {OctantBallDomain(1.0, SingularParams(3, {0.3})), 64, 20},
      {OctantBallDomain(1.0, SingularParams(3, {0.3, 0.4})), 48, 6},
  };

  for (const Geometry& g : geoms) {
    const int n = g.dom.params().n();
    BoundaryData c1 = const1, cc = coord, cq = quad;
    for (int k = 0; k < n; ++k) {
      c1.tau.push_back(c1.phi);
      cc.tau.push_back(cc.phi);
      cq.tau.push_back(cq.phi);
    }
    const auto pts = interior_samples(g.dom, g.const_points, 900 + n);

    // constant data reproduces u = 1
    double worst = 0.0;
    for (const Point& p : pts)
      worst = std::max(worst, std::abs(solve_dirichlet_ball(c1, p, g.dom, g.order).value - 1.0));
    part.add(n == 1 ? "const-n1" : "const-n2", worst, 1e-3);

    // linearity in the data (a*const1 + b*coordinate)
    const double ca = 0.7, cb = -1.3;
    BoundaryData mix;
    mix.phi = [ca, cb](const Point& p) { return ca * 1.0 + cb * p[2]; };
    for (int k = 0; k < n; ++k) mix.tau.push_back(mix.phi);
    double lin = 0.0;
    for (int t = 0; t < 2; ++t) {
      const Point& p = pts[t];
      const double u_mix = solve_dirichlet_ball(mix, p, g.dom, g.order).value;
      const double u1 = solve_dirichlet_ball(c1, p, g.dom, g.order).value;
      const double u2 = solve_dirichlet_ball(cc, p, g.dom, g.order).value;
      lin = std::max(lin, std::abs(u_mix - (ca * u1 + cb * u2)) /
                              std::max(1.0, std::abs(u_mix)));
    }
    part.add("linearity", lin, 1e-12);

    // maximum principle for monotone data (phi = x3 has range [-R, R])
    double mp = 0.0;
    for (int t = 0; t < 4; ++t) {
      const double u = solve_dirichlet_ball(cc, pts[t], g.dom, g.order).value;
      mp = std::max(mp, std::max(u - g.dom.R(), -g.dom.R() - u));
    }
    part.add("max-principle", std::max(0.0, mp), 2e-3);

    // interior operator residual of the computed field (data = x3^2)
    const int respts = (n == 1) ? 4 : 2;
    double resid = 0.0;
    ScalarField uf{[&](const Point& p) {
                     return solve_dirichlet_ball(cq, p, g.dom, n == 1 ? 48 : 32).value;
                   },
                   nullptr};
    for (int t = 0; t < respts; ++t)
      resid = std::max(resid, pde_residual(uf, pts[t], g.dom.params(), 1e-3 * g.dom.R()));
    part.add("pde-residual", resid, 1e-3);

    // boundary attainment along a radius (sphere patch); targets keep the
    // kernel peak at distance 0.01R resolved by the angular grid while the
    // intrinsic approach drift d |t_3| stays within budget
    Point target = (n == 1) ? spherical_map(1.0, {0.45, 0.9}, {0, 0, 0}, 3)
                            : Point{0.35, 0.79, 0.5};
    const double tnorm = norm(target);
    for (auto& v : target) v /= tnorm;
    const int att_orders[] = {128, 192, n == 1 ? 320 : 352};
    const double dists[] = {0.04, 0.02, 0.01};
    SeriesControl att_ctrl;
    att_ctrl.max_terms = 400000;  // near-boundary weight sums run long for n = 2
    double att[3];
    for (int t = 0; t < 3; ++t) {
      Point p(target);
      for (auto& v : p) v *= 1.0 - dists[t];
      att[t] = std::abs(
          solve_dirichlet_ball(cc, p, g.dom, att_orders[t], att_ctrl, 64).value -
          cc.phi(target));
    }
    part.add("sphere-attainment", att[2], 1e-2);
    part.add("attainment-refines", std::max(0.0, att[2] / att[0] - 1.0), 1.0);

    // flat-patch attainment (x_1 -> 0)
    {
      Point p(g.dom.params().m(), 0.0);
      p[1] = 0.4;
      p[2] = 0.3;
      if (n == 2) p[1] = 0.45;
      Point t0(p);
      double worst_flat = 0.0;
      for (double d : {0.01}) {
        p[0] = d;
        const double u = solve_dirichlet_ball(cc, p, g.dom, 48, {}, 320).value;
        worst_flat = std::max(worst_flat, std::abs(u - cc.tau[0](t0)));
      }
      part.add("flat-attainment", worst_flat, 2e-2);
    }
  }

  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

// ----- 11. general pipeline vs explicit formula -----
CriterionResult c11_general() {
  CriterionResult r{"general-vs-explicit", false, 0, 0, 120.0, ""};
  Part part;
  const SingularParams sp(3, {0.3});
  const OctantBallDomain dom(1.0, sp);
  BoundaryData data;
  data.phi = [](const Point& p) { return p[2] * p[2] + 0.5 * p[0]; };
  data.tau = {data.phi};
  data.check_matching(dom);

  GeneralSolver gen(dom, data, 48);
  const auto pts = interior_samples(dom, 10, 1100);
  double worst = 0.0, uscale = 0.0;
  for (const Point& p : pts) {
    const double ug = gen.evaluate(p).value;
    const double ub = solve_dirichlet_ball(data, p, dom, 64).value;
    worst = std::max(worst, std::abs(ug - ub));
    uscale = std::max(uscale, std::abs(ub));
  }
  part.add("agreement", worst, 3e-2);

  double hn = 0.0;
  for (int t = 0; t < 3; ++t)
    hn = std::max(hn, std::abs(gen.green_correction(pts[t], pts[t + 3])));
  part.add("h-correction", hn / std::max(1e-30, uscale), 3e-2);

  r.measured = part.worst_ratio;
  r.note = part.note;
  r.passed = part.worst_ratio <= 1.0;
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream* progress) {
  std::vector<CriterionResult (*)()> suites = {
      c1_decomposition, c2_summation, c3_limit,         c4_relations,
      c5_fundamental,   c6_gauss_integral, c7_flux,     c8_jumps,
      c9_nystrom,       c10_ball_solver,   c11_general,
  };
  std::vector<CriterionResult> results;
  for (auto* suite : suites) {
    const auto t0 = Clock::now();
    CriterionResult res;
    try {
      res = suite();
    } catch (const std::exception& e) {
      res.name = "criterion";
      res.passed = false;
      res.measured = std::numeric_limits<double>::infinity();
      res.note = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (res.budget_seconds > 0.0 && res.seconds > res.budget_seconds) {
      res.passed = false;
      res.note += "; over time budget";
    }
    if (progress) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.1fs", res.seconds);
      (*progress) << (res.passed ? "PASS" : "FAIL") << "  " << res.name << "  worst-ratio="
                  << res.measured << "  [" << buf << " / budget " << res.budget_seconds
                  << "s]  " << res.note << "\n";
      progress->flush();
    }
    results.push_back(std::move(res));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace singpot
