#include "singpot/dirichlet.hpp"

#include <cmath>

#include "parallel.hpp"

namespace singpot {

void BoundaryData::check_matching(const OctantBallDomain& dom, double tol, int samples) const {
  const int m = dom.params().m(), n = dom.params().n();
  if (!phi) throw PreconditionError("BoundaryData: phi missing");
  if (static_cast<int>(tau.size()) != n)
    throw PreconditionError("BoundaryData: need one tau per flat patch");
  for (int k = 0; k < n; ++k) {
    if (!tau[k]) throw PreconditionError("BoundaryData: tau missing");
    // Edge gamma_k: |x| = R, x_k = 0, remaining singular coordinates positive.
    const AngleBox box = sphere_angle_box(m - 1, n - 1);
    std::vector<double> gx, gw;
    const int q = std::max(2, static_cast<int>(std::round(std::pow(samples, 1.0 / box.dim()))));
    std::vector<std::vector<double>> axes(box.dim());
    for (int d = 0; d < box.dim(); ++d) {
      std::vector<double> w;
      gauss_legendre(q, box.lo[d], box.hi[d], axes[d], w);
    }
    std::vector<int> idx(box.dim(), 0);
    while (true) {
      std::vector<double> phi_ang(box.dim());
      for (int d = 0; d < box.dim(); ++d) phi_ang[d] = axes[d][idx[d]];
      const Point reduced = spherical_map(dom.R(), phi_ang, Point(m - 1, 0.0), m - 1);
      Point x(m, 0.0);
      int ii = 0;
      for (int i = 0; i < m; ++i) {
        if (i == k) continue;
        x[i] = reduced[ii++];
      }
      if (std::abs(phi(x) - tau[k](x)) > tol)
        throw PreconditionError("BoundaryData: phi and tau mismatch on an edge");
      int d = box.dim() - 1;
      while (d >= 0 && ++idx[d] == q) {
        idx[d] = 0;
        --d;
      }
      if (d < 0) break;
    }
  }
}

namespace {

// Image pole across the sphere.  The reflection scale (R/rho)^s with
// s = m - 2 + 2 sum alpha_k is the weight under which the reflected
// fundamental solution cancels the direct one on |x| = R: there
// r and every r_k scale by R/rho while the coordinate-product weight
// contributes (R/rho)^{2 sum(1-2 alpha_k)}.
Point reflected_point(const Point& xi, double R, double& scale_out, const SingularParams& sp) {
  const double rho2 = norm2(xi);
  if (!(rho2 > 0.0))
    throw DegenerateGeometryError("reflection: pole at the origin");
  const double f = R * R / rho2;
  Point star(xi);
  for (auto& v : star) v *= f;
  double s = sp.m() - 2.0;
  for (double a : sp.alpha()) s += 2.0 * a;
  scale_out = std::pow(R / std::sqrt(rho2), s);
  return star;
}

}  // namespace

double ball_green_function(const Point& x, const Point& xi, const OctantBallDomain& dom,
                           const SeriesControl& ctrl) {
  const KernelSet K(dom.params(), ctrl);
  double scale;
  const Point star = reflected_point(xi, dom.R(), scale, dom.params());
  return K.fundamental(x, xi) - scale * K.fundamental(x, star);
}

double reflected_hyperplane_kernel(const Point& xi, const Point& s, int k,
                                   const OctantBallDomain& dom, const SeriesControl& ctrl) {
  const KernelSet K(dom.params(), ctrl);
  double scale;
  const Point star = reflected_point(xi, dom.R(), scale, dom.params());
  return scale * K.hyperplane(star, s, k);
}

double reflected_hyperplane_rescaled(const Point& xi, const Point& s, int k,
                                    const OctantBallDomain& dom, const SeriesControl& ctrl) {
  // Alternative form: rescaled image distance
  //   Y^2 = R^2 - 2 sum_{i != k} s_i xi_i + (|xi|^2/R^2) sum_{i != k} s_i^2
  // with series arguments -(R^2/|xi|^2) 4 s_i xi_i / Y^2.  The argument
  // scaling fails the finite-difference oracle for n >= 2 (see tests).
  const SingularParams& sp = dom.params();
  const int m = sp.m(), n = sp.n();
  const double R = dom.R();
  const double rho2 = norm2(xi);
  double Y2 = R * R;
  for (int i = 0; i < m; ++i) {
    if (i == k) continue;
    Y2 += -2.0 * s[i] * xi[i] + rho2 / (R * R) * s[i] * s[i];
  }
  double weight = 1.0, tilde = 1.0;
  for (int i = 0; i < n; ++i) {
    weight *= std::pow(xi[i], 1.0 - 2.0 * sp.alpha()[i]);
    if (i != k) tilde *= s[i];
  }
  std::vector<double> args, b, c;
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    args.push_back(-(R * R / rho2) * 4.0 * s[i] * xi[i] / Y2);
    b.push_back(1.0 - sp.alpha()[i]);
    c.push_back(2.0 - 2.0 * sp.alpha()[i]);
  }
  double fa = 1.0;
  if (!args.empty()) fa = fa_transformed(FAParams{sp.alpha_bar(), b, c}, args, ctrl);
  return (1.0 - 2.0 * sp.alpha()[k]) * sp.kappa() * weight * tilde *
         std::pow(Y2, -sp.alpha_bar()) * fa;
}

double ball_poisson_kernel(const Point& x, const Point& xi, const OctantBallDomain& dom,
                           const SeriesControl& ctrl) {
  const KernelSet K(dom.params(), ctrl);
  const double R = dom.R();
  const double rho2 = norm2(xi);
  const double r2 = dist2(x, xi);
  double x2a = 1.0;
  for (int i = 0; i < dom.params().n(); ++i)
    x2a *= std::pow(x[i], 2.0 * dom.params().alpha()[i]);
  return K.b1_factor(x, xi) * x2a * (R * R - rho2) / (R * r2);
}

SolveResult solve_dirichlet_ball(const BoundaryData& data, const Point& xi,
                                 const OctantBallDomain& dom, int order,
                                 const SeriesControl& ctrl, int flat_order) {
  const SingularParams& sp = dom.params();
  const int n = sp.n();
  if (!dom.contains(xi))
    throw PreconditionError("solve_dirichlet_ball: evaluation point must be interior");

  const KernelSet K(sp, ctrl);
  double scale;
  const Point star = reflected_point(xi, dom.R(), scale, sp);

  SolveResult result;
  const QuadratureRule sphere = sphere_patch_rule(dom, order);
  result.degraded = dom.boundary_distance(xi) < 2.0 * sphere.spacing;

  if (flat_order <= 0) flat_order = order;
  double u = 0.0;
  for (int k = 0; k < n; ++k) {
    const QuadratureRule flat = flat_patch_rule(dom, k, flat_order);
    std::vector<double> vals(flat.size());
    detail::parallel_for(flat.size(), [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        const Point& s = flat.nodes[i].x;
        const double kern = K.hyperplane(xi, s, k) - scale * K.hyperplane(star, s, k);
        vals[i] = flat.nodes[i].w * kern * data.tau[k](s);
      }
    });
    for (double v : vals) u += v;
  }

  const double rho2 = norm2(xi);
  const double R = dom.R();
  std::vector<double> vals(sphere.size());
  detail::parallel_for(sphere.size(), [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const Point& x = sphere.nodes[i].x;
      double x2a = 1.0;
      for (int k = 0; k < n; ++k) x2a *= std::pow(x[k], 2.0 * sp.alpha()[k]);
      const double pk = K.b1_factor(x, xi) * x2a * (R * R - rho2) / (R * dist2(x, xi));
      vals[i] = sphere.nodes[i].w * pk * data.phi(x);
    }
  });
  for (double v : vals) u += v;

  result.value = u;
  return result;
}

GeneralSolver::GeneralSolver(const OctantBallDomain& dom, const BoundaryData& data, int order,
                             SeriesControl ctrl)
    : dom_(dom), data_(data), order_(order), ctrl_(ctrl), op_(dom, order, ctrl) {
  const int N = op_.size();
  const int n = dom.params().n();

  std::vector<double> rhs(N);
  for (int i = 0; i < N; ++i) rhs[i] = 2.0 * data_.phi(op_.rule().nodes[i].x);
  theta_ = op_.solve(EquationKind::BoundaryTrace, rhs);

  for (int k = 0; k < n; ++k) flat_rules_.push_back(flat_patch_rule(dom, k, order));

  // vartheta_k at the collocation nodes, then the corrected densities psi_k.
  psi_.resize(n);
  for (int k = 0; k < n; ++k) {
    std::vector<double> vk(N);
    detail::parallel_for(N, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        double s = 0.0;
        for (const auto& node : flat_rules_[k].nodes)
          s += node.w * op_.kernels().hyperplane(op_.rule().nodes[i].x, node.x, k) *
               data_.tau[k](node.x);
        vk[i] = 2.0 * s;
      }
    });
    psi_[k] = op_.solve(EquationKind::BoundaryTrace, vk);
  }
}

double GeneralSolver::theta_term(const Point& xi) const {
  return -double_layer(theta_, xi, op_.kernels());
}

SolveResult GeneralSolver::evaluate(const Point& xi) const {
  if (!dom_.contains(xi))
    throw PreconditionError("solve_dirichlet_general: evaluation point must be interior");
  SolveResult result;
  result.degraded = dom_.boundary_distance(xi) < 2.0 * op_.rule().spacing;
  double u = theta_term(xi);
  for (std::size_t k = 0; k < psi_.size(); ++k) {
    double vth = 0.0;
    for (const auto& node : flat_rules_[k].nodes)
      vth += node.w * op_.kernels().hyperplane(xi, node.x, static_cast<int>(k)) *
             data_.tau[k](node.x);
    u += vth + double_layer(psi_[k], xi, op_.kernels());
  }
  result.value = u;
  return result;
}

double GeneralSolver::green_correction(const Point& x, const Point& xi) const {
  const int N = op_.size();
  std::vector<double> rhs(N);
  for (int i = 0; i < N; ++i) {
    const auto& node = op_.rule().nodes[i];
    rhs[i] = 2.0 * op_.kernels().double_layer(node.x, node.normal, x);
  }
  const SurfaceDensity rho = op_.solve(EquationKind::SimpleLayerDensity, rhs);
  double h = 0.0;
  for (int i = 0; i < N; ++i) {
    const auto& node = op_.rule().nodes[i];
    h += node.w * rho.values[i] * ball_green_function(node.x, xi, dom_, ctrl_);
  }
  return h;
}

SolveResult solve_dirichlet_general(const BoundaryData& data, const Point& xi,
                                    const OctantBallDomain& dom, int order,
                                    const SeriesControl& ctrl) {
  GeneralSolver solver(dom, data, order, ctrl);
  return solver.evaluate(xi);
}

}  // namespace singpot
