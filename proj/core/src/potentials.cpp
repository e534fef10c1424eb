#include "singpot/potentials.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <sstream>
#include <string>

#include "parallel.hpp"

namespace singpot {

void SurfaceDensity::validate() const {
  if (!rule) throw PreconditionError("SurfaceDensity: missing quadrature rule");
  if (static_cast<int>(values.size()) != rule->size())
    throw PreconditionError("SurfaceDensity: value count does not match node count");
  for (double v : values)
    if (!std::isfinite(v)) throw PreconditionError("SurfaceDensity: non-finite value");
}

std::string density_to_csv(const SurfaceDensity& dens) {
  dens.validate();
  std::string out = "index,value\n";
  char buf[48];
  for (std::size_t i = 0; i < dens.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, dens.values[i]);
    out += buf;
  }
  return out;
}

SurfaceDensity density_from_csv(const std::string& csv,
                                std::shared_ptr<const QuadratureRule> rule) {
  SurfaceDensity dens;
  dens.rule = std::move(rule);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw PreconditionError("density_from_csv: malformed line '" + line + "'");
    dens.values.push_back(std::stod(line.substr(comma + 1)));
  }
  dens.validate();
  return dens;
}

bool near_surface(const QuadratureRule& rule, const Point& x, double factor) {
  // distance to the carrier versus the local node spacing around the
  // closest node
  int closest = 0;
  double d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rule.size(); ++i) {
    const double d = dist2(rule.nodes[i].x, x);
    if (d < d2) {
      d2 = d;
      closest = i;
    }
  }
  double n2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rule.size(); ++i) {
    if (i == closest) continue;
    n2 = std::min(n2, dist2(rule.nodes[i].x, rule.nodes[closest].x));
  }
  // neighbor gaps shrink toward the parametrization poles; the first-axis
  // step is the floor of the resolution scale
  const double local = std::max(std::sqrt(n2), rule.spacing);
  return std::sqrt(d2) < factor * local;
}

double double_layer(const SurfaceDensity& mu, const Point& x, const KernelSet& kernels) {
  mu.validate();
  double s = 0.0;
  const auto& nodes = mu.rule->nodes;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    s += nodes[j].w * mu.values[j] * kernels.double_layer(nodes[j].x, nodes[j].normal, x);
  return s;
}

double simple_layer(const SurfaceDensity& rho, const Point& x, const KernelSet& kernels) {
  rho.validate();
  double s = 0.0;
  const auto& nodes = rho.rule->nodes;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    s += nodes[j].w * rho.values[j] * kernels.fundamental(nodes[j].x, x);
  return s;
}

GaussIntegral gauss_integral(const OctantBallDomain& dom, const Point& x, Region region,
                             int order, const SeriesControl& ctrl) {
  const KernelSet K(dom.params(), ctrl);
  GaussIntegral result;

  for (int k = 0; k < dom.params().n(); ++k) {
    const QuadratureRule flat = flat_patch_rule(dom, k, order);
    double s = 0.0;
    for (const auto& node : flat.nodes) s += node.w * K.hyperplane(x, node.x, k);
    result.hyperplane += s;
  }

  const QuadratureRule sphere = (region == Region::Boundary)
                                    ? sphere_patch_rule_singular(dom, x, order)
                                    : sphere_patch_rule(dom, order);
  double s = 0.0;
  for (const auto& node : sphere.nodes) s += node.w * K.double_layer(node.x, node.normal, x);
  result.layer = s;
  return result;
}

struct BoundaryOperator::Impl {
  OctantBallDomain dom;
  SeriesControl ctrl;
  KernelSet K;
  std::shared_ptr<const QuadratureRule> rule;
  std::vector<double> ivals;
  Eigen::MatrixXd kmat;  // w_j K(s_j -> t_i); diagonal regularized
  mutable std::mutex lu_mutex;
  mutable std::unique_ptr<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
  mutable double last_residual = 0.0;

  Impl(const OctantBallDomain& d, int order, const SeriesControl& c)
      : dom(d), ctrl(c), K(d.params(), c) {
    rule = std::make_shared<QuadratureRule>(sphere_patch_rule(dom, order));
    const int N = rule->size();

    // i(t_i): flat-patch integrals of the hyperplane kernel.
    ivals.assign(N, 0.0);
    for (int k = 0; k < dom.params().n(); ++k) {
      const QuadratureRule flat = flat_patch_rule(dom, k, order);
      detail::parallel_for(N, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
          double s = 0.0;
          for (const auto& node : flat.nodes)
            s += node.w * K.hyperplane(rule->nodes[i].x, node.x, k);
          ivals[i] += s;
        }
      });
    }

    kmat.resize(N, N);
    detail::parallel_for(N, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        const Point& t = rule->nodes[i].x;
        double offdiag = 0.0;
        for (int j = 0; j < N; ++j) {
          if (j == i) continue;
          const auto& s = rule->nodes[j];
          const double v = s.w * K.double_layer(s.x, s.normal, t);
          kmat(i, j) = v;
          offdiag += v;
        }
        kmat(i, i) = (ivals[i] - 0.5) - offdiag;
      }
    });
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd>& factor() const {
    std::lock_guard<std::mutex> lock(lu_mutex);
    if (!lu) {
      const int N = static_cast<int>(kmat.rows());
      Eigen::MatrixXd A = -2.0 * kmat;
      A.diagonal().array() += 1.0;
      lu = std::make_unique<Eigen::PartialPivLU<Eigen::MatrixXd>>(A);
      (void)N;
    }
    return *lu;
  }
};

BoundaryOperator::BoundaryOperator(const OctantBallDomain& dom, int order, SeriesControl ctrl)
    : impl_(std::make_shared<Impl>(dom, order, ctrl)) {}

const OctantBallDomain& BoundaryOperator::domain() const { return impl_->dom; }
const QuadratureRule& BoundaryOperator::rule() const { return *impl_->rule; }
std::shared_ptr<const QuadratureRule> BoundaryOperator::rule_ptr() const { return impl_->rule; }
const KernelSet& BoundaryOperator::kernels() const { return impl_->K; }
int BoundaryOperator::size() const { return impl_->rule->size(); }

double BoundaryOperator::i_value(int node) const { return impl_->ivals.at(node); }

double BoundaryOperator::kernel_value(int row, int col) const {
  if (row == col) throw PreconditionError("kernel_value: undefined on the diagonal");
  return impl_->kmat(row, col) / impl_->rule->nodes[col].w;
}

double BoundaryOperator::operator_entry(EquationKind eq, int i, int j) const {
  const double w_i = impl_->rule->nodes[i].w, w_j = impl_->rule->nodes[j].w;
  double kij;
  if (eq == EquationKind::SimpleLayerDensity)
    kij = impl_->kmat(j, i) * w_j / w_i;
  else
    kij = impl_->kmat(i, j);
  return (i == j ? 1.0 : 0.0) - 2.0 * kij;
}

double BoundaryOperator::layer_limit(LayerKind kind, const SurfaceDensity& dens, int node,
                                     Side side) const {
  dens.validate();
  const int N = size();
  if (dens.rule->size() != N)
    throw PreconditionError("layer_limit: density not sampled on this operator's rule");
  if (node < 0 || node >= N) throw PreconditionError("layer_limit: node out of range");

  const auto& nodes = impl_->rule->nodes;
  const Point& t = nodes[node].x;
  for (int k = 0; k < impl_->dom.params().n(); ++k)
    if (t[k] < 2.0 * impl_->rule->spacing)
      throw EdgeProximityError("layer_limit: node within 2 spacings of a patch edge");

  const double dt = dens.values[node];
  double pv = dt * (impl_->ivals[node] - 0.5);
  if (kind == LayerKind::Double) {
    for (int j = 0; j < N; ++j)
      if (j != node) pv += impl_->kmat(node, j) * (dens.values[j] - dt);
    return (side == Side::Interior ? -0.5 : 0.5) * dt + pv;
  }
  // Simple-layer conormal: transposed kernel K(t -> s_j).
  for (int j = 0; j < N; ++j)
    if (j != node)
      pv += impl_->kmat(j, node) * nodes[j].w / nodes[node].w * (dens.values[j] - dt);
  return (side == Side::Interior ? 0.5 : -0.5) * dt + pv;
}

SurfaceDensity BoundaryOperator::solve(EquationKind eq, const std::vector<double>& rhs) const {
  const int N = size();
  if (static_cast<int>(rhs.size()) != N)
    throw PreconditionError("nystrom solve: rhs length mismatch");
  const auto& lu = impl_->factor();
  Eigen::VectorXd b(N);
  for (int i = 0; i < N; ++i) b(i) = rhs[i];

  Eigen::VectorXd d;
  if (eq == EquationKind::SimpleLayerDensity) {
    // A_52 = D^{-1} A^T D with D = diag(w): solve A^T (D d) = D b.
    Eigen::VectorXd w(N);
    for (int i = 0; i < N; ++i) w(i) = impl_->rule->nodes[i].w;
    Eigen::VectorXd y = lu.transpose().solve((w.array() * b.array()).matrix());
    d = (y.array() / w.array()).matrix();
    Eigen::VectorXd Ay = -2.0 * (impl_->kmat.transpose() * y) + y;
    impl_->last_residual = (Ay - (w.array() * b.array()).matrix()).lpNorm<Eigen::Infinity>() /
                           std::max(1e-300, (w.array() * b.array()).matrix().lpNorm<Eigen::Infinity>());
  } else {
    d = lu.solve(b);
    Eigen::VectorXd Ad = -2.0 * (impl_->kmat * d) + d;
    impl_->last_residual =
        (Ad - b).lpNorm<Eigen::Infinity>() / std::max(1e-300, b.lpNorm<Eigen::Infinity>());
  }

  if (!std::isfinite(impl_->last_residual) || impl_->last_residual > 1e-6)
    throw SingularSystemError("nystrom solve: collocation matrix numerically singular (residual " +
                              std::to_string(impl_->last_residual) + ")");

  SurfaceDensity out;
  out.rule = impl_->rule;
  out.values.assign(d.data(), d.data() + N);
  return out;
}

double BoundaryOperator::last_residual() const { return impl_->last_residual; }

double on_surface_layer_limit(const OctantBallDomain& dom, const KernelSet& kernels,
                              const SurfaceDensity& dens, int node, LayerKind kind, Side side,
                              int flat_order) {
  dens.validate();
  const auto& rule = *dens.rule;
  const int N = rule.size();
  if (node < 0 || node >= N) throw PreconditionError("on_surface_layer_limit: bad node");
  const Point& t = rule.nodes[node].x;
  for (int k = 0; k < dom.params().n(); ++k)
    if (t[k] < 2.0 * rule.spacing)
      throw EdgeProximityError("on_surface_layer_limit: node within 2 spacings of an edge");

  double it = 0.0;
  for (int k = 0; k < dom.params().n(); ++k) {
    const QuadratureRule flat = flat_patch_rule(dom, k, flat_order);
    for (const auto& fn : flat.nodes) it += fn.w * kernels.hyperplane(t, fn.x, k);
  }

  const double dt = dens.values[node];
  double pv = dt * (it - 0.5);
  if (kind == LayerKind::Double) {
    for (int j = 0; j < N; ++j) {
      if (j == node) continue;
      const auto& s = rule.nodes[j];
      pv += s.w * kernels.double_layer(s.x, s.normal, t) * (dens.values[j] - dt);
    }
    return (side == Side::Interior ? -0.5 : 0.5) * dt + pv;
  }
  const Point& nt = rule.nodes[node].normal;
  for (int j = 0; j < N; ++j) {
    if (j == node) continue;
    const auto& s = rule.nodes[j];
    pv += s.w * kernels.double_layer(t, nt, s.x) * (dens.values[j] - dt);
  }
  return (side == Side::Interior ? 0.5 : -0.5) * dt + pv;
}

SurfaceDensity nystrom_solve(EquationKind eq, const OctantBallDomain& dom,
                             const std::vector<double>& rhs, int order,
                             const SeriesControl& ctrl) {
  BoundaryOperator op(dom, order, ctrl);
  return op.solve(eq, rhs);
}

BoundaryFluxField pole_flux_field(std::shared_ptr<const KernelSet> kernels, Point pole) {
  BoundaryFluxField f;
  f.conormal = [kernels, pole](const Point& s, const Point& normal) {
    return kernels->double_layer(s, normal, pole);
  };
  f.flat_flux = [kernels, pole](int k, const Point& s) { return kernels->hyperplane(pole, s, k); };
  return f;
}

BoundaryFluxField simple_layer_flux_field(std::shared_ptr<const KernelSet> kernels,
                                          SurfaceDensity carrier_density) {
  carrier_density.validate();
  auto dens = std::make_shared<SurfaceDensity>(std::move(carrier_density));
  BoundaryFluxField f;
  f.conormal = [kernels, dens](const Point& s, const Point& normal) {
    double v = 0.0;
    const auto& nodes = dens->rule->nodes;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      v += nodes[j].w * dens->values[j] * kernels->double_layer(s, normal, nodes[j].x);
    return v;
  };
  f.flat_flux = [kernels, dens](int k, const Point& s) {
    double v = 0.0;
    const auto& nodes = dens->rule->nodes;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      v += nodes[j].w * dens->values[j] * kernels->hyperplane(nodes[j].x, s, k);
    return v;
  };
  return f;
}

FluxResult total_boundary_flux(const OctantBallDomain& dom, const BoundaryFluxField& field,
                               int order) {
  FluxResult r;
  const QuadratureRule sphere = sphere_patch_rule(dom, order);
  std::vector<double> vals(sphere.size());
  detail::parallel_for(sphere.size(), [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i)
      vals[i] = field.conormal(sphere.nodes[i].x, sphere.nodes[i].normal);
  });
  for (int i = 0; i < sphere.size(); ++i) {
    r.flux += sphere.nodes[i].w * vals[i];
    r.scale += sphere.nodes[i].w * std::abs(vals[i]);
  }
  for (int k = 0; k < dom.params().n(); ++k) {
    const QuadratureRule flat = flat_patch_rule(dom, k, order);
    std::vector<double> fv(flat.size());
    detail::parallel_for(flat.size(), [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) fv[i] = field.flat_flux(k, flat.nodes[i].x);
    });
    // outward normal on the hyperplane is -e_k
    for (int i = 0; i < flat.size(); ++i) {
      r.flux -= flat.nodes[i].w * fv[i];
      r.scale += flat.nodes[i].w * std::abs(fv[i]);
    }
  }
  return r;
}

}  // namespace singpot
