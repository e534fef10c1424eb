#include "singpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace singpot {

void gauss_legendre(int q, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  if (q < 1) throw PreconditionError("gauss_legendre: order must be >= 1");
  x.resize(q);
  w.resize(q);
  const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < q; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = q * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = xm - xl * z;
    x[q - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[q - 1 - i] = w[i];
  }
}

Point spherical_map(double rho, const std::vector<double>& phi, const Point& center, int m) {
  if (static_cast<int>(phi.size()) != m - 1)
    throw PreconditionError("spherical_map: need m-1 angles");
  Point p(center);
  p.resize(m, 0.0);
  double sinprod = 1.0;
  for (int i = 0; i < m - 1; ++i) {
    p[i] += rho * sinprod * std::cos(phi[i]);
    sinprod *= std::sin(phi[i]);
  }
  p[m - 1] += rho * sinprod;
  return p;
}

double sphere_jacobian(double R, const std::vector<double>& phi, int m) {
  double j = std::pow(R, m - 1);
  for (int i = 0; i < m - 2; ++i) j *= std::pow(std::sin(phi[i]), m - 2 - i);
  return j;
}

AngleBox sphere_angle_box(int m, int n_pos) {
  if (m < 2 || n_pos < 0 || n_pos > m)
    throw PreconditionError("sphere_angle_box: need m >= 2, 0 <= n <= m");
  AngleBox box;
  box.lo.resize(m - 1);
  box.hi.resize(m - 1);
  for (int i = 0; i < m - 2; ++i) {
    box.lo[i] = 0.0;
    box.hi[i] = (i < n_pos) ? 0.5 * M_PI : M_PI;
  }
  if (n_pos <= m - 2) {
    box.lo[m - 2] = 0.0;
    box.hi[m - 2] = 2.0 * M_PI;
  } else if (n_pos == m - 1) {
    box.lo[m - 2] = -0.5 * M_PI;
    box.hi[m - 2] = 0.5 * M_PI;
  } else {  // n_pos == m
    box.lo[m - 2] = 0.0;
    box.hi[m - 2] = 0.5 * M_PI;
  }
  return box;
}

std::vector<double> sphere_angles_of(const Point& p, double rho) {
  const int m = static_cast<int>(p.size());
  std::vector<double> phi(m - 1);
  double tail2 = p[m - 1] * p[m - 1];
  phi[m - 2] = std::atan2(p[m - 1], p[m - 2]);
  for (int i = m - 3; i >= 0; --i) {
    tail2 += p[i + 1] * p[i + 1];
    phi[i] = std::atan2(std::sqrt(tail2), p[i]);
  }
  (void)rho;
  return phi;
}

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (const auto& n : nodes) s += n.w;
  return s;
}

OctantBallDomain::OctantBallDomain(double R, SingularParams sp) : R_(R), sp_(std::move(sp)) {
  if (!(R_ > 0.0)) throw PreconditionError("OctantBallDomain: R must be positive");
}

SurfacePatch OctantBallDomain::sphere_patch() const {
  SurfacePatch patch;
  patch.kind = SurfacePatch::Kind::Sphere;
  patch.box = sphere_angle_box(sp_.m(), sp_.n());
  const double R = R_;
  const int m = sp_.m();
  patch.map = [R, m](const std::vector<double>& phi) {
    return spherical_map(R, phi, Point(m, 0.0), m);
  };
  patch.normal = [R](const Point& x) {
    Point nrm(x);
    for (auto& v : nrm) v /= R;
    return nrm;
  };
  patch.jacobian = [R, m](const std::vector<double>& phi) { return sphere_jacobian(R, phi, m); };
  return patch;
}

SurfacePatch OctantBallDomain::flat_patch(int k) const {
  const int m = sp_.m(), n = sp_.n();
  if (k < 0 || k >= n) throw PreconditionError("flat_patch: k out of range");
  SurfacePatch patch;
  patch.kind = SurfacePatch::Kind::Hyperplane;
  patch.k = k;
  // Parameters: radial t in [0, R] then the angles of an (m-1)-dimensional
  // direction with the first n-1 coordinates positive (the remaining
  // singular coordinates, which stay contiguous after slot k is removed).
  const AngleBox ang = sphere_angle_box(m - 1, n - 1);
  patch.box.lo.push_back(0.0);
  patch.box.hi.push_back(R_);
  patch.box.lo.insert(patch.box.lo.end(), ang.lo.begin(), ang.lo.end());
  patch.box.hi.insert(patch.box.hi.end(), ang.hi.begin(), ang.hi.end());
  patch.map = [m, k](const std::vector<double>& par) {
    const double t = par[0];
    const std::vector<double> phi(par.begin() + 1, par.end());
    const Point reduced = spherical_map(t, phi, Point(m - 1, 0.0), m - 1);
    Point x(m, 0.0);
    int idx = 0;
    for (int i = 0; i < m; ++i) {
      if (i == k) continue;
      x[i] = reduced[idx++];
    }
    return x;
  };
  patch.normal = [m, k](const Point&) {
    Point nrm(m, 0.0);
    nrm[k] = -1.0;
    return nrm;
  };
  patch.jacobian = [m](const std::vector<double>& par) {
    const double t = par[0];
    const std::vector<double> phi(par.begin() + 1, par.end());
    return std::pow(t, m - 2) * sphere_jacobian(1.0, phi, m - 1);
  };
  return patch;
}

bool OctantBallDomain::contains(const Point& p) const {
  if (norm2(p) >= R_ * R_) return false;
  for (int k = 0; k < sp_.n(); ++k)
    if (!(p[k] > 0.0)) return false;
  return true;
}

double OctantBallDomain::boundary_distance(const Point& p) const {
  double d = R_ - norm(p);
  for (int k = 0; k < sp_.n(); ++k) d = std::min(d, p[k]);
  return d;
}

namespace {

QuadratureRule tensor_rule(const SurfacePatch& patch, const std::vector<int>& orders) {
  const int dim = patch.box.dim();
  if (static_cast<int>(orders.size()) != dim)
    throw PreconditionError("tensor_rule: order count mismatch");
  std::vector<std::vector<double>> xs(dim), ws(dim);
  for (int d = 0; d < dim; ++d) {
    if (orders[d] < 2) throw PreconditionError("tensor_rule: order must be >= 2");
    gauss_legendre(orders[d], patch.box.lo[d], patch.box.hi[d], xs[d], ws[d]);
  }
  QuadratureRule rule;
  rule.kind = patch.kind;
  rule.k = patch.k;
  rule.box = patch.box;
  rule.orders = orders;
  std::vector<int> idx(dim, 0);
  std::vector<double> par(dim);
  while (true) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      par[d] = xs[d][idx[d]];
      w *= ws[d][idx[d]];
    }
    QuadNode node;
    node.x = patch.map(par);
    node.normal = patch.normal(node.x);
    node.w = w * patch.jacobian(par);
    rule.nodes.push_back(std::move(node));
    rule.params.push_back(par);
    int d = dim - 1;
    while (d >= 0 && ++idx[d] == static_cast<int>(xs[d].size())) {
      idx[d] = 0;
      --d;
    }
    if (d < 0) break;
  }
  // resolution scale: the first-axis step (polar angle for the sphere patch,
  // radius for a flat patch); the periodic axis is wider but its arc length
  // shrinks toward the poles
  rule.spacing = (patch.box.hi[0] - patch.box.lo[0]) / orders[0];
  return rule;
}

}  // namespace

QuadratureRule sphere_patch_rule(const OctantBallDomain& dom, int order) {
  const SurfacePatch patch = dom.sphere_patch();
  std::vector<int> orders(patch.box.dim(), order);
  QuadratureRule rule = tensor_rule(patch, orders);
  rule.spacing *= dom.R();
  return rule;
}

QuadratureRule flat_patch_rule(const OctantBallDomain& dom, int k, int order) {
  const SurfacePatch patch = dom.flat_patch(k);
  std::vector<int> orders(patch.box.dim(), order);
  // first axis is the radius in [0, R]
  return tensor_rule(patch, orders);
}

QuadratureRule sphere_patch_rule_singular(const OctantBallDomain& dom, const Point& vertex,
                                          int order) {
  if (dom.params().m() != 3)
    throw PreconditionError("sphere_patch_rule_singular: only m = 3 is supported");
  const SurfacePatch patch = dom.sphere_patch();
  const std::vector<double> va = sphere_angles_of(vertex, dom.R());
  for (int d = 0; d < 2; ++d)
    if (va[d] < patch.box.lo[d] - 1e-12 || va[d] > patch.box.hi[d] + 1e-12)
      throw PreconditionError("sphere_patch_rule_singular: vertex not on the patch");

  QuadratureRule rule;
  rule.kind = patch.kind;
  rule.box = patch.box;
  rule.orders = {order, order};
  std::vector<double> gu, wu, gv, wv;
  gauss_legendre(order, 0.0, 1.0, gu, wu);
  gauss_legendre(order, 0.0, 1.0, gv, wv);

  const double L0 = patch.box.lo[0], H0 = patch.box.hi[0];
  const double L1 = patch.box.lo[1], H1 = patch.box.hi[1];
  const double t0 = std::clamp(va[0], L0, H0), t1 = std::clamp(va[1], L1, H1);

  // Four axis-aligned rectangles meeting at the vertex, each split into two
  // triangles with the vertex as the Duffy corner.
  struct Tri {
    double ax, ay, bx, by, cx, cy;  // corner (vertex), then the two others
  };
  std::vector<Tri> tris;
  auto add_rect = [&](double x0, double x1, double y0, double y1, double vx, double vy) {
    if (std::abs(x1 - x0) < 1e-14 || std::abs(y1 - y0) < 1e-14) return;
    // corners of the rectangle other than (vx, vy)
    const double ox = (vx == x0) ? x1 : x0;
    const double oy = (vy == y0) ? y1 : y0;
    tris.push_back({vx, vy, ox, vy, ox, oy});
    tris.push_back({vx, vy, vx, oy, ox, oy});
  };
  add_rect(L0, t0, L1, t1, t0, t1);
  add_rect(t0, H0, L1, t1, t0, t1);
  add_rect(L0, t0, t1, H1, t0, t1);
  add_rect(t0, H0, t1, H1, t0, t1);

  std::vector<double> par(2);
  for (const Tri& tr : tris) {
    const double e1x = tr.bx - tr.ax, e1y = tr.by - tr.ay;
    const double e2x = tr.cx - tr.ax, e2y = tr.cy - tr.ay;
    const double det = std::abs(e1x * e2y - e1y * e2x);
    if (det < 1e-14) continue;
    for (int i = 0; i < order; ++i) {
      for (int j = 0; j < order; ++j) {
        const double u = gu[i], v = gv[j];
        par[0] = tr.ax + u * ((1.0 - v) * e1x + v * e2x);
        par[1] = tr.ay + u * ((1.0 - v) * e1y + v * e2y);
        QuadNode node;
        node.x = patch.map(par);
        node.normal = patch.normal(node.x);
        node.w = wu[i] * wv[j] * u * det * patch.jacobian(par);
        rule.nodes.push_back(std::move(node));
        rule.params.push_back(par);
      }
    }
  }
  rule.spacing = dom.R() * (H0 - L0) / order;
  return rule;
}

std::string rule_to_csv(const QuadratureRule& rule) {
  std::ostringstream out;
  const int m = rule.nodes.empty() ? 0 : static_cast<int>(rule.nodes[0].x.size());
  for (int i = 0; i < m; ++i) out << "x" << (i + 1) << ",";
  for (int i = 0; i < m; ++i) out << "n" << (i + 1) << ",";
  out << "w\n";
  char buf[32];
  for (const auto& node : rule.nodes) {
    for (int i = 0; i < m; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", node.x[i]);
      out << buf << ",";
    }
    for (int i = 0; i < m; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", node.normal[i]);
      out << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17g", node.w);
    out << buf << "\n";
  }
  return out.str();
}

QuadratureRule rule_from_csv(const std::string& csv) {
  QuadratureRule rule;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) return rule;
  int m = 0;
  for (char ch : line)
    if (ch == ',') ++m;
  m /= 2;  // x1..xm,n1..nm,w
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    QuadNode node;
    node.x.resize(m);
    node.normal.resize(m);
    for (int i = 0; i < m; ++i) {
      std::getline(ls, cell, ',');
      node.x[i] = std::stod(cell);
    }
    for (int i = 0; i < m; ++i) {
      std::getline(ls, cell, ',');
      node.normal[i] = std::stod(cell);
    }
    std::getline(ls, cell, ',');
    node.w = std::stod(cell);
    rule.nodes.push_back(std::move(node));
  }
  return rule;
}

}  // namespace singpot
