#ifndef SINGPOT_GEOMETRY_HPP
#define SINGPOT_GEOMETRY_HPP

#include <functional>
#include <string>
#include <vector>

#include "singpot/kernels.hpp"
#include "singpot/point.hpp"

namespace singpot {

struct AngleBox {
  std::vector<double> lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
};

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int q, double a, double b, std::vector<double>& x, std::vector<double>& w);

// Spherical parametrization
//   x_1 = rho cos p1
//   x_i = rho sin p1 ... sin p_{i-1} cos p_i      (2 <= i <= m-1)
//   x_m = rho sin p1 ... sin p_{m-1},
// p_1..p_{m-2} in [0, pi], p_{m-1} in [0, 2 pi).
Point spherical_map(double rho, const std::vector<double>& phi, const Point& center, int m);

// Surface density of the sphere of radius R in the angles above:
// R^{m-1} prod_{i=1}^{m-2} sin^{m-1-i} p_i.
double sphere_jacobian(double R, const std::vector<double>& phi, int m);

// Angle sub-box restricting the first n_pos Cartesian coordinates to be
// positive.  For m = 3: n=1 gives [0,pi/2] x [0,2pi] (half sphere), n=2
// gives [0,pi/2] x [-pi/2,pi/2] (quarter).  For m = 4 the first two axes
// shrink to [0,pi/2] in the same way before the last axis is restricted.
AngleBox sphere_angle_box(int m, int n_pos);

// Inverse of spherical_map on the sphere |p| = rho.
std::vector<double> sphere_angles_of(const Point& p, double rho);

struct SurfacePatch {
  enum class Kind { Sphere, Hyperplane };
  Kind kind = Kind::Sphere;
  int k = -1;  // hyperplane index (0-based) for Kind::Hyperplane
  AngleBox box;
  std::function<Point(const std::vector<double>&)> map;       // params -> point
  std::function<Point(const Point&)> normal;                  // point -> outward unit normal
  std::function<double(const std::vector<double>&)> jacobian; // params -> measure density
};

struct QuadNode {
  Point x;
  Point normal;
  double w = 0.0;
};

struct QuadratureRule {
  SurfacePatch::Kind kind = SurfacePatch::Kind::Sphere;
  int k = -1;
  std::vector<QuadNode> nodes;
  std::vector<std::vector<double>> params;  // parameter coordinates per node
  AngleBox box;
  std::vector<int> orders;
  double spacing = 0.0;  // first-axis arc step (edge/boundary resolution scale)

  double total_weight() const;
  int size() const { return static_cast<int>(nodes.size()); }
};

// The 2^n-th part of the ball of radius R: sphere patch with the first n
// coordinates positive plus n flat patches on the hyperplanes x_k = 0.
class OctantBallDomain {
 public:
  OctantBallDomain(double R, SingularParams sp);

  double R() const { return R_; }
  const SingularParams& params() const { return sp_; }

  SurfacePatch sphere_patch() const;
  SurfacePatch flat_patch(int k) const;

  bool contains(const Point& p) const;           // open interior
  double boundary_distance(const Point& p) const;

 private:
  double R_;
  SingularParams sp_;
};

// Tensor Gauss-Legendre rule over the sphere patch (order nodes per angle
// axis).  All nodes are strictly inside the open octant.
QuadratureRule sphere_patch_rule(const OctantBallDomain& dom, int order);

// Radial x angular tensor rule over the flat patch x_k = 0.
QuadratureRule flat_patch_rule(const OctantBallDomain& dom, int k, int order);

// Sphere-patch rule for integrands with a point singularity at `vertex`
// (a point of the patch): the angle box is split at the vertex and each
// piece integrated with a Duffy-type corner transformation that cancels a
// 1/r singularity.  Only m = 3 is supported.
QuadratureRule sphere_patch_rule_singular(const OctantBallDomain& dom, const Point& vertex,
                                          int order);

// CSV export (columns x1..xm,n1..nm,w, 17 significant digits) and its
// inverse, for debugging.
std::string rule_to_csv(const QuadratureRule& rule);
QuadratureRule rule_from_csv(const std::string& csv);

}  // namespace singpot

#endif  // SINGPOT_GEOMETRY_HPP
