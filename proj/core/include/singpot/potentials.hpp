#ifndef SINGPOT_POTENTIALS_HPP
#define SINGPOT_POTENTIALS_HPP

#include <memory>
#include <vector>

#include "singpot/geometry.hpp"
#include "singpot/kernels.hpp"

namespace singpot {

// Density sampled at the nodes of a quadrature rule (Nystrom convention:
// no separate basis expansion).
struct SurfaceDensity {
  std::shared_ptr<const QuadratureRule> rule;
  std::vector<double> values;

  void validate() const;
};

// CSV export of a density (columns index,value; 17 significant digits) and
// import against an existing rule.
std::string density_to_csv(const SurfaceDensity& dens);
SurfaceDensity density_from_csv(const std::string& csv,
                                std::shared_ptr<const QuadratureRule> rule);

// True when x is closer to the carrier than `factor` node spacings;
// quadrature accuracy is degraded there.
bool near_surface(const QuadratureRule& rule, const Point& x, double factor = 3.0);

// Double-layer potential: integral of mu(s) K(s -> x) over the carrier,
// K the conormal derivative (at s) of the fundamental solution.
double double_layer(const SurfaceDensity& mu, const Point& x, const KernelSet& kernels);

// Simple-layer potential: integral of rho(s) q(s; x).
double simple_layer(const SurfaceDensity& rho, const Point& x, const KernelSet& kernels);

enum class Region { Interior, Boundary, Exterior };

// The unit-density double-layer integral over the sphere patch together
// with the hyperplane integral i(x); the classical solid-angle identity
// generalizes to
//   layer = i(x) - 1    (x interior)
//   layer = i(x) - 1/2  (x on the patch)
//   layer = i(x)        (x exterior).
// The boundary case integrates the weakly singular kernel with the
// Duffy-split rule.
struct GaussIntegral {
  double layer = 0.0;       // unit-density double layer over the sphere patch
  double hyperplane = 0.0;  // i(x), summed over the flat patches
};
GaussIntegral gauss_integral(const OctantBallDomain& dom, const Point& x, Region region,
                             int order, const SeriesControl& ctrl = {});

enum class LayerKind { Double, SimpleConormal };
enum class Side { Interior, Exterior };
enum class EquationKind {
  DoubleLayerDensity,   // density of the Green regular part (double layer)
  SimpleLayerDensity,   // transposed equation for the simple-layer density
  BoundaryTrace         // trace equation of the Dirichlet pipeline
};

// Dense collocation of the second-kind boundary equations on the sphere
// patch.  The weakly singular diagonal is regularized by singularity
// subtraction: the analytic unit-density total i(t) - 1/2 replaces the
// diagonal quadrature.  The transposed equation reuses the same factored
// matrix through the weighted-transpose identity.
class BoundaryOperator {
 public:
  BoundaryOperator(const OctantBallDomain& dom, int order, SeriesControl ctrl = {});

  const OctantBallDomain& domain() const;
  const QuadratureRule& rule() const;
  std::shared_ptr<const QuadratureRule> rule_ptr() const;
  const KernelSet& kernels() const;

  int size() const;
  double i_value(int node) const;                     // i(t_node)
  double kernel_value(int row, int col) const;        // K(s_col -> t_row), row != col
  double operator_entry(EquationKind eq, int i, int j) const;

  // On-surface limit of a layer potential at a collocation node.
  double layer_limit(LayerKind kind, const SurfaceDensity& dens, int node, Side side) const;

  // Solves (I - 2K) d = rhs (kernel transposed for SimpleLayerDensity).
  SurfaceDensity solve(EquationKind eq, const std::vector<double>& rhs) const;

  // Residual of the last solve, ||(I-2K)d - rhs||_inf / ||rhs||_inf.
  double last_residual() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// On-surface limit at one node of a rule, computed directly from the
// singularity-subtracted quadrature (no assembled operator; i(t) is
// integrated on the fly over the flat patches).
double on_surface_layer_limit(const OctantBallDomain& dom, const KernelSet& kernels,
                              const SurfaceDensity& dens, int node, LayerKind kind, Side side,
                              int flat_order);

// One-shot form of the density solves.
SurfaceDensity nystrom_solve(EquationKind eq, const OctantBallDomain& dom,
                             const std::vector<double>& rhs, int order,
                             const SeriesControl& ctrl = {});

// Conormal flux data of a field regular in the closed domain: its conormal
// on the sphere patch and the weighted limits on the hyperplanes.
struct BoundaryFluxField {
  std::function<double(const Point& s, const Point& normal)> conormal;
  std::function<double(int k, const Point& s)> flat_flux;  // x^(2a) d_k u limit at x_k = 0
};

BoundaryFluxField pole_flux_field(std::shared_ptr<const KernelSet> kernels, Point pole);
BoundaryFluxField simple_layer_flux_field(std::shared_ptr<const KernelSet> kernels,
                                          SurfaceDensity carrier_density);

// Total conormal flux through the whole boundary (sphere patch plus flat
// patches); zero for solutions regular in the closed domain.  `scale` is the
// integral of the absolute flux density, for normalization.
struct FluxResult {
  double flux = 0.0;
  double scale = 0.0;
};
FluxResult total_boundary_flux(const OctantBallDomain& dom, const BoundaryFluxField& field,
                               int order);

}  // namespace singpot

#endif  // SINGPOT_POTENTIALS_HPP
