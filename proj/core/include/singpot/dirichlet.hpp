#ifndef SINGPOT_DIRICHLET_HPP
#define SINGPOT_DIRICHLET_HPP

#include <functional>
#include <string>
#include <vector>

#include "singpot/potentials.hpp"

namespace singpot {

// Dirichlet data: phi on the sphere patch, tau_k on each flat patch, with
// matching traces along the edges where the patches meet.
struct BoundaryData {
  std::function<double(const Point&)> phi;
  std::vector<std::function<double(const Point&)>> tau;

  // Samples each edge and checks |phi - tau_k| <= tol there.
  void check_matching(const OctantBallDomain& dom, double tol = 1e-10, int samples = 64) const;
};

// Green's function of the ball octant: the fundamental solution minus its
// reflection across the sphere,
//   q(x; xi) - (R/|xi|)^{2 alpha_bar} q(x; R^2 xi / |xi|^2).
double ball_green_function(const Point& x, const Point& xi, const OctantBallDomain& dom,
                           const SeriesControl& ctrl = {});

struct SolveResult {
  double value = 0.0;
  bool degraded = false;  // evaluation point within two node spacings of the boundary
  std::string flat_kernel_path = "reflected-pole";
};

// Explicit Poisson-type solution on the ball octant: flat-patch integrals of
// the hyperplane kernel minus its sphere reflection, plus the sphere-patch
// integral of the Poisson kernel.  The reflected flat kernel follows the
// direct differentiation of the reflected fundamental solution (the
// "reflected-pole" path); see reflected_hyperplane_kernel.
SolveResult solve_dirichlet_ball(const BoundaryData& data, const Point& xi,
                                 const OctantBallDomain& dom, int order,
                                 const SeriesControl& ctrl = {}, int flat_order = 0);

// Two candidate forms of the reflected flat-patch kernel.  The
// reflected-pole form scales and re-centers the hyperplane kernel at the
// image point; the alternative form works with the rescaled image distance
// Y_k^2 and carries an extra R^2/|xi|^2 factor inside its series arguments.
// Both are exposed so tests can cross-validate them against finite
// differences of the reflected fundamental solution; only the reflected-pole
// form survives that check for n >= 2 and it is the one the solver uses.
double reflected_hyperplane_kernel(const Point& xi, const Point& s, int k,
                                   const OctantBallDomain& dom, const SeriesControl& ctrl = {});
double reflected_hyperplane_rescaled(const Point& xi, const Point& s, int k,
                                    const OctantBallDomain& dom, const SeriesControl& ctrl = {});

// Poisson kernel of the sphere patch (the integrand multiplying phi).
double ball_poisson_kernel(const Point& x, const Point& xi, const OctantBallDomain& dom,
                           const SeriesControl& ctrl = {});

// General pipeline: Nystrom trace solve for the sphere data plus the
// density-corrected flat-patch terms.  Equals the explicit ball formula on
// this geometry.
class GeneralSolver {
 public:
  GeneralSolver(const OctantBallDomain& dom, const BoundaryData& data, int order,
                SeriesControl ctrl = {});

  SolveResult evaluate(const Point& xi) const;
  const BoundaryOperator& op() const { return op_; }

  // H correction term at (x; xi): the Green-function discrepancy
  //   integral of G0(t; xi) rho(t; x) over the sphere patch,
  // identically zero on the ball geometry (checked numerically).
  double green_correction(const Point& x, const Point& xi) const;

 private:
  double theta_term(const Point& xi) const;

  OctantBallDomain dom_;
  BoundaryData data_;
  int order_;
  SeriesControl ctrl_;
  BoundaryOperator op_;
  SurfaceDensity theta_;
  std::vector<SurfaceDensity> psi_;
  std::vector<QuadratureRule> flat_rules_;
};

SolveResult solve_dirichlet_general(const BoundaryData& data, const Point& xi,
                                    const OctantBallDomain& dom, int order,
                                    const SeriesControl& ctrl = {});

}  // namespace singpot

#endif  // SINGPOT_DIRICHLET_HPP
