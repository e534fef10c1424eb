#ifndef SINGPOT_KERNELS_HPP
#define SINGPOT_KERNELS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "singpot/lauricella.hpp"
#include "singpot/point.hpp"
#include "singpot/series.hpp"

namespace singpot {

// Parameter triple of the singular operator
//   H u = sum_i u_{x_i x_i} + sum_{k<=n} (2 alpha_k / x_k) u_{x_k}
// on the orthant x_1 > 0, ..., x_n > 0 of R^m, with the derived constants
//   alpha_bar = (m-2)/2 + sum (1 - alpha_k)
//   kappa     = 2^{2 alpha_bar - m} Gamma(alpha_bar) / pi^{m/2}
//               * prod Gamma(1-alpha_k)/Gamma(2-2 alpha_k).
class SingularParams {
 public:
  SingularParams(int m, std::vector<double> alpha);

  int m() const { return m_; }
  int n() const { return static_cast<int>(alpha_.size()); }
  const std::vector<double>& alpha() const { return alpha_; }
  double alpha_bar() const { return alpha_bar_; }
  double kappa() const { return kappa_; }

 private:
  int m_;
  std::vector<double> alpha_;
  double alpha_bar_;
  double kappa_;
};

// Per-point-pair geometric quantities of the kernel representations:
//   r^2   = |xi - x|^2
//   r_k^2 = r^2 + 4 xi_k x_k
//   sigma_k = 1 - r_k^2/r^2 = -4 xi_k x_k / r^2   (always <= 0)
//   omega_k = 1 - r^2/r_k^2                        (always in [0,1))
// together with the coordinate-product weights.
struct KernelGeometry {
  double r2 = 0.0;
  std::vector<double> rk2;
  std::vector<double> sigma;
  std::vector<double> omega;
  double xi_x_weight = 0.0;  // prod (xi_k x_k)^{1-2 alpha_k}
  double x_weight = 0.0;     // prod x_k^{1-2 alpha_k}
  double r_weight = 0.0;     // prod r_k^{2-2 alpha_k}
  double r_pow_m2 = 0.0;     // r^{m-2}

  // Throws DiagonalError when x == xi, DegenerateGeometryError when some
  // r_k = 0, PreconditionError when a singular coordinate is negative.
  static KernelGeometry make(const Point& xi, const Point& x, const SingularParams& sp);
};

// Scalar field handle used by the conormal derivative and the operator
// residual.  When no gradient closure is supplied it is formed by central
// differences of the value.
struct ScalarField {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;
};

struct DoubleLayerParts {
  double b1 = 0.0;            // smooth factor multiplying the log-kernel conormal
  double log_conormal = 0.0;  // conormal derivative of ln(1/r) at xi
  double b2 = 0.0;            // remainder term
  double value() const { return b1 * log_conormal + b2; }
};

// Kernel evaluations for one parameter set.  Construction precomputes the
// fixed 2F1 parameter triples (and, for n = 1, their connection constants),
// so repeated evaluation during quadrature and matrix assembly stays cheap.
class KernelSet {
 public:
  KernelSet(SingularParams sp, SeriesControl ctrl = {});

  const SingularParams& params() const { return sp_; }
  const SeriesControl& control() const { return ctrl_; }

  // Fundamental solution q(xi; x), symmetric in its arguments, vanishing on
  // the singular hyperplanes.  Evaluated through the transformed
  // representation with all inner arguments omega_k in [0,1).
  double fundamental(const Point& xi, const Point& x) const;

  // Conormal derivative (at xi, outward unit normal given there) of the
  // fundamental solution: the double-layer kernel.
  double double_layer(const Point& xi, const Point& normal, const Point& x) const;
  DoubleLayerParts double_layer_parts(const Point& xi, const Point& normal, const Point& x) const;

  // The smooth factor B1 of the double-layer decomposition (also the core
  // of the sphere Poisson kernel).
  double b1_factor(const Point& xi, const Point& x) const;

  // Weighted flux limit of the fundamental solution on the hyperplane
  // s_k = 0 (0-based k < n):
  //   prod_{i != k} s_i^{2 alpha_i} * lim_{s_k -> 0} s_k^{2 alpha_k}
  //     d q(s; p) / d s_k,
  // the kernel of every flat-patch integral.  p is the off-hyperplane point.
  double hyperplane(const Point& p, const Point& s, int k) const;

 private:
  double omega_series(double a, const std::vector<double>& b, const std::vector<double>& c,
                      const std::vector<double>& omega, int fixed_slot) const;

  SingularParams sp_;
  SeriesControl ctrl_;
  std::vector<double> b_;        // 1 - alpha_k
  std::vector<double> c_;        // 2 - 2 alpha_k
  struct Fixed2F1;               // cached fixed-parameter 2F1 (n = 1 paths)
  std::shared_ptr<Fixed2F1> q_f_, b1_f_, b2_f_;
  struct HyperplaneData {
    std::vector<double> b, c;    // parameter vectors with slot k removed
  };
  std::vector<HyperplaneData> hyp_;
};

// Free-function forms of the kernel operations (each builds a KernelSet;
// hold one yourself in hot loops).
double fundamental_solution(const Point& xi, const Point& x, const SingularParams& sp,
                            const SeriesControl& ctrl = {});
double double_layer_kernel(const Point& xi, const Point& normal, const Point& x,
                           const SingularParams& sp, const SeriesControl& ctrl = {});
double hyperplane_kernel(const Point& p, const Point& s, int k, const SingularParams& sp,
                         const SeriesControl& ctrl = {});

// x^{(2 alpha)} sum_i du/dx_i cos(N, x_i) at x.
double conormal_derivative(const ScalarField& u, const Point& x, const Point& normal,
                           const SingularParams& sp);

// Central-difference residual of the singular operator applied to the field,
// normalized by the largest constituent term.
double pde_residual(const ScalarField& u, const Point& x, const SingularParams& sp, double h);

}  // namespace singpot

#endif  // SINGPOT_KERNELS_HPP
