#include "singpot/kernels.hpp"

#include <cmath>
#include <string>

namespace singpot {

SingularParams::SingularParams(int m, std::vector<double> alpha)
    : m_(m), alpha_(std::move(alpha)) {
  const int n = static_cast<int>(alpha_.size());
  if (m_ < 3) throw PreconditionError("SingularParams: m must be >= 3");
  if (n < 1 || n > m_) throw PreconditionError("SingularParams: need 1 <= n <= m");
  for (double a : alpha_)
    if (!(a > 0.0 && 2.0 * a < 1.0))
      throw PreconditionError("SingularParams: each alpha_k must satisfy 0 < 2 alpha_k < 1");
  alpha_bar_ = 0.5 * (m_ - 2);
  for (double a : alpha_) alpha_bar_ += 1.0 - a;
  double kappa = std::exp2(2.0 * alpha_bar_ - m_) * gamma_fn(alpha_bar_) /
                 std::pow(M_PI, 0.5 * m_);
  for (double a : alpha_) kappa *= gamma_fn(1.0 - a) / gamma_fn(2.0 - 2.0 * a);
  kappa_ = kappa;
}

KernelGeometry KernelGeometry::make(const Point& xi, const Point& x, const SingularParams& sp) {
  const int m = sp.m(), n = sp.n();
  if (static_cast<int>(xi.size()) != m || static_cast<int>(x.size()) != m)
    throw PreconditionError("KernelGeometry: points must have dimension m");
  for (int k = 0; k < n; ++k)
    if (xi[k] < 0.0 || x[k] < 0.0)
      throw PreconditionError("KernelGeometry: singular coordinates must be non-negative");

  KernelGeometry g;
  g.r2 = dist2(xi, x);
  g.rk2.resize(n);
  g.sigma.resize(n);
  g.omega.resize(n);
  g.xi_x_weight = 1.0;
  g.x_weight = 1.0;
  g.r_weight = 1.0;
  for (int k = 0; k < n; ++k) {
    const double p = xi[k] * x[k];
    g.rk2[k] = g.r2 + 4.0 * p;
    if (!(g.rk2[k] > 0.0))
      throw DegenerateGeometryError("KernelGeometry: r_k = 0 (coincident points on hyperplane " +
                                    std::to_string(k) + ")");
    const double a = sp.alpha()[k];
    g.xi_x_weight *= std::pow(p, 1.0 - 2.0 * a);
    g.x_weight *= std::pow(x[k], 1.0 - 2.0 * a);
    g.r_weight *= std::pow(g.rk2[k], 1.0 - a);
  }
  if (!(g.r2 > 0.0)) throw DiagonalError("KernelGeometry: coincident points (r = 0)");
  for (int k = 0; k < n; ++k) {
    g.sigma[k] = -4.0 * xi[k] * x[k] / g.r2;
    g.omega[k] = 1.0 - g.r2 / g.rk2[k];
  }
  g.r_pow_m2 = std::pow(g.r2, 0.5 * (m - 2));
  return g;
}

// Fixed-parameter 2F1 on [0,1) with connection constants computed once.
struct KernelSet::Fixed2F1 {
  double a, b, c, d;
  bool d_integer;
  bool c_minus_a_pole;
  double coef1 = 0.0, coef2 = 0.0;

  Fixed2F1(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    d = c - a - b;
    d_integer = std::abs(d - std::round(d)) < 1e-8;
    c_minus_a_pole = detail::near_nonpositive_integer(c - a);
    if (!d_integer && !c_minus_a_pole) {
      coef1 = gamma_ratio(c, d, c - a, c - b);
      coef2 = gamma_ratio(c, -d, a, b);
    }
  }

  double eval(double z, const SeriesControl& ctrl) const {
    if (z <= 0.5) return detail::gauss_2f1_series(a, b, c, z, ctrl);
    if (d_integer || c_minus_a_pole) {
      SeriesControl longer = ctrl;
      longer.max_terms = std::max<std::int64_t>(ctrl.max_terms, 1000000);
      return detail::gauss_2f1_series_impl(a, b, c, z, longer, true);
    }
    const double w = 1.0 - z;
    const double f1 = (coef1 == 0.0) ? 0.0 : detail::gauss_2f1_series(a, b, 1.0 - d, w, ctrl);
    const double f2 =
        (coef2 == 0.0) ? 0.0 : detail::gauss_2f1_series(c - a, c - b, 1.0 + d, w, ctrl);
    return coef1 * f1 + coef2 * std::pow(w, d) * f2;
  }
};

KernelSet::KernelSet(SingularParams sp, SeriesControl ctrl) : sp_(std::move(sp)), ctrl_(ctrl) {
  ctrl_.validate();
  const int n = sp_.n();
  b_.resize(n);
  c_.resize(n);
  for (int k = 0; k < n; ++k) {
    b_[k] = 1.0 - sp_.alpha()[k];
    c_[k] = 2.0 - 2.0 * sp_.alpha()[k];
  }
  const double ab = sp_.alpha_bar();
  if (n == 1) {
    q_f_ = std::make_shared<Fixed2F1>(c_[0] - ab, b_[0], c_[0]);
    b1_f_ = std::make_shared<Fixed2F1>(c_[0] - 1.0 - ab, b_[0], c_[0]);
    const double cmod = 1.0 - 2.0 * sp_.alpha()[0];
    b2_f_ = std::make_shared<Fixed2F1>(cmod - ab, b_[0], cmod);
  }
  hyp_.resize(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      hyp_[k].b.push_back(b_[i]);
      hyp_[k].c.push_back(c_[i]);
    }
  }
}

double KernelSet::omega_series(double a, const std::vector<double>& b,
                               const std::vector<double>& c, const std::vector<double>& omega,
                               int fixed_slot) const {
  // fixed_slot selects the cached n = 1 evaluators: 0 -> q, 1 -> B1, 2 -> B2.
  if (b.size() == 1 && fixed_slot >= 0) {
    const Fixed2F1* f = (fixed_slot == 0) ? q_f_.get() : (fixed_slot == 1 ? b1_f_.get() : b2_f_.get());
    return f->eval(omega[0], ctrl_);
  }
  return burchnall_omega_sum(a, b, c, omega, ctrl_);
}

double KernelSet::fundamental(const Point& xi, const Point& x) const {
  const int n = sp_.n();
  for (int k = 0; k < n; ++k)
    if (xi[k] == 0.0 || x[k] == 0.0) {
      if (!(dist2(xi, x) > 0.0))
        throw DiagonalError("fundamental: coincident points");
      return 0.0;  // vanishes on the singular hyperplanes
    }
  const KernelGeometry g = KernelGeometry::make(xi, x, sp_);
  const double pref = sp_.kappa() * g.xi_x_weight / (g.r_pow_m2 * g.r_weight);
  return pref * omega_series(sp_.alpha_bar(), b_, c_, g.omega, 0);
}

DoubleLayerParts KernelSet::double_layer_parts(const Point& xi, const Point& normal,
                                               const Point& x) const {
  const int n = sp_.n();
  DoubleLayerParts parts;
  for (int k = 0; k < n; ++k)
    if (xi[k] == 0.0 || x[k] == 0.0) {
      if (!(dist2(xi, x) > 0.0)) throw DiagonalError("double_layer: coincident points");
      return parts;  // kernel vanishes toward the singular hyperplanes
    }
  const KernelGeometry g = KernelGeometry::make(xi, x, sp_);
  const double ab = sp_.alpha_bar();
  const double base = sp_.kappa() / (g.r_pow_m2 * g.r_weight);

  parts.b1 = 2.0 * ab * base * g.xi_x_weight * omega_series(1.0 + ab, b_, c_, g.omega, 1);

  // conormal derivative of ln(1/r) at xi
  double w2a = 1.0;
  for (int k = 0; k < n; ++k) w2a *= std::pow(xi[k], 2.0 * sp_.alpha()[k]);
  double s = 0.0;
  for (int i = 0; i < sp_.m(); ++i) s += (x[i] - xi[i]) / g.r2 * normal[i];
  parts.log_conormal = w2a * s;

  double b2 = 0.0;
  std::vector<double> cmod = c_;
  for (int k = 0; k < n; ++k) {
    if (normal[k] == 0.0) continue;
    double tilde = 1.0;
    for (int i = 0; i < n; ++i)
      if (i != k) tilde *= xi[i];
    cmod[k] = 1.0 - 2.0 * sp_.alpha()[k];
    const double fa = omega_series(ab, b_, cmod, g.omega, 2);
    cmod[k] = c_[k];
    b2 += (1.0 - 2.0 * sp_.alpha()[k]) * tilde * normal[k] * fa;
  }
  parts.b2 = base * g.x_weight * b2;
  return parts;
}

double KernelSet::b1_factor(const Point& xi, const Point& x) const {
  const int n = sp_.n();
  for (int k = 0; k < n; ++k)
    if (xi[k] == 0.0 || x[k] == 0.0) return 0.0;
  const KernelGeometry g = KernelGeometry::make(xi, x, sp_);
  const double base = sp_.kappa() / (g.r_pow_m2 * g.r_weight);
  return 2.0 * sp_.alpha_bar() * base * g.xi_x_weight *
         omega_series(1.0 + sp_.alpha_bar(), b_, c_, g.omega, 1);
}

double KernelSet::double_layer(const Point& xi, const Point& normal, const Point& x) const {
  return double_layer_parts(xi, normal, x).value();
}

double KernelSet::hyperplane(const Point& p, const Point& s, int k) const {
  const int m = sp_.m(), n = sp_.n();
  if (k < 0 || k >= n) throw PreconditionError("hyperplane: k out of range");
  if (!(p[k] > 0.0)) throw PreconditionError("hyperplane: p must lie off the hyperplane");

  double X2 = p[k] * p[k];
  for (int i = 0; i < m; ++i) {
    if (i == k) continue;
    const double d = p[i] - s[i];
    X2 += d * d;
  }

  double weight = 1.0, tilde = 1.0;
  for (int i = 0; i < n; ++i) {
    weight *= std::pow(p[i], 1.0 - 2.0 * sp_.alpha()[i]);
    if (i != k) tilde *= s[i];
  }
  if (tilde == 0.0) return 0.0;

  // sigma_i = -4 p_i s_i / X^2 for i != k, fused Euler transform
  std::vector<double> omega(n - 1);
  double pref = 1.0;
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    const double sig = -4.0 * p[i] * s[i] / X2;
    omega[idx] = sig / (sig - 1.0);
    pref *= std::pow(1.0 - sig, -(1.0 - sp_.alpha()[i]));
    ++idx;
  }
  const double fa = pref * burchnall_omega_sum(sp_.alpha_bar(), hyp_[k].b, hyp_[k].c, omega, ctrl_);
  return (1.0 - 2.0 * sp_.alpha()[k]) * sp_.kappa() * weight * tilde *
         std::pow(X2, -sp_.alpha_bar()) * fa;
}

double fundamental_solution(const Point& xi, const Point& x, const SingularParams& sp,
                            const SeriesControl& ctrl) {
  return KernelSet(sp, ctrl).fundamental(xi, x);
}

double double_layer_kernel(const Point& xi, const Point& normal, const Point& x,
                           const SingularParams& sp, const SeriesControl& ctrl) {
  return KernelSet(sp, ctrl).double_layer(xi, normal, x);
}

double hyperplane_kernel(const Point& p, const Point& s, int k, const SingularParams& sp,
                         const SeriesControl& ctrl) {
  return KernelSet(sp, ctrl).hyperplane(p, s, k);
}

double conormal_derivative(const ScalarField& u, const Point& x, const Point& normal,
                           const SingularParams& sp) {
  Point grad;
  if (u.gradient) {
    grad = u.gradient(x);
  } else {
    const double h = 1e-6 * std::max(1.0, norm(x));
    grad.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      Point xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      grad[i] = (u.value(xp) - u.value(xm)) / (2.0 * h);
    }
  }
  double w2a = 1.0;
  for (int k = 0; k < sp.n(); ++k) w2a *= std::pow(x[k], 2.0 * sp.alpha()[k]);
  return w2a * dot(grad, normal);
}

double pde_residual(const ScalarField& u, const Point& x, const SingularParams& sp, double h) {
  if (!(h > 0.0)) throw PreconditionError("pde_residual: h must be positive");
  for (int k = 0; k < sp.n(); ++k)
    if (!(x[k] > 2.0 * h))
      throw PreconditionError("pde_residual: x too close to a singular hyperplane for step h");
  const double u0 = u.value(x);
  double total = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Point xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double up = u.value(xp), um = u.value(xm);
    const double second = (up - 2.0 * u0 + um) / (h * h);
    total += second;
    scale = std::max(scale, std::abs(second));
    if (static_cast<int>(i) < sp.n()) {
      const double first = (up - um) / (2.0 * h);
      const double sing = 2.0 * sp.alpha()[i] / x[i] * first;
      total += sing;
      scale = std::max(scale, std::abs(sing));
    }
  }
  if (scale == 0.0) return 0.0;
  return std::abs(total) / scale;
}

}  // namespace singpot
