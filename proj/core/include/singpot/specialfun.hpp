#ifndef SINGPOT_SPECIALFUN_HPP
#define SINGPOT_SPECIALFUN_HPP

#include "singpot/series.hpp"

namespace singpot {

// Gamma function for real arguments.  Negative non-integer arguments are
// reduced with the recurrence Gamma(z) = Gamma(z+1)/z until the argument is
// positive.  Throws PoleError within 1e-13 of a non-positive integer.
double gamma_fn(double z);

// Rising factorial (lambda)_p computed as a running product, so terminating
// values at non-positive lambda come out as exact zeros.
double pochhammer(double lambda, int p);

// log |Gamma(z)| and sign(Gamma(z)) for non-pole z; sign is 0 at a pole.
double log_abs_gamma(double z);
int gamma_sign(double z);

// Gamma(p1)Gamma(p2) / (Gamma(q1)Gamma(q2)) evaluated through log-Gamma so
// large parameters do not overflow.  A pole in a denominator argument makes
// the ratio zero; a pole in a numerator argument throws.
double gamma_ratio(double p1, double p2, double q1, double q2);

// Gauss hypergeometric function F(a,b;c;z) for real parameters and z < 1
// (z = 1 allowed when c-a-b > 0).  Evaluation strategy:
//   z in [-0.5, 0.5]   direct series,
//   z in (0.5, 1)      z <-> 1-z connection formula, falling back to a long
//                      direct summation when c-a-b is within 1e-8 of an
//                      integer,
//   z < -0.5           Euler transformation onto z/(z-1) in (1/3, 1).
double gauss_2f1(double a, double b, double c, double z, const SeriesControl& ctrl = {});

// F(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), requires
// c-a-b > 0 and no pole among c, c-a, c-b.
double gauss_value_at_one(double a, double b, double c);

namespace detail {

// True when x is within tol of a non-positive integer.
bool near_nonpositive_integer(double x, double tol = 1e-13);

// Direct series for F(a,b;c;z); |z| < 1 expected by the caller.
double gauss_2f1_series(double a, double b, double c, double z, const SeriesControl& ctrl);

// Like gauss_2f1_series but returns the partial sum at the term cap instead
// of throwing; used by the integer-exponent guard.
double gauss_2f1_series_impl(double a, double b, double c, double z, const SeriesControl& ctrl, bool best_effort);

}  // namespace detail

}  // namespace singpot

#endif  // SINGPOT_SPECIALFUN_HPP
