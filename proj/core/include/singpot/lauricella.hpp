#ifndef SINGPOT_LAURICELLA_HPP
#define SINGPOT_LAURICELLA_HPP

#include <utility>
#include <vector>

#include "singpot/series.hpp"
#include "singpot/specialfun.hpp"

namespace singpot {

// Parameter block of the n-variable hypergeometric series
//   FA(a, b_1..b_n; c_1..c_n; y_1..y_n)
//     = sum over m_1..m_n of (a)_{m_1+..+m_n} prod_k (b_k)_{m_k} y_k^{m_k} /
//       ((c_k)_{m_k} m_k!).
struct FAParams {
  double a = 0.0;
  std::vector<double> b;
  std::vector<double> c;

  int n() const { return static_cast<int>(b.size()); }
  void validate() const;

  FAParams shifted_a(double da) const;
  FAParams shifted(int k, double da, double db, double dc) const;  // k is 0-based
};

// Index tuple of the Burchnall–Chaundy-type decomposition: entries m_{i,j}
// for 2 <= i <= j <= n (lexicographic order of (i,j)), with the derived
// per-variable counts
//   A(k) = sum_{i=2}^{k+1} sum_{j=i}^{n} m_{i,j}
//   B(k) = sum_{i=2}^{k} m_{i,k} + sum_{i=k+1}^{n} m_{k+1,i}.
class BurchnallIndex {
 public:
  BurchnallIndex(int n, std::vector<int> entries);

  int n() const { return n_; }
  static int entry_count(int n) { return n * (n - 1) / 2; }
  const std::vector<int>& entries() const { return entries_; }
  int A(int k) const;  // 1-based variable index
  int B(int k) const;
  int total_weight() const;
  double m_factorial() const;

 private:
  int n_;
  std::vector<int> entries_;
};

// Direct multi-series evaluation, summed diagonal by diagonal (total degree
// ascending) with the tail criterion applied per diagonal.  Requires
// sum_k |y_k| < 1.
double fa_direct(const FAParams& p, const std::vector<double>& y, const SeriesControl& ctrl = {});

// Decomposition into products of one-variable 2F1 factors, summed over
// BurchnallIndex tuples by ascending total weight.  Each y_k only needs to
// satisfy y_k < 1.  For n = 1 this is a plain 2F1 pass-through.
double fa_decomposed(const FAParams& p, const std::vector<double>& y, const SeriesControl& ctrl = {});

// Production path for non-positive arguments: the decomposition with the
// Euler transformation fused into every factor, so all inner 2F1 arguments
// are omega_k = y_k/(y_k - 1) in [0, 1).  Requires y_k <= 0.
double fa_transformed(const FAParams& p, const std::vector<double>& y, const SeriesControl& ctrl = {});

// The fused decomposition sum in omega space (all omega_k in [0,1)):
//   sum over indices of (a)_{A(n,n)}/M! prod_k (b_k)_{B(k)} omega_k^{B(k)} /
//   (c_k)_{B(k)} * prod_k F(c_k - a + B(k) - A(k), b_k + B(k); c_k + B(k); omega_k).
// This is the workhorse behind fa_transformed, the kernel evaluations and
// the scaled-limit; exposed so those callers can attach their own prefactors.
double burchnall_omega_sum(double a, const std::vector<double>& b, const std::vector<double>& c,
                           const std::vector<double>& omega, const SeriesControl& ctrl = {});

enum class FaRelation { DerivativeK, ContiguousA, ContiguousCk };

// Normalized residual |LHS - RHS| / max(1, |RHS|) of one of the elementary
// identities (partial derivative in y_k, contiguous shift of a, contiguous
// shift of c_k).  All constituents are evaluated by fa_direct; the derivative
// is approximated by a central difference with step 1e-6 * max(1, |y_k|).
double fa_relation_residual(FaRelation kind, const FAParams& p, const std::vector<double>& y,
                            int k, const SeriesControl& ctrl = {});

// Both sides of the Pochhammer/Gamma summation identity over the Burchnall
// index set: lhs is the multi-sum
//   sum (a)_{A(n,n)}/M! prod_k (b_k)_{B(k)}/(a)_{A(k)} Gamma(a - b_k + A(k) - B(k)),
// rhs the closed form Gamma(a - sum b) * Gamma(a)^{n-1}.  Requires n >= 2,
// a - sum b > 0 and a not a non-positive integer.  The algebraic tail of the
// slowly convergent multi-sum is extrapolated from a fitted power law.
struct SummationSides {
  double lhs;
  double rhs;
};
SummationSides gamma_summation_sides(int n, double a, const std::vector<double>& b,
                                     const SeriesControl& ctrl = {});

// prod_k y_k^{-b_k} * FA(a, b; c; 1 - 1/y_1, ..., 1 - 1/y_n) for 0 < y_k <= 1.
// As all y_k -> 0 this tends to
//   Gamma(a - sum b)/Gamma(a) * prod_k Gamma(c_k)/Gamma(c_k - b_k).
double fa_scaled_limit(const FAParams& p, const std::vector<double>& y, const SeriesControl& ctrl = {});

// Closed-form limit value of fa_scaled_limit.
double fa_scaled_limit_value(const FAParams& p);

}  // namespace singpot

#endif  // SINGPOT_LAURICELLA_HPP
