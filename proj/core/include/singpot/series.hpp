#ifndef SINGPOT_SERIES_HPP
#define SINGPOT_SERIES_HPP

#include <cmath>
#include <cstdint>
#include <limits>

#include "singpot/errors.hpp"

namespace singpot {

// Truncation policy shared by every series evaluator in the library.
// A sum stops once `tail_window` consecutive terms satisfy
//   |term| <= rel_tol * |partial| + abs_tol.
struct SeriesControl {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  std::int64_t max_terms = 100000;
  int tail_window = 5;

  void validate() const {
    if (!(rel_tol > 0.0)) throw PreconditionError("SeriesControl: rel_tol must be positive");
    if (!(abs_tol > 0.0)) throw PreconditionError("SeriesControl: abs_tol must be positive");
    if (max_terms < 1) throw PreconditionError("SeriesControl: max_terms must be >= 1");
    if (tail_window < 1) throw PreconditionError("SeriesControl: tail_window must be >= 1");
  }

  SeriesControl with_rel_tol(double r) const {
    SeriesControl c = *this;
    c.rel_tol = r;
    return c;
  }
};

// Plain windowed tail criterion.
class TailCriterion {
 public:
  explicit TailCriterion(const SeriesControl& ctrl) : ctrl_(ctrl) {}

  bool done(double term, double partial) {
    if (std::abs(term) <= ctrl_.rel_tol * std::abs(partial) + ctrl_.abs_tol)
      ++streak_;
    else
      streak_ = 0;
    return streak_ >= ctrl_.tail_window;
  }

 private:
  SeriesControl ctrl_;
  int streak_ = 0;
};

// Windowed criterion with a geometric tail estimate.  For slowly convergent
// sums (term ratio close to 1) the plain criterion understates the remainder
// by a factor 1/(1-ratio); this variant bounds the tail by
// |term| * r/(1-r) with r the observed ratio.
class GeometricTailCriterion {
 public:
  explicit GeometricTailCriterion(const SeriesControl& ctrl) : ctrl_(ctrl) {}

  bool done(double term, double partial) {
    double a = std::abs(term);
    double tail = a;
    if (prev_ > 0.0 && a > 0.0) {
      double r = a / prev_;
      if (r < 1.0)
        tail = a * r / (1.0 - r);
      else
        tail = std::numeric_limits<double>::infinity();
    }
    prev_ = a;
    if (tail <= ctrl_.rel_tol * std::abs(partial) + ctrl_.abs_tol)
      ++streak_;
    else
      streak_ = 0;
    return streak_ >= ctrl_.tail_window;
  }

 private:
  SeriesControl ctrl_;
  double prev_ = -1.0;
  int streak_ = 0;
};

}  // namespace singpot

#endif  // SINGPOT_SERIES_HPP
