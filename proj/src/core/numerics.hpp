#pragma once
#include <cmath>
#include <functional>
#include <vector>

namespace fhaci {

// ------------------------------------------------------------------ basics

// x^n for integer n by repeated squaring (n may be negative).
double pow_int(double x, long n);

// erf to within 1e-12 absolute (delegates to the C library implementation,
// which is correctly rounded on this platform; unit tests pin the accuracy
// against externally computed references).
inline double erf_accurate(double x) { return std::erf(x); }

// Gamma(l+m) / (l! * Gamma(m)), evaluated in the log domain so large l and m
// do not overflow.  l >= 0 integer, m > 0.
double log_gamma_ratio(long l, double m);

// ln I0(x), the log of the modified Bessel function of order zero, stable for
// large x (never overflows).  x >= 0.
double ln_i0(double x);

// --------------------------------------------------------------- gauss_2f1

// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0 (the only region the model
// needs).  Direct power series on (-1/2, 0]; Pfaff transformation for
// z <= -1/2;
// an inverse-argument connection formula accelerates the special shape
// c == b + 1 (or c == a + 1) when z is very negative.  Relative accuracy
// target 1e-10.  Throws domain_error for z > 0 or non-positive-integer c,
// numeric_error (with best estimate) if the series fails to converge within
// the iteration cap.
double gauss_2f1(double a, double b, double c, double z);

// ---------------------------------------------------------------- simpson

struct QuadratureSpec {
  int panels = 64;          // initial panel count, even, >= 2
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int panel_cap = 1 << 20;  // refuse to refine past this many panels
};

// Composite Simpson estimate of the integral of f over [a, b] with successive
// panel doubling until the estimate changes by less than
// max(abs_tol, rel_tol * |estimate|).  Throws numeric_error (carrying the
// best estimate) if the cap is reached first; domain_error for a bad spec.
double simpson(const std::function<double(double)>& f, double a, double b,
               const QuadratureSpec& spec = QuadratureSpec{});

// Recursive adaptive Simpson with absolute tolerance; used where an integrand
// is smooth except near isolated features (e.g. spectral peaks).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 48);

// ------------------------------------------------- monotone 1-D machinery

// Isotonic (non-decreasing) least-squares fit of y with unit weights: pool
// adjacent violators.
std::vector<double> isotonic_nondecreasing(const std::vector<double>& y);

// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slope
// limiting).  Requires strictly increasing x and non-decreasing y; the
// interpolant is then non-decreasing on the whole range.  Queries outside the
// range clamp to the end values.
class monotone_cubic {
 public:
  monotone_cubic() = default;
  monotone_cubic(std::vector<double> x, std::vector<double> y);
  double operator()(double xq) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  double y_front() const { return y_.front(); }
  double y_back() const { return y_.back(); }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace fhaci
