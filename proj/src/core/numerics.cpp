#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace fhaci {

double pow_int(double x, long n) {
  if (n < 0) return 1.0 / pow_int(x, -n);
  double acc = 1.0, base = x;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

double log_gamma_ratio(long l, double m) {
  if (l < 0) throw domain_error("log_gamma_ratio: l must be >= 0");
  if (!(m > 0.0)) throw domain_error("log_gamma_ratio: m must be > 0");
  if (l == 0) return 1.0;
  return std::exp(std::lgamma(static_cast<double>(l) + m) -
                  std::lgamma(static_cast<double>(l) + 1.0) - std::lgamma(m));
}

double ln_i0(double x) {
  if (!(x >= 0.0)) throw domain_error("ln_i0: x must be >= 0");
  if (x < 18.0) {
    // Power series I0(x) = sum_k (x^2/4)^k / (k!)^2.
    const double t = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= t / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * 1e-18) break;
    }
    return std::log(sum);
  }
  // Asymptotic I0(x) ~ e^x / sqrt(2 pi x) * sum_k a_k x^-k with
  // a_k = prod_{j<=k} (2j-1)^2 / (8^k k!).
  const double ix = 1.0 / x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 9; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd * ix / (8.0 * k);
    sum += term;
  }
  return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

namespace {

// Power series sum_n (a)_n (b)_n / ((c)_n n!) z^n for |z| < 1.
double hyp_series(double a, double b, double c, double z, const char* who) {
  double term = 1.0, sum = 1.0;
  const long cap = 2'000'000;
  for (long n = 0; n < cap; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    const double prev = sum;
    sum += term;
    if (std::abs(term) <= 1e-14 * std::abs(sum) && n > 2) return sum;
    if (!std::isfinite(sum)) {
      std::ostringstream os;
      os << who << ": series diverged (a=" << a << ", b=" << b << ", c=" << c
         << ", z=" << z << ")";
      throw numeric_error(os.str(), prev);
    }
  }
  std::ostringstream os;
  os << who << ": series did not converge (a=" << a << ", b=" << b
     << ", c=" << c << ", z=" << z << ")";
  throw numeric_error(os.str(), sum);
}

// Sign of Gamma(x) (x not a non-positive integer).
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  const long k = static_cast<long>(std::ceil(-x));
  return (k % 2) ? -1.0 : 1.0;
}

// 2F1(a, b; b+1; z) for very negative z via the inverse-argument connection
// (valid when b - a is not an integer):
//   2F1(a,b;b+1;z) = b/(b-a) (-z)^-a 2F1(a, a-b; 1+a-b; 1/z)
//                  + Gamma(b+1) Gamma(a-b) / Gamma(a) (-z)^-b.
double hyp_c_eq_b_plus1_large_neg(double a, double b, double z) {
  const double iz = 1.0 / z;
  const double s1 = hyp_series(a, a - b, 1.0 + a - b, iz, "gauss_2f1");
  const double t1 = b / (b - a) * std::pow(-z, -a) * s1;
  const double lg = std::lgamma(b + 1.0) + std::lgamma(a - b) - std::lgamma(a);
  const double t2 =
      gamma_sign(a - b) * gamma_sign(a) * std::exp(lg - b * std::log(-z));
  return t1 + t2;
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
  if (!(z <= 0.0)) throw domain_error("gauss_2f1: z must be <= 0");
  if (c <= 0.0 && c == std::floor(c))
    throw domain_error("gauss_2f1: c must not be a non-positive integer");
  if (z == 0.0) return 1.0;
  if ((a <= 0.0 && a == std::floor(a)) || (b <= 0.0 && b == std::floor(b))) {
    // Terminating polynomial; the direct series handles any z.
    return hyp_series(a, b, c, z, "gauss_2f1");
  }
  // The direct series degrades as z -> -1 (terms decay like k^(a+b-c-1) |z|^k,
  // which stalls whenever a + b - c >= 0), so hand anything past -1/2 to the
  // Pfaff transform, whose argument w = z/(z-1) stays in [1/3, 1).
  if (z > -0.5) return hyp_series(a, b, c, z, "gauss_2f1");

  // The special shape c = b + 1 (c = a + 1 by symmetry) admits a fast exact
  // formula for large |z| where the Pfaff series would need O(|z|) terms.
  if (z < -8.0) {
    double aa = a, bb = b;
    if (c == a + 1.0 && c != b + 1.0) std::swap(aa, bb);
    if (c == bb + 1.0) {
      const double diff = bb - aa;
      if (std::abs(diff - std::round(diff)) > 1e-8 && aa > 0.0)
        return hyp_c_eq_b_plus1_large_neg(aa, bb, z);
    }
  }

  // Pfaff: 2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; z/(z-1)).
  const double w = z / (z - 1.0);
  return std::pow(1.0 - z, -a) * hyp_series(a, c - b, c, w, "gauss_2f1");
}

double simpson(const std::function<double(double)>& f, double a, double b,
               const QuadratureSpec& spec) {
  if (spec.panels < 2 || spec.panels % 2 != 0)
    throw domain_error("simpson: panels must be even and >= 2");
  if (spec.panel_cap < spec.panels)
    throw domain_error("simpson: panel_cap must be >= panels");
  if (a == b) return 0.0;

  int n = spec.panels;
  const double ends = f(a) + f(b);
  // Composite Simpson bookkeeping: all interior nodes of the current level
  // split into "odd" (new this level) and "even" (inherited).
  double interior_even = 0.0, interior_odd = 0.0;
  {
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) {
      const double v = f(a + i * h);
      if (i % 2) interior_odd += v;
      else interior_even += v;
    }
  }
  double h = (b - a) / n;
  double prev = h / 3.0 * (ends + 4.0 * interior_odd + 2.0 * interior_even);
  while (n < spec.panel_cap) {
    n *= 2;
    h = (b - a) / n;
    interior_even += interior_odd;
    interior_odd = 0.0;
    for (int i = 1; i < n; i += 2) interior_odd += f(a + i * h);
    const double cur = h / 3.0 * (ends + 4.0 * interior_odd + 2.0 * interior_even);
    if (std::abs(cur - prev) <=
        std::max(spec.abs_tol, spec.rel_tol * std::abs(cur)))
      return cur;
    prev = cur;
  }
  std::ostringstream os;
  os << "simpson: tolerance not met at panel cap " << spec.panel_cap;
  throw numeric_error(os.str(), prev);
}

namespace {

double adaptive_step(const std::function<double(double)>& f, double a,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

std::vector<double> isotonic_nondecreasing(const std::vector<double>& y) {
  const size_t n = y.size();
  std::vector<double> level(n), weight(n);
  std::vector<size_t> count(n);
  size_t top = 0;
  for (size_t i = 0; i < n; ++i) {
    level[top] = y[i];
    weight[top] = 1.0;
    count[top] = 1;
    ++top;
    while (top > 1 && level[top - 2] > level[top - 1]) {
      const double w = weight[top - 2] + weight[top - 1];
      level[top - 2] =
          (level[top - 2] * weight[top - 2] + level[top - 1] * weight[top - 1]) / w;
      weight[top - 2] = w;
      count[top - 2] += count[top - 1];
      --top;
    }
  }
  std::vector<double> out;
  out.reserve(n);
  for (size_t blk = 0; blk < top; ++blk)
    out.insert(out.end(), count[blk], level[blk]);
  return out;
}

monotone_cubic::monotone_cubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    throw domain_error("monotone_cubic: need >= 2 points and matching sizes");
  for (size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1]))
      throw domain_error("monotone_cubic: x must be strictly increasing");
    if (y_[i] < y_[i - 1])
      throw domain_error("monotone_cubic: y must be non-decreasing");
  }
  std::vector<double> d(n - 1);
  for (size_t i = 0; i + 1 < n; ++i)
    d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  m_.assign(n, 0.0);
  m_[0] = d[0];
  m_[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i)
    m_[i] = (d[i - 1] == 0.0 || d[i] == 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  for (size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m_[i] = m_[i + 1] = 0.0;
      continue;
    }
    const double al = m_[i] / d[i], be = m_[i + 1] / d[i];
    const double s = al * al + be * be;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      m_[i] = tau * al * d[i];
      m_[i + 1] = tau * be * d[i];
    }
  }
}

double monotone_cubic::operator()(double xq) const {
  if (xq <= x_.front()) return y_.front();
  if (xq >= x_.back()) return y_.back();
  const size_t hi =
      std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin();
  const size_t i = hi - 1;
  const double hstep = x_[i + 1] - x_[i];
  const double t = (xq - x_[i]) / hstep;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h10 * hstep * m_[i] + h01 * y_[i + 1] +
         h11 * hstep * m_[i + 1];
}

}  // namespace fhaci
