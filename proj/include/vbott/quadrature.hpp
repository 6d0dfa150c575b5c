#pragma once
// Quadrature building blocks: Gauss–Legendre rules (cached per order) and
// adaptive Simpson in one and two dimensions.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "vbott/common.hpp"

namespace vbott {

struct GaussRule {
  std::vector<double> x;  // nodes on (-1, 1)
  std::vector<double> w;  // weights, sum = 2
};

// Gauss–Legendre nodes/weights by Newton iteration on P_n. Exact for
// polynomials of degree <= 2n-1. Cached per order.
inline const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1 || n > 200) fail(errc::bad_input, "gauss order out of range");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n(x) = 0.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

// Fixed-order Gauss on [a, b].
template <class F>
double gauss(F&& f, double a, double b, int order = 20) {
  const GaussRule& r = gauss_rule(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i)
    s += r.w[i] * f(mid + half * r.x[i]);
  return s * half;
}

// Composite fixed-order Gauss over equal panels (for integrands with
// moderate local structure where adaptivity is overkill).
template <class F>
double gauss_panels(F&& f, double a, double b, int order, int panels) {
  double s = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) s += gauss(f, a + p * h, a + (p + 1) * h, order);
  return s;
}

namespace detail {

template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b] to absolute tolerance tol.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-10,
                          int max_depth = 48) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Adaptive 2D integral over the rectangle [ax,bx] x [ay,by] by nesting the
// 1D rule. Meant for oracle/reference use, not hot paths.
template <class F2>
double integrate2d_adaptive(F2&& f, double ax, double bx, double ay, double by,
                            double tol = 1e-9) {
  auto outer = [&](double x) {
    auto inner = [&](double y) { return f(x, y); };
    return integrate_adaptive(inner, ay, by, tol * 0.1);
  };
  return integrate_adaptive(outer, ax, bx, tol);
}

}  // namespace vbott
