#pragma once
// Uniform 1D grids on [-L, L] and the discrete calculus used everywhere:
// finite-difference derivatives (>= 4th order), Simpson integration, C^1
// cubic interpolation (optionally monotone), and root finding / inversion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "vbott/common.hpp"

namespace vbott {

// Uniform grid with n points spanning [-L, L] inclusive.
struct Grid {
  double L = 10.0;
  std::size_t n = 1024;

  double h() const { return 2.0 * L / double(n - 1); }
  double x(std::size_t i) const { return -L + double(i) * h(); }
  std::vector<double> xs() const {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = x(i);
    return v;
  }
  bool operator==(const Grid& o) const { return L == o.L && n == o.n; }
};

// Sampled function on a Grid.
struct GridFunction {
  Grid grid;
  std::vector<double> v;

  GridFunction() = default;
  explicit GridFunction(const Grid& g) : grid(g), v(g.n, 0.0) {}
  template <class F>
  GridFunction(const Grid& g, F&& f) : grid(g), v(g.n) {
    for (std::size_t i = 0; i < g.n; ++i) v[i] = f(g.x(i));
  }
  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
};

// Uniform time grid 0 = t_0 < ... < t_{nt-1} = T.
struct TimeGrid {
  double T = 1.0;
  std::size_t nt = 101;
  double dt() const { return T / double(nt - 1); }
  double t(std::size_t k) const { return double(k) * dt(); }
};

// Finite-difference weights for the m-th derivative at x0 from arbitrary
// nodes (Fornberg's recurrence).
inline std::vector<double> fd_weights(const std::vector<double>& xs, double x0,
                                      int m) {
  const int nd = int(xs.size()) - 1;
  std::vector<std::vector<double>> c(
      std::size_t(nd + 1), std::vector<double>(std::size_t(m + 1), 0.0));
  double c1 = 1.0, c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= nd; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[std::size_t(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[std::size_t(i)] - xs[std::size_t(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[std::size_t(i)][std::size_t(k)] =
              c1 * (k * c[std::size_t(i - 1)][std::size_t(k - 1)] -
                    c5 * c[std::size_t(i - 1)][std::size_t(k)]) / c2;
        c[std::size_t(i)][0] = -c1 * c5 * c[std::size_t(i - 1)][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[std::size_t(j)][std::size_t(k)] =
            (c4 * c[std::size_t(j)][std::size_t(k)] -
             k * c[std::size_t(j)][std::size_t(k - 1)]) / c3;
      c[std::size_t(j)][0] = c4 * c[std::size_t(j)][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) w[i] = c[i][std::size_t(m)];
  return w;
}

namespace detail {

// All window-local weight sets for a uniform grid: row j holds the weights
// when the evaluation point sits at node j of the w-point window.
inline std::vector<std::vector<double>> window_weights(int w, int m, double h) {
  std::vector<double> nodes(static_cast<std::size_t>(w));
  for (int k = 0; k < w; ++k) nodes[std::size_t(k)] = k * h;
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(w));
  for (int j = 0; j < w; ++j) rows[std::size_t(j)] = fd_weights(nodes, j * h, m);
  return rows;
}

}  // namespace detail

// m-th derivative (m = 1, 2, 3) of a grid function. Centered stencils in the
// interior (5-point for m=1, 7-point for m=2,3), sliding one-sided windows at
// the edges; >= 4th-order accurate throughout.
inline GridFunction derivative(const GridFunction& f, int m = 1) {
  if (m < 1 || m > 3) fail(errc::bad_input, "derivative order must be 1..3");
  const int w = (m == 1) ? 5 : 7;
  const std::size_t n = f.size();
  if (n < std::size_t(w)) fail(errc::grid_too_coarse, "fewer points than stencil width");
  const auto rows = detail::window_weights(w, m, f.grid.h());
  GridFunction out(f.grid);
  const int half = w / 2;
  for (std::size_t i = 0; i < n; ++i) {
    long s = long(i) - half;
    s = std::clamp(s, 0L, long(n) - w);
    const auto& wt = rows[std::size_t(long(i) - s)];
    double acc = 0.0;
    for (int k = 0; k < w; ++k) acc += wt[std::size_t(k)] * f.v[std::size_t(s + k)];
    out.v[i] = acc;
  }
  return out;
}

// Composite Simpson over uniformly spaced samples, with a 3/8 block when the
// interval count is odd. Exact on cubics for n >= 4; all weights positive.
inline double simpson_uniform(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 2) fail(errc::grid_too_coarse, "need at least 2 points to integrate");
  if (n == 2) return 0.5 * h * (f[0] + f[1]);
  if (n == 3) return h / 3.0 * (f[0] + 4.0 * f[1] + f[2]);
  std::size_t m = n - 1;  // interval count
  double tail = 0.0;
  if (m % 2 != 0) {
    // closing 3/8 block over the last three intervals
    tail = 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
    m -= 3;
  }
  double s = 0.0;
  if (m > 0) {
    s = f[0] + f[m];
    for (std::size_t i = 1; i < m; i += 2) s += 4.0 * f[i];
    for (std::size_t i = 2; i < m; i += 2) s += 2.0 * f[i];
    s *= h / 3.0;
  }
  return s + tail;
}

// Definite integral over [-L, L].
inline double integrate(const GridFunction& f) {
  return simpson_uniform(f.v, f.grid.h());
}

// Largest |f| over the outer margin_fraction of the domain on each side.
inline double boundary_max(const GridFunction& f, double margin_fraction) {
  const std::size_t n = f.size();
  const auto k = std::size_t(std::ceil(margin_fraction * double(n)));
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(k, n); ++i) {
    m = std::max(m, std::abs(f[i]));
    m = std::max(m, std::abs(f[n - 1 - i]));
  }
  return m;
}

// C^1 piecewise-cubic Hermite interpolant with 4th-order finite-difference
// node slopes. The monotone variant limits each slope into
// [0, 3 min(adjacent secants)] (a sufficient monotonicity box), which keeps
// monotone data monotone and leaves smooth data at full 4th-order accuracy
// wherever the limiter is inactive. Evaluates to 0 outside [-L, L].
class CubicInterpolant {
 public:
  CubicInterpolant() = default;
  CubicInterpolant(Grid grid, std::vector<double> values, bool monotone = false)
      : m_grid(grid), m_v(std::move(values)) {
    if (m_v.size() != m_grid.n) fail(errc::bad_input, "interpolant size mismatch");
    GridFunction gf;
    gf.grid = m_grid;
    gf.v = m_v;
    m_s = derivative(gf, 1).v;
    if (monotone) limit_slopes();
  }

  double operator()(double x) const { return eval<0>(x); }
  double derivative_at(double x) const { return eval<1>(x); }

  const std::vector<double>& values() const { return m_v; }
  const std::vector<double>& slopes() const { return m_s; }

 private:
  template <int Deriv>
  double eval(double x) const {
    const double L = m_grid.L, h = m_grid.h();
    if (x <= -L || x >= L) {
      if (x == -L) return Deriv == 0 ? m_v.front() : m_s.front();
      if (x == L) return Deriv == 0 ? m_v.back() : m_s.back();
      return 0.0;
    }
    const double u = (x + L) / h;
    auto i = std::min(std::size_t(u), m_grid.n - 2);
    const double t = u - double(i);
    const double v0 = m_v[i], v1 = m_v[i + 1];
    const double s0 = m_s[i] * h, s1 = m_s[i + 1] * h;
    if constexpr (Deriv == 0) {
      const double h00 = (1.0 + 2.0 * t) * sq(1.0 - t);
      const double h10 = t * sq(1.0 - t);
      const double h01 = t * t * (3.0 - 2.0 * t);
      const double h11 = t * t * (t - 1.0);
      return h00 * v0 + h10 * s0 + h01 * v1 + h11 * s1;
    } else {
      const double d00 = 6.0 * t * (t - 1.0);
      const double d10 = (1.0 - t) * (1.0 - 3.0 * t);
      const double d01 = -6.0 * t * (t - 1.0);
      const double d11 = t * (3.0 * t - 2.0);
      return (d00 * v0 + d10 * s0 + d01 * v1 + d11 * s1) / h;
    }
  }

  void limit_slopes() {
    const double h = m_grid.h();
    const std::size_t n = m_grid.n;
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (m_v[i + 1] - m_v[i]) / h;
    for (std::size_t i = 0; i < n; ++i) {
      const double dl = (i > 0) ? sec[i - 1] : sec[i];
      const double dr = (i + 1 < n) ? sec[i] : sec[i - 1];
      if (dl == 0.0 || dr == 0.0 || (dl > 0) != (dr > 0)) {
        m_s[i] = 0.0;
        continue;
      }
      const double cap = 3.0 * std::min(std::abs(dl), std::abs(dr));
      const double want = m_s[i];
      const double sgn = (dl > 0) ? 1.0 : -1.0;
      if ((want > 0) != (dl > 0) || want == 0.0)
        m_s[i] = 0.0;
      else
        m_s[i] = sgn * std::min(std::abs(want), cap);
    }
  }

  Grid m_grid;
  std::vector<double> m_v;
  std::vector<double> m_s;  // node slopes
};

// Brent root finder for f(x) = 0 on a bracketing interval [a, b].
template <class F>
double brent_root(F&& f, double a, double b, double tol = 1e-12,
                  int max_iter = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) fail(errc::bad_input, "brent_root: no sign change");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0) == (fc > 0)) { c = a; fc = fa; d = b - a; e = d; }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) { p = 2.0 * xm * s; q = 1.0 - s; }
      else {
        q = fa / fc; r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else { d = xm; e = d; }
    } else { d = xm; e = d; }
    a = b; fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

// Inverse of a strictly increasing function F at value y, bracketed on [a, b].
template <class F>
double invert_monotone(F&& fun, double y, double a, double b,
                       double tol = 1e-12) {
  auto g = [&](double x) { return fun(x) - y; };
  double ga = g(a), gb = g(b);
  if (ga > 0.0 || gb < 0.0)
    fail(errc::bad_input, "invert_monotone: target outside range");
  return brent_root(g, a, b, tol);
}

// Resample onto another grid through the cubic interpolant.
inline GridFunction resample(const GridFunction& f, const Grid& to,
                             bool monotone = false) {
  CubicInterpolant ip(f.grid, f.v, monotone);
  GridFunction out(to);
  for (std::size_t i = 0; i < to.n; ++i) out.v[i] = ip(to.x(i));
  return out;
}

// Point evaluation of a grid function off the nodes (cubic interpolant).
// For repeated evaluation construct a CubicInterpolant once instead.
inline double interpolate(const GridFunction& f, double x,
                          bool monotone = false) {
  return CubicInterpolant(f.grid, f.v, monotone)(x);
}

// Nodewise inverse of a strictly increasing grid map y_i = F(x_i): returns
// the grid function G with G(y evaluated at the same nodes) -- that is,
// G_i = F^{-1}(x_i), interpreting F through its monotone cubic interpolant.
// Nodes outside the range of F keep the clamped endpoint preimage.
inline GridFunction invert_monotone(const GridFunction& F, double tol = 1e-12) {
  const Grid& gr = F.grid;
  for (std::size_t i = 0; i + 1 < F.size(); ++i)
    if (!(F[i + 1] > F[i]))
      fail(errc::not_a_diffeomorphism, "invert_monotone: samples not strictly "
                                       "increasing at node " + std::to_string(i));
  CubicInterpolant ip(gr, F.v, /*monotone=*/true);
  GridFunction out(gr);
  for (std::size_t i = 0; i < gr.n; ++i) {
    const double y = gr.x(i);
    if (y <= F.v.front()) { out[i] = -gr.L; continue; }
    if (y >= F.v.back())  { out[i] = gr.L;  continue; }
    out[i] = invert_monotone([&](double x) { return ip(x); }, y, -gr.L, gr.L,
                             tol);
  }
  return out;
}

// Cumulative integral of uniformly sampled values: out[k] = ∫_{t_0}^{t_k} v.
// Corrected trapezoid per cell (h/2 (v_i + v_{i+1}) + h^2/12 (m_i - m_{i+1})
// with 4th-order finite-difference slopes m), 4th-order accurate overall.
inline std::vector<double> cumulative_integral(const std::vector<double>& v,
                                               double h) {
  const std::size_t n = v.size();
  if (n < 2) return std::vector<double>(n, 0.0);
  std::vector<double> m(n);
  if (n < 5) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t a = (i == 0) ? 0 : i - 1, b = (i + 1 < n) ? i + 1 : i;
      m[i] = (v[b] - v[a]) / (double(b - a) * h);
    }
  } else {
    std::vector<double> xs(5), row;
    for (int j = 0; j < 5; ++j) xs[j] = j * h;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t lo = (i < 2) ? 0 : (i + 2 >= n ? n - 5 : i - 2);
      row = fd_weights(xs, double(i - lo) * h, 1);
      double s = 0;
      for (int j = 0; j < 5; ++j) s += row[j] * v[lo + j];
      m[i] = s;
    }
  }
  std::vector<double> out(n);
  out[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    out[i + 1] = out[i] + 0.5 * h * (v[i] + v[i + 1]) +
                 h * h / 12.0 * (m[i] - m[i + 1]);
  return out;
}

}  // namespace vbott
