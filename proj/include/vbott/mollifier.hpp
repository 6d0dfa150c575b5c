#pragma once
// Compactly-supported smoothing kernels. Everything is built from one unit
// bump g with support (-1, 1) and unit mass; the derived tables
//   C(s)  = ∫_{-1}^{s} g                (cdf)
//   M(s)  = ∫_{-1}^{s} w g(w) dw        (partial first moment)
//   K(s)  = ∫ g(w) g(w+s) dw            (autocorrelation, support (-2, 2))
//   Phi(d)= ∫ g(w) C(w-d) dw            (lag-smoothed cdf)
//   CK(d) = ∫_{-2}^{d} K,   MK(d) = ∫_{-2}^{d} s K(s) ds
// are precomputed once on fine grids and evaluated by cubic interpolation
// (node values are quadrature-exact, so lookups are accurate to ~1e-12).

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "vbott/grid.hpp"
#include "vbott/quadrature.hpp"

namespace vbott {

// Unit bump: exp(-1/(1-s^2)) on (-1,1), scaled to unit mass.
inline double bump_unnormalized(double s) {
  const double r = 1.0 - s * s;
  return r > 0.0 ? std::exp(-1.0 / r) : 0.0;
}

inline double bump_mass() {
  static const double z =
      integrate_adaptive([](double s) { return bump_unnormalized(s); }, -1.0,
                         1.0, 1e-15);
  return z;
}

inline double bump(double s) { return bump_unnormalized(s) / bump_mass(); }

class KernelTables {
 public:
  static const KernelTables& get() {
    static KernelTables t;
    return t;
  }

  // cdf of the unit bump; 0 below -1, 1 above 1
  double C(double s) const {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return m_C(s);
  }
  // partial first moment; 0 at both ends (full moment vanishes by symmetry)
  double M(double s) const {
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return m_M(s);
  }
  // autocorrelation of the bump, even, support (-2, 2), K(0) = ∫ g^2
  double K(double s) const {
    if (std::abs(s) >= 2.0) return 0.0;
    return m_K(s);
  }
  // ∫ g(w) C(w-d) dw; 1 for d <= -2, 0 for d >= 2, Phi(d) + Phi(-d) = 1
  double Phi(double d) const {
    if (d <= -2.0) return 1.0;
    if (d >= 2.0) return 0.0;
    return m_Phi(d);
  }
  // cumulative autocorrelation; CK(2) = 1
  double CK(double d) const {
    if (d <= -2.0) return 0.0;
    if (d >= 2.0) return 1.0;
    return m_CK(d);
  }
  // first moment of K; MK(2) = 0
  double MK(double d) const {
    if (d <= -2.0 || d >= 2.0) return 0.0;
    return m_MK(d);
  }
  // ∫_0^1 w g(w) dw = -M(0): the mean displacement of a half-kernel
  double half_moment() const { return -M(0.0); }

 private:
  KernelTables() {
    // Node values by per-cell Gauss (machine accurate for the smooth bump),
    // then cumulative sums; cubic interpolation between nodes.
    const std::size_t n1 = 4097, n2 = 8193;
    Grid g1{1.0, n1};  // [-1, 1]
    Grid g2{2.0, n2};  // [-2, 2]
    m_C = cumulative(g1, [](double s) { return bump(s); });
    m_M = cumulative(g1, [](double s) { return s * bump(s); });

    std::vector<double> kv(n2), pv(n2);
    for (std::size_t i = 0; i < n2; ++i) {
      const double s = g2.x(i);
      // restrict each quadrature to the exact support of its integrand
      const double lo = std::max(-1.0, -1.0 - s), hi = std::min(1.0, 1.0 - s);
      kv[i] = (hi > lo) ? gauss_panels(
                              [&](double w) { return bump(w) * bump(w + s); },
                              lo, hi, 12, 16)
                        : 0.0;
      const double plo = std::max(-1.0, s - 1.0);
      pv[i] = (plo < 1.0)
                  ? gauss_panels(
                        [&](double w) {
                          return bump(w) * KernelTables::C_of(m_C, w - s);
                        },
                        plo, 1.0, 12, 16)
                  : 0.0;
    }
    m_K = CubicInterpolant(g2, kv);
    m_Phi = CubicInterpolant(g2, pv);
    m_CK = cumulative(g2, [this](double s) { return K(s); });
    m_MK = cumulative(g2, [this](double s) { return s * K(s); });
  }

  static double C_of(const CubicInterpolant& c, double s) {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return c(s);
  }

  template <class F>
  static CubicInterpolant cumulative(const Grid& g, F&& f) {
    std::vector<double> v(g.n, 0.0);
    for (std::size_t i = 1; i < g.n; ++i)
      v[i] = v[i - 1] + gauss(f, g.x(i - 1), g.x(i), 7);
    return CubicInterpolant(g, std::move(v));
  }

  CubicInterpolant m_C, m_M, m_K, m_Phi, m_CK, m_MK;
};

// Scaled kernel g_e(s) = g(s/e)/e with support (-e, e).
struct Mollifier1D {
  double e = 1.0;
  double density(double s) const { return bump(s / e) / e; }
  double cdf(double s) const { return KernelTables::get().C(s / e); }
};

// C-infinity step: 0 for x <= x0, 1 for x >= x1, built from the bump cdf.
inline double smooth_step(double x, double x0, double x1) {
  if (x1 <= x0) fail(errc::bad_input, "smooth_step: empty transition");
  return KernelTables::get().C(2.0 * (x - x0) / (x1 - x0) - 1.0);
}

// 1D mollification of a grid function via cell-integrated kernel weights
// w_j = C((j h + h/2)/e) - C((j h - h/2)/e). The weights are positive and sum
// to exactly 1, so constants are reproduced exactly and monotone data stays
// monotone. Outside the grid the function is extended by zero.
inline GridFunction convolve(const GridFunction& f, double e) {
  const double h = f.grid.h();
  if (e < 2.0 * h)
    fail(errc::under_resolved_kernel,
         "kernel half-width below 2 grid cells");
  const auto& T = KernelTables::get();
  const long r = long(std::ceil(e / h + 0.5));
  std::vector<double> w(std::size_t(2 * r + 1));
  double sum = 0.0;
  for (long j = -r; j <= r; ++j) {
    const double a = (double(j) - 0.5) * h / e, b = (double(j) + 0.5) * h / e;
    w[std::size_t(j + r)] = T.C(b) - T.C(a);
    sum += w[std::size_t(j + r)];
  }
  for (double& wi : w) wi /= sum;  // telescoping already gives 1; guard rounding
  const long n = long(f.size());
  GridFunction out(f.grid);
  for (long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long j = -r; j <= r; ++j) {
      const long k = i + j;
      if (k >= 0 && k < n) acc += w[std::size_t(j + r)] * f.v[std::size_t(k)];
    }
    out.v[std::size_t(i)] = acc;
  }
  return out;
}

// Rotation-free 2D mollifier: product of axis bumps at scale e = eps/sqrt(2),
// so the support sits inside the open ball of radius eps.
struct Mollifier2D {
  double eps = 0.1;
  double axis_scale() const { return eps / std::sqrt(2.0); }
  double density(double u, double s) const {
    const double e = axis_scale();
    return bump(u / e) * bump(s / e) / (e * e);
  }
  // Pointwise mollification of a (possibly kinked) field: reference-quality
  // nested adaptive quadrature, not meant for hot loops.
  template <class F2>
  double mollify(F2&& f, double x, double t, double tol = 1e-10) const {
    const double e = axis_scale();
    return integrate2d_adaptive(
        [&](double u, double s) { return f(x - u, t - s) * density(u, s); },
        -e, e, -e, e, tol);
  }
};

// Dense row-major sample field on a uniform 2D lattice (t along rows, x along
// columns), the working representation for sampled space-time data.
struct Field2D {
  std::size_t nt = 0, nx = 0;
  double t0 = 0.0, x0 = 0.0, ht = 0.0, hx = 0.0;
  std::vector<double> v;
  Field2D() = default;
  Field2D(std::size_t nt_, std::size_t nx_, double t0_, double x0_, double ht_,
          double hx_)
      : nt(nt_), nx(nx_), t0(t0_), x0(x0_), ht(ht_), hx(hx_), v(nt_ * nx_) {}
  double& at(std::size_t i, std::size_t j) { return v[i * nx + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * nx + j]; }
  double t(std::size_t i) const { return t0 + double(i) * ht; }
  double x(std::size_t j) const { return x0 + double(j) * hx; }
};

// Separable 2D mollification with a product kernel of axis scales (et, ex):
// one cell-integrated pass per axis (weights as in convolve, normalized and
// positive). Data is extended by its edge values, appropriate for fields that
// are constant outside the sampled window.
inline Field2D convolve2d(const Field2D& f, double ex, double et) {
  if (et < 2.0 * f.ht || ex < 2.0 * f.hx)
    fail(errc::under_resolved_kernel,
         "2D kernel half-width below 2 lattice cells");
  const auto& T = KernelTables::get();
  auto weights = [&](double e, double h) {
    const long r = long(std::ceil(e / h + 0.5));
    std::vector<double> w(std::size_t(2 * r + 1));
    double sum = 0.0;
    for (long j = -r; j <= r; ++j) {
      const double a = (double(j) - 0.5) * h / e,
                   b = (double(j) + 0.5) * h / e;
      w[std::size_t(j + r)] = T.C(b) - T.C(a);
      sum += w[std::size_t(j + r)];
    }
    for (double& wi : w) wi /= sum;
    return w;
  };
  const auto wt = weights(et, f.ht), wx = weights(ex, f.hx);
  const long rt = long(wt.size() / 2), rx = long(wx.size() / 2);
  const long nt = long(f.nt), nx = long(f.nx);
  Field2D mid = f, out = f;
  for (long i = 0; i < nt; ++i)
    for (long j = 0; j < nx; ++j) {
      double acc = 0.0;
      for (long k = -rx; k <= rx; ++k) {
        const long jj = std::clamp(j + k, long(0), nx - 1);
        acc += wx[std::size_t(k + rx)] * f.at(std::size_t(i), std::size_t(jj));
      }
      mid.at(std::size_t(i), std::size_t(j)) = acc;
    }
  for (long j = 0; j < nx; ++j)
    for (long i = 0; i < nt; ++i) {
      double acc = 0.0;
      for (long k = -rt; k <= rt; ++k) {
        const long ii = std::clamp(i + k, long(0), nt - 1);
        acc += wt[std::size_t(k + rt)] * mid.at(std::size_t(ii), std::size_t(j));
      }
      out.at(std::size_t(i), std::size_t(j)) = acc;
    }
  return out;
}

// Isotropic version at the Mollifier2D scale (supp inside the eps-ball).
inline Field2D convolve2d(const Field2D& f, double eps) {
  const double e = Mollifier2D{eps}.axis_scale();
  return convolve2d(f, e, e);
}

}  // namespace vbott
