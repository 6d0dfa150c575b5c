#pragma once

// Doubly mollified clamp
//   f(z, a, eps) = ∬ max(0, min(z - zb, a - ab)) G_eps(zb) G_eps(ab) dzb dab
// with G_eps the unit-mass bump of half-width eps, plus its first and second
// partial derivatives in z, a and eps.  f is symmetric in (z, a), homogeneous
// of degree 1 under (z, a, eps) -> s (z, a, eps), vanishes for z <= -eps or
// a <= -eps, and saturates to the smoothed ramp of the smaller argument once
// the two arguments are more than 2 eps apart.
//
// Everything reduces to the unit scale via f(z, a, eps) = eps f(z/e, a/e, 1).
// At unit scale the inner kernel integrates in closed form against the
// tabulated primitives (C, M, K, Phi, CK, MK); only arguments inside the
// partially-overlapping window need a short Gauss panel sweep.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "vbott/mollifier.hpp"
#include "vbott/quadrature.hpp"

namespace vbott {

namespace detail {

// mu(alpha) = ∫ max(0, alpha - v) G(v) dv: the smoothed positive ramp.
inline double clamp_mu(double alpha) {
  if (alpha <= -1.0) return 0.0;
  if (alpha >= 1.0) return alpha;  // kernel mean is zero
  const auto& T = KernelTables::get();
  return alpha * T.C(alpha) - T.M(alpha);
}

// F_K(d) = ∫ max(0, d + s) K(s) ds with K the kernel autocorrelation:
// the smoothed ramp at the doubled scale.
inline double clamp_FK(double d) {
  if (d <= -2.0) return 0.0;
  if (d >= 2.0) return d;
  const auto& T = KernelTables::get();
  return d * T.CK(d) - T.MK(d);
}

// h(s, alpha) = ∫ max(0, min(s, alpha - v)) G(v) dv.
inline double clamp_h(double s, double alpha) {
  if (s <= 0.0) return 0.0;
  const auto& T = KernelTables::get();
  const double Cm = T.C(alpha - s);
  return s * Cm + alpha * (T.C(alpha) - Cm) - T.M(alpha) + T.M(alpha - s);
}

// Gauss integration of a smooth-by-pieces integrand over [lo, hi] split at
// the given interior breakpoints.
template <class F>
inline double gauss_pieces(F&& f, double lo, double hi, double b1, double b2) {
  if (!(hi > lo)) return 0.0;
  double cuts[4] = {lo, hi, hi, hi};
  std::size_t m = 1;
  for (double b : {b1, b2})
    if (b > lo && b < hi) cuts[m++] = b;
  cuts[m] = hi;
  std::sort(cuts, cuts + m + 1);
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (cuts[i + 1] > cuts[i]) s += gauss_panels(f, cuts[i], cuts[i + 1], 16, 8);
  return s;
}

// Unit-scale value f(zeta, alpha, 1).
inline double clamp_funit(double zeta, double alpha) {
  if (alpha < zeta) std::swap(zeta, alpha);  // f is symmetric
  if (zeta <= -1.0) return 0.0;
  if (alpha - zeta >= 2.0) return clamp_mu(zeta);
  if (zeta >= 1.0) return zeta - clamp_FK(zeta - alpha);
  // zeta in (-1, 1): integrate the inner closed form against the kernel.
  return gauss_pieces(
      [&](double w) { return clamp_h(zeta - w, alpha) * bump(w); }, -1.0, zeta,
      zeta - alpha - 1.0, zeta - alpha + 1.0);
}

// Unit-scale partial f_z(zeta, alpha, 1) = ∫_{-1}^{min(zeta,1)}
// C(alpha - zeta + w) G(w) dw; f_a follows by swapping the arguments.
inline double clamp_funit_z(double zeta, double alpha) {
  if (zeta <= -1.0 || alpha <= -1.0) return 0.0;
  const auto& T = KernelTables::get();
  if (zeta >= 1.0) {
    if (alpha <= zeta - 2.0) return 0.0;
    return T.Phi(zeta - alpha);
  }
  if (alpha - zeta >= 2.0) return T.C(zeta);
  return gauss_pieces(
      [&](double w) { return T.C(alpha - zeta + w) * bump(w); }, -1.0, zeta,
      zeta - alpha - 1.0, zeta - alpha + 1.0);
}

// Truncated kernel correlation R(zeta, alpha) = ∫_{-1}^{min(zeta,1)}
// G(w) G(w - (zeta - alpha)) dw; symmetric in its arguments.
inline double clamp_R(double zeta, double alpha) {
  if (zeta <= -1.0 || alpha <= -1.0) return 0.0;
  const auto& T = KernelTables::get();
  if (zeta >= 1.0) return T.K(zeta - alpha);
  const double d = zeta - alpha;
  const double lo = std::max(-1.0, d - 1.0);
  const double hi = std::min(zeta, d + 1.0);
  if (!(hi > lo)) return 0.0;
  return gauss_panels([&](double w) { return bump(w) * bump(w - d); }, lo, hi,
                      16, 8);
}

}  // namespace detail

// Value of the mollified clamp.
inline double f_eval(double z, double a, double eps) {
  if (!(eps > 0)) fail(errc::bad_input, "f_eval: eps must be positive");
  return eps * detail::clamp_funit(z / eps, a / eps);
}

// Value and first partials only (cheaper than the full stack for integrands
// that never touch the second derivatives).
struct ClampFirst {
  double f = 0, fz = 0, fa = 0;
};

inline ClampFirst f_first(double z, double a, double eps) {
  if (!(eps > 0)) fail(errc::bad_input, "f_first: eps must be positive");
  const double zeta = z / eps, alpha = a / eps;
  ClampFirst out;
  out.f = eps * detail::clamp_funit(zeta, alpha);
  out.fz = detail::clamp_funit_z(zeta, alpha);
  out.fa = detail::clamp_funit_z(alpha, zeta);
  return out;
}

// Value and partial derivatives.  fe, fze, fae are the eps-partials obtained
// from homogeneity (Euler's relation): eps f_e = f - z f_z - a f_a, and the
// analogous first-order relations for f_z and f_a.
struct ClampDerivs {
  double f = 0, fz = 0, fa = 0, fe = 0;
  double fzz = 0, fza = 0, faa = 0;
  double fze = 0, fae = 0;
};

inline ClampDerivs f_derivs(double z, double a, double eps) {
  if (!(eps > 0)) fail(errc::bad_input, "f_derivs: eps must be positive");
  const double zeta = z / eps, alpha = a / eps;
  const auto& T = KernelTables::get();
  const double fu = detail::clamp_funit(zeta, alpha);
  const double fz = detail::clamp_funit_z(zeta, alpha);
  const double fa = detail::clamp_funit_z(alpha, zeta);
  const double R = detail::clamp_R(zeta, alpha);
  ClampDerivs d;
  d.f = eps * fu;
  d.fz = fz;
  d.fa = fa;
  d.fe = fu - zeta * fz - alpha * fa;
  d.fzz = (bump(zeta) * T.C(alpha) - R) / eps;
  d.fza = R / eps;
  d.faa = (bump(alpha) * T.C(zeta) - R) / eps;
  d.fze = -(zeta * d.fzz + alpha * d.fza);
  d.fae = -(zeta * d.fza + alpha * d.faa);
  return d;
}

// Parameter bundle for the clamp family at a fixed scale: the 1D kernel the
// family is built from plus access to the shared cumulative/correlation
// tables. The homogeneity law f(z,a,eps) = eps f(z/eps, a/eps, 1) ties all
// scales to the unit-family tables.
struct FFamily {
  double epsilon = 0.05;
  Mollifier1D kernel() const { return Mollifier1D{epsilon}; }
  const KernelTables& tables() const { return KernelTables::get(); }
};

inline double f_eval(double z, double a, const FFamily& fam) {
  return f_eval(z, a, fam.epsilon);
}
inline ClampFirst f_first(double z, double a, const FFamily& fam) {
  return f_first(z, a, fam.epsilon);
}
inline ClampDerivs f_derivs(double z, double a, const FFamily& fam) {
  return f_derivs(z, a, fam.epsilon);
}

}  // namespace vbott
