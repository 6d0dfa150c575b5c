#pragma once

// Discrete paths of diffeomorphisms and of centrally extended group elements:
// time differentiation along the path, right-logarithmic derivative, kinetic
// energy and length, the vertical drift rate, horizontal lifts of base paths,
// and right translation. Frames are uniformly spaced in time and share one
// spatial grid.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vbott/diffeo.hpp"
#include "vbott/virasoro.hpp"

namespace vbott {

// Uniformly sampled path t_k -> phi(t_k) in the diffeomorphism group.
struct DiscretePath {
  std::vector<double> t;
  std::vector<Diffeo> frames;

  std::size_t size() const { return frames.size(); }
  double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
  double span() const { return t.empty() ? 0.0 : t.back() - t.front(); }
  const Grid& grid() const { return frames.front().grid(); }

  void validate() const {
    if (frames.size() < 2 || frames.size() != t.size())
      fail(errc::bad_input, "path needs >= 2 frames with matching times");
    const double h = dt();
    if (!(h > 0)) fail(errc::bad_input, "path times must increase");
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
      if (std::abs(t[k + 1] - t[k] - h) > 1e-9 * (1.0 + std::abs(h)))
        fail(errc::bad_input, "path times must be uniformly spaced");
    for (const auto& f : frames)
      if (!(f.grid() == frames.front().grid()))
        fail(errc::bad_input, "path frames must share one grid");
  }
};

// Path in the centrally extended group: base path plus central coordinates.
struct VirPath {
  DiscretePath base;
  std::vector<double> alpha;

  void validate() const {
    base.validate();
    if (alpha.size() != base.size())
      fail(errc::bad_input, "central coordinates must match frame count");
  }
};

// Convention knobs for the drift of the central coordinate along horizontal
// lifts.  With drift rate D(t) = ∫ phi_tx phi_xx / phi_x^2 dx, a horizontal
// lift satisfies d alpha/dt = sign * factor * D(t).  The default (sign -1,
// factor 1) integrates the cocycle-derivative identity along the path; the
// alternative factor 1/2 with sign +1 matches the vertical-component formula
// a = alpha_t - (1/2) D(t) read at fixed time.  Both are exposed because the
// two readings disagree and the discrepancy is part of what the drift
// experiments measure.
struct DriftConvention {
  double factor = 1.0;
  int sign = -1;
  double rate(double D) const { return sign * factor * D; }
};

namespace detail {

// Sliding 4th-order time stencils: row(k) of weights applied to frames
// lo(k)..lo(k)+w-1. Window shrinks only when the path has fewer frames.
struct TimeStencil {
  int w = 5;
  std::size_t nt = 0;
  double dt = 0.0;
  std::vector<std::vector<double>> rows;

  TimeStencil(std::size_t nt_, double dt_) : nt(nt_), dt(dt_) {
    w = int(std::min<std::size_t>(5, nt));
    if (w < 2) fail(errc::bad_input, "time derivative needs >= 2 frames");
    rows = window_weights(w, 1, dt);
  }
  std::size_t lo(std::size_t k) const {
    const std::size_t half = std::size_t(w) / 2;
    if (k < half) return 0;
    if (k + (std::size_t(w) - half) > nt) return nt - std::size_t(w);
    return k - half;
  }
  const std::vector<double>& row(std::size_t k) const {
    return rows[k - lo(k)];
  }
};

}  // namespace detail

// Time derivative phi_t of the frame maps at every sample time (applied to
// the displacement, which has the same time derivative as the map itself).
inline std::vector<GridFunction> path_time_derivative(const DiscretePath& P) {
  P.validate();
  detail::TimeStencil st(P.size(), P.dt());
  const Grid& gr = P.grid();
  std::vector<GridFunction> out(P.size(), GridFunction(gr));
  for (std::size_t k = 0; k < P.size(); ++k) {
    const auto& row = st.row(k);
    const std::size_t lo = st.lo(k);
    for (std::size_t i = 0; i < gr.n; ++i) {
      double s = 0.0;
      for (int j = 0; j < st.w; ++j)
        s += row[std::size_t(j)] * P.frames[lo + std::size_t(j)].displacement()[i];
      out[k][i] = s;
    }
  }
  return out;
}

// Right logarithmic derivative u(t) = phi_t ∘ phi^{-1} of a path, sampled on
// the common grid at every frame time.
inline std::vector<GridFunction> log_derivative_path(const DiscretePath& P,
                                                     double inverse_tol = 1e-12) {
  auto phit = path_time_derivative(P);
  const Grid& gr = P.grid();
  std::vector<GridFunction> out(P.size(), GridFunction(gr));
  for (std::size_t k = 0; k < P.size(); ++k) {
    Diffeo inv = inverse(P.frames[k], inverse_tol);
    CubicInterpolant ip(gr, phit[k].v);
    for (std::size_t i = 0; i < gr.n; ++i) out[k][i] = ip(inv(gr.x(i)));
  }
  return out;
}

// Drift rate D(t_k) = ∫ phi_tx phi_xx / phi_x^2 dx at every frame.  phi_tx is
// the sliding time stencil applied to the spatial node slopes; phi_xx comes
// from the spatial stencil on the displacement.
inline std::vector<double> drift_rate(const DiscretePath& P) {
  P.validate();
  detail::TimeStencil st(P.size(), P.dt());
  const Grid& gr = P.grid();
  std::vector<GridFunction> uxx;
  uxx.reserve(P.size());
  for (const auto& f : P.frames) uxx.push_back(derivative(f.displacement(), 2));
  std::vector<double> out(P.size());
  GridFunction integrand(gr);
  for (std::size_t k = 0; k < P.size(); ++k) {
    const auto& row = st.row(k);
    const std::size_t lo = st.lo(k);
    for (std::size_t i = 0; i < gr.n; ++i) {
      double ptx = 0.0;
      for (int j = 0; j < st.w; ++j)
        ptx += row[std::size_t(j)] * P.frames[lo + std::size_t(j)].slope_nodes()[i];
      const double px = P.frames[k].slope_nodes()[i];
      integrand[i] = ptx * uxx[k][i] / (px * px);
    }
    out[k] = integrate(integrand);
  }
  return out;
}

// Horizontal lift of a base path: alpha(t) = a0 + sign * factor * ∫_0^t D.
inline VirPath horizontal_lift(const DiscretePath& P, double a0 = 0.0,
                               const DriftConvention& conv = {}) {
  auto D = drift_rate(P);
  std::vector<double> rate(D.size());
  for (std::size_t k = 0; k < D.size(); ++k) rate[k] = conv.rate(D[k]);
  auto alpha = cumulative_integral(rate, P.dt());
  for (auto& a : alpha) a += a0;
  return VirPath{P, std::move(alpha)};
}

// Central companion along a geodesic with constant vertical charge a:
// alpha(t) = alpha0 + ∫_0^t ( a + (1/2) D ).  This is the fixed-time
// vertical-component reading and is deliberately independent of
// DriftConvention.
inline std::vector<double> alpha_evolution(const DiscretePath& P, double a,
                                           double alpha0 = 0.0) {
  auto D = drift_rate(P);
  std::vector<double> rate(D.size());
  for (std::size_t k = 0; k < D.size(); ++k) rate[k] = a + 0.5 * D[k];
  auto alpha = cumulative_integral(rate, P.dt());
  for (auto& v : alpha) v += alpha0;
  return alpha;
}

// Pointwise defect alpha'(t_k) - sign * factor * D(t_k); identically zero (to
// stencil accuracy) along horizontal lifts taken with the same convention.
inline std::vector<double> vertical_defect(const VirPath& P,
                                           const DriftConvention& conv = {}) {
  P.validate();
  auto D = drift_rate(P.base);
  detail::TimeStencil st(P.base.size(), P.base.dt());
  std::vector<double> out(P.base.size());
  for (std::size_t k = 0; k < P.base.size(); ++k) {
    const auto& row = st.row(k);
    const std::size_t lo = st.lo(k);
    double ad = 0.0;
    for (int j = 0; j < st.w; ++j)
      ad += row[std::size_t(j)] * P.alpha[lo + std::size_t(j)];
    out[k] = ad - conv.rate(D[k]);
  }
  return out;
}

// Kinetic energy, length and the largest instantaneous speed of a path.
// length^2 <= span * energy holds exactly for the discrete quadrature
// (positive Simpson weights + Cauchy-Schwarz) and is enforced as a sanity
// check on the arithmetic.
struct EnergyReport {
  double energy = 0.0;
  double length = 0.0;
  double max_step_speed = 0.0;
};

namespace detail {

inline EnergyReport energy_from_speed2(const std::vector<double>& q, double dt,
                                       double span) {
  EnergyReport rep;
  std::vector<double> s(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double qs = std::max(q[k], 0.0);
    s[k] = std::sqrt(qs);
    rep.max_step_speed = std::max(rep.max_step_speed, s[k]);
  }
  rep.energy = simpson_uniform(q, dt);
  rep.length = simpson_uniform(s, dt);
  if (rep.length * rep.length >
      span * rep.energy + 1e-9 * (1.0 + std::abs(rep.energy)))
    fail(errc::blow_up, "energy/length quadrature inconsistency");
  return rep;
}

}  // namespace detail

// ∫ ||phi_t||^2_{phi} dt with the right-invariant L2 metric: the spatial
// integrand at fixed t is phi_t^2 phi_x (the pullback of ∫ u^2 dx).
inline EnergyReport path_energy(const DiscretePath& P) {
  auto phit = path_time_derivative(P);
  const Grid& gr = P.grid();
  std::vector<double> q(P.size());
  GridFunction integrand(gr);
  for (std::size_t k = 0; k < P.size(); ++k) {
    for (std::size_t i = 0; i < gr.n; ++i)
      integrand[i] = phit[k][i] * phit[k][i] * P.frames[k].slope_nodes()[i];
    q[k] = integrate(integrand);
  }
  return detail::energy_from_speed2(q, P.dt(), P.span());
}

// Extended-group energy: the vertical speed alpha'(t) - sign * factor * D(t)
// is added in quadrature to the base speed.
inline EnergyReport path_energy(const VirPath& P,
                                const DriftConvention& conv = {}) {
  auto phit = path_time_derivative(P.base);
  auto vert = vertical_defect(P, conv);
  const Grid& gr = P.base.grid();
  std::vector<double> q(P.base.size());
  GridFunction integrand(gr);
  for (std::size_t k = 0; k < P.base.size(); ++k) {
    for (std::size_t i = 0; i < gr.n; ++i)
      integrand[i] =
          phit[k][i] * phit[k][i] * P.base.frames[k].slope_nodes()[i];
    q[k] = integrate(integrand) + vert[k] * vert[k];
  }
  return detail::energy_from_speed2(q, P.base.dt(), P.base.span());
}

// Right translation of a whole path by a fixed group element.
inline DiscretePath path_right_translate(const DiscretePath& P,
                                         const Diffeo& g) {
  P.validate();
  DiscretePath out;
  out.t = P.t;
  out.frames.reserve(P.size());
  for (const auto& f : P.frames) out.frames.push_back(compose(f, g));
  return out;
}

// Extended version: each frame is multiplied on the right by (g, beta), so
// the central coordinate picks up beta plus the group cocycle.
inline VirPath path_right_translate(const VirPath& P, const VirElement& g) {
  P.validate();
  VirPath out;
  out.base.t = P.base.t;
  out.base.frames.reserve(P.base.size());
  out.alpha.reserve(P.base.size());
  for (std::size_t k = 0; k < P.base.size(); ++k) {
    VirElement prod =
        vir_mul(VirElement{P.base.frames[k], P.alpha[k]}, g);
    out.base.frames.push_back(std::move(prod.phi));
    out.alpha.push_back(prod.alpha);
  }
  return out;
}

}  // namespace vbott
