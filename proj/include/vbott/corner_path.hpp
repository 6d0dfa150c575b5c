#pragma once
// Short connecting paths from the identity to Id + g. The raw path transports
// a corner profile across the support of g at slope lambda; smoothing it with
// the 2D product mollifier and reparametrizing by tan gives paths whose energy
// vanishes with the mollifier scale while the endpoint converges to Id + g.
//
// The mollified evaluator exploits the row structure of the raw field: at
// fixed tau = tan(t) the displacement is g(x) left of the corner point xa,
// the linear front tau - lambda*x between xa and xb = tau/lambda, and zero to
// the right. The x-convolution of the indicator and linear pieces is exact in
// terms of the kernel cdf/partial-moment tables; only the smooth g-piece needs
// a short one-sided Gauss rule. The t-axis is handled by cell-integrated
// kernel weights on a uniform row lattice, and energy/length/drift use
// Simpson in both axes on the internal lattice.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "vbott/common.hpp"
#include "vbott/diffeo.hpp"
#include "vbott/grid.hpp"
#include "vbott/mollifier.hpp"
#include "vbott/path.hpp"
#include "vbott/quadrature.hpp"
#include "vbott/smoothed_clamp.hpp"

namespace vbott {

struct CornerPathParams {
  GridFunction g;          // target displacement profile (compact support)
  double lambda = 0.0;     // transport slope; <= 0 couples it as 1 - epsilon
  double epsilon = 0.1;    // mollifier radius
  double kappa_x = 0.20;   // x-axis kernel scale as a fraction of epsilon
  double kappa_t = 0.15;   // t-axis kernel scale as a fraction of epsilon
  int nt = 0;              // output frames (0 -> automatic)
  int nx = 0;              // internal samples per epsilon (0 -> automatic 12)
};

// Raw displacement of the corner transport at parameter t (pre-mollification,
// pre-reparametrization). Both clamp terms are kept so profiles of either
// sign are transported exactly; the second term is identically zero when
// g >= 0.
inline double corner_displacement_raw(double t, double lambda, double x,
                                      double gx) {
  const double up = std::max(0.0, std::min(t - lambda * x, gx));
  const double dn = std::max(0.0, std::min(t + lambda * x, -gx));
  return up - dn;
}

// Raw path frame as a map x -> x + displacement, evaluated exactly piecewise
// (no differencing across the kinks).
inline GridFunction corner_path_raw(const GridFunction& g, double lambda,
                                    double t) {
  GridFunction out(g.grid);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.grid.x(i);
    out.v[i] = x + corner_displacement_raw(t, lambda, x, g.v[i]);
  }
  return out;
}

struct CornerMeasures {
  EnergyReport report;
  double drift = 0.0;          // raw space-time integral of psi_tx psi_xx/psi_x^2
  double endpoint_err = 0.0;   // sup |endpoint - (Id+g)| over nodes
  double span = 0.0;           // parameter length of the output window
  std::vector<double> tnodes;  // internal time lattice
  std::vector<double> edens;   // energy density per time node
  std::vector<double> ddens;   // drift density per time node
};

// Mollified corner-path evaluator. All field quantities at (t, x) are
// assembled from a window of tau-rows via cell-integrated kernel weights in
// t; each row is evaluated exactly (tables) except for the g-smoothing Gauss
// panel near the corner point.
class CornerEvaluator {
 public:
  explicit CornerEvaluator(const CornerPathParams& p) : p_(p) {
    const Grid& gr = p_.g.grid;
    if (p_.epsilon <= 0.0) fail(errc::bad_input, "mollifier scale must be positive");
    if (p_.lambda <= 0.0) p_.lambda = 1.0 - p_.epsilon;
    if (!(p_.lambda > 0.0 && p_.lambda < 1.0))
      fail(errc::bad_input, "transport slope must lie in (0,1)");
    if (!(p_.kappa_x > 0.0 && p_.kappa_t > 0.0 &&
          p_.kappa_x * p_.kappa_x + p_.kappa_t * p_.kappa_t <= 1.0 + 1e-12))
      fail(errc::bad_input,
           "kernel axis scales must be positive with kx^2 + kt^2 <= 1");
    ex_ = p_.kappa_x * p_.epsilon;
    et_ = p_.kappa_t * p_.epsilon;

    // profile interpolants and support
    gi_ = CubicInterpolant(p_.g.grid, p_.g.v);
    g1_ = derivative(p_.g, 1);
    g1i_ = CubicInterpolant(g1_.grid, g1_.v);
    double gmax = 0.0, gmin = 0.0;
    std::size_t ilo = p_.g.size(), ihi = 0;
    for (std::size_t i = 0; i < p_.g.size(); ++i) {
      gmax = std::max(gmax, p_.g.v[i]);
      gmin = std::min(gmin, p_.g.v[i]);
      if (std::abs(p_.g.v[i]) > 1e-13) {
        ilo = std::min(ilo, i);
        ihi = std::max(ihi, i);
      }
    }
    if (gmin < -1e-12)
      fail(errc::bad_input,
           "mollified corner evaluator requires a nonnegative profile");
    trivial_ = (ilo > ihi);
    gmax_ = gmax;
    if (trivial_) {
      xg_lo_ = xg_hi_ = 0.0;
      tau_lo_ = 0.0;
      tau_hi_ = 0.0;
      t_lo_ = -3.0 * p_.epsilon;
      t_hi_ = 3.0 * p_.epsilon;
    } else {
      xg_lo_ = gr.x(ilo > 0 ? ilo - 1 : 0);
      xg_hi_ = gr.x(ihi + 1 < p_.g.size() ? ihi + 1 : ihi);
      double mslope = 0.0;
      for (std::size_t i = 0; i < g1_.size(); ++i)
        mslope = std::min(mslope, g1_.v[i]);
      if (mslope <= -p_.lambda)
        fail(errc::bad_input,
             "profile falls too steeply for the transport slope");
      tau_lo_ = p_.lambda * xg_lo_;
      tau_hi_ = 0.0;
      for (std::size_t i = ilo; i <= ihi; ++i)
        tau_hi_ = std::max(tau_hi_, p_.lambda * gr.x(i) + p_.g.v[i]);
      tau_hi_ += 1e-12;
      t_lo_ = std::atan(tau_lo_) - 3.0 * p_.epsilon;
      t_hi_ = std::atan(tau_hi_) + 3.0 * p_.epsilon;
    }
    if (t_hi_ - t_lo_ >= kPi)
      fail(errc::bad_input,
           "parameter window exceeds pi; shrink the profile or the scale");

    // t-row lattice: uniform, covering the output window plus kernel reach
    const int per_eps = p_.nx > 0 ? p_.nx : 12;
    ht_ = p_.epsilon / double(per_eps);
    hx_ = p_.epsilon / double(per_eps);
    t_row_lo_ = t_lo_ - (et_ + 2.0 * ht_);
    const double t_row_hi = t_hi_ + (et_ + 2.0 * ht_);
    n_rows_ = std::size_t(std::ceil((t_row_hi - t_row_lo_) / ht_)) + 1;
    rows_.resize(n_rows_);
    const double t_id = trivial_ ? t_hi_ + 1.0 : std::atan(tau_lo_);
    const double t_sat = trivial_ ? t_lo_ - 1.0 : std::atan(tau_hi_);
    for (std::size_t k = 0; k < n_rows_; ++k) {
      const double tk = t_row_lo_ + double(k) * ht_;
      Row& r = rows_[k];
      if (trivial_ || tk <= t_id) {
        r.kind = Row::zero;
      } else if (tk >= t_sat) {
        r.kind = Row::saturated;
      } else {
        r.kind = Row::active;
        r.tau = std::tan(tk);
        r.ptf = 1.0 + r.tau * r.tau;
        r.xb = r.tau / p_.lambda;
        r.xa = corner_point(r.tau);
        r.g1_xa = g1i_(r.xa);
      }
    }

    // cell-integrated t-kernel weights for on-lattice output nodes
    wr_ = long(std::ceil(et_ / ht_ + 0.5));
    wlat_.resize(std::size_t(2 * wr_ + 1));
    double sum = 0.0;
    const auto& T = KernelTables::get();
    for (long j = -wr_; j <= wr_; ++j) {
      const double a = (double(j) - 0.5) * ht_ / et_;
      const double b = (double(j) + 0.5) * ht_ / et_;
      wlat_[std::size_t(j + wr_)] = T.C(b) - T.C(a);
      sum += wlat_[std::size_t(j + wr_)];
    }
    for (double& w : wlat_) w /= sum;
    rule_ = gauss_rule(24);
  }

  const CornerPathParams& params() const { return p_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  double axis_scale_x() const { return ex_; }
  double axis_scale_t() const { return et_; }

  struct Fields {
    double disp = 0.0, pt = 0.0, px = 1.0, ptx = 0.0, pxx = 0.0;
  };

  // Full field stack at an arbitrary parameter point.
  Fields eval(double t, double x) const {
    Fields F;
    F.px = 0.0;
    const long k0 = row_index_floor(t - et_ - ht_);
    const long k1 = row_index_ceil(t + et_ + ht_);
    const auto& T = KernelTables::get();
    for (long k = k0; k <= k1; ++k) {
      const double tk = t_row_lo_ + double(k) * ht_;
      const double a = (t - (tk + 0.5 * ht_)) / et_;
      const double b = (t - (tk - 0.5 * ht_)) / et_;
      const double w = T.C(b) - T.C(a);
      if (w == 0.0) continue;
      const RowFields rf = row_eval(row_at(k), x, true);
      F.disp += w * rf.disp;
      F.pt += w * rf.pt;
      F.px += w * rf.px;
      F.ptx += w * rf.ptx;
      F.pxx += w * rf.pxx;
    }
    return F;
  }

  // Frame of the mollified path as a diffeomorphism on the given grid.
  Diffeo frame(double t, const Grid& gr, const DiffeoOpts& opts = {}) const {
    std::vector<double> d(gr.n);
    for (std::size_t j = 0; j < gr.n; ++j) d[j] = displacement(t, gr.x(j));
    return Diffeo(gr, std::move(d), opts);
  }

  double displacement(double t, double x) const {
    double d = 0.0;
    const long k0 = row_index_floor(t - et_ - ht_);
    const long k1 = row_index_ceil(t + et_ + ht_);
    const auto& T = KernelTables::get();
    for (long k = k0; k <= k1; ++k) {
      const double tk = t_row_lo_ + double(k) * ht_;
      const double a = (t - (tk + 0.5 * ht_)) / et_;
      const double b = (t - (tk - 0.5 * ht_)) / et_;
      const double w = T.C(b) - T.C(a);
      if (w == 0.0) continue;
      d += w * row_disp(row_at(k), x);
    }
    return d;
  }

  // Endpoint of the path: every row in the final window is saturated, so the
  // displacement is the x-mollification of g.
  GridFunction endpoint_displacement(const Grid& gr) const {
    GridFunction out(gr);
    for (std::size_t j = 0; j < out.size(); ++j)
      out.v[j] = mollified_g(gr.x(j)).g0;
    return out;
  }

  // Energy, length, drift and endpoint error via Simpson on the internal
  // lattice (x within each row stack, then t across the window).
  CornerMeasures measure() const {
    CornerMeasures M;
    M.span = t_hi_ - t_lo_;
    if (trivial_) {
      M.tnodes = {t_lo_, t_hi_};
      M.edens = {0.0, 0.0};
      M.ddens = {0.0, 0.0};
      return M;
    }
    // internal x lattice covering the moving support plus kernel margins
    const double x_lo = std::min(xg_lo_, tau_lo_ / p_.lambda) - 2.0 * p_.epsilon;
    const double x_hi =
        std::max(xg_hi_, tau_hi_ / p_.lambda) + 2.0 * p_.epsilon;
    const std::size_t nxi = std::size_t(std::ceil((x_hi - x_lo) / hx_)) + 1;
    const double hx = (x_hi - x_lo) / double(nxi - 1);
    // internal t lattice: the subrange of row nodes inside the output window
    const long i0 = row_index_ceil(t_lo_);
    const long i1 = row_index_floor(t_hi_);
    const std::size_t nti = std::size_t(i1 - i0 + 1);
    M.tnodes.resize(nti);
    M.edens.assign(nti, 0.0);
    M.ddens.assign(nti, 0.0);
    std::vector<double> ex(nxi), dx(nxi);
    double max_speed = 0.0;
    for (std::size_t i = 0; i < nti; ++i) {
      const long ic = i0 + long(i);
      M.tnodes[i] = t_row_lo_ + double(ic) * ht_;
      for (std::size_t j = 0; j < nxi; ++j) {
        const double x = x_lo + double(j) * hx;
        double pt = 0.0, ptx = 0.0;
        for (long k = -wr_; k <= wr_; ++k) {
          const double w = wlat_[std::size_t(k + wr_)];
          const Row& r = row_at(ic + k);
          if (r.kind != Row::active) continue;
          const double u = (x - r.xa) / ex_, v = (x - r.xb) / ex_;
          const double ind = T_().C(u) - T_().C(v);
          if (ind != 0.0) pt += w * r.ptf * ind;
          const double bu = bump(u), bv = bump(v);
          if (bu != 0.0 || bv != 0.0) ptx += w * r.ptf * (bu - bv) / ex_;
        }
        if (pt == 0.0 && ptx == 0.0) {
          ex[j] = 0.0;
          dx[j] = 0.0;
          continue;
        }
        double px = 0.0, pxx = 0.0;
        for (long k = -wr_; k <= wr_; ++k) {
          const double w = wlat_[std::size_t(k + wr_)];
          const RowFields rf = row_eval(row_at(ic + k), x, false);
          px += w * rf.px;
          pxx += w * rf.pxx;
        }
        if (px < 1e-9) fail(errc::monotonicity_lost, "mollified frame slope collapsed");
        ex[j] = pt * pt * px;
        dx[j] = ptx * pxx / (px * px);
      }
      M.edens[i] = simpson_uniform(ex, hx);
      M.ddens[i] = simpson_uniform(dx, hx);
      max_speed = std::max(max_speed, M.edens[i]);
    }
    M.report.energy = simpson_uniform(M.edens, ht_);
    std::vector<double> sq(nti);
    for (std::size_t i = 0; i < nti; ++i) sq[i] = std::sqrt(std::max(0.0, M.edens[i]));
    M.report.length = simpson_uniform(sq, ht_);
    M.report.max_step_speed = std::sqrt(max_speed);
    M.drift = simpson_uniform(M.ddens, ht_);
    // endpoint error against Id + g on the profile grid
    double err = 0.0;
    for (std::size_t j = 0; j < p_.g.size(); ++j) {
      const double x = p_.g.grid.x(j);
      err = std::max(err, std::abs(mollified_g(x).g0 - p_.g.v[j]));
    }
    M.endpoint_err = err;
    return M;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  struct Row {
    enum Kind { zero, active, saturated };
    Kind kind = zero;
    double tau = 0.0, xa = 0.0, xb = 0.0, ptf = 0.0, g1_xa = 0.0;
  };
  struct RowFields {
    double disp = 0.0, pt = 0.0, px = 1.0, ptx = 0.0, pxx = 0.0;
  };
  struct GParts {
    double g0 = 0.0, g1 = 0.0, g2 = 0.0;
  };

  const KernelTables& T_() const { return KernelTables::get(); }

  long row_index_floor(double t) const {
    return long(std::floor((t - t_row_lo_) / ht_));
  }
  long row_index_ceil(double t) const {
    return long(std::ceil((t - t_row_lo_) / ht_));
  }
  const Row& row_at(long k) const {
    const long kk = std::clamp(k, long(0), long(n_rows_) - 1);
    return rows_[std::size_t(kk)];
  }

  // corner point: unique root of tau - lambda*x - g(x) (monotone by the
  // validated slope condition)
  double corner_point(double tau) const {
    const double hi = tau / p_.lambda;
    auto rho = [&](double x) { return tau - p_.lambda * x - gi_(x); };
    if (rho(hi) >= 0.0) return hi;  // front ahead of the support: empty middle
    const double lo = (tau - gmax_) / p_.lambda - 1.0;
    return brent_root(rho, lo, hi, 1e-13);
  }

  // one-sided mollification of (g, g', g'') over y <= cut, evaluated at x;
  // s-range [max(-1, (x-cut)/e2), 1]
  GParts gparts(double x, double slo) const {
    GParts out;
    if (slo >= 1.0) return out;
    if (x - ex_ > xg_hi_ + 2.0 * p_.g.grid.h()) return out;
    if (x + ex_ < xg_lo_ - 2.0 * p_.g.grid.h()) return out;
    slo = std::max(slo, -1.0);
    const double mid = 0.5 * (slo + 1.0), rad = 0.5 * (1.0 - slo);
    for (std::size_t q = 0; q < rule_.x.size(); ++q) {
      const double s = mid + rad * rule_.x[q];
      const double w = rad * rule_.w[q] * bump(s);
      const double y = x - ex_ * s;
      out.g0 += w * gi_(y);
      out.g1 += w * g1i_(y);
      out.g2 += w * g1i_.derivative_at(y);
    }
    return out;
  }
  GParts mollified_g(double x) const { return gparts(x, -1.0); }

  double row_disp(const Row& r, double x) const {
    if (r.kind == Row::zero) return 0.0;
    if (r.kind == Row::saturated) return gparts(x, -1.0).g0;
    const double u = (x - r.xa) / ex_, v = (x - r.xb) / ex_;
    const double su = std::min(1.0, u), sv = std::max(-1.0, v);
    double d = 0.0;
    if (su > sv) {
      d += (r.tau - p_.lambda * x) * (T_().C(su) - T_().C(sv)) +
           p_.lambda * ex_ * (T_().M(su) - T_().M(sv));
    }
    if (u < 1.0) d += gparts(x, u).g0;
    return d;
  }

  RowFields row_eval(const Row& r, double x, bool want_disp) const {
    RowFields f;
    if (r.kind == Row::zero) return f;
    if (r.kind == Row::saturated) {
      const GParts gp = gparts(x, -1.0);
      if (want_disp) f.disp = gp.g0;
      f.px = 1.0 + gp.g1;
      f.pxx = gp.g2;
      return f;
    }
    const double u = (x - r.xa) / ex_, v = (x - r.xb) / ex_;
    const double ind = T_().C(u) - T_().C(v);
    const double bu = bump(u), bv = bump(v);
    f.pt = r.ptf * ind;
    f.ptx = r.ptf * (bu - bv) / ex_;
    f.px = 1.0 - p_.lambda * ind;
    f.pxx = -p_.lambda * (bu - bv) / ex_ - r.g1_xa * bu / ex_;
    if (u < 1.0) {
      const GParts gp = gparts(x, u);
      f.px += gp.g1;
      f.pxx += gp.g2;
      if (want_disp) f.disp = gp.g0;
    }
    if (want_disp && u > -1.0) {
      const double su = std::min(1.0, u), sv = std::max(-1.0, v);
      if (su > sv)
        f.disp += (r.tau - p_.lambda * x) * (T_().C(su) - T_().C(sv)) +
                  p_.lambda * ex_ * (T_().M(su) - T_().M(sv));
    }
    return f;
  }

  CornerPathParams p_;
  double ex_ = 0.0, et_ = 0.0, ht_ = 0.0, hx_ = 0.0;
  double xg_lo_ = 0.0, xg_hi_ = 0.0, gmax_ = 0.0;
  double tau_lo_ = 0.0, tau_hi_ = 0.0;
  double t_lo_ = 0.0, t_hi_ = 0.0, t_row_lo_ = 0.0;
  bool trivial_ = false;
  std::size_t n_rows_ = 0;
  std::vector<Row> rows_;
  long wr_ = 0;
  std::vector<double> wlat_;
  CubicInterpolant gi_, g1i_;
  GridFunction g1_;
  GaussRule rule_;
};

struct CornerPathResult {
  DiscretePath path;
  EnergyReport report;
  Diffeo endpoint;
  double drift = 0.0;
  double endpoint_err = 0.0;
  double span = 0.0;
  double t_lo = 0.0, t_hi = 0.0;
};

// Assemble the mollified corner path: frames on the profile grid over the
// clipped parameter window, energy/length via the psi_t^2 psi_x form, the
// saturated endpoint, and the raw drift integral.
inline CornerPathResult mollified_corner_path(const CornerPathParams& p) {
  CornerEvaluator ev(p);
  const CornerMeasures M = ev.measure();
  const int nt = p.nt > 0 ? p.nt : 129;
  if (nt < 2) fail(errc::bad_input, "need at least two frames");
  DiscretePath path;
  path.t.resize(std::size_t(nt));
  path.frames.reserve(std::size_t(nt));
  const double dt = (ev.t_hi() - ev.t_lo()) / double(nt - 1);
  for (int i = 0; i < nt; ++i) {
    const double t = ev.t_lo() + double(i) * dt;
    path.t[std::size_t(i)] = t;
    path.frames.push_back(ev.frame(t, p.g.grid));
  }
  path.validate();
  CornerPathResult R{std::move(path),
                     M.report,
                     Diffeo(p.g.grid, ev.endpoint_displacement(p.g.grid).v),
                     M.drift,
                     M.endpoint_err,
                     M.span,
                     ev.t_lo(),
                     ev.t_hi()};
  return R;
}

// Signed smoothed-clamp transport bound on the corner geometry:
//   integral over [0, T] x supp g of f_z^2 f_a g'(x) dx dtau,
// with T the f-parametrized duration tau_hi + 3 eps. The tau-integral at
// fixed x reduces to a w-window integral with w = tau - lambda x clipped to
// the kernel-active band [-eps, g(x) + 2 eps].
struct Bound2Report {
  double value = 0.0;  // signed integral
  double cap = 0.0;    // 4 T sup eps
  double duration = 0.0;
};

inline Bound2Report corner_bound2(const GridFunction& g, double lambda,
                                  double eps) {
  CubicInterpolant gi(g.grid, g.v);
  GridFunction g1 = derivative(g, 1);
  CubicInterpolant g1i(g1.grid, g1.v);
  double xg_lo = g.grid.x(0), xg_hi = g.grid.x(0);
  bool any = false;
  double tau_hi = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.v[i]) > 1e-13) {
      if (!any) xg_lo = g.grid.x(i);
      xg_hi = g.grid.x(i);
      any = true;
      tau_hi = std::max(tau_hi, lambda * g.grid.x(i) + g.v[i]);
    }
  }
  Bound2Report B;
  B.duration = tau_hi + 3.0 * eps;
  B.cap = 4.0 * B.duration * eps;
  if (!any) return B;
  xg_lo -= g.grid.h();
  xg_hi += g.grid.h();
  auto inner = [&](double x) {
    const double a = std::max(0.0, gi(x));
    const double wlo = std::max(-eps, 0.0 - lambda * x);
    const double whi = std::min(a + 2.0 * eps, B.duration - lambda * x);
    if (whi <= wlo) return 0.0;
    const int panels = std::max(4, int(std::ceil((whi - wlo) / (0.5 * eps))));
    return gauss_panels(
        [&](double w) {
          const ClampFirst cf = f_first(w, a, eps);
          return cf.fz * cf.fz * cf.fa;
        },
        wlo, whi, 8, panels);
  };
  B.value = gauss_panels([&](double x) { return g1i(x) * inner(x); }, xg_lo,
                         xg_hi, 8, 32);
  return B;
}

struct CornerSweepPoint {
  double eps = 0.0, lambda = 0.0;
  double energy = 0.0, length = 0.0;
  double endpoint_err = 0.0, drift = 0.0;
  double bound2 = 0.0, bound2_cap = 0.0;
  double span = 0.0;
};

// Vanishing-energy sweep: one mollified corner path per scale. lambda <= 0
// couples the slope to the scale (lambda = 1 - eps); a positive value fixes
// it across the sweep.
inline std::vector<CornerSweepPoint> corner_sweep(
    const GridFunction& g, const std::vector<double>& eps_list,
    double lambda = 0.0, int nx_per_eps = 0) {
  std::vector<CornerSweepPoint> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    CornerPathParams p;
    p.g = g;
    p.epsilon = eps;
    p.lambda = lambda > 0.0 ? lambda : 1.0 - eps;
    p.nx = nx_per_eps;
    CornerEvaluator ev(p);
    const CornerMeasures M = ev.measure();
    const Bound2Report B = corner_bound2(g, p.lambda, eps);
    CornerSweepPoint s;
    s.eps = eps;
    s.lambda = p.lambda;
    s.energy = M.report.energy;
    s.length = M.report.length;
    s.endpoint_err = M.endpoint_err;
    s.drift = M.drift;
    s.bound2 = B.value;
    s.bound2_cap = B.cap;
    s.span = M.span;
    out.push_back(s);
  }
  return out;
}

}  // namespace vbott
