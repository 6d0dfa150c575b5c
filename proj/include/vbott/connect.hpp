#pragma once

// Short paths to arbitrary targets in the extended group: a corner-transport
// stage reaches the base diffeomorphism with length of order delta, its
// horizontal lift lands at some central value, and a tuned center loop --
// right-translated so it starts at the corner endpoint -- supplies the
// remaining central increment at small extra length.  The result is a single
// uniformly sampled path from (Id, 0) to the requested (phi, alpha).
//
// Central bookkeeping: the alpha column integrates the analytic drift-rate
// estimates of the two stages (corner lattice densities, banded loop
// quadrature).  Right translation adds a cocycle transport term to the
// instantaneous drift of the loop stage, but the loop closes exactly, so that
// term integrates to zero across the stage; it is omitted from the
// intermediate alpha samples (relative size ~1e-8 there) and the endpoint is
// unaffected.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vbott/center_loop.hpp"
#include "vbott/common.hpp"
#include "vbott/corner_path.hpp"
#include "vbott/diffeo.hpp"
#include "vbott/path.hpp"
#include "vbott/virasoro.hpp"

namespace vbott {

struct ConnectConfig {
  double corner_share = 0.85;  // fraction of delta budgeted to the base stage
  double loop_share = 0.90;    // fraction of delta budgeted to the loop length
  double endpoint_tol = 1e-2;  // sup-norm tolerance on the base endpoint
  double center_rel_tol = 0.01;
  int out_frames = 601;        // uniform samples of the assembled path
  double cal_eps_hi = 0.10;    // corner calibration widths for the
  double cal_eps_lo = 0.05;    //   length/endpoint power-law fit
  int corner_retries = 4;
  CornerPathParams corner{};   // epsilon/lambda are overwritten by the solve
  CenterLoopParams loop{};     // grid is overwritten by the target's grid
  DriftConvention conv{};
};

struct ConnectStageInfo {
  bool active = false;
  EnergyReport report;
  double drift = 0.0;       // raw drift integral of the stage
  double alpha_gain = 0.0;  // lifted central increment
};

struct ConnectResult {
  VirPath path;
  EnergyReport report;        // energy/length summed over stages
  ConnectStageInfo corner;
  ConnectStageInfo loop;
  double corner_eps = 0.0;
  double endpoint_base_err = 0.0;
  double endpoint_center_err = 0.0;
  CenterTuneResult tuning;
};

namespace detail {

[[noreturn]] inline void stage_fail(const char* stage, const error& e) {
  fail(e.code(), std::string("connect stage '") + stage + "': " + e.what());
}

// Piecewise-linear sample of a cumulative trapezoid integral.
struct CumCurve {
  std::vector<double> t, v;
  static CumCurve from_density(const std::vector<double>& tn,
                               const std::vector<double>& dens) {
    CumCurve c;
    c.t = tn;
    c.v.resize(tn.size(), 0.0);
    for (std::size_t k = 1; k < tn.size(); ++k)
      c.v[k] = c.v[k - 1] +
               0.5 * (dens[k] + dens[k - 1]) * (tn[k] - tn[k - 1]);
    return c;
  }
  double operator()(double tt) const {
    if (t.empty()) return 0.0;
    if (tt <= t.front()) return v.front();
    if (tt >= t.back()) return v.back();
    const auto it = std::upper_bound(t.begin(), t.end(), tt);
    const std::size_t k = std::size_t(it - t.begin());
    const double w = (tt - t[k - 1]) / (t[k] - t[k - 1]);
    return v[k - 1] + w * (v[k] - v[k - 1]);
  }
  double total() const { return v.empty() ? 0.0 : v.back(); }
};

}  // namespace detail

// Connect (Id, 0) to `target` with base-stage length of order delta and a
// center stage whose energy budget shrinks like delta^2.  Stage errors are
// rethrown with the failing stage named.
inline ConnectResult connect(const VirElement& target, double delta,
                             ConnectConfig cfg = {}) {
  if (!(delta > 0.0)) fail(errc::bad_input, "connect needs delta > 0");
  const Grid gr = target.phi.grid();
  const double max_disp = target.phi.max_displacement();
  const bool has_base = max_disp > 1e-12;

  ConnectResult out;

  // ---------------------------------------------------------------- corner
  std::optional<CornerEvaluator> corner;
  CornerMeasures cm;
  detail::CumCurve alpha_corner;
  if (has_base) {
    try {
      CornerPathParams base = cfg.corner;
      base.g = target.phi.displacement();
      // Calibrate length ~ c * eps^q and endpoint error ~ C * eps on this
      // profile, then solve for the width meeting both budgets.
      base.epsilon = cfg.cal_eps_hi;
      const CornerMeasures m1 = CornerEvaluator(base).measure();
      base.epsilon = cfg.cal_eps_lo;
      const CornerMeasures m2 = CornerEvaluator(base).measure();
      const double q = std::log(m1.report.length / m2.report.length) /
                       std::log(cfg.cal_eps_hi / cfg.cal_eps_lo);
      const double c = m1.report.length / std::pow(cfg.cal_eps_hi, q);
      const double c_end = std::max(m1.endpoint_err / cfg.cal_eps_hi,
                                    m2.endpoint_err / cfg.cal_eps_lo);
      const double len_target = cfg.corner_share * delta;
      double eps = std::pow(len_target / c, 1.0 / q);
      if (c_end > 0.0)
        eps = std::min(eps, 0.9 * cfg.endpoint_tol / c_end);
      eps = std::min(eps, cfg.cal_eps_hi);
      bool ok = false;
      for (int attempt = 0; attempt < cfg.corner_retries; ++attempt) {
        base.epsilon = eps;
        corner.emplace(base);
        cm = corner->measure();
        if (cm.report.length <= len_target * 1.02 &&
            cm.endpoint_err <= 0.95 * cfg.endpoint_tol) {
          ok = true;
          break;
        }
        eps *= 0.75;
      }
      if (!ok)
        fail(errc::blow_up, "corner width solve failed to meet budgets");
      std::vector<double> rate(cm.ddens.size());
      for (std::size_t k = 0; k < rate.size(); ++k)
        rate[k] = cfg.conv.rate(cm.ddens[k]);
      alpha_corner = detail::CumCurve::from_density(cm.tnodes, rate);
      out.corner.active = true;
      out.corner.report = cm.report;
      out.corner.drift = cm.drift;
      out.corner.alpha_gain = alpha_corner.total();
      out.corner_eps = eps;
    } catch (const error& e) {
      detail::stage_fail("base", e);
    }
  }

  // ---------------------------------------------------------------- center
  const double residual = target.alpha - out.corner.alpha_gain;
  const double center_scale = std::max(1.0, std::abs(target.alpha));
  const bool has_loop = std::abs(residual) >
                        1e-12 * std::max(center_scale, std::abs(out.corner.alpha_gain));
  std::optional<CenterLoopEvaluator> loop;
  if (has_loop) {
    try {
      CenterLoopParams lp = cfg.loop;
      lp.grid = gr;
      const double loop_len = cfg.loop_share * delta;
      const double budget = loop_len * loop_len / (2.0 * lp.T);
      out.tuning = tune_center(residual, lp, budget, cfg.conv);
      lp.eps0 = out.tuning.eps0;
      lp.eps1 = out.tuning.eps1;
      lp.lambda = out.tuning.lambda;
      loop.emplace(lp);
      out.loop.active = true;
      out.loop.report = out.tuning.report;
      out.loop.alpha_gain = out.tuning.achieved;
      out.loop.drift = out.tuning.achieved / (cfg.conv.sign * cfg.conv.factor);
    } catch (const error& e) {
      detail::stage_fail("center", e);
    }
  }

  // -------------------------------------------------------------- assemble
  try {
    const Diffeo corner_end =
        corner ? Diffeo(gr, corner->endpoint_displacement(gr).v)
               : Diffeo::identity(gr);
    const double span_c = corner ? (corner->t_hi() - corner->t_lo()) : 0.0;
    const double span_l = loop ? 2.0 * loop->params().T : 0.0;
    const double span = span_c + span_l;

    VirPath P;
    if (span == 0.0) {
      // Trivial target: constant path at the identity.
      P.base.t = {0.0, 1.0};
      P.base.frames = {Diffeo::identity(gr), Diffeo::identity(gr)};
      P.alpha = {0.0, 0.0};
      P.validate();
      out.path = std::move(P);
      out.endpoint_base_err = max_disp;
      out.endpoint_center_err = std::abs(target.alpha);
      return out;
    }

    const int n = std::max(3, cfg.out_frames);
    const double dt = span / (n - 1);
    P.base.t.resize(n);
    P.base.frames.reserve(n);
    P.alpha.resize(n);

    // Per-interval cumulative drift of the loop stage (4-point Gauss keeps
    // the huge separate-leg swings accurate enough that the endpoint keeps
    // full precision after the forward/return cancellation).
    const GaussRule& g4 = gauss_rule(4);
    double loop_cum = 0.0;
    auto loop_drift_at = [&](double s) {
      const double T = loop->params().T;
      return s <= T ? loop->leg_drift_at(Leg::forward, s)
                    : loop->leg_drift_at(Leg::back, s - T);
    };

    double prev_s = 0.0;
    for (int k = 0; k < n; ++k) {
      const double u = k * dt;
      P.base.t[k] = u;
      if (corner && u <= span_c) {
        const double tc = corner->t_lo() + std::min(u, span_c);
        P.base.frames.push_back(corner->frame(tc, gr));
        P.alpha[k] = alpha_corner(tc);
        continue;
      }
      const double s = std::min(u - span_c, span_l);
      if (loop) {
        const double T = loop->params().T;
        const Leg leg = s <= T ? Leg::forward : Leg::back;
        const double ts = s <= T ? s : s - T;
        if (corner) {
          // Right-translated frame psi_s(h(x)), composed in closed form: the
          // loop's fronts are far narrower than a grid cell, so interpolated
          // composition would not survive slope validation.
          std::vector<double> disp(gr.n), sl(gr.n);
          const auto& hu = corner_end.displacement().v;
          const auto& hs = corner_end.slope_nodes().v;
          for (std::size_t i = 0; i < gr.n; ++i) {
            const double y = gr.x(i) + hu[i];
            disp[i] = hu[i] + loop->displacement(leg, ts, y);
            sl[i] = loop->slope_at(leg, ts, y) * hs[i];
          }
          P.base.frames.push_back(Diffeo(gr, std::move(disp), std::move(sl)));
        } else {
          P.base.frames.push_back(loop->frame(leg, ts));
        }
        for (std::size_t i = 0; i < g4.x.size(); ++i) {
          const double mid = 0.5 * (prev_s + s), half = 0.5 * (s - prev_s);
          loop_cum += half * g4.w[i] *
                      cfg.conv.rate(loop_drift_at(mid + half * g4.x[i]));
        }
        prev_s = s;
        P.alpha[k] = out.corner.alpha_gain + loop_cum;
      } else {
        P.base.frames.push_back(corner->frame(corner->t_hi(), gr));
        P.alpha[k] = out.corner.alpha_gain;
      }
    }
    P.validate();

    // Endpoint accounting against the requested target.
    const Diffeo& last = P.base.frames.back();
    double base_err = 0.0;
    for (std::size_t i = 0; i < gr.n; ++i)
      base_err = std::max(base_err,
                          std::abs(last.displacement().v[i] -
                                   target.phi.displacement().v[i]));
    out.endpoint_base_err = base_err;
    out.endpoint_center_err = std::abs(P.alpha.back() - target.alpha);
    if (base_err > cfg.endpoint_tol)
      fail(errc::blow_up, "assembled endpoint misses the base target");
    if (out.endpoint_center_err > cfg.center_rel_tol * center_scale)
      fail(errc::blow_up, "assembled endpoint misses the central target");

    out.report.energy = out.corner.report.energy + out.loop.report.energy;
    out.report.length = out.corner.report.length + out.loop.report.length;
    out.report.max_step_speed = std::max(out.corner.report.max_step_speed,
                                         out.loop.report.max_step_speed);
    out.path = std::move(P);
    return out;
  } catch (const error& e) {
    detail::stage_fail("assembly", e);
  }
}

}  // namespace vbott
