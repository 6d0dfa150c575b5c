#include <cstdio>
#include <cstdlib>
#include <chrono>
#include "vbott/center_loop.hpp"

using namespace vbott;
using clk = std::chrono::steady_clock;
static double ms(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);

  // I table spot checks against the probe3 values.
  for (double mu : {1e-1, 1e-3, 1e-5}) {
    auto t0 = clk::now();
    double I = drift_factor(1.0 - mu);
    auto t1 = clk::now();
    printf("I(1-%g) = %.7f   (%.3f ms)\n", mu, I, ms(t0, t1));
  }

  // Moderate-parameter loop: lambda=0.9, eps0=0.02, eps1=0.3.
  CenterLoopParams p;
  p.lambda = 0.9;
  p.eps0 = 0.02;
  p.eps1 = 0.3;
  CenterLoopEvaluator ev(p);

  auto t0 = clk::now();
  CenterLoopMeasures M = ev.measures();
  auto t1 = clk::now();
  printf("measures: E=%.6f L=%.6f drift=%.6f formula=%.6f  (%.1f ms)\n",
         M.energy, M.length, M.drift, M.drift_formula, ms(t0, t1));
  printf("drift vs formula rel = %.3e\n",
         std::abs(M.drift - M.drift_formula) / std::abs(M.drift_formula));

  // Plateau drift rate vs -I/eps(t) at t=3 (middle of modulation).
  double I = drift_factor(p.lambda);
  double Dmid = ev.leg_drift_at(Leg::forward, 3.0);
  double pred = -I / ev.eps_at(3.0);
  printf("D_fwd(3) = %.6f   -I/eps(3) = %.6f   rel = %.3e\n", Dmid, pred,
         std::abs(Dmid - pred) / std::abs(pred));

  // Return-leg pairing outside the window: exact cancellation.
  double s1 = ev.leg_drift_at(Leg::forward, 1.0) + ev.leg_drift_at(Leg::back, 5.0);
  double s2 = ev.leg_drift_at(Leg::forward, 5.3) + ev.leg_drift_at(Leg::back, 0.7);
  printf("A1 pairs: %.3e  %.3e\n", s1, s2);

  // Constant-width loop: total drift should vanish; energy ~ 2T((1-lam)+c*eps).
  CenterLoopParams pc = p;
  pc.eps1 = 0.0;
  CenterLoopMeasures Mc = CenterLoopEvaluator(pc).measures();
  printf("const-eps: E=%.6f drift=%.3e formula=%.3e\n", Mc.energy, Mc.drift,
         Mc.drift_formula);

  // Frame identity at t=0 for x >= eps0/lam; max |disp| globally.
  Diffeo f0 = ev.frame(Leg::forward, 0.0);
  const Grid& gr = f0.grid();
  double worst_hi = 0.0, worst_all = 0.0;
  for (std::size_t i = 0; i < gr.n; ++i) {
    double d = std::abs(f0.displacement().v[i]);
    worst_all = std::max(worst_all, d);
    if (gr.x(i) >= p.eps0 / p.lambda + 1e-12) worst_hi = std::max(worst_hi, d);
  }
  printf("t=0: |disp| x>=eps/lam: %.3e   global max: %.6e  (c0*eps0=%.6e)\n",
         worst_hi, worst_all, KernelTables::get().half_moment() * p.eps0);

  // Loop closure: first vs last frame of the loop path.
  CenterLoopParams pl = p;
  pl.nt = 17;
  DiscretePath LP = center_loop_path(pl);
  double close = 0.0;
  for (std::size_t i = 0; i < gr.n; ++i)
    close = std::max(close, std::abs(LP.frames.front().displacement().v[i] -
                                     LP.frames.back().displacement().v[i]));
  printf("loop closure max diff = %.3e  (frames=%zu)\n", close, LP.size());

  // Dual route energy at nt=2049 per leg (4097 frames).
  auto t2 = clk::now();
  CenterLoopParams pd = p;
  pd.nt = 2049;
  DiscretePath DP = CenterLoopEvaluator(pd).loop_path();
  EnergyReport er = path_energy(DP);
  auto t3 = clk::now();
  printf("FD route: E=%.6f L=%.6f (%.0f ms)   rel dE=%.3e rel dL=%.3e\n",
         er.energy, er.length, ms(t2, t3),
         std::abs(er.energy - M.energy) / M.energy,
         std::abs(er.length - M.length) / M.length);

  // Extreme regime timing (connect scale).
  CenterLoopParams px;
  px.lambda = 1.0 - 7e-6;
  px.eps0 = 1e-5;
  px.eps1 = 0.078;
  auto t4 = clk::now();
  CenterLoopMeasures Mx = CenterLoopEvaluator(px).measures();
  auto t5 = clk::now();
  printf("extreme: E=%.6f drift=%.4f formula=%.4f rel=%.3e (%.0f ms)\n",
         Mx.energy, Mx.drift, Mx.drift_formula,
         std::abs(Mx.drift - Mx.drift_formula) / std::abs(Mx.drift_formula),
         ms(t4, t5));

  // Tuner at target 1 and -1.
  for (double tgt : {1.0, -1.0}) {
    auto t6 = clk::now();
    CenterTuneResult R = tune_center(tgt);
    auto t7 = clk::now();
    printf("tune(%+.0f): eps0=%g eps1=%.6f lambda=%.6f achieved=%.6f E=%.4f "
           "(%.0f ms)\n",
           tgt, R.eps0, R.eps1, R.lambda, R.achieved, R.report.energy,
           ms(t6, t7));
  }
  return 0;
}
