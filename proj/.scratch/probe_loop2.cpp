#include <cstdio>
#include <cstdlib>
#include <random>
#include "vbott/center_loop.hpp"

using namespace vbott;

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  CenterLoopParams p;
  p.lambda = 0.9;
  p.eps0 = 0.02;
  p.eps1 = 0.3;
  CenterLoopEvaluator ev(p);

  // (a) pointwise displacement vs nested 2D quadrature of the raw clamp.
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ut(0.3, 5.7), ux(-0.5, 6.5);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double t = ut(rng), x = ux(rng);
    const double eps = ev.eps_at(t);
    const double z = t - p.lambda * x, a = ev.profile()(x);
    auto inner = [&](double u) {
      return gauss_panels(
          [&](double v) {
            const double m = std::min(z - eps * u, a - eps * v);
            return bump(v) * std::max(0.0, m);
          },
          -1.0, 1.0, 12, 24);
    };
    const double oracle =
        ev.cutoff(x) *
        gauss_panels([&](double u) { return bump(u) * inner(u); }, -1.0, 1.0,
                     12, 24);
    const double got = ev.displacement(Leg::forward, t, x);
    worst = std::max(worst, std::abs(got - oracle));
  }
  printf("2D-oracle max diff = %.3e\n", worst);

  // (b) fields vs centered FD of pointwise displacement.
  double wt = 0.0, wx = 0.0, wtx = 0.0, wxx = 0.0;
  const double h = 1e-5;
  for (int k = 0; k < 8; ++k) {
    const double t = ut(rng), x = ux(rng);
    auto d = [&](double tt, double xx) {
      return ev.displacement(Leg::forward, tt, xx);
    };
    const auto F = ev.fields(Leg::forward, t, x);
    const double fd_t = (d(t + h, x) - d(t - h, x)) / (2 * h);
    const double fd_x = (d(t, x + h) - d(t, x - h)) / (2 * h);
    const double fd_xx = (d(t, x + h) - 2 * d(t, x) + d(t, x - h)) / (h * h);
    const double fd_tx = (d(t + h, x + h) - d(t + h, x - h) - d(t - h, x + h) +
                          d(t - h, x - h)) /
                         (4 * h * h);
    wt = std::max(wt, std::abs(F.pt - fd_t));
    wx = std::max(wx, std::abs(F.px - (1.0 + fd_x)));
    wtx = std::max(wtx, std::abs(F.ptx - fd_tx));
    wxx = std::max(wxx, std::abs(F.pxx - fd_xx));
  }
  printf("fields vs FD: pt %.3e px %.3e ptx %.3e pxx %.3e\n", wt, wx, wtx, wxx);

  // (c) frame-FD drift route vs analytic sweep.
  CenterLoopParams pd = p;
  pd.nt = 2049;
  DiscretePath DP = CenterLoopEvaluator(pd).loop_path();
  auto D = drift_rate(DP);
  const double fd_drift = simpson_uniform(D, DP.dt());
  const CenterLoopMeasures M = ev.measures();
  printf("drift: FD %.6f analytic %.6f rel %.3e\n", fd_drift, M.drift,
         std::abs(fd_drift - M.drift) / std::abs(M.drift));

  // (d) A2 window integral at eps1=0 vs -I*(TE-TA)/eps0.
  CenterLoopParams pc = p;
  pc.eps1 = 0.0;
  CenterLoopEvaluator evc(pc);
  const double I = drift_factor(pc.lambda);
  const double a2 = gauss_panels(
      [&](double t) { return evc.leg_drift_at(Leg::forward, t); },
      evc.modulation_lo(), evc.modulation_hi(), 8, 8);
  const double pred = -I * (evc.modulation_hi() - evc.modulation_lo()) / pc.eps0;
  printf("A2 const-eps: got %.6f pred %.6f rel %.3e\n", a2, pred,
         std::abs(a2 - pred) / std::abs(pred));

  // (e) scaling identity spot check.
  std::uniform_real_distribution<double> uz(-0.5, 1.5), ua(0.0, 1.2),
      ue(0.005, 0.3);
  double ws = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double z = uz(rng), a = ua(rng), e = ue(rng);
    const double lhs = f_eval(z, a, e);
    const double rhs = e * f_eval(z / e, a / e, 1.0);
    ws = std::max(ws, std::abs(lhs - rhs));
  }
  printf("scaling identity max diff = %.3e\n", ws);

  // (f) f_derivs vs FD.
  double w1 = 0.0;
  for (int k = 0; k < 30; ++k) {
    const double z = uz(rng), a = ua(rng), e = ue(rng);
    const double hh = 1e-6;
    const ClampDerivs d = f_derivs(z, a, e);
    const double fz = (f_eval(z + hh, a, e) - f_eval(z - hh, a, e)) / (2 * hh);
    const double fa = (f_eval(z, a + hh, e) - f_eval(z, a - hh, e)) / (2 * hh);
    const double fe = (f_eval(z, a, e + hh) - f_eval(z, a, e - hh)) / (2 * hh);
    w1 = std::max({w1, std::abs(d.fz - fz), std::abs(d.fa - fa),
                   std::abs(d.fe - fe)});
  }
  printf("first derivs vs FD max diff = %.3e\n", w1);
  return 0;
}
