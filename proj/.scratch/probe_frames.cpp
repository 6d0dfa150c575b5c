#include <cstdio>
#include <cmath>

#include "vbott/center_loop.hpp"

using namespace vbott;

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  const Grid gr{8.0, 4096};
  CenterLoopParams lp;
  lp.grid = gr;
  auto R = tune_center(1.0, lp, 6.75e-4);
  std::printf("tuned: eps0=%.6e eps1=%.6e lambda=1-%.6e E=%.6e\n", R.eps0,
              R.eps1, 1.0 - R.lambda, R.report.energy);
  lp.eps0 = R.eps0;
  lp.eps1 = R.eps1;
  lp.lambda = R.lambda;
  CenterLoopEvaluator ev(lp);
  const double h = gr.h();
  for (int leg = 0; leg < 2; ++leg) {
    for (int k = 0; k <= 60; ++k) {
      const double t = 6.0 * k / 60.0;
      // raw sampled slope scan without constructing a Diffeo
      double worst = 1e99, wx = 0.0;
      double prev = ev.displacement(leg ? Leg::back : Leg::forward, t, gr.x(0));
      for (std::size_t i = 1; i < gr.n; ++i) {
        const double d = ev.displacement(leg ? Leg::back : Leg::forward, t, gr.x(i));
        const double slope = 1.0 + (d - prev) / h;
        if (slope < worst) { worst = slope; wx = gr.x(i); }
        prev = d;
      }
      if (worst < 1e-5)
        std::printf("leg=%d t=%.2f min_cell_slope=%.3e at x=%.6f\n", leg, t,
                    worst, wx);
    }
  }
  std::printf("done\n");
  return 0;
}
