#include <cstdio>
#include "vbott/center_loop.hpp"
using namespace vbott;

int main() {
  CenterLoopParams p;
  p.lambda = 0.9;
  p.eps0 = 0.02;
  p.eps1 = 0.3;
  CenterLoopEvaluator ev(p);
  const double h = 1e-5;
  for (double t : {3.0, 1.2, 5.0}) {
    for (double dx : {-0.01, 0.0, 0.01, 0.02}) {
      // front corner x = t/lam and saturation corner x = (t-1)/lam
      for (double xc : {t / p.lambda + dx, (t - 1.0) / p.lambda + dx}) {
        auto d = [&](double tt, double xx) {
          return ev.displacement(Leg::forward, tt, xx);
        };
        const auto F = ev.fields(Leg::forward, t, xc);
        const double fd_tx = (d(t + h, xc + h) - d(t + h, xc - h) -
                              d(t - h, xc + h) + d(t - h, xc - h)) /
                             (4 * h * h);
        const double fd_xx =
            (d(t, xc + h) - 2 * d(t, xc) + d(t, xc - h)) / (h * h);
        printf("t=%.2f x=%7.4f ptx=%10.4f dtx=%.3e  pxx=%10.4f dxx=%.3e\n", t,
               xc, F.ptx, std::abs(F.ptx - fd_tx), F.pxx,
               std::abs(F.pxx - fd_xx));
      }
    }
  }
  return 0;
}
