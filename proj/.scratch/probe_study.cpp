#include <cstdio>
#include <cmath>
#include <vector>

#include "vbott/center_loop.hpp"
#include "vbott/corner_path.hpp"
#include "vbott/mollifier.hpp"

using namespace vbott;

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  const Grid gr{8.0, 4096};
  auto gfun = [](double x) {
    return 0.5 * (smooth_step(x, 0.1, 0.6) - smooth_step(x, 1.0, 2.4));
  };
  std::vector<double> disp(gr.n);
  for (std::size_t i = 0; i < gr.n; ++i) disp[i] = gfun(gr.x(i));
  const Diffeo target(gr, disp);

  // corner calibration mirror of connect's solve for delta = 0.2
  CornerPathParams base;
  base.g = target.displacement();
  base.epsilon = 0.10;
  CornerEvaluator e1(base);
  auto m1 = e1.measure();
  base.epsilon = 0.05;
  CornerEvaluator e2(base);
  auto m2 = e2.measure();
  std::printf("cal: L(0.1)=%.5f L(0.05)=%.5f end(0.1)=%.3e end(0.05)=%.3e drift(0.1)=%.4f\n",
              m1.report.length, m2.report.length, m1.endpoint_err,
              m2.endpoint_err, m1.drift);
  const double q = std::log(m1.report.length / m2.report.length) / std::log(2.0);
  const double c = m1.report.length / std::pow(0.10, q);
  std::printf("fit: q=%.4f c=%.4f -> eps(0.17)=%.5f\n", q, c,
              std::pow(0.17 / c, 1.0 / q));

  const double eps = std::min(std::pow(0.17 / c, 1.0 / q), 0.10);
  base.epsilon = eps;
  CornerEvaluator ev(base);
  auto cm = ev.measure();
  std::printf("corner eps=%.5f: L=%.5f end=%.3e drift=%.5f span=%.4f\n", eps,
              cm.report.length, cm.endpoint_err, cm.drift,
              ev.t_hi() - ev.t_lo());

  // frame scan: where does the FD slope dip?
  int bad = 0;
  for (int k = 0; k <= 80 && bad < 4; ++k) {
    const double t = ev.t_lo() + (ev.t_hi() - ev.t_lo()) * k / 80.0;
    try {
      Diffeo F = ev.frame(t, gr);
      (void)F;
    } catch (const error& e) {
      ++bad;
      std::printf("frame k=%d t=%.5f: %s\n", k, t, e.what());
    }
  }
  std::printf("corner frame scan done (%d bad)\n", bad);
  return 0;
}
