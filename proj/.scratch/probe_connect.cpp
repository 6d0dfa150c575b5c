#include <chrono>
#include <cstdio>
#include <cmath>

#include "vbott/connect.hpp"
#include "vbott/mollifier.hpp"

using namespace vbott;

static double now_s() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  const Grid gr{8.0, 4096};

  auto gfun = [](double x) {
    return 0.5 * (smooth_step(x, 0.1, 0.6) - smooth_step(x, 1.0, 2.4));
  };
  std::vector<double> disp(gr.n);
  for (std::size_t i = 0; i < gr.n; ++i) disp[i] = gfun(gr.x(i));
  const VirElement target{Diffeo(gr, disp), 0.5};
  const VirElement pure_center{Diffeo::identity(gr), 1.0};
  const VirElement trivial{Diffeo::identity(gr), 0.0};

  {
    const double t0 = now_s();
    auto R = connect(trivial, 0.1);
    std::printf("[trivial] frames=%zu len=%.3e E=%.3e base_err=%.3e center_err=%.3e  (%.2f s)\n",
                R.path.base.frames.size(), R.report.length, R.report.energy,
                R.endpoint_base_err, R.endpoint_center_err, now_s() - t0);
  }

  for (double d : {0.1, 0.05}) {
    const double t0 = now_s();
    auto R = connect(pure_center, d);
    std::printf("[pure a=1, delta=%.2f] len=%.6f E=%.4e  eps0=%.3e eps1=%.4e lam=%.9f  achieved=%.8f center_err=%.3e base_err=%.3e  (%.1f s)\n",
                d, R.report.length, R.report.energy, R.tuning.eps0,
                R.tuning.eps1, R.tuning.lambda, R.tuning.achieved,
                R.endpoint_center_err, R.endpoint_base_err, now_s() - t0);
  }

  double prev = 1e9;
  for (double d : {0.2, 0.1, 0.05}) {
    const double t0 = now_s();
    auto R = connect(target, d);
    std::printf("[study delta=%.2f] total len=%.6f (corner %.6f + loop %.6f) E=%.4e\n",
                d, R.report.length, R.corner.report.length,
                R.loop.report.length, R.report.energy);
    std::printf("    corner: eps=%.5f drift=%.4f alpha_gain=%.6f  loop: eps0=%.3e eps1=%.5e lam=1-%.3e achieved=%.6f\n",
                R.corner_eps, R.corner.drift, R.corner.alpha_gain,
                R.tuning.eps0, R.tuning.eps1, 1.0 - R.tuning.lambda,
                R.tuning.achieved);
    std::printf("    base_err=%.4e center_err=%.4e  alpha_end=%.9f  decreasing=%d  (%.1f s)\n",
                R.endpoint_base_err, R.endpoint_center_err,
                R.path.alpha.back(), int(R.report.length < prev),
                now_s() - t0);
    prev = R.report.length;
  }
  return 0;
}
