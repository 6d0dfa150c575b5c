#include <chrono>
#include <cmath>
#include <cstdio>

#include "vbott/quadrature.hpp"
#include "vbott/mollifier.hpp"
#include "vbott/smoothed_clamp.hpp"

using namespace vbott;

// Integrate F over [a, b] with geometric grading toward the endpoint `edge`
// (must be a or b): panel widths halve toward the edge down to `wmin`.
template <class F>
static double graded_panels(F&& f, double a, double b, double edge,
                            double wmin, int order) {
  double total = 0.0;
  double far = (edge == b) ? a : b;
  double w = 0.5 * std::abs(b - a);
  double lo = far;  // current far boundary of the remaining gap
  while (true) {
    const double nxt = (edge == b) ? edge - (edge - lo) * 0.5
                                   : edge + (lo - edge) * 0.5;
    const double pa = std::min(lo, nxt), pb = std::max(lo, nxt);
    total += gauss_panels(f, pa, pb, order, 1);
    lo = nxt;
    w = std::abs(edge - lo);
    if (w < wmin) {
      total += gauss_panels(f, std::min(lo, edge), std::max(lo, edge), order, 1);
      break;
    }
  }
  return total;
}

static double compute_I(double lam) {
  const auto& T = KernelTables::get();
  auto F1 = [&](double z) {
    const double g = bump(z), d = 1.0 - lam * T.C(z);
    return g * g / (d * d);
  };
  auto F2 = [&](double z) {
    const double k = T.K(z), d = 1.0 - lam * T.Phi(z);
    return k * k / (d * d);
  };
  const double i1 = graded_panels(F1, -1.0, 1.0, 1.0, 1e-13, 12);
  const double i2 = graded_panels(F2, -2.0, 2.0, -2.0, 1e-13, 12);
  return lam * lam * (i1 + i2);
}

int main() {
  setvbuf(stdout, nullptr, _IONBF, 0);
  for (double mu : {0.1, 0.01, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
    const auto t0 = std::chrono::steady_clock::now();
    const double I = compute_I(1.0 - mu);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    std::printf("mu %-9.1e I %-14.8g  [%.2f ms]\n", mu, I, ms);
  }
  // doubled panel order as a self-check at two extremes
  {
    const auto& T = KernelTables::get();
    for (double mu : {1e-3, 1e-7}) {
      const double lam = 1.0 - mu;
      auto F2 = [&](double z) {
        const double k = T.K(z), d = 1.0 - lam * T.Phi(z);
        return k * k / (d * d);
      };
      auto F1 = [&](double z) {
        const double g = bump(z), d = 1.0 - lam * T.C(z);
        return g * g / (d * d);
      };
      const double a24 = lam * lam *
                         (graded_panels(F1, -1.0, 1.0, 1.0, 1e-13, 24) +
                          graded_panels(F2, -2.0, 2.0, -2.0, 1e-13, 24));
      std::printf("mu %-9.1e I(order24) %-14.8g diff %: %.3e\n", mu, a24,
                  std::abs(a24 / compute_I(lam) - 1.0));
    }
  }
  const double h1 = 1.0 / bump_unnormalized(0.0);
  for (double e0 : {5e-3, 1e-4, 1e-6}) {
    const double J = integrate_adaptive(
        [&](double t) {
          const double b = bump_unnormalized(t - 3.0) * h1;
          const double m = 0.5 * std::sqrt(e0) * b;
          return m / (1.0 + m);
        },
        2.0, 4.0, 1e-12);
    std::printf("e0 %-8.0e J(eps1=.5) %-10.6g amax(mu=1e-3) %-10.6g "
                "amax(mu=1e-5) %-10.6g\n",
                e0, J, compute_I(1.0 - 1e-3) * J / e0,
                compute_I(1.0 - 1e-5) * J / e0);
  }
  return 0;
}
