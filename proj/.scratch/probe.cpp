#include <cmath>
#include <cstdio>
#include <vector>

#include "vbott/corner_path.hpp"
#include "vbott/path.hpp"

using namespace vbott;

int main() {
  const Grid gr{4.0, 2048};
  GridFunction g(gr, [](double x) {
    return 0.3 * (smooth_step(x, 0.1, 0.25) - smooth_step(x, 0.25, 0.89));
  });
  CubicInterpolant gi(gr, g.v);

  // --- pt semi-closed oracle vs evaluator ---
  {
    CornerPathParams p;
    p.g = g;
    p.epsilon = 0.1;
    CornerEvaluator ev(p);
    const double ex = ev.axis_scale_x(), et = ev.axis_scale_t();
    const double lam = ev.params().lambda;
    auto pt_oracle = [&](double t, double x) {
      const auto& T = KernelTables::get();
      return gauss_panels(
          [&](double s) {
            const double tau = std::tan(t - et * s);
            if (tau <= 0.0) return 0.0;
            const double xb = tau / lam;
            double lo = -1.0, hi = xb;
            if (tau - lam * hi - gi(hi) >= 0.0) {
              lo = hi;
            } else {
              for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                ((tau - lam * mid - gi(mid) >= 0.0) ? lo : hi) = mid;
              }
            }
            const double xa = 0.5 * (lo + hi);
            const double u = (x - xa) / ex, v = (x - xb) / ex;
            return bump(s) * (1.0 + tau * tau) * (T.C(u) - T.C(v));
          },
          -1.0, 1.0, 12, 64);
    };
    double worst = 0.0;
    for (double t : {0.45, 0.65, 0.75})
      for (double x : {0.2, 0.5, 0.8})
        worst = std::max(worst, std::abs(ev.eval(t, x).pt - pt_oracle(t, x)));
    std::printf("pt oracle max diff = %.3e\n", worst);
    // and at nx=24 to see the order
    CornerPathParams p2 = p;
    p2.nx = 24;
    CornerEvaluator ev2(p2);
    double worst2 = 0.0;
    for (double t : {0.45, 0.65, 0.75})
      for (double x : {0.2, 0.5, 0.8})
        worst2 = std::max(worst2, std::abs(ev2.eval(t, x).pt - pt_oracle(t, x)));
    std::printf("pt oracle max diff (nx=24) = %.3e\n", worst2);
  }

  // --- brute-force bound2 on a Simpson lattice ---
  {
    GridFunction g1 = derivative(g, 1);
    CubicInterpolant g1i(g1.grid, g1.v);
    const double eps = 0.1, lam = 1.0 - eps;
    const Bound2Report B = corner_bound2(g, lam, eps);
    const double x0 = 0.05, x1 = 1.0;
    const std::size_t nx = 1201, ntau = 1601;
    const double hx = (x1 - x0) / double(nx - 1);
    const double htau = B.duration / double(ntau - 1);
    std::vector<double> col(ntau), rowv(nx);
    for (std::size_t j = 0; j < nx; ++j) {
      const double x = x0 + double(j) * hx;
      const double a = std::max(0.0, gi(x));
      for (std::size_t i = 0; i < ntau; ++i) {
        const double tau = double(i) * htau;
        const ClampDerivs d = f_derivs(tau - lam * x, a, eps);
        col[i] = d.fz * d.fz * d.fa;
      }
      rowv[j] = g1i(x) * simpson_uniform(col, htau);
    }
    const double brute = simpson_uniform(rowv, hx);
    double rise = 0.0;
    for (std::size_t j = 0; j < nx; ++j) {
      const double x = x0 + double(j) * hx;
      if (x > 0.25) break;
      rise += rowv[j] * hx;
    }
    std::printf("bound2: reduced % .6e brute % .6e diff %.3e rise %.5f cap %.4f\n",
                B.value, brute, std::abs(B.value - brute), rise, B.cap);
  }

  // --- nx=24 energy stability across sweep scales ---
  {
    const double Epin[] = {0.034966, 0.020062, 0.010792, 0.005621};
    const double el[] = {0.2, 0.1, 0.05, 0.025};
    for (int i = 0; i < 4; ++i) {
      CornerPathParams p;
      p.g = g;
      p.epsilon = el[i];
      p.nx = 24;
      const CornerMeasures M = CornerEvaluator(p).measure();
      std::printf("eps %.3f E24 %.6f rel-to-pin %.3e\n", el[i],
                  M.report.energy, std::abs(M.report.energy / Epin[i] - 1.0));
    }
  }
  return 0;
}
