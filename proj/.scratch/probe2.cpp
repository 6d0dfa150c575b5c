#include <cmath>
#include <cstdio>

#include "vbott/quadrature.hpp"
#include "vbott/mollifier.hpp"
#include "vbott/smoothed_clamp.hpp"

using namespace vbott;

// I(lambda) via the integrated-by-parts form:
//   int G^2/(1-lam C)^2 dz   = -(1/lam) int G'(z)/(1-lam C(z)) dz
//   int K^2/(1-lam Phi)^2 dz = -(1/lam) int K'(z)/(1-lam Phi(z)) dz
// using C' = G, Phi' = -K... careful: d/dz[1-lam C] = -lam G;
// d/dz[1-lam Phi(z)] = +lam K(z). Hence
//   int K^2/D^2 = (1/lam) int K'(z)/D(z) dz  with D = 1-lam Phi.
static double dK(double z) {
  const double h = 1e-5;
  const auto& T = KernelTables::get();
  return (T.K(z + h) - T.K(z - h)) / (2.0 * h);
}
static double dG(double z) {
  const double h = 1e-5;
  return (bump(z + h) - bump(z - h)) / (2.0 * h);
}

static double compute_I(double lam) {
  const auto& T = KernelTables::get();
  const double i1 = -integrate_adaptive(
      [&](double z) { return dG(z) / (1.0 - lam * T.C(z)); }, -1.0, 1.0,
      1e-9) / lam;
  const double i2 = integrate_adaptive(
      [&](double z) { return dK(z) / (1.0 - lam * T.Phi(z)); }, -2.0, 2.0,
      1e-9) / lam;
  return lam * lam * (i1 + i2);
}

static double e_unit(double lam, double eps) {
  auto F = [&](double z) {
    const ClampFirst c = f_first(z, 1.0, eps);
    return c.fz * c.fz * (1.0 - lam * c.fz);
  };
  const double lo = -eps, hi = 1.0 + 2.0 * eps;
  double s = gauss_panels(F, lo, std::min(3.0 * eps, hi), 8, 64);
  if (3.0 * eps < 1.0 - 2.0 * eps) {
    s += (1.0 - lam) * (1.0 - 5.0 * eps);
    s += gauss_panels(F, 1.0 - 2.0 * eps, hi, 8, 64);
  } else {
    s += gauss_panels(F, 3.0 * eps, hi, 8, 64);
  }
  return s / lam;
}

int main() {
  std::printf("%-12s %-12s %-12s\n", "1-lambda", "I", "e_unit(5e-3)");
  for (double mu : {0.1, 0.01, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) {
    const double lam = 1.0 - mu;
    std::printf("%-12.1e %-12.6g %-12.6g\n", mu, compute_I(lam),
                e_unit(lam, 5e-3));
  }
  const double lam = 1.0 - 1e-3;
  for (double eps : {0.05, 0.02, 0.005, 1e-3, 1e-4, 1e-6}) {
    const double e = e_unit(lam, eps);
    std::printf("eps %-8.0e e_unit %-12.6g (e-mu)/eps %-12.6g\n", eps, e,
                (e - 1e-3) / eps);
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
    std::printf("e0 %-8.0e  J(eps1=0.5) %-10.6g a_max(mu=1e-3) %-12.6g "
                "a_max(mu=1e-5) %-12.6g\n",
                e0, J, compute_I(1.0 - 1e-3) * J / e0,
                compute_I(1.0 - 1e-5) * J / e0);
  }
  return 0;
}
