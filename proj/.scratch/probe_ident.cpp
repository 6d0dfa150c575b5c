#include <cstdio>
#include "vbott/identity_suite.hpp"
#include <chrono>
int main() {
  using namespace std::chrono;
  for (unsigned seed : {1u, 7u, 42u}) {
    auto t0 = steady_clock::now();
    auto rows = vbott::run_identity_suite({vbott::Grid{10.0, 2048}, seed, 20, false});
    double ms = duration<double, std::milli>(steady_clock::now() - t0).count();
    std::printf("seed=%u (%.0f ms)\n", seed, ms);
    for (auto& r : rows)
      std::printf("  %-32s %.3e / %.0e  %s\n", r.name.c_str(), r.residual,
                  r.tol, r.pass() ? "ok" : "FAIL");
  }
  auto rows = vbott::run_identity_suite({vbott::Grid{10.0, 2048}, 1, 20, true});
  std::printf("corrupted: bott residual=%.3e pass=%d\n", rows[0].residual,
              int(rows[0].pass()));
  return 0;
}
