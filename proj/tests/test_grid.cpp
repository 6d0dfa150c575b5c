// Calculus-layer checks: finite differences, integration, interpolation and
// inversion against closed-form references.

#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "vbott/grid.hpp"

using namespace vbott;

TEST_CASE("fd_weights reproduces the classical centered 5-point first stencil") {
  const double h = 0.37;
  std::vector<double> nodes{0, h, 2 * h, 3 * h, 4 * h};
  auto w = fd_weights(nodes, 2 * h, 1);
  std::vector<double> ref{1.0, -8.0, 0.0, 8.0, -1.0};
  for (int i = 0; i < 5; ++i)
    REQUIRE(w[size_t(i)] == Catch::Approx(ref[size_t(i)] / (12.0 * h)).margin(1e-13));
}

TEST_CASE("derivative is exact on polynomials, boundary windows included") {
  Grid g{3.0, 41};
  GridFunction f(g, [](double x) { return x * x * x * x; });
  auto d1 = derivative(f, 1);
  auto d2 = derivative(f, 2);
  auto d3 = derivative(f, 3);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    REQUIRE(d1[i] == Catch::Approx(4 * x * x * x).margin(1e-9));
    REQUIRE(d2[i] == Catch::Approx(12 * x * x).margin(1e-8));
    REQUIRE(d3[i] == Catch::Approx(24 * x).margin(1e-7));
  }
}

TEST_CASE("derivative converges at 4th order on a Gaussian") {
  auto err = [](std::size_t n, int m) {
    Grid g{8.0, n};
    GridFunction f(g, [](double x) { return std::exp(-x * x); });
    auto d = derivative(f, m);
    double e = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const double x = g.x(i), E = std::exp(-x * x);
      double ref = 0.0;
      if (m == 1) ref = -2 * x * E;
      if (m == 2) ref = (4 * x * x - 2) * E;
      if (m == 3) ref = (12 * x - 8 * x * x * x) * E;
      e = std::max(e, std::abs(d[i] - ref));
    }
    return e;
  };
  for (int m = 1; m <= 3; ++m) {
    const double e1 = err(257, m), e2 = err(513, m);
    REQUIRE(e2 < e1);                  // converging
    REQUIRE(e1 / e2 > 10.0);           // at least ~4th order (2^4 = 16)
    // centered-stencil truncation constants for exp(-x^2): |f^(5)|/30 etc.
    REQUIRE(e2 < (m == 1 ? 2e-6 : m == 2 ? 5e-6 : 1e-4));
  }
}

TEST_CASE("integrate is exact on cubics for both interval parities") {
  for (std::size_t n : {41u, 42u, 101u, 4u, 5u}) {
    Grid g{2.0, n};
    GridFunction f(g, [](double x) { return 3 * x * x * x - x * x + 2 * x - 5; });
    // odd terms vanish on the symmetric domain
    const double exact = -2.0 * 8.0 / 3.0 - 5.0 * 4.0;
    REQUIRE(integrate(f) == Catch::Approx(exact).margin(1e-12));
  }
}

TEST_CASE("integrate hits sqrt(pi) on a wide Gaussian") {
  for (std::size_t n : {513u, 514u}) {
    Grid g{8.0, n};
    GridFunction f(g, [](double x) { return std::exp(-x * x); });
    REQUIRE(integrate(f) == Catch::Approx(std::sqrt(M_PI)).margin(1e-10));
  }
}

TEST_CASE("integral of a derivative of a compact bump vanishes") {
  Grid g{10.0, 801};
  GridFunction f(g, [](double x) {
    const double r = 1.0 - x * x / 16.0;
    return r > 0 ? std::exp(-1.0 / r) : 0.0;
  });
  REQUIRE(std::abs(integrate(derivative(f, 1))) < 1e-12);
}

TEST_CASE("cubic interpolation is 4th-order accurate on sin") {
  Grid g{2 * M_PI, 256};
  CubicInterpolant ip(g, GridFunction(g, [](double x) { return std::sin(x); }).v);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-2 * M_PI, 2 * M_PI);
  double e0 = 0.0, e1 = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const double x = U(rng);
    e0 = std::max(e0, std::abs(ip(x) - std::sin(x)));
    e1 = std::max(e1, std::abs(ip.derivative_at(x) - std::cos(x)));
  }
  REQUIRE(e0 < 1e-5);
  REQUIRE(e1 < 1e-3);
}

TEST_CASE("interpolation is zero outside the domain") {
  Grid g{1.0, 32};
  CubicInterpolant ip(g, GridFunction(g, [](double) { return 1.0; }).v);
  REQUIRE(ip(1.5) == 0.0);
  REQUIRE(ip(-2.0) == 0.0);
}

TEST_CASE("monotone interpolation preserves monotonicity on steep data") {
  Grid g{2.0, 33};
  GridFunction f(g, [](double x) { return std::tanh(8 * x); });
  CubicInterpolant ip(g, f.v, /*monotone=*/true);
  double prev = ip(-2.0);
  for (int k = 1; k <= 4000; ++k) {
    const double x = -2.0 + 4.0 * k / 4000.0;
    const double y = ip(x);
    REQUIRE(y >= prev - 1e-14);
    prev = y;
  }
}

TEST_CASE("monotone limiter is inactive on well-resolved smooth data") {
  Grid g{1.0, 129};
  GridFunction f(g, [](double x) { return x + 0.2 * std::sin(3 * x); });
  CubicInterpolant plain(g, f.v, false), mono(g, f.v, true);
  for (int k = 0; k <= 500; ++k) {
    const double x = -1.0 + 2.0 * k / 500.0;
    REQUIRE(mono(x) == Catch::Approx(plain(x)).margin(1e-14));
  }
}

TEST_CASE("brent_root and invert_monotone against closed forms") {
  REQUIRE(brent_root([](double x) { return std::cos(x); }, 1.0, 2.0) ==
          Catch::Approx(M_PI / 2).margin(1e-12));
  auto F = [](double x) { return x + 0.3 * std::sin(x); };
  const double x0 = 2.345;
  REQUIRE(invert_monotone(F, F(x0), -10.0, 10.0) ==
          Catch::Approx(x0).margin(1e-10));
}

TEST_CASE("boundary_max sees only the outer margin") {
  Grid g{10.0, 101};
  GridFunction f(g, [](double x) { return std::abs(x) < 5 ? 1.0 : 0.0; });
  REQUIRE(boundary_max(f, 0.1) == 0.0);
  REQUIRE(boundary_max(f, 0.6) == 1.0);
}

TEST_CASE("resample round-trips through a finer grid") {
  Grid a{3.0, 201};
  Grid b{3.0, 517};
  GridFunction f(a, [](double x) { return std::exp(-x * x) * std::cos(2 * x); });
  auto back = resample(resample(f, b), a);
  REQUIRE(linf_diff(back.v, f.v) < 1e-6);
}
