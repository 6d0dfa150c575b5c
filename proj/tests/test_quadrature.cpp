// Quadrature checks against analytic integrals.

#include "catch2/catch_amalgamated.hpp"

#include <cmath>

#include "vbott/quadrature.hpp"

using namespace vbott;

TEST_CASE("gauss rule integrates high-degree monomials exactly") {
  for (int order : {4, 8, 16, 32}) {
    const int maxdeg = 2 * order - 1;
    for (int k = 0; k <= maxdeg; k += 3) {
      auto f = [&](double x) { return std::pow(x, k); };
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      REQUIRE(gauss(f, -1.0, 1.0, order) == Catch::Approx(exact).margin(1e-12));
    }
  }
}

TEST_CASE("gauss rule nodes are symmetric and weights sum to two") {
  const auto& r = gauss_rule(17);
  double sw = 0.0;
  for (double w : r.w) sw += w;
  REQUIRE(sw == Catch::Approx(2.0).margin(1e-14));
  for (std::size_t i = 0; i < r.x.size(); ++i)
    REQUIRE(r.x[i] == Catch::Approx(-r.x[r.x.size() - 1 - i]).margin(1e-13));
}

TEST_CASE("gauss on exp matches e - 1") {
  auto f = [](double x) { return std::exp(x); };
  REQUIRE(gauss(f, 0.0, 1.0, 12) == Catch::Approx(M_E - 1.0).margin(1e-13));
}

TEST_CASE("adaptive simpson resolves a narrow peak") {
  auto f = [](double x) { return std::exp(-400.0 * x * x); };
  const double exact = std::sqrt(M_PI / 400.0);  // tails < 1e-17 outside [-1,1]
  REQUIRE(integrate_adaptive(f, -1.0, 1.0, 1e-12) ==
          Catch::Approx(exact).margin(1e-10));
}

TEST_CASE("gauss_panels handles an oscillatory integrand") {
  auto f = [](double x) { return std::sin(10.0 * x); };
  const double exact = (1.0 - std::cos(20.0)) / 10.0;
  REQUIRE(gauss_panels(f, 0.0, 2.0, 10, 8) == Catch::Approx(exact).margin(1e-12));
}

TEST_CASE("2d adaptive integral of a separable function factorizes") {
  auto f = [](double x, double y) { return std::exp(-x * x) * std::cos(y); };
  const double ix = std::sqrt(M_PI) * std::erf(2.0);
  const double iy = 2.0 * std::sin(1.0);
  REQUIRE(integrate2d_adaptive(f, -2.0, 2.0, -1.0, 1.0, 1e-10) ==
          Catch::Approx(ix * iy).margin(1e-8));
}
