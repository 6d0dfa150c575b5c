// Diffeomorphism layer: evaluation, composition, inversion, smoothing,
// Schwartzian derivative and the group cocycle integral, checked against
// closed forms and independent quadrature.

#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <random>

#include "vbott/diffeo.hpp"
#include "vbott/quadrature.hpp"

using namespace vbott;

namespace {

const Grid G{10.0, 2048};

// analytic test pair with all derivatives in closed form
double u_f(double x) { return 0.35 * std::exp(-x * x); }
double du_f(double x) { return -0.7 * x * std::exp(-x * x); }
double u_g(double x) { return 0.25 * std::exp(-sq(x - 0.7)); }
double du_g(double x) { return -0.5 * (x - 0.7) * std::exp(-sq(x - 0.7)); }
double ddu_g(double x) {
  return (-0.5 + 0.5 * 2.0 * sq(x - 0.7)) * std::exp(-sq(x - 0.7));
}

Diffeo make_f() { return Diffeo::from_map(G, [](double x) { return x + u_f(x); }); }
Diffeo make_g() { return Diffeo::from_map(G, [](double x) { return x + u_g(x); }); }

}  // namespace

TEST_CASE("evaluation and slope match the analytic map") {
  auto f = make_f();
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double x = U(rng);
    REQUIRE(f(x) == Catch::Approx(x + u_f(x)).margin(1e-9));
    REQUIRE(f.deriv(x) == Catch::Approx(1.0 + du_f(x)).margin(1e-8));
  }
  REQUIRE(f(100.0) == 100.0);  // identity beyond the grid
  REQUIRE(f.deriv(100.0) == 1.0);
}

TEST_CASE("composition matches the pointwise closed form") {
  auto f = make_f(), g = make_g();
  auto fg = compose(f, g);
  std::mt19937 rng(32);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double x = U(rng);
    const double y = x + u_g(x);
    REQUIRE(fg(x) == Catch::Approx(y + u_f(y)).margin(1e-8));
  }
}

TEST_CASE("composition with the identity is the identity operation") {
  auto f = make_f();
  auto id = Diffeo::identity(G);
  auto a = compose(f, id), b = compose(id, f);
  REQUIRE(linf_diff(a.displacement().v, f.displacement().v) < 1e-12);
  REQUIRE(linf_diff(b.displacement().v, f.displacement().v) < 1e-12);
}

TEST_CASE("inverse round-trips to the identity") {
  auto f = make_f();
  auto fi = inverse(f);
  auto lr = compose(f, fi), rl = compose(fi, f);
  REQUIRE(linf(lr.displacement().v) < 1e-9);
  REQUIRE(linf(rl.displacement().v) < 1e-9);
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const double y = U(rng);
    REQUIRE(f(fi(y)) == Catch::Approx(y).margin(1e-9));
  }
}

TEST_CASE("construction rejects invalid shapes") {
  // slope dips negative
  REQUIRE_THROWS_AS(
      Diffeo::from_map(G, [](double x) { return x + 1.2 * std::exp(-4 * x * x); }),
      error);
  try {
    Diffeo::from_map(G, [](double x) { return x + 1.2 * std::exp(-4 * x * x); });
  } catch (const error& e) {
    REQUIRE(e.code() == errc::not_a_diffeomorphism);
  }
  // displacement alive at the boundary
  try {
    Diffeo::from_map(G, [](double x) { return x + 0.1 * std::cos(x / 20.0); });
    FAIL("expected support escape");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::support_escape);
  }
}

TEST_CASE("schwartzian matches the closed form for a Gaussian displacement") {
  auto g = make_g();
  auto S = schwartzian(g);
  // closed form from the analytic derivatives
  auto d3u = [](double x) {
    const double t = x - 0.7;
    return (1.5 * 2.0 * t - 2.0 * t * t * t) * std::exp(-t * t);
  };
  for (std::size_t i = 0; i < G.n; i += 13) {
    const double x = G.x(i);
    const double p1 = 1.0 + du_g(x), p2 = ddu_g(x), p3 = d3u(x);
    const double ref = p3 / p1 - 1.5 * sq(p2 / p1);
    REQUIRE(S[i] == Catch::Approx(ref).margin(1e-6));
  }
}

TEST_CASE("schwartzian annihilates fractional-linear maps") {
  // samples of (2x + 1)/(0.1 x + 3) on a domain away from the pole
  Grid gr{4.0, 1025};
  GridFunction phi(gr, [](double x) { return (2 * x + 1) / (0.1 * x + 3); });
  auto S = schwartzian_of_samples(phi);
  for (std::size_t i = 6; i + 6 < gr.n; ++i)
    REQUIRE(std::abs(S[i]) < 1e-7);
}

TEST_CASE("schwartzian composition rule holds on exact composed samples") {
  // both sides from closed-form samples: pure stencil truncation error
  GridFunction comp(G, [](double x) {
    const double y = x + u_g(x);
    return y + u_f(y);
  });
  auto Sfg = schwartzian_of_samples(comp);
  GridFunction phif(G, [](double x) { return x + u_f(x); });
  GridFunction phig(G, [](double x) { return x + u_g(x); });
  auto Sf = schwartzian_of_samples(phif);
  auto Sg = schwartzian_of_samples(phig);
  CubicInterpolant Sf_ip(G, Sf.v);
  double err = 0.0;
  for (std::size_t i = 0; i < G.n; ++i) {
    const double x = G.x(i);
    const double rhs = Sf_ip(x + u_g(x)) * sq(1.0 + du_g(x)) + Sg[i];
    err = std::max(err, std::abs(Sfg[i] - rhs));
  }
  REQUIRE(err < 1e-6);
}

TEST_CASE("schwartzian composition rule through the compose pipeline") {
  // library composition interpolates, and the 3rd-derivative stencil
  // amplifies that noise by h^-3; the bound reflects the route's accuracy
  auto f = make_f(), g = make_g();
  auto Sf = schwartzian(f), Sg = schwartzian(g), Sfg = schwartzian(compose(f, g));
  CubicInterpolant Sf_ip(G, Sf.v);
  double err = 0.0;
  for (std::size_t i = 0; i < G.n; ++i) {
    const double x = G.x(i);
    const double rhs = Sf_ip(g(x)) * sq(g.deriv(x)) + Sg[i];
    err = std::max(err, std::abs(Sfg[i] - rhs));
  }
  REQUIRE(err < 5e-4);
}

TEST_CASE("displacement smoothing keeps monotonicity and validity") {
  Grid gr{10.0, 1501};
  std::mt19937 rng(34);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  // rough but valid displacement: small random bumps inside |x| < 6
  std::vector<double> u(gr.n, 0.0);
  for (std::size_t i = 0; i < gr.n; ++i) {
    const double x = gr.x(i);
    if (std::abs(x) < 6.0)
      u[i] = 0.02 * U(rng) * std::exp(-x * x / 18.0);
  }
  Diffeo rough(gr, u, DiffeoOpts{.slope_floor = -10.0});  // may be steep
  auto smoothed = smooth_diffeo(rough, 0.4);              // must validate
  double prev = smoothed(-10.0);
  for (int k = 1; k <= 4000; ++k) {
    const double x = -10.0 + 20.0 * k / 4000.0;
    const double y = smoothed(x);
    REQUIRE(y >= prev - 1e-10);
    prev = y;
  }
}

TEST_CASE("cocycle vanishes with an identity factor") {
  auto f = make_f();
  auto id = Diffeo::identity(G);
  REQUIRE(std::abs(bott_cocycle(id, f)) < 1e-12);  // round-off only
  REQUIRE(bott_cocycle(f, id) == 0.0);             // exactly zero integrand
}

TEST_CASE("cocycle value matches independent quadrature") {
  auto f = make_f(), g = make_g();
  const double got = bott_cocycle(f, g);
  // same integral from the closed-form derivatives, adaptive quadrature
  auto integrand = [](double x) {
    const double gx = x + u_g(x);
    const double fp = 1.0 + du_f(gx);
    const double gp = 1.0 + du_g(x);
    return std::log(fp) * ddu_g(x) / gp;
  };
  const double ref = 0.5 * integrate_adaptive(integrand, -8.0, 8.0, 1e-13);
  REQUIRE(got == Catch::Approx(ref).margin(1e-8));
}

TEST_CASE("cocycle of a map with its inverse vanishes") {
  auto f = make_f();
  REQUIRE(std::abs(bott_cocycle(f, inverse(f))) < 1e-8);
  REQUIRE(std::abs(bott_cocycle(inverse(f), f)) < 1e-8);
}

TEST_CASE("cocycle identity over a random triple") {
  Grid gr{10.0, 4096};
  auto A = bump_diffeo(gr, 0.3, -1.0, 2.0);
  auto B = bump_diffeo(gr, -0.25, 0.5, 1.7);
  auto C = bump_diffeo(gr, 0.2, 1.3, 2.4);
  const double lhs = bott_cocycle(compose(A, B), C) + bott_cocycle(A, B);
  const double rhs = bott_cocycle(A, compose(B, C)) + bott_cocycle(B, C);
  REQUIRE(lhs == Catch::Approx(rhs).margin(1e-8));
}
