#pragma once
// Orientation-preserving diffeomorphisms of the line that equal the identity
// outside a compact set, stored as identity + grid-sampled displacement.
// Provides evaluation, composition, inversion, displacement smoothing, the
// Schwartzian derivative and the group 2-cocycle integral
//   coc(f, g) = 1/2 ∫ log(f'(g(x))) d/dx[log g'(x)] dx.

#include <cmath>
#include <utility>
#include <vector>

#include "vbott/grid.hpp"
#include "vbott/mollifier.hpp"

namespace vbott {

struct DiffeoOpts {
  double slope_floor = 1e-6;     // min allowed slope
  double boundary_tol = 1e-12;   // max |displacement| near the boundary
  double margin_fraction = 0.05; // fraction of the domain that must be clear
};

class Diffeo {
 public:
  // displacement u with phi(x) = x + u(x); validates shape on construction
  Diffeo(Grid grid, std::vector<double> displacement, DiffeoOpts opts = {})
      : m_grid(grid), m_u(grid), m_opts(opts) {
    if (displacement.size() != grid.n)
      fail(errc::bad_input, "displacement size mismatch");
    m_u.v = std::move(displacement);
    if (!all_finite(m_u.v)) fail(errc::blow_up, "non-finite displacement");
    if (boundary_max(m_u, opts.margin_fraction) > opts.boundary_tol)
      fail(errc::support_escape,
           "displacement does not vanish near the domain boundary");
    m_slope = derivative(m_u, 1);
    for (double& s : m_slope.v) s += 1.0;
    for (std::size_t i = 0; i < grid.n; ++i)
      if (m_slope[i] < opts.slope_floor)
        fail(errc::not_a_diffeomorphism, "slope below floor at x = " +
                                             std::to_string(grid.x(i)));
    m_ip_u = CubicInterpolant(grid, m_u.v);
    m_ip_s = CubicInterpolant(grid, m_slope.v);
  }

  // Same shape checks, but with caller-supplied slope samples phi'(x_i).
  // Meant for maps whose slope is known in closed form sharper than the
  // stencil can estimate it -- e.g. fronts narrower than the grid step, where
  // a wide finite-difference stencil of monotone samples overshoots negative.
  // Sample monotonicity is still verified cell by cell.
  Diffeo(Grid grid, std::vector<double> displacement, std::vector<double> slope,
         DiffeoOpts opts = {})
      : m_grid(grid), m_u(grid), m_slope(grid), m_opts(opts) {
    if (displacement.size() != grid.n || slope.size() != grid.n)
      fail(errc::bad_input, "displacement/slope size mismatch");
    m_u.v = std::move(displacement);
    m_slope.v = std::move(slope);
    if (!all_finite(m_u.v) || !all_finite(m_slope.v))
      fail(errc::blow_up, "non-finite displacement");
    if (boundary_max(m_u, opts.margin_fraction) > opts.boundary_tol)
      fail(errc::support_escape,
           "displacement does not vanish near the domain boundary");
    const double h = grid.h();
    for (std::size_t i = 0; i < grid.n; ++i) {
      if (m_slope[i] < opts.slope_floor)
        fail(errc::not_a_diffeomorphism, "slope below floor at x = " +
                                             std::to_string(grid.x(i)));
      if (i + 1 < grid.n && !(m_u[i + 1] - m_u[i] + h > 0.0))
        fail(errc::not_a_diffeomorphism,
             "samples not strictly increasing at x = " +
                 std::to_string(grid.x(i)));
    }
    m_ip_u = CubicInterpolant(grid, m_u.v);
    m_ip_s = CubicInterpolant(grid, m_slope.v);
  }

  static Diffeo identity(Grid grid, DiffeoOpts opts = {}) {
    return Diffeo(grid, std::vector<double>(grid.n, 0.0), opts);
  }

  template <class F>
  static Diffeo from_map(Grid grid, F&& phi, DiffeoOpts opts = {}) {
    std::vector<double> u(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) u[i] = phi(grid.x(i)) - grid.x(i);
    return Diffeo(grid, std::move(u), opts);
  }

  // phi(x); identity outside the grid
  double operator()(double x) const { return x + m_ip_u(x); }
  // phi'(x); node-accurate slope samples interpolated cubically
  double deriv(double x) const {
    if (x <= -m_grid.L || x >= m_grid.L) return 1.0;
    return m_ip_s(x);
  }

  const Grid& grid() const { return m_grid; }
  const GridFunction& displacement() const { return m_u; }
  const GridFunction& slope_nodes() const { return m_slope; }
  const DiffeoOpts& opts() const { return m_opts; }
  double max_displacement() const { return linf(m_u.v); }

 private:
  Grid m_grid;
  GridFunction m_u;      // displacement at nodes
  GridFunction m_slope;  // 1 + u' at nodes
  DiffeoOpts m_opts;
  CubicInterpolant m_ip_u, m_ip_s;
};

// f after g: x -> f(g(x)). Both on the same grid.
inline Diffeo compose(const Diffeo& f, const Diffeo& g) {
  if (!(f.grid() == g.grid())) fail(errc::bad_input, "compose: grid mismatch");
  const Grid& gr = f.grid();
  std::vector<double> u(gr.n);
  for (std::size_t i = 0; i < gr.n; ++i) {
    const double x = gr.x(i);
    u[i] = f(g(x)) - x;
  }
  return Diffeo(gr, std::move(u), f.opts());
}

// phi^{-1} by bracketed root finding at every node.
inline Diffeo inverse(const Diffeo& f, double tol = 1e-12) {
  const Grid& gr = f.grid();
  const double pad = f.max_displacement() + gr.h();
  std::vector<double> u(gr.n);
  for (std::size_t i = 0; i < gr.n; ++i) {
    const double y = gr.x(i);
    const double x = invert_monotone([&](double z) { return f(z); }, y,
                                     y - pad, y + pad, tol);
    u[i] = x - y;
  }
  return Diffeo(gr, std::move(u), f.opts());
}

// Smooth the displacement with the scale-e kernel; the result stays a valid
// diffeomorphism because positive unit-sum weights average shifted copies.
inline Diffeo smooth_diffeo(const Diffeo& f, double e) {
  auto u = convolve(f.displacement(), e);
  return Diffeo(f.grid(), std::move(u.v), f.opts());
}

// Schwartzian derivative of grid samples: S = p3/p1 - 3/2 (p2/p1)^2 with
// p_k the k-th derivative. Caller guarantees the sampled map has positive
// slope; useful both for diffeos and for raw analytic samples.
inline GridFunction schwartzian_of_samples(const GridFunction& phi) {
  auto p1 = derivative(phi, 1);
  auto p2 = derivative(phi, 2);
  auto p3 = derivative(phi, 3);
  GridFunction S(phi.grid);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (p1[i] <= 0.0)
      fail(errc::not_a_diffeomorphism, "nonpositive slope in schwartzian");
    const double r = p2[i] / p1[i];
    S[i] = p3[i] / p1[i] - 1.5 * r * r;
  }
  return S;
}

inline GridFunction schwartzian(const Diffeo& f) {
  GridFunction phi(f.grid());
  for (std::size_t i = 0; i < phi.size(); ++i)
    phi[i] = f.grid().x(i) + f.displacement()[i];
  return schwartzian_of_samples(phi);
}

// Group 2-cocycle integral; vanishes (to round-off) when either factor is
// the identity — exactly so for an identity second factor.
inline double bott_cocycle(const Diffeo& f, const Diffeo& g) {
  if (!(f.grid() == g.grid())) fail(errc::bad_input, "cocycle: grid mismatch");
  const Grid& gr = f.grid();
  GridFunction logg(gr);
  for (std::size_t i = 0; i < gr.n; ++i) logg[i] = std::log(g.slope_nodes()[i]);
  auto dlogg = derivative(logg, 1);
  GridFunction integrand(gr);
  for (std::size_t i = 0; i < gr.n; ++i) {
    const double a = std::log(f.deriv(g(gr.x(i))));
    integrand[i] = a * dlogg[i];
  }
  return 0.5 * integrate(integrand);
}

// Convenience: bump-shaped displacement amp * g((x - center)/width) scaled to
// keep its own slope bounded; handy for tests and demos.
inline Diffeo bump_diffeo(const Grid& grid, double amp, double center,
                          double width, DiffeoOpts opts = {}) {
  std::vector<double> u(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i)
    u[i] = amp * bump((grid.x(i) - center) / width) / bump(0.0);
  return Diffeo(grid, std::move(u), opts);
}

}  // namespace vbott
