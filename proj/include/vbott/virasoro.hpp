#pragma once
// Centrally extended objects: group elements (diffeo, real) with the cocycle
// product, algebra elements (vector field, real) with the extended bracket,
// the antisymmetric form feeding the bracket's central term, adjoint action
// and its transpose with respect to the flat L2 pairing.

#include <cmath>
#include <utility>

#include "vbott/diffeo.hpp"
#include "vbott/grid.hpp"

namespace vbott {

// (X, a): compactly supported vector field plus central coordinate.
struct VirAlgebra {
  GridFunction X;
  double a = 0.0;
};

// (phi, alpha): diffeomorphism plus central coordinate.
struct VirElement {
  Diffeo phi;
  double alpha = 0.0;
};

// Antisymmetric form ∫ X' Y'' dx.
inline double gelfand_fuks(const GridFunction& X, const GridFunction& Y) {
  if (!(X.grid == Y.grid)) fail(errc::bad_input, "gelfand_fuks: grid mismatch");
  auto Xp = derivative(X, 1);
  auto Ypp = derivative(Y, 2);
  GridFunction prod(X.grid);
  for (std::size_t i = 0; i < X.size(); ++i) prod[i] = Xp[i] * Ypp[i];
  return integrate(prod);
}

// [(X, a), (Y, b)] = (X'Y - XY', ∫ X' Y'').
inline VirAlgebra bracket(const VirAlgebra& A, const VirAlgebra& B) {
  if (!(A.X.grid == B.X.grid)) fail(errc::bad_input, "bracket: grid mismatch");
  auto Xp = derivative(A.X, 1);
  auto Yp = derivative(B.X, 1);
  VirAlgebra out{GridFunction(A.X.grid), gelfand_fuks(A.X, B.X)};
  for (std::size_t i = 0; i < A.X.size(); ++i)
    out.X[i] = Xp[i] * B.X[i] - A.X[i] * Yp[i];
  return out;
}

// Group law (phi, alpha)(psi, beta) = (phi ∘ psi, alpha + beta + coc(phi, psi)).
inline VirElement vir_mul(const VirElement& F, const VirElement& G) {
  return VirElement{compose(F.phi, G.phi),
                      F.alpha + G.alpha + bott_cocycle(F.phi, G.phi)};
}

inline VirElement vir_inv(const VirElement& F) {
  return VirElement{inverse(F.phi), -F.alpha};
}

// Ad(phi, alpha)(Y, b) = ((phi' ∘ phi^-1)(Y ∘ phi^-1), b + ∫ S(phi) Y dx)
// with S the Schwartzian derivative.
inline VirAlgebra adjoint(const VirElement& F, const VirAlgebra& B) {
  const Grid& gr = B.X.grid;
  if (!(F.phi.grid() == gr)) fail(errc::bad_input, "adjoint: grid mismatch");
  auto inv = inverse(F.phi);
  CubicInterpolant Y_ip(gr, B.X.v);
  VirAlgebra out{GridFunction(gr), 0.0};
  for (std::size_t i = 0; i < gr.n; ++i) {
    const double xi = inv(gr.x(i));
    out.X[i] = F.phi.deriv(xi) * Y_ip(xi);
  }
  auto S = schwartzian(F.phi);
  GridFunction SY(gr);
  for (std::size_t i = 0; i < gr.n; ++i) SY[i] = S[i] * B.X[i];
  out.a = B.a + integrate(SY);
  return out;
}

// Transpose of Ad with respect to ⟨(X,a),(Y,b)⟩ = ∫ XY + ab:
// Ad^T(phi)(Y, b) = ((Y ∘ phi)(phi')^2 + b S(phi), b).
inline VirAlgebra adjoint_transpose(const VirElement& F,
                                        const VirAlgebra& B) {
  const Grid& gr = B.X.grid;
  if (!(F.phi.grid() == gr))
    fail(errc::bad_input, "adjoint_transpose: grid mismatch");
  CubicInterpolant Y_ip(gr, B.X.v);
  auto S = schwartzian(F.phi);
  VirAlgebra out{GridFunction(gr), B.a};
  for (std::size_t i = 0; i < gr.n; ++i) {
    const double x = gr.x(i);
    out.X[i] = Y_ip(F.phi(x)) * sq(F.phi.deriv(x)) + B.a * S[i];
  }
  return out;
}

// Momentum of a velocity (Y, b) seen from group element (phi, alpha):
// the transported conserved quantity (phi_t phi_x^2 + b S(phi), b).  This is
// exactly the adjoint transpose applied to the velocity.
inline VirAlgebra momentum(const VirElement& F, const VirAlgebra& B) {
  return adjoint_transpose(F, B);
}

// Flat L2 pairing ∫ XY + ab.
inline double inner(const VirAlgebra& A, const VirAlgebra& B) {
  if (!(A.X.grid == B.X.grid)) fail(errc::bad_input, "inner: grid mismatch");
  GridFunction prod(A.X.grid);
  for (std::size_t i = 0; i < A.X.size(); ++i) prod[i] = A.X[i] * B.X[i];
  return integrate(prod) + A.a * B.a;
}

}  // namespace vbott
