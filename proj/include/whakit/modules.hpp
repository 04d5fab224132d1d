// The representation category of a weak Hopf algebra: modules, the truncated
// tensor product Delta(1)(M x N), the unit object H_t, left duals with
// evaluation/coevaluation, and the braiding induced by an R-matrix.
//
// Carriers of truncated tensors are explicit subspaces of the plain tensor
// product; categorical composites are computed in the ambient tensor and
// conjugated by the stored inclusion/projection, which keeps every check a
// finite exact matrix identity.

#pragma once

#include "whakit/wha.hpp"

namespace wha {

struct HModule {
  const WeakHopfAlgebra* H = nullptr;
  int dim = 0;
  std::vector<SparseMat> act;  // action of each H-basis element

  HModule() = default;
  HModule(const WeakHopfAlgebra* h, int d);

  /// act(h) for an arbitrary element.
  Matrix action_of(const Vec& h) const;
  SparseMat action_sparse(int i) const { return act[i]; }
  /// Module axioms: act(b_i) act(b_j) = act(b_i b_j), act(1) = id.
  Report verify(const std::string& prefix = "module") const;
};

HModule regular_module(const WeakHopfAlgebra& H);
/// H_t with action h . z = eps_t(h z); the unit object.
HModule unit_module(const WeakHopfAlgebra& H);
/// Left dual: action <h f, x> = <f, S(h) x>.
HModule dual_module(const HModule& M);
/// Pre-dual (left dual with S^{-1}): action <h f, x> = <f, S^{-1}(h) x>.
HModule predual_module(const HModule& M);
HModule direct_sum(const HModule& A, const HModule& B);
/// Restriction of M to an invariant subspace (throws if not invariant).
HModule submodule(const HModule& M, const Subspace& S);

/// The truncated tensor product M x_t N = Delta(1)(M x N).
struct TruncTensor {
  const HModule* left = nullptr;
  const HModule* right = nullptr;
  /// Idempotent projector = action of Delta(1) on the plain tensor.
  SparseMat P;
  Subspace carrier;   // image of P inside M x N
  Matrix incl;        // carrier coords -> ambient
  Matrix proj;        // ambient -> carrier coords (proj * incl = id)
  HModule module;     // the carrier as an H-module
  bool full = false;  // carrier is the whole plain tensor

  /// Ambient diagonal action of an H-basis element on M x N.
  SparseMat ambient_action(int i) const;
  Vec project(const Vec& ambient) const;
  Vec include(const Vec& coords) const;
};

TruncTensor ttensor(const HModule& M, const HModule& N);

/// The ambient braiding map M x N -> N x M: tau after acting with R.
Matrix braiding_ambient(const HModule& M, const HModule& N, const RMatrix& R);
/// Braiding on carriers c_{M,N}: carrier(M x_t N) -> carrier(N x_t M),
/// with its inverse built from Rbar.
struct Braiding {
  Matrix map;      // carrier -> carrier
  Matrix inverse;  // carrier <- carrier
};
Braiding braiding(const TruncTensor& MN, const TruncTensor& NM,
                  const RMatrix& R);

/// Duality data for one module: ev: M* x_t M -> H_t, coev: H_t -> M x_t M*.
struct DualityData {
  HModule dual;          // M*
  TruncTensor dual_M;    // M* x_t M
  TruncTensor M_dual;    // M x_t M*
  Matrix ev;             // carrier(M* x_t M) -> H_t coords
  Matrix coev;           // H_t coords -> carrier(M x_t M*)
};
DualityData duality(const HModule& M);

/// Exact rigidity checks (zig-zag identities) for M.
Report rigidity_check(const HModule& M);

/// Hexagon c_{M, N x P} = (id x c_{M,P})(c_{M,N} x id) and its mirror, as
/// exact identities on the triple-tensor carrier.
Report hexagon_check(const HModule& M, const HModule& N, const HModule& P,
                     const RMatrix& R);

/// Naturality of the braiding against right-multiplication endomorphisms of
/// the regular module.
Report braiding_naturality_check(const WeakHopfAlgebra& H, const RMatrix& R);

/// H-module morphisms M -> N, vectorized (row*dimM + col).
Subspace hom_modules(const HModule& M, const HModule& N);

}  // namespace wha
