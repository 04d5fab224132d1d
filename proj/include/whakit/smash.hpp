// Weak smash products A # H on the balanced tensor product A x_{H_t} H,
// the isomorphism H x_{H_t} A -> A # H (h x a -> (1#h)(a#1)), invariants and
// the beta isomorphism Inv M^* -> Hom_H(M, H_t), and the duality
// consistency checks against (A#H)#H^* and End(A#H)_A.

#pragma once

#include "whakit/braided.hpp"

namespace wha {

struct ModuleAlgebra {
  HModule mod;     // H-action on A
  SparseMat mult;  // (d*d) -> d
  Vec unit;

  int dim() const { return mod.dim; }
  AssocAlgebra algebra() const;
  Vec mul(const Vec& a, const Vec& b) const;
  /// Algebra axioms, module axioms, h(ab) = (h1 a)(h2 b), h 1_A = eps_t(h) 1_A.
  Report verify() const;
};

/// A = H_t with the eps_t(h z) action and the multiplication of H.
ModuleAlgebra target_module_algebra(const WeakHopfAlgebra& H);
/// A = k (only valid when H_t is one-dimensional, i.e. ordinary Hopf case).
ModuleAlgebra scalar_module_algebra(const WeakHopfAlgebra& H);
/// A = B with the adjoint action and the multiplication of H.
ModuleAlgebra braided_group_module_algebra(const BraidedGroup& BG);

struct SmashProduct {
  const WeakHopfAlgebra* H = nullptr;
  int dimA = 0;
  Subspace carrier;  // image of the balancing projector inside A x H
  Matrix incl, proj;
  AssocAlgebra alg;  // multiplication on carrier coordinates
  Report report;

  bool ok() const { return report.all_pass(); }
  int dim() const { return carrier.dim(); }
  /// Class of a x h in carrier coordinates.
  Vec clazz(const Vec& a, const Vec& h) const;
};

SmashProduct smash_build(const ModuleAlgebra& A, const WeakHopfAlgebra& H);

/// Phi: H x_{H_t} A -> A # H, h x a -> (1_A # h)(a # 1_H); verified
/// well-defined, bijective, right A-linear, with the stated inverse.
Report phi_check(const ModuleAlgebra& A, const WeakHopfAlgebra& H);

struct InvariantsBeta {
  Subspace inv;       // Inv M inside M
  Subspace inv_dual;  // Inv M^* inside M^*
  Matrix beta;        // Inv M^* coords -> Hom_H(M, H_t) coords
  Subspace hom_to_unit;
  Report report;
};
/// Inv M, Inv M^*, and the isomorphism beta_M(m^*)(m) = <m^*, 1_(1) m> 1_(2)
/// with inverse f -> eps o f.
InvariantsBeta invariants_beta(const HModule& M);

/// The dual weak Hopf algebra H^* by structure transposition.
WeakHopfAlgebra dual_wha(const WeakHopfAlgebra& H);

/// Consistency of Nikshych duality: dim (A#H)#H^* = dim End(A#H)_A, equal
/// Wedderburn block multisets when both sides are split semisimple (and
/// small enough to split), and the semisimplicity transfer to A.
Report dual_smash_check(const ModuleAlgebra& A, const WeakHopfAlgebra& H,
                        long precision_bits, const mpz_class& height_bound,
                        uint64_t seed, bool compare_blocks = true);

}  // namespace wha
