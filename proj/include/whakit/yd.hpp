// Yetter-Drinfeld modules over a quasi-triangular weak Hopf algebra and the
// equivalence with comodules over the braided group B, with both conversion
// directions given by the explicit R-matrix formulas.

#pragma once

#include "whakit/braided.hpp"

namespace wha {

struct YDModule {
  HModule mod;
  /// Left H-coaction rho: M -> H x M, image inside H x_t M.
  Matrix coaction;

  int dim() const { return mod.dim; }
};

struct BComodule {
  HModule mod;
  /// Left B-coaction rho_R: M -> B x M (B coordinates), image in B x_t M.
  Matrix coaction;

  int dim() const { return mod.dim; }
};

/// Exhaustive check of the comodule axioms, the truncation condition
/// rho(m) in H x_t M, and the Yetter-Drinfeld compatibility.
Report yd_verify(const YDModule& M);

/// Comodule axioms over (B, Delta_B), H-module-map property of the
/// coaction, and the truncation condition.
Report bcomod_verify(const BComodule& M, const BraidedGroup& BG);

/// rho_R(m) = m_(-1) S(R^2) x R^1 m_(0); throws if the first leg leaves B.
BComodule to_bcomod(const YDModule& M, const BraidedGroup& BG);
/// rho(m) = m^(-1) R^2 x R^1 m^(0).
YDModule to_yd(const BComodule& M, const BraidedGroup& BG);

/// Morphisms of Yetter-Drinfeld modules: linear maps commuting with every
/// action matrix and intertwining the coactions.
Subspace hom_yd(const YDModule& M, const YDModule& N);
/// Schur criterion: M != 0 and dim End_YD(M) = 1.  Valid as a simplicity
/// certificate under the semisimple split hypotheses.
bool yd_is_simple(const YDModule& M);

YDModule yd_direct_sum(const YDModule& A, const YDModule& B);
YDModule yd_zero(const WeakHopfAlgebra& H);
/// The unit object: H_t with action eps_t(h z) and coaction z -> 1_(1) z x 1_(2).
YDModule yd_unit(const WeakHopfAlgebra& H);
/// B itself with the adjoint action; the coaction is Delta_B converted
/// through the comodule side (so this is toYD of (B, Delta_B)).
YDModule yd_braided_group(const BraidedGroup& BG);
/// A component D_i as a YD module: toYD of (D_i, Delta_B restricted).
YDModule yd_component(const BraidedGroup& BG, const SubcoalgebraComponent& c);
/// The B-comodule (D_i, Delta_B|) itself.
BComodule bcomod_component(const BraidedGroup& BG,
                           const SubcoalgebraComponent& c);

/// dim Hom_YD(D_i, D_j) for every pair of components; reported so possible
/// repetition among components is visible rather than assumed.
std::vector<std::vector<int>> component_hom_table(
    const BraidedGroup& BG, const std::vector<SubcoalgebraComponent>& comps);

}  // namespace wha
