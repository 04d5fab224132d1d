// The automorphism braided group B = C_H(H_s) of a quasi-triangular weak
// Hopf algebra: construction of the braided Hopf structure (m_B, u_B,
// Delta_B, eps_B, S_B and its inverse), exhaustive verification of its laws
// including the braided bialgebra law and categorical cocommutativity on the
// regular module, and the decomposition into minimal H-adjoint-stable
// subcoalgebras.

#pragma once

#include "whakit/modules.hpp"

namespace wha {

struct BraidedGroup {
  const WeakHopfAlgebra* H = nullptr;
  RMatrix R;

  Subspace carrier;  // B inside H
  int dim = 0;       // dim B
  HModule adjoint;   // adjoint action in B coordinates

  SparseMat P2;        // truncation projector on B x B (adjoint action)
  Matrix mB;           // B x B coords -> B coords (multiplication)
  Matrix uB;           // Ht coords -> B coords
  Matrix DeltaB;       // B -> B x B coords, image inside the carrier
  Matrix epsB;         // B -> Ht coords
  Matrix SB, TB;       // antipode and its inverse, B coords

  /// Coordinates of an H-vector lying in B; nullopt otherwise.
  std::optional<Vec> b_coords(const Vec& h) const { return carrier.coords_of(h); }
  Vec b_lift(const Vec& coords) const { return carrier.lift(coords); }
};

struct BraidedGroupBuild {
  Report report;
  std::optional<BraidedGroup> group;  // set iff the build succeeded
};

/// The centralizer C_H(H_s), computed both as the commutant of H_s and as
/// the image of h -> 1_(1) h S(1_(2)); the two must agree.
Subspace centralizer_Hs(const WeakHopfAlgebra& H);

BraidedGroupBuild braided_group_build(const WeakHopfAlgebra& H,
                                      const RMatrix& R);

/// Exact verification of the braided Hopf laws for B: module-map properties,
/// (co)associativity, (co)unit laws, the braided bialgebra law, antipode
/// laws, S_B T_B = T_B S_B = id, and the cocommutativity identity
/// instantiated on the regular module.
Report braided_group_verify(const BraidedGroup& BG);

struct SubcoalgebraComponent {
  int index = 0;
  Subspace space;    // inside B (B coordinates)
  Matrix DeltaD;     // D -> D x D coords (restriction of Delta_B)
  Vec epsD;          // row: the k-valued counit eps restricted to D
  HModule adjoint;   // adjoint action in D coordinates
};

struct DecomposeResult {
  SplitStatus status = SplitStatus::Ok;
  std::string detail;
  Report report;
  std::vector<SubcoalgebraComponent> components;
  std::vector<int> component_dims() const;
};

/// Decomposes B into minimal H-adjoint-stable subcoalgebras: dualize, split
/// the center of B^*, pull central idempotents back to simple subcoalgebras,
/// close under the adjoint action, and merge overlapping closures.
DecomposeResult decompose_braided_group(const BraidedGroup& BG,
                                        long precision_bits,
                                        const mpz_class& height_bound,
                                        uint64_t seed);

/// The dual algebra B^* (structure constants transposed from Delta_B) with
/// unit eps|_B; shared by the decomposition and its tests.
AssocAlgebra dual_algebra(const BraidedGroup& BG);

}  // namespace wha
