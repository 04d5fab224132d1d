// Relative (D,H)-Hopf-module machinery: module coalgebras, left/right
// D-comodules in the representation category, cotensor products, internal
// Homs, the induction functor, endomorphism algebras of induced modules,
// tensor-over-algebra, and the irreducible Yetter-Drinfeld enumeration
// pipeline built on top of the braided-group decomposition.

#pragma once

#include "whakit/yd.hpp"

namespace wha {

/// A left H-module coalgebra (C, Delta_C, eps_C) with eps_C the k-valued
/// counit; the categorical counit into H_t is recovered through beta.
struct CoalgebraInC {
  HModule mod;   // H-action on C
  Matrix Delta;  // d^2 x d
  Vec eps;       // row of length d

  int dim() const { return mod.dim; }
  Report verify() const;  // coassociativity, counit, MC1, MC2
};

CoalgebraInC component_coalgebra(const BraidedGroup& BG,
                                 const SubcoalgebraComponent& comp);
CoalgebraInC braided_group_coalgebra(const BraidedGroup& BG);
/// The unit object H_t as a coalgebra in the category.
CoalgebraInC unit_coalgebra(const WeakHopfAlgebra& H);

struct LeftDComodule {
  const CoalgebraInC* D = nullptr;
  HModule mod;
  Matrix coaction;  // (dimD * dimM) x dimM

  int dim() const { return mod.dim; }
  Report verify(const std::string& prefix = "dcomod") const;
};

struct RightDComodule {
  const CoalgebraInC* D = nullptr;
  HModule mod;
  Matrix coaction;  // (dimM * dimD) x dimM

  int dim() const { return mod.dim; }
  Report verify(const std::string& prefix = "dcomod_r") const;
};

/// A D-comodule with no H-action (input of the induction functor).
struct PlainDComodule {
  const CoalgebraInC* D = nullptr;
  int dim = 0;
  Matrix coaction;  // (dimD * dim) x dim

  Report verify() const;
};

LeftDComodule regular_comodule(const CoalgebraInC& D);
PlainDComodule forget_action(const LeftDComodule& M);
LeftDComodule comodule_direct_sum(const LeftDComodule& A,
                                  const LeftDComodule& B);
/// The dual *M as a right D-comodule: S^{-1}-twisted action and the mate of
/// the coaction.
RightDComodule dual_right_comodule(const LeftDComodule& M);

struct CotensorResult {
  Subspace space;  // inside M x N
  HModule action;  // diagonal action restricted to the cotensor
  Report report;
};
/// M box_D N = ker(rho_M x id - id x rho_N), verified to be an H-submodule
/// of M x_t N.
CotensorResult cotensor(const RightDComodule& M, const LeftDComodule& N);

struct InternalHomResult {
  Subspace space;  // inside Hom_k(M, N), vectorized (row*dimM + col)
  HModule action;  // (h f)(m) = h_(2) f(S^{-1}(h_(1)) m)
  Report report;
};
InternalHomResult internal_hom(const LeftDComodule& M, const LeftDComodule& N);

/// Dimension equality and bijectivity of the explicit comparison map between
/// Hom^D(M, N) and *M box_D N.
Report internal_hom_vs_cotensor(const LeftDComodule& M,
                                const LeftDComodule& N);

/// Morphism spaces.
Subspace hom_HD(const LeftDComodule& M, const LeftDComodule& N);
Subspace hom_D_plain(const PlainDComodule& W, const LeftDComodule& M);

struct InducedResult {
  LeftDComodule module;
  Subspace carrier;  // inside H x W
  Report report;
};
/// Ind(W) = (H x W) rho_{C^*}(eps_C), the span of
/// <eps_C, h_(1) w_(-1)> h_(2) x w_(0), with the inherited action/coaction.
InducedResult induce(const CoalgebraInC& D, const PlainDComodule& W);

struct EndBlock {
  Vec central_idempotent;  // A coordinates
  int block_dim = 0;       // dim zA = d^2
  int d = 0;               // matrix size
  int isotypic_dim = 0;    // dim Mz
  int simple_dim = 0;      // isotypic_dim / d
};

struct EndAlgebraResult {
  SplitStatus status = SplitStatus::Ok;
  std::string detail;
  AssocAlgebra algebra;  // A = End_H^D(M) under composition
  Matrix basis;          // rows = vectorized endomorphisms of M
  std::vector<EndBlock> blocks;
  Report report;

  Matrix endo_of(const Vec& a_coords, int dimM) const;
};
EndAlgebraResult end_algebra(const LeftDComodule& M, long precision_bits,
                             const mpz_class& height_bound, uint64_t seed);

/// A right A-module given by its action matrices per A-basis element.
struct RightAModule {
  int dim = 0;
  std::vector<Matrix> act;  // act[t] = right action of A-basis t

  Report verify(const AssocAlgebra& A) const;
  bool is_simple(const AssocAlgebra& A) const;  // commutant has dimension 1
};

/// U x_A M: the quotient of U x M by u a x m - u x a m, with the inherited
/// H-action and D-coaction (well-definedness verified).
struct TensorOverResult {
  LeftDComodule module;
  Report report;
};
TensorOverResult tensor_over_algebra(const RightAModule& U,
                                     const EndAlgebraResult& A,
                                     const LeftDComodule& M);

struct EnumBlockReport {
  int block_dim = 0, d = 0, isotypic_dim = 0, simple_dim = 0;
  bool constructed = false;
  bool certified_simple = false;
};

struct EnumComponentReport {
  int index = 0;
  int dim_component = 0;
  int dim_induced = 0;
  int dim_end_algebra = 0;
  std::vector<EnumBlockReport> blocks;
};

struct UserModuleSpec {
  int component = 0;
  int block = 0;
  RightAModule module;
};

struct EnumerateOptions {
  long precision_bits = 256;
  mpz_class height_bound = 1000000;
  uint64_t seed = 0;
  std::vector<UserModuleSpec> user_modules;
};

struct ConstructedSimple {
  int component = 0;
  int block = 0;
  YDModule module;
};

struct EnumerationResult {
  SplitStatus status = SplitStatus::Ok;
  std::string detail;
  Report report;
  std::vector<EnumComponentReport> components;
  std::vector<ConstructedSimple> constructed;  // certified simple modules
  int total_simples = 0;
  std::vector<int> simple_dims;  // sorted multiset
  long sum_dim_sq = 0;
};

/// Full pipeline: decompose B, induce from each component's regular
/// comodule, split the endomorphism algebra, report per-block counts and
/// dimensions, and construct + certify explicit simple Yetter-Drinfeld
/// modules where a one-dimensional block (or a user-supplied simple right
/// A-module) makes that possible.
EnumerationResult enumerate_yd(const WeakHopfAlgebra& H, const RMatrix& R,
                               const EnumerateOptions& opts);

}  // namespace wha
