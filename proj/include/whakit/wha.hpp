// Weak Hopf algebras by structure constants: exhaustive axiom verification,
// counital maps and subalgebras, and quasi-triangular structure with the
// inverse R-matrix solved for and certified.

#pragma once

#include <optional>

#include "whakit/algebra.hpp"
#include "whakit/matrix.hpp"

namespace wha {

class WeakHopfAlgebra {
 public:
  WeakHopfAlgebra() = default;
  WeakHopfAlgebra(const Field* f, int dim);

  // structure input (used by builders and the file reader)
  void add_mult(int i, int j, int k, const FieldElem& c);
  void add_comult(int i, int j, int k, const FieldElem& c);  // Delta(b_i) += c b_j x b_k
  void set_unit(int i, const FieldElem& c);
  void set_counit(int i, const FieldElem& c);
  void set_antipode(int i, int j, const FieldElem& c);  // S(b_j) += c b_i
  /// Computes all caches; throws std::invalid_argument on dimensional
  /// inconsistency.  Must be called before use.
  void finalize();

  int dim() const { return n_; }
  const Field* field() const { return fld_; }
  const SparseMat& mult_tensor() const { return mult_; }
  const SparseMat& comult_tensor() const { return comult_; }
  const Vec& unit() const { return unit_; }
  const Vec& counit_row() const { return counit_; }
  const Matrix& antipode_matrix() const { return S_; }
  const Matrix& antipode_inv_matrix() const;
  bool antipode_invertible() const { return Sinv_.has_value(); }

  // element operations (dense coordinate vectors)
  Vec mul(const Vec& a, const Vec& b) const;
  Vec comul(const Vec& a) const;  // into H x H coordinates
  FieldElem counit(const Vec& a) const;
  Vec antipode(const Vec& a) const;
  Vec antipode_inv(const Vec& a) const;
  Vec eps_t(const Vec& a) const;
  Vec eps_s(const Vec& a) const;
  Vec adjoint(const Vec& h, const Vec& b) const;  // h . b = h1 b S(h2)

  // tensor-coordinate products: x, y live on H^(x legs), flattened
  SparseVec tensor_mul(const SparseVec& x, const SparseVec& y, int legs) const;
  Vec tensor_mul_dense(const Vec& x, const Vec& y, int legs) const;

  // caches
  const Vec& delta1() const { return delta1_; }          // Delta(1)
  const Vec& delta1_op() const { return delta1op_; }     // Delta^op(1)
  const SparseVec& delta1_sparse() const { return delta1s_; }
  const SparseVec& delta1_op_sparse() const { return delta1ops_; }
  const Matrix& eps_t_matrix() const { return epst_; }
  const Matrix& eps_s_matrix() const { return epss_; }
  const Subspace& target_subalgebra() const { return Ht_; }
  const Subspace& source_subalgebra() const { return Hs_; }
  const std::vector<SparseMat>& left_mult() const { return L_; }
  const std::vector<SparseMat>& right_mult() const { return R_; }
  const std::vector<SparseMat>& adjoint_action() const { return ad_; }
  const SparseMat& antipode_sparse() const { return Ssm_; }
  /// True when Delta(1) = 1 x 1 (ordinary Hopf algebra; enables fast paths).
  bool is_hopf_unit() const { return hopf_unit_; }

  FieldElem eps_of_product(int i, int j) const { return epsmul_.at(i, j); }

 private:
  const Field* fld_ = nullptr;
  int n_ = 0;
  SparseMat mult_;    // (n*n) -> n
  SparseMat comult_;  // n -> n*n
  Vec unit_;
  Vec counit_;
  Matrix S_;
  bool finalized_ = false;

  // caches
  std::vector<SparseMat> L_, R_, ad_;
  SparseMat Ssm_;
  std::optional<Matrix> Sinv_;
  Matrix epst_, epss_;
  Matrix epsmul_;  // (i,j) -> eps(e_i e_j)
  Subspace Ht_, Hs_;
  Vec delta1_, delta1op_;
  SparseVec delta1s_, delta1ops_;
  bool hopf_unit_ = false;
};

/// Exhaustive verification of the weak Hopf axioms, the derived relations,
/// regularity, and antipode (anti)homomorphism properties.  Each identity is
/// checked exactly on all basis tuples; the report carries the first failing
/// witness per check.
Report wha_verify(const WeakHopfAlgebra& H);

/// Target and source counital images of a single element.
std::pair<Vec, Vec> counital_maps(const WeakHopfAlgebra& H, const Vec& h);

struct RMatrix {
  Vec R;     // element of H x H
  Vec Rbar;  // certified inverse
  SparseVec R_sparse, Rbar_sparse;
};

struct QTResult {
  Report report;
  std::optional<RMatrix> rmatrix;  // set iff all checks passed
};

/// Checks the quasi-triangularity axioms for R, solves for the inverse Rbar
/// in Delta(1)(HxH)Delta^op(1), and verifies the derived properties
/// (counital images of R, (S x id)R = Rbar, (S x S)R = R).
QTResult qt_verify(const WeakHopfAlgebra& H, const Vec& R);

}  // namespace wha
