// Dense exact linear algebra over a Field, canonical-rref subspaces, sparse
// structure maps, and tensor-leg utilities.  Everything here is exact; rref
// bases are canonical so subspace equality is entrywise comparison.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "whakit/field.hpp"

namespace wha {

using Vec = std::vector<FieldElem>;

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0), fld_(nullptr) {}
  Matrix(const Field* f, int rows, int cols)
      : rows_(rows), cols_(cols), fld_(f), a_(rows * cols, f->zero()) {}

  static Matrix identity(const Field* f, int n);
  static Matrix from_rows(const Field* f, const std::vector<Vec>& rows,
                          int cols);
  static Matrix column(const Vec& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field* field() const { return fld_; }

  FieldElem& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
  const FieldElem& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  void set_row(int i, const Vec& v);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix scaled(const FieldElem& c) const;
  Matrix transpose() const;
  Matrix conj_transpose() const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;
  bool is_identity() const;

  static Matrix kron(const Matrix& A, const Matrix& B);
  static Matrix hstack(const Matrix& A, const Matrix& B);
  static Matrix vstack(const Matrix& A, const Matrix& B);

  /// In-place reduced row echelon form; returns rank, appends pivot column
  /// indices to *pivots if given.
  int rref_inplace(std::vector<int>* pivots = nullptr);
  int rank() const;
  /// Basis of {x : Ax = 0}, rows of the result, canonical rref form.
  Matrix kernel() const;
  /// Solves A x = b for one solution; nullopt if inconsistent.
  std::optional<Vec> solve(const Vec& b) const;
  /// Solves A X = B columnwise; nullopt if any column is inconsistent.
  std::optional<Matrix> solve(const Matrix& B) const;
  std::optional<Matrix> inverse() const;
  FieldElem trace() const;

  std::string str() const;

 private:
  int rows_, cols_;
  const Field* fld_;
  std::vector<FieldElem> a_;
};

// vector helpers
Vec vec_zero(const Field* f, int n);
Vec vec_unit(const Field* f, int n, int i);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scaled(const Vec& a, const FieldElem& c);
bool vec_is_zero(const Vec& a);
bool vec_eq(const Vec& a, const Vec& b);

/// A subspace of k^ambient with a canonical (rref) basis stored as rows.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  static Subspace zero(const Field* f, int ambient);
  static Subspace full(const Field* f, int ambient);
  /// Row span of the given matrix.
  static Subspace span(Matrix rows);
  static Subspace image(const Matrix& A);  // column space of A

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const Field* field() const { return basis_.field(); }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;

  /// Coordinates of v in the rref basis; nullopt if v is outside.
  std::optional<Vec> coords_of(const Vec& v) const;
  /// Ambient vector from coordinates.
  Vec lift(const Vec& coords) const;
  /// basis^T as a matrix k^dim -> k^ambient.
  Matrix inclusion() const;
  /// For a subspace that is the image of the idempotent P: the coordinate
  /// map k^ambient -> k^dim reading off pivot entries of P x.  With P the
  /// rref-projection (pivot rows of basis) this is a retraction of
  /// inclusion().
  Matrix rref_projection() const;

 private:
  int ambient_;
  Matrix basis_;
  std::vector<int> pivots_;
};

// ---- sparse structure maps ----

/// Sorted sparse vector: (index, nonzero coefficient) pairs.
using SparseVec = std::vector<std::pair<int, FieldElem>>;

SparseVec sparse_from_dense(const Vec& v);
Vec dense_from_sparse(const SparseVec& s, const Field* f, int n);
void sparse_accumulate(SparseVec& dst, const SparseVec& src,
                       const FieldElem& coeff);
SparseVec sparse_normalize(SparseVec v);

/// Column-major sparse matrix.
struct SparseMat {
  int rows = 0, cols = 0;
  const Field* fld = nullptr;
  std::vector<SparseVec> col;

  SparseMat() = default;
  SparseMat(const Field* f, int r, int c) : rows(r), cols(c), fld(f), col(c) {}

  static SparseMat identity(const Field* f, int n);
  static SparseMat from_dense(const Matrix& m);
  Matrix to_dense() const;

  SparseVec apply(const SparseVec& v) const;
  Vec apply_dense(const Vec& v) const;
  SparseMat compose(const SparseMat& inner) const;  // this * inner
  SparseMat transpose() const;
  size_t nnz() const;
  bool is_identity() const;
};

SparseMat sparse_kron(const SparseMat& A, const SparseMat& B);

// ---- tensor legs ----
// A dense coefficient vector on a tensor product with given leg dimensions,
// flattened row-major (leg 0 slowest).

int tensor_rank_index(const std::vector<int>& dims, const std::vector<int>& idx);
std::vector<int> tensor_unrank_index(const std::vector<int>& dims, int flat);

/// Applies M to one leg of v.
SparseVec apply_leg(const SparseMat& M, int leg, const std::vector<int>& dims,
                    const SparseVec& v);
/// Swaps two adjacent-or-not legs of v (dims updated by the caller).
SparseVec swap_legs(int legA, int legB, const std::vector<int>& dims,
                    const SparseVec& v);
/// Applies sum_t r_t (A[a_t] on legA, B[b_t] on legB) where rweights is a
/// sparse vector on pairs (a, b) flattened with b fastest (as H-tensor
/// coordinates).
SparseVec apply_pair_action(const std::vector<SparseMat>& A,
                            const std::vector<SparseMat>& B,
                            const SparseVec& rweights, int dimH, int legA,
                            int legB, const std::vector<int>& dims,
                            const SparseVec& v);
/// Contracts legH into legM by acting: e_a (legH) otimes m (legM) ->
/// act[a] m placed at legM's position with legH removed.
SparseVec contract_action(const std::vector<SparseMat>& act, int legH,
                          int legM, const std::vector<int>& dims,
                          const SparseVec& v);

/// Minimal polynomial of a square matrix: least-degree monic p with p(M)=0,
/// found by the first linear dependence among powers of M.
FPoly min_poly(const Matrix& M);

/// {F in k^{d x d} : F M_i = M_i F for all i}, as a subspace of the
/// vectorization (row*d + col).  Computed by iterative kernel refinement so
/// large stacked systems are never materialized.
Subspace commutant_subspace(const Field* f,
                            const std::vector<SparseMat>& mats);
/// Refines S to its subspace of flattened matrices commuting with each M_i.
Subspace commutant_refine(Subspace S, const std::vector<SparseMat>& mats);

}  // namespace wha
