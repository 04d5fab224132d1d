// Finite-dimensional associative algebras presented by structure constants:
// verification, trace-form radical, center, splitting of split semisimple
// commutative algebras into primitive idempotents, and Wedderburn block data.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "whakit/matrix.hpp"

namespace wha {

/// One named exact check with an optional witness for the first failure.
struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct Report {
  std::vector<CheckResult> checks;

  void add(const std::string& name, bool pass, const std::string& witness = "");
  void merge(const Report& other);
  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
  std::string summary() const;
};

/// An associative unital algebra over a Field, by structure constants.
struct AssocAlgebra {
  const Field* fld = nullptr;
  int dim = 0;
  SparseMat mult;  // (dim*dim) -> dim, column i*dim+j holds e_i * e_j
  Vec unit;

  AssocAlgebra() = default;
  AssocAlgebra(const Field* f, int d)
      : fld(f), dim(d), mult(f, d, d * d), unit(vec_zero(f, d)) {}

  Vec mul(const Vec& a, const Vec& b) const;
  Matrix left_mult(const Vec& a) const;
  Matrix right_mult(const Vec& a) const;
  Matrix basis_left_mult(int i) const;

  Report verify(bool expect_commutative = false) const;
  bool is_commutative() const;

  /// Dimension of the radical of the trace form T(x,y) = tr(L_x L_y); zero
  /// iff semisimple in characteristic zero.
  int trace_radical_dim() const;
  Subspace center() const;
  /// Structure constants restricted to a multiplicatively closed subspace
  /// containing the given unit.
  AssocAlgebra subalgebra(const Subspace& s, const Vec& sub_unit) const;
};

enum class SplitStatus { Ok, NotSplit, NotSemisimple };

struct SplitResult {
  SplitStatus status = SplitStatus::Ok;
  std::string detail;
  /// Pairwise-orthogonal primitive idempotents summing to the unit, in the
  /// input algebra's coordinates; size == dim on success.
  std::vector<Vec> idempotents;
};

/// Splits a commutative split semisimple algebra into primitive idempotents.
/// Deterministic basis sweeps first; a seeded RNG supplies random linear
/// combinations only if basis elements fail to separate.  Eigenvalues are
/// located numerically, reconstructed exactly, and verified by exact
/// substitution before use.
SplitResult split_commutative(const AssocAlgebra& Z, long precision_bits,
                              const mpz_class& height_bound, uint64_t seed);

struct WedderburnBlock {
  Vec central_idempotent;
  int block_dim = 0;    // dim of z*A
  int matrix_size = 0;  // d with block_dim = d^2 (0 if not a perfect square)
};

struct WedderburnResult {
  SplitStatus status = SplitStatus::Ok;
  std::string detail;
  std::vector<WedderburnBlock> blocks;
  std::vector<int> block_dims() const;
};

/// Central decomposition of a semisimple algebra: splits the center and
/// reports per-block dimensions; matrix_size is set when the block dimension
/// is a perfect square (the split case).
WedderburnResult wedderburn_blocks(const AssocAlgebra& A, long precision_bits,
                                   const mpz_class& height_bound,
                                   uint64_t seed);

}  // namespace wha
