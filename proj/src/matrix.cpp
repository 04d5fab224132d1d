#include "whakit/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wha {

Matrix Matrix::identity(const Field* f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
  return m;
}

Matrix Matrix::from_rows(const Field* f, const std::vector<Vec>& rows,
                         int cols) {
  Matrix m(f, (int)rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j) m.at((int)i, j) = rows[i][j];
  return m;
}

Matrix Matrix::column(const Vec& v) {
  Matrix m(v[0].field(), (int)v.size(), 1);
  for (size_t i = 0; i < v.size(); ++i) m.at((int)i, 0) = v[i];
  return m;
}

Vec Matrix::row(int i) const {
  Vec v(cols_, fld_->zero());
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

Vec Matrix::col(int j) const {
  Vec v(rows_, fld_->zero());
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Matrix::set_row(int i, const Vec& v) {
  for (int j = 0; j < cols_; ++j) at(i, j) = v[j];
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix m(fld_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix m(fld_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape");
  Matrix m(fld_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const FieldElem& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const FieldElem& y = o.at(k, j);
        if (y.is_zero()) continue;
        m.at(i, j) += x * y;
      }
    }
  return m;
}

Vec Matrix::operator*(const Vec& v) const {
  Vec out(rows_, fld_->zero());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const FieldElem& x = at(i, j);
      if (x.is_zero() || v[j].is_zero()) continue;
      out[i] += x * v[j];
    }
  return out;
}

Matrix Matrix::scaled(const FieldElem& c) const {
  Matrix m(fld_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(fld_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::conj_transpose() const {
  Matrix m(fld_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conj();
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j && !at(i, j).is_one()) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

Matrix Matrix::kron(const Matrix& A, const Matrix& B) {
  Matrix m(A.field(), A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      const FieldElem& a = A.at(i, j);
      if (a.is_zero()) continue;
      for (int p = 0; p < B.rows(); ++p)
        for (int q = 0; q < B.cols(); ++q) {
          const FieldElem& b = B.at(p, q);
          if (b.is_zero()) continue;
          m.at(i * B.rows() + p, j * B.cols() + q) = a * b;
        }
    }
  return m;
}

Matrix Matrix::hstack(const Matrix& A, const Matrix& B) {
  Matrix m(A.field(), A.rows(), A.cols() + B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) m.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols(); ++j) m.at(i, A.cols() + j) = B.at(i, j);
  }
  return m;
}

Matrix Matrix::vstack(const Matrix& A, const Matrix& B) {
  Matrix m(A.field(), A.rows() + B.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) m.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) m.at(A.rows() + i, j) = B.at(i, j);
  return m;
}

int Matrix::rref_inplace(std::vector<int>* pivots) {
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (!at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
    FieldElem inv = at(r, c).inv();
    if (!inv.is_one())
      for (int j = c; j < cols_; ++j)
        if (!at(r, j).is_zero()) at(r, j) = at(r, j) * inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const FieldElem f = at(i, c);
      if (f.is_zero()) continue;
      for (int j = c; j < cols_; ++j) {
        if (at(r, j).is_zero()) continue;
        at(i, j) = at(i, j) - f * at(r, j);
      }
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

int Matrix::rank() const {
  Matrix m = *this;
  return m.rref_inplace();
}

Matrix Matrix::kernel() const {
  // For very tall systems, pass to the conjugate Gram matrix first: over a
  // cyclotomic field sum conj(y_i) y_i = 0 forces every y_i = 0, so
  // ker(A* A) = ker(A) exactly.
  if (rows_ > 2 * cols_ && rows_ > 64) {
    Matrix g = conj_transpose() * (*this);
    return g.kernel();
  }
  Matrix m = *this;
  std::vector<int> piv;
  m.rref_inplace(&piv);
  std::vector<bool> is_piv(cols_, false);
  for (int c : piv) is_piv[c] = true;
  Matrix out(fld_, cols_ - (int)piv.size(), cols_);
  int r = 0;
  for (int c = 0; c < cols_; ++c) {
    if (is_piv[c]) continue;
    out.at(r, c) = fld_->one();
    for (size_t p = 0; p < piv.size(); ++p)
      out.at(r, piv[p]) = -m.at((int)p, c);
    ++r;
  }
  // rows are already in a canonical echelon-like form; put through rref for
  // canonical ordering anyway (cheap).
  out.rref_inplace();
  return out;
}

std::optional<Vec> Matrix::solve(const Vec& b) const {
  Matrix aug = hstack(*this, Matrix::column(b));
  std::vector<int> piv;
  aug.rref_inplace(&piv);
  for (int c : piv)
    if (c == cols_) return std::nullopt;  // pivot in the rhs column
  Vec x(cols_, fld_->zero());
  for (size_t p = 0; p < piv.size(); ++p) x[piv[p]] = aug.at((int)p, cols_);
  return x;
}

std::optional<Matrix> Matrix::solve(const Matrix& B) const {
  Matrix aug = hstack(*this, B);
  std::vector<int> piv;
  aug.rref_inplace(&piv);
  for (int c : piv)
    if (c >= cols_) return std::nullopt;
  Matrix X(fld_, cols_, B.cols());
  for (size_t p = 0; p < piv.size(); ++p)
    for (int j = 0; j < B.cols(); ++j)
      X.at(piv[p], j) = aug.at((int)p, cols_ + j);
  return X;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  Matrix aug = hstack(*this, identity(fld_, rows_));
  std::vector<int> piv;
  int rank = aug.rref_inplace(&piv);
  if (rank != rows_) return std::nullopt;
  for (int p = 0; p < rows_; ++p)
    if (piv[p] != p) return std::nullopt;
  Matrix inv(fld_, rows_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

FieldElem Matrix::trace() const {
  FieldElem t = fld_->zero();
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << at(i, j).str();
    }
    os << "]\n";
  }
  return os.str();
}

Vec vec_zero(const Field* f, int n) { return Vec(n, f->zero()); }

Vec vec_unit(const Field* f, int n, int i) {
  Vec v(n, f->zero());
  v[i] = f->one();
  return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a.size(), a[0].field()->zero());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a.size(), a[0].field()->zero());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec vec_scaled(const Vec& a, const FieldElem& c) {
  Vec out(a.size(), c.field()->zero());
  if (c.is_zero()) return out;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) out[i] = a[i] * c;
  return out;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// ---- Subspace ----

Subspace Subspace::zero(const Field* f, int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(f, 0, ambient);
  return s;
}

Subspace Subspace::full(const Field* f, int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(f, ambient);
  for (int i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

Subspace Subspace::span(Matrix rows) {
  Subspace s;
  s.ambient_ = rows.cols();
  std::vector<int> piv;
  int rank = rows.rref_inplace(&piv);
  Matrix basis(rows.field(), rank, rows.cols());
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rows.cols(); ++j) basis.at(i, j) = rows.at(i, j);
  s.basis_ = std::move(basis);
  s.pivots_ = std::move(piv);
  return s;
}

Subspace Subspace::image(const Matrix& A) { return span(A.transpose()); }

bool Subspace::contains(const Vec& v) const { return coords_of(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && basis_ == o.basis_;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw std::invalid_argument("ambient mismatch");
  return span(Matrix::vstack(basis_, o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw std::invalid_argument("ambient mismatch");
  // x in U cap V iff x = a U = b V; kernel of [U^T | -V^T] gives (a, b).
  Matrix stacked = Matrix::hstack(basis_.transpose(),
                                  o.basis_.transpose().scaled(
                                      field()->integer(-1)));
  Matrix ker = stacked.kernel();
  Matrix vecs(field(), ker.rows(), ambient_);
  for (int r = 0; r < ker.rows(); ++r) {
    Vec acc = vec_zero(field(), ambient_);
    for (int i = 0; i < dim(); ++i) {
      if (ker.at(r, i).is_zero()) continue;
      acc = vec_add(acc, vec_scaled(basis_.row(i), ker.at(r, i)));
    }
    vecs.set_row(r, acc);
  }
  return span(vecs);
}

std::optional<Vec> Subspace::coords_of(const Vec& v) const {
  // rref basis: coordinates are read off at pivot columns; verify residual.
  Vec coords(dim(), field()->zero());
  Vec resid = v;
  for (int i = 0; i < dim(); ++i) {
    const FieldElem& c = resid[pivots_[i]];
    if (c.is_zero()) continue;
    coords[i] = c;
    resid = vec_sub(resid, vec_scaled(basis_.row(i), c));
  }
  if (!vec_is_zero(resid)) return std::nullopt;
  return coords;
}

Vec Subspace::lift(const Vec& coords) const {
  Vec out = vec_zero(field(), ambient_);
  for (int i = 0; i < dim(); ++i)
    if (!coords[i].is_zero())
      out = vec_add(out, vec_scaled(basis_.row(i), coords[i]));
  return out;
}

Matrix Subspace::inclusion() const { return basis_.transpose(); }

Matrix Subspace::rref_projection() const {
  Matrix p(field(), dim(), ambient_);
  for (int i = 0; i < dim(); ++i) p.at(i, pivots_[i]) = field()->one();
  return p;
}

// ---- sparse ----

SparseVec sparse_from_dense(const Vec& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back((int)i, v[i]);
  return s;
}

Vec dense_from_sparse(const SparseVec& s, const Field* f, int n) {
  Vec v = vec_zero(f, n);
  for (const auto& [i, c] : s) v[i] = v[i] + c;
  return v;
}

SparseVec sparse_normalize(SparseVec v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, c);
  }
  SparseVec pruned;
  for (auto& [i, c] : out)
    if (!c.is_zero()) pruned.emplace_back(i, std::move(c));
  return pruned;
}

void sparse_accumulate(SparseVec& dst, const SparseVec& src,
                       const FieldElem& coeff) {
  if (coeff.is_zero()) return;
  for (const auto& [i, c] : src) dst.emplace_back(i, c * coeff);
}

SparseMat SparseMat::identity(const Field* f, int n) {
  SparseMat m(f, n, n);
  for (int i = 0; i < n; ++i) m.col[i].emplace_back(i, f->one());
  return m;
}

SparseMat SparseMat::from_dense(const Matrix& d) {
  SparseMat m(d.field(), d.rows(), d.cols());
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i)
      if (!d.at(i, j).is_zero()) m.col[j].emplace_back(i, d.at(i, j));
  return m;
}

Matrix SparseMat::to_dense() const {
  Matrix d(fld, rows, cols);
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, c] : col[j]) d.at(i, j) = c;
  return d;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
  SparseVec acc;
  for (const auto& [j, c] : v) sparse_accumulate(acc, col[j], c);
  return sparse_normalize(std::move(acc));
}

Vec SparseMat::apply_dense(const Vec& v) const {
  Vec out = vec_zero(fld, rows);
  for (int j = 0; j < cols; ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [i, c] : col[j]) out[i] += c * v[j];
  }
  return out;
}

SparseMat SparseMat::compose(const SparseMat& inner) const {
  SparseMat out(fld, rows, inner.cols);
  for (int j = 0; j < inner.cols; ++j) out.col[j] = apply(inner.col[j]);
  return out;
}

SparseMat SparseMat::transpose() const {
  SparseMat out(fld, cols, rows);
  for (int j = 0; j < cols; ++j)
    for (const auto& [i, c] : col[j]) out.col[i].emplace_back(j, c);
  for (auto& c : out.col) c = sparse_normalize(std::move(c));
  return out;
}

size_t SparseMat::nnz() const {
  size_t n = 0;
  for (const auto& c : col) n += c.size();
  return n;
}

bool SparseMat::is_identity() const {
  if (rows != cols) return false;
  for (int j = 0; j < cols; ++j) {
    if (col[j].size() != 1) return false;
    if (col[j][0].first != j || !col[j][0].second.is_one()) return false;
  }
  return true;
}

SparseMat sparse_kron(const SparseMat& A, const SparseMat& B) {
  SparseMat out(A.fld, A.rows * B.rows, A.cols * B.cols);
  for (int ja = 0; ja < A.cols; ++ja)
    for (int jb = 0; jb < B.cols; ++jb) {
      SparseVec& c = out.col[ja * B.cols + jb];
      for (const auto& [ia, ca] : A.col[ja])
        for (const auto& [ib, cb] : B.col[jb])
          c.emplace_back(ia * B.rows + ib, ca * cb);
      c = sparse_normalize(std::move(c));
    }
  return out;
}

// ---- tensor legs ----

int tensor_rank_index(const std::vector<int>& dims,
                      const std::vector<int>& idx) {
  int flat = 0;
  for (size_t l = 0; l < dims.size(); ++l) flat = flat * dims[l] + idx[l];
  return flat;
}

std::vector<int> tensor_unrank_index(const std::vector<int>& dims, int flat) {
  std::vector<int> idx(dims.size());
  for (size_t l = dims.size(); l-- > 0;) {
    idx[l] = flat % dims[l];
    flat /= dims[l];
  }
  return idx;
}

SparseVec apply_leg(const SparseMat& M, int leg, const std::vector<int>& dims,
                    const SparseVec& v) {
  SparseVec acc;
  std::vector<int> odims = dims;
  odims[leg] = M.rows;
  for (const auto& [flat, c] : v) {
    std::vector<int> idx = tensor_unrank_index(dims, flat);
    for (const auto& [i, m] : M.col[idx[leg]]) {
      std::vector<int> oidx = idx;
      oidx[leg] = i;
      acc.emplace_back(tensor_rank_index(odims, oidx), c * m);
    }
  }
  return sparse_normalize(std::move(acc));
}

SparseVec swap_legs(int legA, int legB, const std::vector<int>& dims,
                    const SparseVec& v) {
  std::vector<int> odims = dims;
  std::swap(odims[legA], odims[legB]);
  SparseVec out;
  for (const auto& [flat, c] : v) {
    std::vector<int> idx = tensor_unrank_index(dims, flat);
    std::swap(idx[legA], idx[legB]);
    out.emplace_back(tensor_rank_index(odims, idx), c);
  }
  return sparse_normalize(std::move(out));
}

SparseVec apply_pair_action(const std::vector<SparseMat>& A,
                            const std::vector<SparseMat>& B,
                            const SparseVec& rweights, int dimH, int legA,
                            int legB, const std::vector<int>& dims,
                            const SparseVec& v) {
  SparseVec acc;
  for (const auto& [ab, w] : rweights) {
    int a = ab / dimH, b = ab % dimH;
    SparseVec tmp = apply_leg(A[a], legA, dims, v);
    tmp = apply_leg(B[b], legB, dims, tmp);
    sparse_accumulate(acc, tmp, w);
  }
  return sparse_normalize(std::move(acc));
}

SparseVec contract_action(const std::vector<SparseMat>& act, int legH,
                          int legM, const std::vector<int>& dims,
                          const SparseVec& v) {
  std::vector<int> odims;
  for (size_t l = 0; l < dims.size(); ++l)
    if ((int)l != legH) odims.push_back(dims[l]);
  SparseVec acc;
  for (const auto& [flat, c] : v) {
    std::vector<int> idx = tensor_unrank_index(dims, flat);
    int a = idx[legH];
    int m = idx[legM];
    for (const auto& [i, f] : act[a].col[m]) {
      std::vector<int> oidx;
      for (size_t l = 0; l < dims.size(); ++l) {
        if ((int)l == legH) continue;
        oidx.push_back((int)l == legM ? i : idx[l]);
      }
      acc.emplace_back(tensor_rank_index(odims, oidx), c * f);
    }
  }
  return sparse_normalize(std::move(acc));
}

namespace {

// commutator constraint of one operator applied to a flattened F
Vec commutator_bracket(const Field* f, const SparseMat& M, const Vec& F) {
  const int d = M.rows;
  Vec out = vec_zero(f, d * d);
  // (F M)_{r c} = sum_k F_{r k} M_{k c}; (M F)_{r c} = sum_k M_{r k} F_{k c}
  for (int c = 0; c < d; ++c)
    for (const auto& [k, m] : M.col[c])
      for (int r = 0; r < d; ++r) {
        const FieldElem& x = F[r * d + k];
        if (!x.is_zero()) out[r * d + c] += x * m;
      }
  for (int k = 0; k < d; ++k)
    for (const auto& [r, m] : M.col[k])
      for (int c = 0; c < d; ++c) {
        const FieldElem& x = F[k * d + c];
        if (!x.is_zero()) out[r * d + c] -= m * x;
      }
  return out;
}

}  // namespace

Subspace commutant_refine(Subspace S, const std::vector<SparseMat>& mats) {
  if (mats.empty()) return S;
  const Field* f = mats[0].fld;
  const int d = mats[0].rows;
  const int dd = d * d;
  for (const auto& M : mats) {
    if (S.dim() == 0) break;
    Matrix G(f, dd, S.dim());
    for (int j = 0; j < S.dim(); ++j) {
      Vec img = commutator_bracket(f, M, S.basis().row(j));
      for (int i = 0; i < dd; ++i)
        if (!img[i].is_zero()) G.at(i, j) = img[i];
    }
    Matrix coeffs = G.kernel();  // combinations of S-basis staying in kernel
    Matrix rows(f, coeffs.rows(), dd);
    for (int r = 0; r < coeffs.rows(); ++r) {
      Vec acc = vec_zero(f, dd);
      for (int j = 0; j < S.dim(); ++j)
        if (!coeffs.at(r, j).is_zero())
          acc = vec_add(acc, vec_scaled(S.basis().row(j), coeffs.at(r, j)));
      rows.set_row(r, acc);
    }
    S = Subspace::span(std::move(rows));
  }
  return S;
}

Subspace commutant_subspace(const Field* f,
                            const std::vector<SparseMat>& mats) {
  if (mats.empty()) return Subspace::zero(f, 0);
  const int d = mats[0].rows;
  const int dd = d * d;
  // start from the kernel of the first operator's bracket
  Matrix K(f, dd, dd);
  for (int j = 0; j < dd; ++j) {
    Vec img = commutator_bracket(f, mats[0], vec_unit(f, dd, j));
    for (int i = 0; i < dd; ++i)
      if (!img[i].is_zero()) K.at(i, j) = img[i];
  }
  Subspace S = Subspace::span(K.kernel());
  std::vector<SparseMat> rest(mats.begin() + 1, mats.end());
  return commutant_refine(std::move(S), rest);
}

FPoly min_poly(const Matrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("min_poly: not square");
  const Field* f = M.field();
  int n = M.rows();
  int nn = n * n;
  // Incrementally row-reduce the flattened powers of M.
  std::vector<Vec> reduced;        // echelon rows
  std::vector<int> lead;           // leading index per row
  std::vector<Vec> combos;         // expression of each echelon row in powers
  Matrix power = Matrix::identity(f, n);
  std::vector<Matrix> powers;
  for (int deg = 0; deg <= n; ++deg) {
    powers.push_back(power);
    Vec flat(nn, f->zero());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) flat[i * n + j] = power.at(i, j);
    Vec combo = vec_zero(f, n + 1);
    combo[deg] = f->one();
    // reduce against existing rows
    for (size_t r = 0; r < reduced.size(); ++r) {
      const FieldElem c = flat[lead[r]];
      if (c.is_zero()) continue;
      flat = vec_sub(flat, vec_scaled(reduced[r], c));
      combo = vec_sub(combo, vec_scaled(combos[r], c));
    }
    int lf = -1;
    for (int i = 0; i < nn; ++i)
      if (!flat[i].is_zero()) {
        lf = i;
        break;
      }
    if (lf < 0) {
      // dependence found: combo gives the minimal polynomial coefficients
      FPoly p(combo.begin(), combo.begin() + deg + 1);
      return fpoly_monic(p);
    }
    FieldElem inv = flat[lf].inv();
    flat = vec_scaled(flat, inv);
    combo = vec_scaled(combo, inv);
    reduced.push_back(flat);
    lead.push_back(lf);
    combos.push_back(combo);
    power = power * M;
  }
  throw std::logic_error("min_poly: no dependence up to dimension");
}

}  // namespace wha
