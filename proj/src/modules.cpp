#include "whakit/modules.hpp"

#include <stdexcept>

namespace wha {

namespace {

// permutation (m, n) -> (n, m) as a sparse matrix on the flat tensor
SparseMat tensor_swap(const Field* f, int dimA, int dimB) {
  SparseMat t(f, dimA * dimB, dimA * dimB);
  for (int a = 0; a < dimA; ++a)
    for (int b = 0; b < dimB; ++b)
      t.col[a * dimB + b].emplace_back(b * dimA + a, f->one());
  return t;
}

void sm_accumulate(SparseMat& dst, const SparseMat& src, const FieldElem& c) {
  for (int j = 0; j < src.cols; ++j)
    sparse_accumulate(dst.col[j], src.col[j], c);
}

void sm_finish(SparseMat& m) {
  for (auto& c : m.col) c = sparse_normalize(std::move(c));
}

}  // namespace

HModule::HModule(const WeakHopfAlgebra* h, int d) : H(h), dim(d) {
  act.assign(h->dim(), SparseMat(h->field(), d, d));
}

Matrix HModule::action_of(const Vec& h) const {
  Matrix m(H->field(), dim, dim);
  for (int i = 0; i < H->dim(); ++i) {
    if (h[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j)
      for (const auto& [r, c] : act[i].col[j])
        m.at(r, j) = m.at(r, j) + h[i] * c;
  }
  return m;
}

Report HModule::verify(const std::string& prefix) const {
  Report rep;
  const int n = H->dim();
  bool mult_ok = true;
  std::string w;
  for (int i = 0; i < n && mult_ok; ++i)
    for (int j = 0; j < n && mult_ok; ++j) {
      SparseMat lhs = act[i].compose(act[j]);
      SparseMat rhs(H->field(), dim, dim);
      for (const auto& [k, c] : H->mult_tensor().col[i * n + j])
        sm_accumulate(rhs, act[k], c);
      sm_finish(rhs);
      if (!(lhs.to_dense() == rhs.to_dense())) {
        mult_ok = false;
        w = "(b" + std::to_string(i) + ", b" + std::to_string(j) + ")";
      }
    }
  rep.add(prefix + ".action_multiplicative", mult_ok, w);
  Matrix unit_act = action_of(H->unit());
  bool unital = unit_act.is_identity();
  rep.add(prefix + ".action_unital", unital, unital ? "" : "act(1) != id");
  return rep;
}

HModule regular_module(const WeakHopfAlgebra& H) {
  HModule m(&H, H.dim());
  for (int i = 0; i < H.dim(); ++i) m.act[i] = H.left_mult()[i];
  return m;
}

HModule unit_module(const WeakHopfAlgebra& H) {
  const Subspace& Ht = H.target_subalgebra();
  HModule m(&H, Ht.dim());
  for (int i = 0; i < H.dim(); ++i) {
    SparseMat a(H.field(), Ht.dim(), Ht.dim());
    for (int j = 0; j < Ht.dim(); ++j) {
      Vec img = H.eps_t(H.mul(vec_unit(H.field(), H.dim(), i),
                              Ht.basis().row(j)));
      auto c = Ht.coords_of(img);
      if (!c) throw std::logic_error("unit module: eps_t image outside Ht");
      a.col[j] = sparse_from_dense(*c);
    }
    m.act[i] = std::move(a);
  }
  return m;
}

namespace {

HModule dual_with(const HModule& M, const Matrix& smat) {
  HModule d(M.H, M.dim);
  const int n = M.H->dim();
  for (int i = 0; i < n; ++i) {
    SparseMat a(M.H->field(), M.dim, M.dim);
    for (int k = 0; k < n; ++k) {
      const FieldElem& c = smat.at(k, i);
      if (c.is_zero()) continue;
      SparseMat t = M.act[k].transpose();
      sm_accumulate(a, t, c);
    }
    sm_finish(a);
    d.act[i] = std::move(a);
  }
  return d;
}

}  // namespace

HModule dual_module(const HModule& M) {
  return dual_with(M, M.H->antipode_matrix());
}

HModule predual_module(const HModule& M) {
  return dual_with(M, M.H->antipode_inv_matrix());
}

HModule direct_sum(const HModule& A, const HModule& B) {
  HModule s(A.H, A.dim + B.dim);
  for (int i = 0; i < A.H->dim(); ++i) {
    SparseMat m(A.H->field(), s.dim, s.dim);
    for (int j = 0; j < A.dim; ++j) m.col[j] = A.act[i].col[j];
    for (int j = 0; j < B.dim; ++j) {
      for (const auto& [r, c] : B.act[i].col[j])
        m.col[A.dim + j].emplace_back(A.dim + r, c);
    }
    s.act[i] = std::move(m);
  }
  return s;
}

HModule submodule(const HModule& M, const Subspace& S) {
  HModule out(M.H, S.dim());
  for (int i = 0; i < M.H->dim(); ++i) {
    SparseMat a(M.H->field(), S.dim(), S.dim());
    for (int j = 0; j < S.dim(); ++j) {
      Vec img = M.act[i].apply_dense(S.basis().row(j));
      auto c = S.coords_of(img);
      if (!c) throw std::invalid_argument("submodule: subspace not invariant");
      a.col[j] = sparse_from_dense(*c);
    }
    out.act[i] = std::move(a);
  }
  return out;
}

SparseMat TruncTensor::ambient_action(int i) const {
  const WeakHopfAlgebra* H = left->H;
  SparseMat out(H->field(), left->dim * right->dim, left->dim * right->dim);
  for (const auto& [ab, c] : H->comult_tensor().col[i]) {
    int a = ab / H->dim(), b = ab % H->dim();
    SparseMat k = sparse_kron(left->act[a], right->act[b]);
    sm_accumulate(out, k, c);
  }
  sm_finish(out);
  return out;
}

Vec TruncTensor::project(const Vec& ambient) const {
  if (full) return ambient;
  return proj * ambient;
}

Vec TruncTensor::include(const Vec& coords) const {
  if (full) return coords;
  return incl * coords;
}

TruncTensor ttensor(const HModule& M, const HModule& N) {
  TruncTensor t;
  t.left = &M;
  t.right = &N;
  const WeakHopfAlgebra* H = M.H;
  const Field* f = H->field();
  const int mn = M.dim * N.dim;
  t.P = SparseMat(f, mn, mn);
  for (const auto& [ab, c] : H->delta1_sparse()) {
    int a = ab / H->dim(), b = ab % H->dim();
    SparseMat k = sparse_kron(M.act[a], N.act[b]);
    sm_accumulate(t.P, k, c);
  }
  sm_finish(t.P);
  if (t.P.is_identity()) {
    t.full = true;
    t.module = HModule(H, mn);
    for (int i = 0; i < H->dim(); ++i) t.module.act[i] = t.ambient_action(i);
    return t;
  }
  Matrix pd = t.P.to_dense();
  t.carrier = Subspace::image(pd);
  t.incl = t.carrier.inclusion();
  // coordinates of P x are read off at the pivot columns of the rref basis
  Matrix pivrows(f, t.carrier.dim(), mn);
  for (int i = 0; i < t.carrier.dim(); ++i)
    for (int j = 0; j < mn; ++j)
      pivrows.at(i, j) = pd.at(t.carrier.pivots()[i], j);
  t.proj = std::move(pivrows);
  t.module = HModule(H, t.carrier.dim());
  SparseMat projs = SparseMat::from_dense(t.proj);
  SparseMat incls = SparseMat::from_dense(t.incl);
  for (int i = 0; i < H->dim(); ++i)
    t.module.act[i] = projs.compose(t.ambient_action(i).compose(incls));
  return t;
}

Matrix braiding_ambient(const HModule& M, const HModule& N, const RMatrix& R) {
  const WeakHopfAlgebra* H = M.H;
  const Field* f = H->field();
  SparseMat acc(f, N.dim * M.dim, M.dim * N.dim);
  SparseMat swap = tensor_swap(f, M.dim, N.dim);
  for (const auto& [ab, c] : R.R_sparse) {
    int a = ab / H->dim(), b = ab % H->dim();
    SparseMat k = swap.compose(sparse_kron(M.act[a], N.act[b]));
    sm_accumulate(acc, k, c);
  }
  sm_finish(acc);
  return acc.to_dense();
}

Braiding braiding(const TruncTensor& MN, const TruncTensor& NM,
                  const RMatrix& R) {
  const HModule& M = *MN.left;
  const HModule& N = *MN.right;
  const WeakHopfAlgebra* H = M.H;
  const Field* f = H->field();
  Braiding b;
  Matrix fwd = braiding_ambient(M, N, R);
  // inverse ambient: act with Rbar after swapping back
  SparseMat inv_acc(f, M.dim * N.dim, N.dim * M.dim);
  SparseMat swap_back = tensor_swap(f, N.dim, M.dim);
  for (const auto& [ab, c] : R.Rbar_sparse) {
    int a = ab / H->dim(), bb = ab % H->dim();
    SparseMat k = sparse_kron(M.act[a], N.act[bb]).compose(swap_back);
    sm_accumulate(inv_acc, k, c);
  }
  sm_finish(inv_acc);
  Matrix bwd = inv_acc.to_dense();
  auto conj = [&](const Matrix& amb, const TruncTensor& src,
                  const TruncTensor& dst) {
    Matrix out = amb;
    if (!src.full) out = out * src.incl;
    if (!dst.full) out = dst.proj * out;
    return out;
  };
  b.map = conj(fwd, MN, NM);
  b.inverse = conj(bwd, NM, MN);
  return b;
}

DualityData duality(const HModule& M) {
  DualityData d;
  const WeakHopfAlgebra* H = M.H;
  const Field* f = H->field();
  const int n = H->dim();
  d.dual = dual_module(M);
  d.dual_M = ttensor(d.dual, M);
  d.M_dual = ttensor(M, d.dual);
  const Subspace& Ht = H->target_subalgebra();

  // ambient evaluation: x* x x -> sum <x*, 1_(1) x> 1_(2)
  Matrix ev_amb(f, n, M.dim * M.dim);
  for (int p = 0; p < M.dim; ++p)
    for (int q = 0; q < M.dim; ++q) {
      Vec img = vec_zero(f, n);
      for (const auto& [ab, c] : H->delta1_sparse()) {
        int a = ab / n, b = ab % n;
        // <e*_p, act(e_a) e_q> = (act(e_a))_{p q}
        for (const auto& [r, m] : M.act[a].col[q])
          if (r == p) img[b] += c * m;
      }
      for (int i = 0; i < n; ++i) ev_amb.at(i, p * M.dim + q) = img[i];
    }
  // carrier form into Ht coordinates
  int dm = d.dual_M.full ? M.dim * M.dim : d.dual_M.carrier.dim();
  Matrix ev(f, Ht.dim(), dm);
  for (int j = 0; j < dm; ++j) {
    Vec col = d.dual_M.include(vec_unit(f, dm, j));
    Vec img = ev_amb * col;
    auto c = Ht.coords_of(img);
    if (!c) throw std::logic_error("ev image outside Ht");
    for (int i = 0; i < Ht.dim(); ++i) ev.at(i, j) = (*c)[i];
  }
  d.ev = std::move(ev);

  // coev(z) = sum z_(1) x_i x z_(2) x*_i
  int md = d.M_dual.full ? M.dim * M.dim : d.M_dual.carrier.dim();
  Matrix coev(f, md, Ht.dim());
  for (int j = 0; j < Ht.dim(); ++j) {
    Vec z = Ht.basis().row(j);
    Vec amb = vec_zero(f, M.dim * M.dim);
    Vec dz = H->comul(z);
    for (int ab = 0; ab < n * n; ++ab) {
      if (dz[ab].is_zero()) continue;
      int a = ab / n, b = ab % n;
      for (int i = 0; i < M.dim; ++i) {
        // act(e_a) x_i  x  act*(e_b) x*_i
        for (const auto& [p, cp] : M.act[a].col[i])
          for (const auto& [q, cq] : d.dual.act[b].col[i])
            amb[p * M.dim + q] += dz[ab] * cp * cq;
      }
    }
    Vec coords = d.M_dual.project(amb);
    // containment check: include back and compare
    if (!vec_eq(d.M_dual.include(coords), amb))
      throw std::logic_error("coev image outside carrier");
    for (int i = 0; i < md; ++i) coev.at(i, j) = coords[i];
  }
  d.coev = std::move(coev);
  return d;
}

Report rigidity_check(const HModule& M) {
  Report rep;
  const WeakHopfAlgebra* H = M.H;
  const Field* f = H->field();
  const int n = H->dim();
  DualityData d = duality(M);
  const Subspace& Ht = H->target_subalgebra();
  HModule ht_mod = unit_module(*H);

  // ev is an H-module map
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < n && ok; ++i) {
      Matrix lhs = d.ev * d.dual_M.module.act[i].to_dense();
      Matrix rhs = ht_mod.act[i].to_dense() * d.ev;
      if (!(lhs == rhs)) {
        ok = false;
        w = "b" + std::to_string(i);
      }
    }
    rep.add("rigid.ev_module_map", ok, w);
  }
  // coev is an H-module map
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < n && ok; ++i) {
      Matrix lhs = d.coev * ht_mod.act[i].to_dense();
      Matrix rhs = d.M_dual.module.act[i].to_dense() * d.coev;
      if (!(lhs == rhs)) {
        ok = false;
        w = "b" + std::to_string(i);
      }
    }
    rep.add("rigid.coev_module_map", ok, w);
  }

  // zig-zag on X: r_X (id x ev) (coev x id) l_X^{-1} = id
  {
    Matrix result(f, M.dim, M.dim);
    for (int x = 0; x < M.dim; ++x) {
      // l^{-1}(x) = P(1 x x) in Ht x X
      Vec amb0 = vec_zero(f, Ht.dim() * M.dim);
      auto one_coords = Ht.coords_of(H->unit());
      for (int i = 0; i < Ht.dim(); ++i)
        if (!(*one_coords)[i].is_zero()) amb0[i * M.dim + x] = (*one_coords)[i];
      // project with the (Ht, X) truncation
      TruncTensor htX = ttensor(ht_mod, M);
      Vec v1 = htX.full ? amb0 : htX.incl * (htX.proj * amb0);
      // coev on leg 1: Ht coords -> M x M* ambient
      int md = d.M_dual.full ? M.dim * M.dim : d.M_dual.carrier.dim();
      Vec v2 = vec_zero(f, M.dim * M.dim * M.dim);  // (M, M*, X)
      for (int z = 0; z < Ht.dim(); ++z)
        for (int xx = 0; xx < M.dim; ++xx) {
          const FieldElem& c = v1[z * M.dim + xx];
          if (c.is_zero()) continue;
          Vec cv = vec_zero(f, md);
          for (int i = 0; i < md; ++i) cv[i] = d.coev.at(i, z);
          Vec amb = d.M_dual.include(cv);
          for (int p = 0; p < M.dim; ++p)
            for (int q = 0; q < M.dim; ++q) {
              const FieldElem& a = amb[p * M.dim + q];
              if (a.is_zero()) continue;
              v2[(p * M.dim + q) * M.dim + xx] += c * a;
            }
        }
      // ev on legs (2,3): ambient ev formula, giving (M, H)
      Vec v3 = vec_zero(f, M.dim * n);
      for (int p = 0; p < M.dim; ++p)
        for (int q = 0; q < M.dim; ++q)
          for (int xx = 0; xx < M.dim; ++xx) {
            const FieldElem& c = v2[(p * M.dim + q) * M.dim + xx];
            if (c.is_zero()) continue;
            // ev(e*_q x e_xx) = sum <e*_q, act(e_a) e_xx> e_b over Delta(1)
            for (const auto& [ab, dc] : H->delta1_sparse()) {
              int a = ab / n, b = ab % n;
              for (const auto& [r, m] : M.act[a].col[xx])
                if (r == q) v3[p * n + b] += c * dc * m;
            }
          }
      // r_X: x x z -> S(z) x
      Vec v4 = vec_zero(f, M.dim);
      for (int p = 0; p < M.dim; ++p)
        for (int b = 0; b < n; ++b) {
          const FieldElem& c = v3[p * n + b];
          if (c.is_zero()) continue;
          Vec sz = H->antipode(vec_unit(f, n, b));
          for (int i = 0; i < n; ++i) {
            if (sz[i].is_zero()) continue;
            for (const auto& [r, m] : M.act[i].col[p])
              v4[r] += c * sz[i] * m;
          }
        }
      for (int r = 0; r < M.dim; ++r) result.at(r, x) = v4[r];
    }
    bool ok = result.is_identity();
    rep.add("rigid.zigzag_module", ok, ok ? "" : "composite != id");
  }

  // zig-zag on X*: l (ev x id) (id x coev) r_{X*}^{-1} = id
  {
    Matrix result(f, M.dim, M.dim);
    TruncTensor dualHt = ttensor(d.dual, ht_mod);
    for (int x = 0; x < M.dim; ++x) {
      // r^{-1}(x*) = P(x* x 1)
      Vec amb0 = vec_zero(f, M.dim * Ht.dim());
      auto one_coords = Ht.coords_of(H->unit());
      for (int i = 0; i < Ht.dim(); ++i)
        if (!(*one_coords)[i].is_zero()) amb0[x * Ht.dim() + i] = (*one_coords)[i];
      Vec v1 = dualHt.full ? amb0 : dualHt.incl * (dualHt.proj * amb0);
      // coev on leg 2: (M*, M, M*)
      int md = d.M_dual.full ? M.dim * M.dim : d.M_dual.carrier.dim();
      Vec v2 = vec_zero(f, M.dim * M.dim * M.dim);
      for (int p = 0; p < M.dim; ++p)
        for (int z = 0; z < Ht.dim(); ++z) {
          const FieldElem& c = v1[p * Ht.dim() + z];
          if (c.is_zero()) continue;
          Vec cv = vec_zero(f, md);
          for (int i = 0; i < md; ++i) cv[i] = d.coev.at(i, z);
          Vec amb = d.M_dual.include(cv);
          for (int q = 0; q < M.dim; ++q)
            for (int r = 0; r < M.dim; ++r) {
              const FieldElem& a = amb[q * M.dim + r];
              if (a.is_zero()) continue;
              v2[(p * M.dim + q) * M.dim + r] += c * a;
            }
        }
      // ev on legs (1,2): result (H, M*)
      Vec v3 = vec_zero(f, n * M.dim);
      for (int p = 0; p < M.dim; ++p)
        for (int q = 0; q < M.dim; ++q)
          for (int r = 0; r < M.dim; ++r) {
            const FieldElem& c = v2[(p * M.dim + q) * M.dim + r];
            if (c.is_zero()) continue;
            for (const auto& [ab, dc] : H->delta1_sparse()) {
              int a = ab / n, b = ab % n;
              for (const auto& [rr, m] : M.act[a].col[q])
                if (rr == p) v3[b * M.dim + r] += c * dc * m;
            }
          }
      // l_{X*}: z x x* -> act*(z) x*
      Vec v4 = vec_zero(f, M.dim);
      for (int b = 0; b < n; ++b)
        for (int r = 0; r < M.dim; ++r) {
          const FieldElem& c = v3[b * M.dim + r];
          if (c.is_zero()) continue;
          for (const auto& [rr, m] : d.dual.act[b].col[r]) v4[rr] += c * m;
        }
      for (int r = 0; r < M.dim; ++r) result.at(r, x) = v4[r];
    }
    bool ok = result.is_identity();
    rep.add("rigid.zigzag_dual", ok, ok ? "" : "composite != id");
  }
  return rep;
}

Report hexagon_check(const HModule& M, const HModule& N, const HModule& P,
                     const RMatrix& R) {
  Report rep;
  const WeakHopfAlgebra* H = M.H;
  const Field* f = H->field();
  const int n = H->dim();
  const int total = M.dim * N.dim * P.dim;

  // triple truncation projector = action of Delta^2(1)
  SparseMat P3(f, total, total);
  {
    SparseVec d2;
    for (const auto& [ab, c] : H->delta1_sparse()) {
      int a = ab / n, b = ab % n;
      for (const auto& [pq, m] : H->comult_tensor().col[a])
        d2.emplace_back((pq / n) * n * n + (pq % n) * n + b, c * m);
    }
    d2 = sparse_normalize(std::move(d2));
    for (const auto& [flat, c] : d2) {
      int a = flat / (n * n), b = (flat / n) % n, g = flat % n;
      SparseMat k = sparse_kron(sparse_kron(M.act[a], N.act[b]), P.act[g]);
      sm_accumulate(P3, k, c);
    }
    sm_finish(P3);
  }

  auto braid_pair = [&](const HModule& A, const HModule& B) {
    SparseMat acc(f, B.dim * A.dim, A.dim * B.dim);
    SparseMat swap = tensor_swap(f, A.dim, B.dim);
    for (const auto& [ab, c] : R.R_sparse) {
      int a = ab / n, b = ab % n;
      SparseMat k = swap.compose(sparse_kron(A.act[a], B.act[b]));
      sm_accumulate(acc, k, c);
    }
    sm_finish(acc);
    return acc;
  };

  // hexagon 1: c_{M, N x P} = (id_N x c_{M,P}) (c_{M,N} x id_P)
  {
    // LHS ambient: rotate (m, n, p) -> (n, p, m) after acting R on (M, NP)
    SparseMat lhs(f, total, total);
    for (const auto& [ab, c] : R.R_sparse) {
      int a = ab / n, b = ab % n;
      for (const auto& [pq, m] : H->comult_tensor().col[b]) {
        int b1 = pq / n, b2 = pq % n;
        SparseMat k = sparse_kron(sparse_kron(M.act[a], N.act[b1]),
                                  P.act[b2]);
        // rotation: index (i,j,l) -> (j,l,i)
        SparseMat rot(f, total, total);
        for (int i = 0; i < M.dim; ++i)
          for (int j = 0; j < N.dim; ++j)
            for (int l = 0; l < P.dim; ++l)
              rot.col[(i * N.dim + j) * P.dim + l].emplace_back(
                  (j * P.dim + l) * M.dim + i, f->one());
        sm_accumulate(lhs, rot.compose(k), c * m);
      }
    }
    sm_finish(lhs);
    SparseMat step1 = sparse_kron(braid_pair(M, N), SparseMat::identity(f, P.dim));
    SparseMat step2 = sparse_kron(SparseMat::identity(f, N.dim), braid_pair(M, P));
    SparseMat rhs = step2.compose(step1);
    bool ok = (lhs.compose(P3)).to_dense() == (rhs.compose(P3)).to_dense();
    rep.add("hexagon.left", ok, ok ? "" : "c_{M,NxP}");
  }

  // hexagon 2: c_{M x N, P} = (c_{M,P} x id_N) (id_M x c_{N,P})
  {
    SparseMat lhs(f, total, total);
    for (const auto& [ab, c] : R.R_sparse) {
      int a = ab / n, b = ab % n;
      for (const auto& [pq, m] : H->comult_tensor().col[a]) {
        int a1 = pq / n, a2 = pq % n;
        SparseMat k = sparse_kron(sparse_kron(M.act[a1], N.act[a2]),
                                  P.act[b]);
        // rotation: (i,j,l) -> (l,i,j)
        SparseMat rot(f, total, total);
        for (int i = 0; i < M.dim; ++i)
          for (int j = 0; j < N.dim; ++j)
            for (int l = 0; l < P.dim; ++l)
              rot.col[(i * N.dim + j) * P.dim + l].emplace_back(
                  (l * M.dim + i) * N.dim + j, f->one());
        sm_accumulate(lhs, rot.compose(k), c * m);
      }
    }
    sm_finish(lhs);
    SparseMat step1 = sparse_kron(SparseMat::identity(f, M.dim), braid_pair(N, P));
    SparseMat step2 = sparse_kron(braid_pair(M, P), SparseMat::identity(f, N.dim));
    SparseMat rhs = step2.compose(step1);
    bool ok = (lhs.compose(P3)).to_dense() == (rhs.compose(P3)).to_dense();
    rep.add("hexagon.right", ok, ok ? "" : "c_{MxN,P}");
  }
  return rep;
}

Subspace hom_modules(const HModule& M, const HModule& N) {
  const WeakHopfAlgebra& H = *M.H;
  const Field* f = H.field();
  const int dm = M.dim, dn = N.dim;
  if (dm == 0 || dn == 0) return Subspace::zero(f, dm * dn);
  std::vector<Vec> rows;
  for (int i = 0; i < H.dim(); ++i) {
    Matrix am = M.act[i].to_dense(), an = N.act[i].to_dense();
    for (int r = 0; r < dn; ++r)
      for (int c = 0; c < dm; ++c) {
        Vec row = vec_zero(f, dn * dm);
        for (int k = 0; k < dm; ++k) row[r * dm + k] += am.at(k, c);
        for (int k = 0; k < dn; ++k) row[k * dm + c] -= an.at(r, k);
        rows.push_back(row);
      }
  }
  return Subspace::span(Matrix::from_rows(f, rows, dn * dm).kernel());
}

Report braiding_naturality_check(const WeakHopfAlgebra& H, const RMatrix& R) {
  Report rep;
  const Field* f = H.field();
  const int n = H.dim();
  HModule reg = regular_module(H);
  SparseMat P2(f, n * n, n * n);
  for (const auto& [ab, c] : H.delta1_sparse()) {
    int a = ab / n, b = ab % n;
    sm_accumulate(P2, sparse_kron(reg.act[a], reg.act[b]), c);
  }
  sm_finish(P2);
  SparseMat braid(f, n * n, n * n);
  {
    SparseMat swap = tensor_swap(f, n, n);
    for (const auto& [ab, c] : R.R_sparse) {
      int a = ab / n, b = ab % n;
      sm_accumulate(braid, swap.compose(sparse_kron(reg.act[a], reg.act[b])), c);
    }
    sm_finish(braid);
  }
  bool ok = true;
  std::string w;
  for (int j = 0; j < n && ok; ++j) {
    // f = right multiplication by b_j, a module map H -> H
    SparseMat rm = H.right_mult()[j];
    SparseMat id = SparseMat::identity(f, n);
    SparseMat lhs = braid.compose(sparse_kron(rm, id)).compose(P2);
    SparseMat rhs = sparse_kron(id, rm).compose(braid).compose(P2);
    if (!(lhs.to_dense() == rhs.to_dense())) {
      ok = false;
      w = "right-mult b" + std::to_string(j) + " (first leg)";
    }
    if (ok) {
      SparseMat lhs2 = braid.compose(sparse_kron(id, rm)).compose(P2);
      SparseMat rhs2 = sparse_kron(rm, id).compose(braid).compose(P2);
      if (!(lhs2.to_dense() == rhs2.to_dense())) {
        ok = false;
        w = "right-mult b" + std::to_string(j) + " (second leg)";
      }
    }
  }
  rep.add("braiding.naturality_regular", ok, w);
  return rep;
}

}  // namespace wha
