#include "whakit/braided.hpp"

#include <stdexcept>

namespace wha {

namespace {

void sm_accumulate(SparseMat& dst, const SparseMat& src, const FieldElem& c) {
  for (int j = 0; j < src.cols; ++j)
    sparse_accumulate(dst.col[j], src.col[j], c);
}

void sm_finish(SparseMat& m) {
  for (auto& c : m.col) c = sparse_normalize(std::move(c));
}

}  // namespace

Subspace centralizer_Hs(const WeakHopfAlgebra& H) {
  const Field* f = H.field();
  const int n = H.dim();
  const Subspace& Hs = H.source_subalgebra();
  Matrix stacked(f, Hs.dim() * n, n);
  for (int k = 0; k < Hs.dim(); ++k) {
    Vec y = Hs.basis().row(k);
    // rows of L(y) - R(y)
    for (int j = 0; j < n; ++j) {
      Vec e = vec_unit(f, n, j);
      Vec diff = vec_sub(H.mul(y, e), H.mul(e, y));
      for (int i = 0; i < n; ++i) stacked.at(k * n + i, j) = diff[i];
    }
  }
  return Subspace::span(stacked.kernel());
}

BraidedGroupBuild braided_group_build(const WeakHopfAlgebra& H,
                                      const RMatrix& R) {
  BraidedGroupBuild out;
  Report& rep = out.report;
  const Field* f = H.field();
  const int n = H.dim();

  // B two ways: commutant of H_s, image of h -> 1_(1) h S(1_(2))
  Subspace B1 = centralizer_Hs(H);
  Matrix phi(f, n, n);
  for (const auto& [ab, c] : H.delta1_sparse()) {
    int a = ab / n, b = ab % n;
    Vec sb = H.antipode(vec_unit(f, n, b));
    for (int j = 0; j < n; ++j) {
      Vec img = H.mul(vec_unit(f, n, a), vec_unit(f, n, j));
      for (int k = 0; k < n; ++k)
        if (!sb[k].is_zero() && !vec_is_zero(img)) {
          Vec t = H.mul(img, vec_unit(f, n, k));
          for (int i = 0; i < n; ++i)
            phi.at(i, j) = phi.at(i, j) + c * sb[k] * t[i];
        }
    }
  }
  Subspace B2 = Subspace::image(phi);
  bool same = (B1 == B2);
  rep.add("bg.carrier_two_routes", same,
          same ? "" : "commutant != image of 1_(1) h S(1_(2))");
  if (!same) return out;

  BraidedGroup bg;
  bg.H = &H;
  bg.R = R;
  bg.carrier = B1;
  bg.dim = B1.dim();
  const int m = bg.dim;

  // adjoint action restricted to B
  bg.adjoint = HModule(&H, m);
  for (int i = 0; i < n; ++i) {
    SparseMat a(f, m, m);
    for (int j = 0; j < m; ++j) {
      Vec img = H.adjoint_action()[i].apply_dense(bg.carrier.basis().row(j));
      auto c = bg.carrier.coords_of(img);
      if (!c) {
        rep.add("bg.adjoint_stable", false,
                "ad(b" + std::to_string(i) + ") leaves B");
        return out;
      }
      a.col[j] = sparse_from_dense(*c);
    }
    bg.adjoint.act[i] = std::move(a);
  }
  rep.add("bg.adjoint_stable", true, "");

  // truncation projector on B x B under the adjoint action
  bg.P2 = SparseMat(f, m * m, m * m);
  for (const auto& [ab, c] : H.delta1_sparse()) {
    int a = ab / n, b = ab % n;
    sm_accumulate(bg.P2,
                  sparse_kron(bg.adjoint.act[a], bg.adjoint.act[b]), c);
  }
  sm_finish(bg.P2);

  // multiplication: restriction of the product of H
  {
    bool ok = true;
    std::string w;
    bg.mB = Matrix(f, m, m * m);
    for (int p = 0; p < m && ok; ++p)
      for (int q = 0; q < m && ok; ++q) {
        Vec prod = H.mul(bg.carrier.basis().row(p), bg.carrier.basis().row(q));
        auto c = bg.carrier.coords_of(prod);
        if (!c) {
          ok = false;
          w = "b" + std::to_string(p) + " * b" + std::to_string(q);
          break;
        }
        for (int i = 0; i < m; ++i) bg.mB.at(i, p * m + q) = (*c)[i];
      }
    rep.add("bg.closed_under_mult", ok, w);
    if (!ok) return out;
  }

  // unit: inclusion of Ht
  {
    const Subspace& Ht = H.target_subalgebra();
    bool ok = true;
    std::string w;
    bg.uB = Matrix(f, m, Ht.dim());
    for (int j = 0; j < Ht.dim() && ok; ++j) {
      auto c = bg.carrier.coords_of(Ht.basis().row(j));
      if (!c) {
        ok = false;
        w = "Ht basis " + std::to_string(j);
        break;
      }
      for (int i = 0; i < m; ++i) bg.uB.at(i, j) = (*c)[i];
    }
    rep.add("bg.unit_inclusion", ok, w);
    if (!ok) return out;
  }

  // comultiplication: Delta_B(b) = b_(1) S(R^2) x R^1 .ad b_(2)
  {
    bool ok = true;
    std::string w;
    bg.DeltaB = Matrix(f, m * m, m);
    for (int k = 0; k < m && ok; ++k) {
      Vec b = bg.carrier.basis().row(k);
      Vec db = H.comul(b);  // n^2
      // accumulate in H x H coordinates
      Vec amb = vec_zero(f, n * n);
      for (int pq = 0; pq < n * n; ++pq) {
        if (db[pq].is_zero()) continue;
        int p = pq / n, q = pq % n;
        for (const auto& [ac, rc] : R.R_sparse) {
          int a = ac / n, c2 = ac % n;
          // left leg: e_p * S(e_{c2}); right leg: e_a .ad e_q
          Vec sc = H.antipode(vec_unit(f, n, c2));
          Vec left = vec_zero(f, n);
          for (int i = 0; i < n; ++i)
            if (!sc[i].is_zero())
              left = vec_add(left,
                             vec_scaled(H.mul(vec_unit(f, n, p),
                                              vec_unit(f, n, i)),
                                        sc[i]));
          Vec right = H.adjoint_action()[a].apply_dense(vec_unit(f, n, q));
          FieldElem coeff = db[pq] * rc;
          for (int i = 0; i < n; ++i) {
            if (left[i].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
              if (right[j].is_zero()) continue;
              amb[i * n + j] += coeff * left[i] * right[j];
            }
          }
        }
      }
      // both legs must lie in B; convert to B x B coordinates by reading
      // entries at the pivot columns per leg, then verify by lifting back
      Vec bb = vec_zero(f, m * m);
      {
        const auto& piv = bg.carrier.pivots();
        Matrix legproj(f, m, n);
        for (int i = 0; i < m; ++i) legproj.at(i, piv[i]) = f->one();
        // candidate coords = (legproj x legproj) amb
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) bb[i * m + j] = amb[piv[i] * n + piv[j]];
        // verify lift equals amb
        Vec relift = vec_zero(f, n * n);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            const FieldElem& c = bb[i * m + j];
            if (c.is_zero()) continue;
            const Vec bi = bg.carrier.basis().row(i);
            const Vec bj = bg.carrier.basis().row(j);
            for (int x = 0; x < n; ++x) {
              if (bi[x].is_zero()) continue;
              for (int y = 0; y < n; ++y) {
                if (bj[y].is_zero()) continue;
                relift[x * n + y] += c * bi[x] * bj[y];
              }
            }
          }
        if (!vec_eq(relift, amb)) {
          ok = false;
          w = "Delta_B(b" + std::to_string(k) + ") outside B x B";
        }
      }
      if (ok)
        for (int i = 0; i < m * m; ++i) bg.DeltaB.at(i, k) = bb[i];
    }
    rep.add("bg.comult_lands_in_BxB", ok, w);
    if (!ok) return out;
  }

  // counit: eps_t restricted
  {
    const Subspace& Ht = H.target_subalgebra();
    bool ok = true;
    std::string w;
    bg.epsB = Matrix(f, Ht.dim(), m);
    for (int k = 0; k < m && ok; ++k) {
      Vec img = H.eps_t(bg.carrier.basis().row(k));
      auto c = Ht.coords_of(img);
      if (!c) {
        ok = false;
        w = "eps_t(b" + std::to_string(k) + ")";
        break;
      }
      for (int i = 0; i < Ht.dim(); ++i) bg.epsB.at(i, k) = (*c)[i];
    }
    rep.add("bg.counit_lands_in_Ht", ok, w);
    if (!ok) return out;
  }

  // antipode: S_B(b) = R^2 S(R^1 .ad b)
  {
    bool ok = true;
    std::string w;
    bg.SB = Matrix(f, m, m);
    for (int k = 0; k < m && ok; ++k) {
      Vec b = bg.carrier.basis().row(k);
      Vec acc = vec_zero(f, n);
      for (const auto& [ac, rc] : R.R_sparse) {
        int a = ac / n, c2 = ac % n;
        Vec adb = H.adjoint_action()[a].apply_dense(b);
        Vec sadb = H.antipode(adb);
        acc = vec_add(acc,
                      vec_scaled(H.mul(vec_unit(f, n, c2), sadb), rc));
      }
      auto c = bg.carrier.coords_of(acc);
      if (!c) {
        ok = false;
        w = "S_B(b" + std::to_string(k) + ") outside B";
        break;
      }
      for (int i = 0; i < m; ++i) bg.SB.at(i, k) = (*c)[i];
    }
    rep.add("bg.antipode_lands_in_B", ok, w);
    if (!ok) return out;
    auto inv = bg.SB.inverse();
    rep.add("bg.antipode_invertible", inv.has_value(), "");
    if (!inv) return out;
    bg.TB = *inv;
  }

  out.group = std::move(bg);
  return out;
}

namespace {

// Delta(e_i)-weighted diagonal action on B x B coordinates.
SparseMat diag2(const BraidedGroup& bg, int i) {
  const WeakHopfAlgebra& H = *bg.H;
  const int n = H.dim();
  SparseMat out(H.field(), bg.dim * bg.dim, bg.dim * bg.dim);
  for (const auto& [ab, c] : H.comult_tensor().col[i]) {
    int a = ab / n, b = ab % n;
    sm_accumulate(out, sparse_kron(bg.adjoint.act[a], bg.adjoint.act[b]), c);
  }
  sm_finish(out);
  return out;
}

}  // namespace

Report braided_group_verify(const BraidedGroup& BG) {
  Report rep;
  const WeakHopfAlgebra& H = *BG.H;
  const Field* f = H.field();
  const int n = H.dim();
  const int m = BG.dim;
  const int mm = m * m;
  SparseMat mB = SparseMat::from_dense(BG.mB);
  SparseMat DeltaB = SparseMat::from_dense(BG.DeltaB);
  SparseMat SBs = SparseMat::from_dense(BG.SB);

  rep.merge(BG.adjoint.verify("bg.adjoint"));

  // m_B well-defined on the carrier: mu P = mu
  {
    SparseMat lhs = mB.compose(BG.P2);
    bool ok = lhs.to_dense() == BG.mB;
    rep.add("bg.mult_well_defined", ok, ok ? "" : "mu P != mu");
  }
  // m_B is a module map
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < n && ok; ++i) {
      SparseMat lhs = mB.compose(diag2(BG, i));
      SparseMat rhs = BG.adjoint.act[i].compose(mB);
      if (!(lhs.to_dense() == rhs.to_dense())) {
        ok = false;
        w = "b" + std::to_string(i);
      }
    }
    rep.add("bg.mult_module_map", ok, w);
  }
  // associativity on the triple truncation: in H the product is associative,
  // so the categorical identity reduces to well-definedness; still assert the
  // two bracketed composites agree on B x B x B.
  {
    SparseMat m12(f, m * m, m * m * m);  // mu on legs (1,2)
    SparseMat m23(f, m * m, m * m * m);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        for (int r = 0; r < m; ++r) {
          int src = (p * m + q) * m + r;
          for (const auto& [k, c] : mB.col[p * m + q])
            m12.col[src].emplace_back(k * m + r, c);
          for (const auto& [k, c] : mB.col[q * m + r])
            m23.col[src].emplace_back(p * m + k, c);
        }
    sm_finish(m12);
    sm_finish(m23);
    bool ok = mB.compose(m12).to_dense() == mB.compose(m23).to_dense();
    rep.add("bg.mult_associative", ok, "");
  }
  // right unit law: m_B (id x u_B) = r on carrier(B x Ht)
  {
    const Subspace& Ht = H.target_subalgebra();
    HModule htmod = unit_module(H);
    int t = Ht.dim();
    // projector on B x Ht
    SparseMat PBH(f, m * t, m * t);
    for (const auto& [ab, c] : H.delta1_sparse()) {
      int a = ab / n, b = ab % n;
      sm_accumulate(PBH, sparse_kron(BG.adjoint.act[a], htmod.act[b]), c);
    }
    sm_finish(PBH);
    // mu(b x z) vs S(z) b, both through P
    Matrix mu(f, m, m * t), rmap(f, m, m * t);
    bool ok = true;
    for (int p = 0; p < m && ok; ++p)
      for (int j = 0; j < t && ok; ++j) {
        Vec prod = H.mul(BG.carrier.basis().row(p), Ht.basis().row(j));
        Vec rv = H.mul(H.antipode(Ht.basis().row(j)),
                       BG.carrier.basis().row(p));
        auto cp = BG.carrier.coords_of(prod);
        auto cr = BG.carrier.coords_of(rv);
        if (!cp || !cr) {
          ok = false;
          break;
        }
        for (int i = 0; i < m; ++i) {
          mu.at(i, p * t + j) = (*cp)[i];
          rmap.at(i, p * t + j) = (*cr)[i];
        }
      }
    if (ok) {
      Matrix pd = PBH.to_dense();
      ok = (mu * pd) == (rmap * pd);
    }
    rep.add("bg.unit_law_right", ok, ok ? "" : "m_B(id x u_B) != r_B");
  }
  // counit laws
  {
    bool okl = true, okr = true;
    std::string wl, wr;
    for (int k = 0; k < m; ++k) {
      Vec lhs = vec_zero(f, n), rhs = vec_zero(f, n);
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
          const FieldElem& c = BG.DeltaB.at(p * m + q, k);
          if (c.is_zero()) continue;
          Vec bp = BG.carrier.basis().row(p);
          Vec bq = BG.carrier.basis().row(q);
          lhs = vec_add(lhs, vec_scaled(H.mul(H.eps_t(bp), bq), c));
          rhs = vec_add(rhs, vec_scaled(H.mul(H.antipode(H.eps_t(bq)), bp), c));
        }
      Vec expect = BG.carrier.basis().row(k);
      if (okl && !vec_eq(lhs, expect)) {
        okl = false;
        wl = "b" + std::to_string(k);
      }
      if (okr && !vec_eq(rhs, expect)) {
        okr = false;
        wr = "b" + std::to_string(k);
      }
    }
    rep.add("bg.counit_law_left", okl, wl);
    rep.add("bg.counit_law_right", okr, wr);
  }
  // coassociativity
  {
    bool ok = true;
    std::string w;
    std::vector<int> dims2{m, m};
    for (int k = 0; k < m && ok; ++k) {
      SparseVec d = DeltaB.col[k];
      SparseVec l = apply_leg(DeltaB, 0, dims2, d);  // (m^2, m) -> flatten
      SparseVec r = apply_leg(DeltaB, 1, dims2, d);
      // both live on (m^2) x m and m x (m^2): flat total m^3 either way
      if (l != r) {
        ok = false;
        w = "b" + std::to_string(k);
      }
    }
    rep.add("bg.comult_coassociative", ok, w);
  }
  // Delta_B in the carrier and a module map
  {
    SparseMat chk = BG.P2.compose(DeltaB);
    bool ok = chk.to_dense() == BG.DeltaB;
    rep.add("bg.comult_in_carrier", ok, "");
  }
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < n && ok; ++i) {
      SparseMat lhs = DeltaB.compose(BG.adjoint.act[i]);
      SparseMat rhs = diag2(BG, i).compose(DeltaB);
      if (!(lhs.to_dense() == rhs.to_dense())) {
        ok = false;
        w = "b" + std::to_string(i);
      }
    }
    rep.add("bg.comult_module_map", ok, w);
  }

  // braided bialgebra law:
  // Delta_B m_B = (m_B x m_B)(id x c_{B,B} x id)(Delta_B x Delta_B)
  {
    // braiding on B x B in B coordinates
    SparseMat braid(f, mm, mm);
    {
      SparseMat swap(f, mm, mm);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          swap.col[a * m + b].emplace_back(b * m + a, f->one());
      for (const auto& [ab, c] : BG.R.R_sparse) {
        int a = ab / n, b = ab % n;
        sm_accumulate(
            braid,
            swap.compose(sparse_kron(BG.adjoint.act[a], BG.adjoint.act[b])),
            c);
      }
      sm_finish(braid);
    }
    bool ok = true;
    std::string w;
    for (int col = 0; col < mm && ok; ++col) {
      SparseVec v0 = BG.P2.col[col];  // carrier image of the basis vector
      if (v0.empty()) continue;
      // LHS
      SparseVec lhs = DeltaB.apply(mB.apply(v0));
      // RHS
      std::vector<int> dims2{m, m};
      SparseVec t = apply_leg(DeltaB, 0, dims2, v0);  // (m^2, m)
      std::vector<int> dimsA{m * m, m};
      t = apply_leg(DeltaB, 1, dimsA, t);  // (m^2, m^2)
      std::vector<int> dimsB{m, m * m, m};
      t = apply_leg(braid, 1, dimsB, t);  // middle pair braided
      std::vector<int> dimsC{m * m, m * m};
      t = apply_leg(mB, 0, dimsC, t);
      std::vector<int> dimsD{m, m * m};
      t = apply_leg(mB, 1, dimsD, t);
      if (t != lhs) {
        ok = false;
        w = "carrier column " + std::to_string(col);
      }
    }
    rep.add("bg.bialgebra_law", ok, w);
  }

  // antipode laws: m_B (S_B x id) Delta_B = u_B eps_B = m_B (id x S_B) Delta_B
  {
    SparseMat id = SparseMat::identity(f, m);
    Matrix lhs1 = mB.compose(sparse_kron(SBs, id)).compose(DeltaB).to_dense();
    Matrix lhs2 = mB.compose(sparse_kron(id, SBs)).compose(DeltaB).to_dense();
    Matrix rhs = BG.uB * BG.epsB;
    bool ok1 = lhs1 == rhs, ok2 = lhs2 == rhs;
    rep.add("bg.antipode_law_left", ok1, ok1 ? "" : "m(S x id)Delta != u eps");
    rep.add("bg.antipode_law_right", ok2, ok2 ? "" : "m(id x S)Delta != u eps");
  }
  // antipode inverse and module map
  {
    bool ok = (BG.SB * BG.TB).is_identity() && (BG.TB * BG.SB).is_identity();
    rep.add("bg.antipode_inverse", ok, "");
  }
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < n && ok; ++i) {
      if (!(SBs.compose(BG.adjoint.act[i]).to_dense() ==
            BG.adjoint.act[i].compose(SBs).to_dense())) {
        ok = false;
        w = "b" + std::to_string(i);
      }
    }
    rep.add("bg.antipode_module_map", ok, w);
  }

  // cocommutativity on the regular module:
  // (id x alpha)(Delta_B x id) =
  //   (id x alpha)(c_{B,B} x id)(id x c_{X,B} c_{B,X})(Delta_B x id)
  {
    // action of B basis elements on the regular module
    std::vector<SparseMat> actXB(m);
    for (int k = 0; k < m; ++k) {
      SparseMat a(f, n, n);
      Vec b = BG.carrier.basis().row(k);
      for (int i = 0; i < n; ++i)
        if (!b[i].is_zero()) sm_accumulate(a, H.left_mult()[i], b[i]);
      sm_finish(a);
      actXB[k] = std::move(a);
    }
    // R expressed with B-leg in B coordinates where needed:
    // c_{B,X}: (ad_B(R^1) on B, L(R^2) on X), then swap
    // c_{X,B}: (L(R^1) on X, ad_B(R^2) on B), then swap
    // c_{B,B}: (ad_B x ad_B)
    // projector on B x X
    SparseMat PBX(f, m * n, m * n);
    for (const auto& [ab, c] : H.delta1_sparse()) {
      int a = ab / n, b = ab % n;
      sm_accumulate(PBX, sparse_kron(BG.adjoint.act[a], H.left_mult()[b]), c);
    }
    sm_finish(PBX);
    bool ok = true;
    std::string w;
    std::vector<int> dims2{m, n};
    for (int col = 0; col < m * n && ok; ++col) {
      SparseVec v0 = PBX.col[col];
      if (v0.empty()) continue;
      // LHS: Delta_B on leg 0, contract leg 1 (B) into leg 2 (X)
      SparseVec lhs = apply_leg(DeltaB, 0, dims2, v0);  // (m^2, n)
      std::vector<int> d3{m, m, n};
      lhs = contract_action(actXB, 1, 2, d3, lhs);  // (m, n)
      // RHS
      SparseVec t = apply_leg(DeltaB, 0, dims2, v0);
      // c_{B,X} on legs (1,2)
      SparseVec u;
      for (const auto& [ab, c] : BG.R.R_sparse) {
        int a = ab / n, b = ab % n;
        SparseVec s = apply_leg(BG.adjoint.act[a], 1, d3, t);
        s = apply_leg(H.left_mult()[b], 2, d3, s);
        sparse_accumulate(u, s, c);
      }
      t = swap_legs(1, 2, d3, sparse_normalize(std::move(u)));
      std::vector<int> d3x{m, n, m};
      // c_{X,B} on legs (1,2): acts L(R^1) on X (leg 1), ad(R^2) on B (leg 2)
      u.clear();
      for (const auto& [ab, c] : BG.R.R_sparse) {
        int a = ab / n, b = ab % n;
        SparseVec s = apply_leg(H.left_mult()[a], 1, d3x, t);
        s = apply_leg(BG.adjoint.act[b], 2, d3x, s);
        sparse_accumulate(u, s, c);
      }
      t = swap_legs(1, 2, d3x, sparse_normalize(std::move(u)));
      // c_{B,B} on legs (0,1)
      u.clear();
      for (const auto& [ab, c] : BG.R.R_sparse) {
        int a = ab / n, b = ab % n;
        SparseVec s = apply_leg(BG.adjoint.act[a], 0, d3, t);
        s = apply_leg(BG.adjoint.act[b], 1, d3, s);
        sparse_accumulate(u, s, c);
      }
      t = swap_legs(0, 1, d3, sparse_normalize(std::move(u)));
      // contract legs (1,2)
      t = contract_action(actXB, 1, 2, d3, t);
      if (t != lhs) {
        ok = false;
        w = "carrier column " + std::to_string(col);
      }
    }
    rep.add("bg.cocommutativity_regular_module", ok, w);
  }

  return rep;
}

AssocAlgebra dual_algebra(const BraidedGroup& BG) {
  const Field* f = BG.H->field();
  const int m = BG.dim;
  AssocAlgebra A(f, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      SparseVec col;
      for (int k = 0; k < m; ++k) {
        const FieldElem& c = BG.DeltaB.at(i * m + j, k);
        if (!c.is_zero()) col.emplace_back(k, c);
      }
      A.mult.col[i * m + j] = std::move(col);
    }
  // unit = eps restricted to B
  for (int k = 0; k < m; ++k)
    A.unit[k] = BG.H->counit(BG.carrier.basis().row(k));
  return A;
}

std::vector<int> DecomposeResult::component_dims() const {
  std::vector<int> d;
  for (const auto& c : components) d.push_back(c.space.dim());
  std::sort(d.begin(), d.end());
  return d;
}

DecomposeResult decompose_braided_group(const BraidedGroup& BG,
                                        long precision_bits,
                                        const mpz_class& height_bound,
                                        uint64_t seed) {
  DecomposeResult out;
  const WeakHopfAlgebra& H = *BG.H;
  const Field* f = H.field();
  const int m = BG.dim;

  AssocAlgebra dual = dual_algebra(BG);
  Report arep = dual.verify();
  out.report.add("decomp.dual_algebra_valid", arep.all_pass(),
                 arep.all_pass() ? "" : arep.summary());
  if (!arep.all_pass()) {
    out.status = SplitStatus::NotSemisimple;
    out.detail = "dual algebra structure invalid: " + arep.summary();
    return out;
  }
  if (dual.trace_radical_dim() != 0) {
    out.status = SplitStatus::NotSemisimple;
    out.detail = "dual algebra has nonzero trace radical (B not cosemisimple)";
    out.report.add("decomp.dual_semisimple", false, out.detail);
    return out;
  }
  out.report.add("decomp.dual_semisimple", true, "");

  Subspace zc = dual.center();
  AssocAlgebra Z = dual.subalgebra(zc, dual.unit);
  SplitResult split = split_commutative(Z, precision_bits, height_bound, seed);
  if (split.status != SplitStatus::Ok) {
    out.status = split.status;
    out.detail = split.detail;
    out.report.add("decomp.center_split", false, split.detail);
    return out;
  }
  out.report.add("decomp.center_split", true, "");

  // Each central primitive idempotent p gives the simple subcoalgebra
  // C_p = (p -> B <- p), the image of b -> (p x id x p) Delta_B^2(b).
  SparseMat DeltaB = SparseMat::from_dense(BG.DeltaB);
  std::vector<Subspace> pieces;
  for (const auto& pz : split.idempotents) {
    Vec p = zc.lift(pz);  // in B^* coordinates = B coordinates of functionals
    Matrix img(f, m, m);
    std::vector<int> dims2{m, m};
    for (int k = 0; k < m; ++k) {
      SparseVec d2 = apply_leg(DeltaB, 0, dims2, DeltaB.col[k]);
      // d2 lives on (m, m, m); pair legs 0 and 2 with p
      std::vector<int> d3{m, m, m};
      Vec acc = vec_zero(f, m);
      for (const auto& [flat, c] : d2) {
        std::vector<int> idx = tensor_unrank_index(d3, flat);
        const FieldElem& p0 = p[idx[0]];
        const FieldElem& p2 = p[idx[2]];
        if (p0.is_zero() || p2.is_zero()) continue;
        acc[idx[1]] += c * p0 * p2;
      }
      for (int i = 0; i < m; ++i) img.at(i, k) = acc[i];
    }
    Subspace piece = Subspace::image(img);
    // close under the adjoint action
    bool grew = true;
    while (grew) {
      grew = false;
      Subspace next = piece;
      for (int i = 0; i < H.dim(); ++i) {
        Matrix rows(f, piece.dim(), m);
        for (int r = 0; r < piece.dim(); ++r)
          rows.set_row(r,
                       BG.adjoint.act[i].apply_dense(piece.basis().row(r)));
        next = next.sum(Subspace::span(rows));
      }
      if (next.dim() > piece.dim()) {
        piece = next;
        grew = true;
      }
    }
    pieces.push_back(piece);
  }

  // merge pieces that overlap
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t a = 0; a < pieces.size() && !merged; ++a)
      for (size_t b = a + 1; b < pieces.size() && !merged; ++b) {
        if (pieces[a].intersect(pieces[b]).dim() > 0) {
          pieces[a] = pieces[a].sum(pieces[b]);
          pieces.erase(pieces.begin() + b);
          merged = true;
        }
      }
  }

  // postconditions: independent, summing to B, stable, subcoalgebras
  {
    int total = 0;
    Subspace sum = Subspace::zero(f, m);
    for (const auto& p : pieces) {
      total += p.dim();
      sum = sum.sum(p);
    }
    bool ok = (total == m) && (sum.dim() == m);
    out.report.add("decomp.components_sum_to_B", ok,
                   ok ? "" : "dims " + std::to_string(total) + " vs " +
                                 std::to_string(m));
    if (!ok) {
      out.status = SplitStatus::NotSplit;
      out.detail = "components do not decompose B";
      return out;
    }
  }

  int index = 0;
  for (const auto& piece : pieces) {
    SubcoalgebraComponent comp;
    comp.index = index++;
    comp.space = piece;
    int d = piece.dim();
    // adjoint action restricted
    comp.adjoint = HModule(&H, d);
    bool stable = true;
    for (int i = 0; i < H.dim() && stable; ++i) {
      SparseMat a(f, d, d);
      for (int j = 0; j < d; ++j) {
        Vec img = BG.adjoint.act[i].apply_dense(piece.basis().row(j));
        auto c = piece.coords_of(img);
        if (!c) {
          stable = false;
          break;
        }
        a.col[j] = sparse_from_dense(*c);
      }
      comp.adjoint.act[i] = std::move(a);
    }
    out.report.add("decomp.component" + std::to_string(comp.index) +
                       ".adjoint_stable",
                   stable, "");
    // Delta_B restricted: must land in D x D
    bool sub = stable;
    if (sub) {
      comp.DeltaD = Matrix(f, d * d, d);
      for (int j = 0; j < d && sub; ++j) {
        Vec db = BG.DeltaB * piece.basis().row(j);  // m^2 coords
        // convert each leg to D coordinates via pivots and verify the lift
        Vec dd = vec_zero(f, d * d);
        const auto& piv = piece.pivots();
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) dd[a * d + b] = db[piv[a] * m + piv[b]];
        Vec relift = vec_zero(f, m * m);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            const FieldElem& c = dd[a * d + b];
            if (c.is_zero()) continue;
            Vec ba = piece.basis().row(a), bb = piece.basis().row(b);
            for (int x = 0; x < m; ++x) {
              if (ba[x].is_zero()) continue;
              for (int y = 0; y < m; ++y) {
                if (bb[y].is_zero()) continue;
                relift[x * m + y] += c * ba[x] * bb[y];
              }
            }
          }
        if (!vec_eq(relift, db)) {
          sub = false;
          break;
        }
        for (int i = 0; i < d * d; ++i) comp.DeltaD.at(i, j) = dd[i];
      }
    }
    out.report.add("decomp.component" + std::to_string(comp.index) +
                       ".subcoalgebra",
                   sub, "");
    if (!stable || !sub) {
      out.status = SplitStatus::NotSplit;
      out.detail = "component postcondition failed";
      return out;
    }
    comp.epsD = vec_zero(f, d);
    for (int j = 0; j < d; ++j)
      comp.epsD[j] = H.counit(BG.carrier.lift(piece.basis().row(j)));
    out.components.push_back(std::move(comp));
  }
  // deterministic order: by dimension then by basis pivots
  std::sort(out.components.begin(), out.components.end(),
            [](const SubcoalgebraComponent& a, const SubcoalgebraComponent& b) {
              if (a.space.dim() != b.space.dim())
                return a.space.dim() < b.space.dim();
              return a.space.pivots() < b.space.pivots();
            });
  for (size_t i = 0; i < out.components.size(); ++i)
    out.components[i].index = (int)i;
  return out;
}

}  // namespace wha
