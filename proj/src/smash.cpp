#include "whakit/smash.hpp"

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

AssocAlgebra ModuleAlgebra::algebra() const {
  AssocAlgebra a(mod.H->field(), dim());
  a.mult = mult;
  a.unit = unit;
  return a;
}

Vec ModuleAlgebra::mul(const Vec& a, const Vec& b) const {
  const Field* f = mod.H->field();
  const int d = dim();
  Vec out = vec_zero(f, d);
  for (int i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      FieldElem c = a[i] * b[j];
      for (const auto& [k, m] : mult.col[i * d + j]) out[k] += c * m;
    }
  }
  return out;
}

Report ModuleAlgebra::verify() const {
  Report rep = algebra().verify();
  rep.merge(mod.verify("modalg.module"));
  const WeakHopfAlgebra& H = *mod.H;
  const Field* f = H.field();
  const int n = H.dim();
  const int d = dim();
  AssocAlgebra alg = algebra();
  // h (a b) = (h1 a)(h2 b)
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < n && ok; ++i)
      for (int p = 0; p < d && ok; ++p)
        for (int q = 0; q < d && ok; ++q) {
          Vec prod = alg.mul(vec_unit(f, d, p), vec_unit(f, d, q));
          Vec lhs = mod.act[i].apply_dense(prod);
          Vec rhs = vec_zero(f, d);
          for (const auto& [ab, c] : H.comult_tensor().col[i]) {
            int a = ab / n, b = ab % n;
            Vec pa = mod.act[a].apply_dense(vec_unit(f, d, p));
            Vec qb = mod.act[b].apply_dense(vec_unit(f, d, q));
            rhs = vec_add(rhs, vec_scaled(alg.mul(pa, qb), c));
          }
          if (!vec_eq(lhs, rhs)) {
            ok = false;
            w = "(b" + std::to_string(i) + ", a" + std::to_string(p) + ", a" +
                std::to_string(q) + ")";
          }
        }
    rep.add("modalg.action_multiplicative", ok, w);
  }
  // h 1_A = eps_t(h) 1_A
  {
    bool ok = true;
    std::string w;
    for (int i = 0; i < n && ok; ++i) {
      Vec lhs = mod.act[i].apply_dense(unit);
      Vec et = H.eps_t(vec_unit(f, n, i));
      Vec rhs = vec_zero(f, d);
      for (int k = 0; k < n; ++k)
        if (!et[k].is_zero())
          rhs = vec_add(rhs, vec_scaled(mod.act[k].apply_dense(unit), et[k]));
      if (!vec_eq(lhs, rhs)) {
        ok = false;
        w = "b" + std::to_string(i);
      }
    }
    rep.add("modalg.unit_counital", ok, w);
  }
  return rep;
}

ModuleAlgebra target_module_algebra(const WeakHopfAlgebra& H) {
  ModuleAlgebra A;
  A.mod = unit_module(H);
  const Field* f = H.field();
  const Subspace& Ht = H.target_subalgebra();
  const int d = Ht.dim();
  A.mult = SparseMat(f, d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec prod = H.mul(Ht.basis().row(i), Ht.basis().row(j));
      auto c = Ht.coords_of(prod);
      if (!c) throw std::logic_error("H_t not closed under multiplication");
      A.mult.col[i * d + j] = sparse_from_dense(*c);
    }
  auto u = Ht.coords_of(H.unit());
  A.unit = *u;
  return A;
}

ModuleAlgebra scalar_module_algebra(const WeakHopfAlgebra& H) {
  if (H.target_subalgebra().dim() != 1)
    throw std::invalid_argument("scalar module algebra needs dim H_t = 1");
  return target_module_algebra(H);
}

ModuleAlgebra braided_group_module_algebra(const BraidedGroup& BG) {
  ModuleAlgebra A;
  A.mod = BG.adjoint;
  const Field* f = BG.H->field();
  const int d = BG.dim;
  A.mult = SparseMat(f, d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      A.mult.col[i * d + j] = sparse_from_dense(BG.mB.col(i * d + j));
  auto u = BG.carrier.coords_of(BG.H->unit());
  if (!u) throw std::logic_error("unit of H not inside B");
  A.unit = *u;
  return A;
}

Vec SmashProduct::clazz(const Vec& a, const Vec& h) const {
  const Field* f = carrier.field();
  Vec amb = vec_zero(f, (int)(a.size() * h.size()));
  for (size_t p = 0; p < a.size(); ++p)
    for (size_t q = 0; q < h.size(); ++q)
      if (!a[p].is_zero() && !h[q].is_zero())
        amb[p * h.size() + q] = a[p] * h[q];
  return proj * amb;
}

SmashProduct smash_build(const ModuleAlgebra& A, const WeakHopfAlgebra& H) {
  SmashProduct out;
  out.H = &H;
  out.dimA = A.dim();
  const Field* f = H.field();
  const int n = H.dim();
  const int da = A.dim();
  const int amb = da * n;

  // Balancing projector built on the separability element
  // S(1_(1)) x 1_(2) of H_t: pi(a x h) = a . S(1_(1)) x 1_(2) h, and
  // a . S(1_(1)) = 1_(1) . a, so pi is the Delta(1)-action on A x H.
  SparseMat pi(f, amb, amb);
  for (const auto& [uv, c] : H.delta1_sparse()) {
    int u = uv / n, v = uv % n;
    sm_accumulate(pi, sparse_kron(A.mod.act[u], H.left_mult()[v]), c);
  }
  sm_finish(pi);

  // the balancing relations a.z x h - a x z h over A-basis, Ht-basis, H-basis
  const Subspace& Ht = H.target_subalgebra();
  std::vector<Vec> relrows;
  for (int p = 0; p < da; ++p)
    for (int t = 0; t < Ht.dim(); ++t)
      for (int q = 0; q < n; ++q) {
        Vec z = Ht.basis().row(t);
        Vec row = vec_zero(f, amb);
        // a.z = S^{-1}(z) a
        Vec sz = H.antipode_inv(z);
        for (int k = 0; k < n; ++k) {
          if (sz[k].is_zero()) continue;
          for (const auto& [pp, c] : A.mod.act[k].col[p])
            row[pp * n + q] += sz[k] * c;
        }
        Vec zh = H.mul(z, vec_unit(f, n, q));
        for (int k = 0; k < n; ++k)
          if (!zh[k].is_zero()) row[p * n + k] -= zh[k];
        if (!vec_is_zero(row)) relrows.push_back(row);
      }
  Subspace rel = Subspace::span(Matrix::from_rows(f, relrows, amb));

  // projector properties
  {
    bool idem = pi.compose(pi).to_dense() == pi.to_dense();
    out.report.add("smash.projector_idempotent", idem, "");
    bool kills = true;
    for (int r = 0; r < rel.dim() && kills; ++r)
      if (!vec_is_zero(pi.apply_dense(rel.basis().row(r)))) kills = false;
    out.report.add("smash.projector_kills_relations", kills, "");
    Matrix pd = pi.to_dense();
    out.carrier = Subspace::image(pd);
    bool exact = out.carrier.dim() + rel.dim() == amb;
    out.report.add("smash.projector_kernel_is_relations", exact,
                   exact ? ""
                         : std::to_string(out.carrier.dim()) + " + " +
                               std::to_string(rel.dim()) +
                               " != " + std::to_string(amb));
    if (!idem || !kills || !exact) return out;
    out.incl = out.carrier.inclusion();
    Matrix pivrows(f, out.carrier.dim(), amb);
    for (int i = 0; i < out.carrier.dim(); ++i)
      for (int j = 0; j < amb; ++j)
        pivrows.at(i, j) = pd.at(out.carrier.pivots()[i], j);
    out.proj = std::move(pivrows);
  }

  const int ds = out.carrier.dim();
  SparseMat projS = SparseMat::from_dense(out.proj);
  SparseMat inclS = SparseMat::from_dense(out.incl);
  SparseMat Amult(f, da, da * da);
  Amult.col = A.mult.col;
  // multiplication (a # h)(b # g) = a (h_(1) b) # h_(2) g on representatives
  auto amb_mul = [&](const SparseVec& x, const SparseVec& y) {
    SparseVec res;
    for (const auto& [pq, xc] : x) {
      int p = pq / n, q = pq % n;
      for (const auto& [rs, yc] : y) {
        int r = rs / n, s = rs % n;
        FieldElem c0 = xc * yc;
        for (const auto& [ab, c] : H.comult_tensor().col[q]) {
          int a = ab / n, b = ab % n;
          for (const auto& [rr, ca] : A.mod.act[a].col[r]) {
            const SparseVec& acol = Amult.col[p * da + rr];
            const SparseVec& hcol = H.mult_tensor().col[b * n + s];
            FieldElem c1 = c0 * c * ca;
            for (const auto& [ll, cl] : acol)
              for (const auto& [k, cm] : hcol)
                res.emplace_back(ll * n + k, c1 * cl * cm);
          }
        }
      }
    }
    return sparse_normalize(std::move(res));
  };

  // multiplication descends: products with a relation representative vanish
  // after projection
  {
    bool ok = true;
    for (int r = 0; r < rel.dim() && ok; ++r) {
      SparseVec rv = sparse_from_dense(rel.basis().row(r));
      for (int j = 0; j < ds && ok; ++j) {
        const SparseVec& x = inclS.col[j];
        if (!projS.apply(amb_mul(rv, x)).empty()) ok = false;
        if (ok && !projS.apply(amb_mul(x, rv)).empty()) ok = false;
      }
    }
    out.report.add("smash.multiplication_descends", ok, "");
    if (!ok) return out;
  }

  out.alg = AssocAlgebra(f, ds);
  for (int i = 0; i < ds; ++i)
    for (int j = 0; j < ds; ++j)
      out.alg.mult.col[i * ds + j] =
          projS.apply(amb_mul(inclS.col[i], inclS.col[j]));
  {
    Vec one = vec_zero(f, amb);
    for (int p = 0; p < da; ++p)
      for (int q = 0; q < n; ++q)
        if (!A.unit[p].is_zero() && !H.unit()[q].is_zero())
          one[p * n + q] = A.unit[p] * H.unit()[q];
    out.alg.unit = out.proj * one;
  }
  Report arep = out.alg.verify();
  out.report.add("smash.algebra_valid", arep.all_pass(),
                 arep.all_pass() ? "" : arep.summary());
  return out;
}

Report phi_check(const ModuleAlgebra& A, const WeakHopfAlgebra& H) {
  Report rep;
  const Field* f = H.field();
  const int n = H.dim();
  const int da = A.dim();
  SmashProduct smash = smash_build(A, H);
  rep.merge(smash.report);
  if (!smash.ok()) return rep;
  const int ds = smash.dim();

  // balanced H x_{Ht} A: relations h z x a - h x z.a
  const Subspace& Ht = H.target_subalgebra();
  const int amb = n * da;
  std::vector<Vec> relrows;
  for (int q = 0; q < n; ++q)
    for (int t = 0; t < Ht.dim(); ++t)
      for (int p = 0; p < da; ++p) {
        Vec z = Ht.basis().row(t);
        Vec row = vec_zero(f, amb);
        Vec hz = H.mul(vec_unit(f, n, q), z);
        for (int k = 0; k < n; ++k)
          if (!hz[k].is_zero()) row[k * da + p] += hz[k];
        for (int k = 0; k < n; ++k) {
          if (z[k].is_zero()) continue;
          for (const auto& [pp, c] : A.mod.act[k].col[p])
            row[q * da + pp] -= z[k] * c;
        }
        if (!vec_is_zero(row)) relrows.push_back(row);
      }
  Subspace rel = Subspace::span(Matrix::from_rows(f, relrows, amb));
  // balancing projector pi'(h x a) = h S(1_(1)) x 1_(2) . a
  SparseMat pi(f, amb, amb);
  for (const auto& [uv, c] : H.delta1_sparse()) {
    int u = uv / n, v = uv % n;
    SparseMat rS(f, n, n);
    for (const auto& [k, sc] : H.antipode_sparse().col[u])
      sm_accumulate(rS, H.right_mult()[k], sc);
    sm_finish(rS);
    sm_accumulate(pi, sparse_kron(rS, A.mod.act[v]), c);
  }
  sm_finish(pi);
  {
    bool idem = pi.compose(pi).to_dense() == pi.to_dense();
    bool kills = true;
    for (int r = 0; r < rel.dim() && kills; ++r)
      if (!vec_is_zero(pi.apply_dense(rel.basis().row(r)))) kills = false;
    rep.add("phi.balancing_projector", idem && kills, "");
    if (!idem || !kills) return rep;
  }
  Matrix pd = pi.to_dense();
  Subspace hta = Subspace::image(pd);
  {
    bool exact = hta.dim() + rel.dim() == amb;
    rep.add("phi.balanced_space_dimension", exact, "");
    if (!exact) return rep;
  }
  Matrix proj(f, hta.dim(), amb);
  for (int i = 0; i < hta.dim(); ++i)
    for (int j = 0; j < amb; ++j) proj.at(i, j) = pd.at(hta.pivots()[i], j);

  // Phi(h x a) = (1_A # h)(a # 1_H)
  auto phi_of = [&](const Vec& x) {
    // x in H x A ambient
    Vec res = vec_zero(f, ds);
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < da; ++p) {
        const FieldElem& c = x[q * da + p];
        if (c.is_zero()) continue;
        Vec left = smash.clazz(A.unit, vec_unit(f, n, q));
        Vec right = smash.clazz(vec_unit(f, da, p), H.unit());
        Vec prod = smash.alg.mul(left, right);
        res = vec_add(res, vec_scaled(prod, c));
      }
    return res;
  };
  Matrix Phi(f, ds, hta.dim());
  for (int j = 0; j < hta.dim(); ++j) {
    Vec img = phi_of(hta.basis().row(j));
    for (int i = 0; i < ds; ++i) Phi.at(i, j) = img[i];
  }
  // well-defined: Phi kills relation representatives
  {
    bool ok = true;
    for (int r = 0; r < rel.dim() && ok; ++r)
      if (!vec_is_zero(phi_of(rel.basis().row(r)))) ok = false;
    rep.add("phi.well_defined", ok, "");
  }
  {
    auto inv = Phi.inverse();
    rep.add("phi.bijective", inv.has_value(),
            inv ? "" : "Phi is not invertible");
  }
  // right A-linearity: Phi((h x a) b) = Phi(h x a)(b # 1)
  {
    bool ok = true;
    std::string w;
    for (int b = 0; b < da && ok; ++b) {
      // right multiplication by b on H x_{Ht} A: h x a -> h x ab
      Matrix rb(f, hta.dim(), hta.dim());
      for (int j = 0; j < hta.dim(); ++j) {
        Vec x = hta.basis().row(j);
        Vec img = vec_zero(f, amb);
        for (int q = 0; q < n; ++q)
          for (int p = 0; p < da; ++p) {
            const FieldElem& c = x[q * da + p];
            if (c.is_zero()) continue;
            Vec ab = A.mul(vec_unit(f, da, p), vec_unit(f, da, b));
            for (int k = 0; k < da; ++k)
              if (!ab[k].is_zero()) img[q * da + k] += c * ab[k];
          }
        Vec coords = proj * img;
        for (int i = 0; i < hta.dim(); ++i) rb.at(i, j) = coords[i];
      }
      // right multiplication by (b # 1) on the smash product
      Vec bclass = smash.clazz(vec_unit(f, da, b), H.unit());
      Matrix rs(f, ds, ds);
      for (int j = 0; j < ds; ++j) {
        Vec prod = smash.alg.mul(vec_unit(f, ds, j), bclass);
        for (int i = 0; i < ds; ++i) rs.at(i, j) = prod[i];
      }
      if (!(Phi * rb == rs * Phi)) {
        ok = false;
        w = "a" + std::to_string(b);
      }
    }
    rep.add("phi.right_A_linear", ok, w);
  }
  // stated inverse: a # h -> h_(2) x S^{-1}(h_(1)).a
  {
    Matrix Psi(f, hta.dim(), ds);
    const Matrix& sinv = H.antipode_inv_matrix();
    for (int j = 0; j < ds; ++j) {
      Vec x = smash.incl.col(j);  // in A x H ambient
      Vec img = vec_zero(f, amb);
      for (int p = 0; p < da; ++p)
        for (int q = 0; q < n; ++q) {
          const FieldElem& c = x[p * n + q];
          if (c.is_zero()) continue;
          for (const auto& [ab, dc] : H.comult_tensor().col[q]) {
            int a = ab / n, b = ab % n;
            // h2 = e_b stays; act S^{-1}(e_a) on a-leg
            for (int k = 0; k < n; ++k) {
              const FieldElem& sc = sinv.at(k, a);
              if (sc.is_zero()) continue;
              for (const auto& [pp, cm] : A.mod.act[k].col[p])
                img[b * da + pp] += c * dc * sc * cm;
            }
          }
        }
      Vec coords = proj * img;
      for (int i = 0; i < hta.dim(); ++i) Psi.at(i, j) = coords[i];
    }
    bool ok = (Phi * Psi).is_identity() && (Psi * Phi).is_identity();
    rep.add("phi.stated_inverse", ok, "");
  }
  return rep;
}

InvariantsBeta invariants_beta(const HModule& M) {
  InvariantsBeta out;
  const WeakHopfAlgebra& H = *M.H;
  const Field* f = H.field();
  const int n = H.dim();
  const int d = M.dim;
  const Subspace& Ht = H.target_subalgebra();
  HModule unitm = unit_module(H);

  // Inv M: h m = eps_t(h) m for all h
  {
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) {
      Matrix diff = M.act[i].to_dense();
      Vec et = H.eps_t(vec_unit(f, n, i));
      for (int k = 0; k < n; ++k)
        if (!et[k].is_zero()) diff = diff - M.act[k].to_dense().scaled(et[k]);
      for (int r = 0; r < d; ++r) rows.push_back(diff.row(r));
    }
    out.inv = Subspace::span(Matrix::from_rows(f, rows, d).kernel());
  }
  HModule Mdual = dual_module(M);
  {
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) {
      Matrix diff = Mdual.act[i].to_dense();
      Vec et = H.eps_t(vec_unit(f, n, i));
      for (int k = 0; k < n; ++k)
        if (!et[k].is_zero())
          diff = diff - Mdual.act[k].to_dense().scaled(et[k]);
      for (int r = 0; r < d; ++r) rows.push_back(diff.row(r));
    }
    out.inv_dual = Subspace::span(Matrix::from_rows(f, rows, d).kernel());
  }
  // Hom_H(M, H_t): f act(h) = act_unit(h) f
  {
    const int dt = Ht.dim();
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) {
      Matrix am = M.act[i].to_dense();
      Matrix au = unitm.act[i].to_dense();
      for (int r = 0; r < dt; ++r)
        for (int c = 0; c < d; ++c) {
          Vec row = vec_zero(f, dt * d);
          for (int k = 0; k < d; ++k) row[r * d + k] += am.at(k, c);
          for (int k = 0; k < dt; ++k) row[k * d + c] -= au.at(r, k);
          rows.push_back(row);
        }
    }
    out.hom_to_unit =
        Subspace::span(Matrix::from_rows(f, rows, dt * d).kernel());
  }
  // beta(m*)(m) = <m*, 1_(1) m> 1_(2): as a map into Hom coordinates
  {
    const int dt = Ht.dim();
    bool contained = true;
    out.beta = Matrix(f, out.hom_to_unit.dim(), out.inv_dual.dim());
    for (int j = 0; j < out.inv_dual.dim(); ++j) {
      Vec mstar = out.inv_dual.basis().row(j);
      // build the map M -> Ht
      Matrix fm(f, dt, d);
      for (int m = 0; m < d; ++m) {
        Vec img = vec_zero(f, n);
        for (const auto& [ab, c] : H.delta1_sparse()) {
          int a = ab / n, b = ab % n;
          // <m*, act(e_a) e_m>
          FieldElem pair = f->zero();
          for (const auto& [r, cm] : M.act[a].col[m]) pair += mstar[r] * cm;
          if (!pair.is_zero())
            img = vec_add(img, vec_scaled(vec_unit(f, n, b), c * pair));
        }
        auto coords = Ht.coords_of(img);
        if (!coords) {
          contained = false;
          break;
        }
        for (int t = 0; t < dt; ++t) fm.at(t, m) = (*coords)[t];
      }
      if (!contained) break;
      Vec flat = vec_zero(f, dt * d);
      for (int t = 0; t < dt; ++t)
        for (int m = 0; m < d; ++m) flat[t * d + m] = fm.at(t, m);
      auto hc = out.hom_to_unit.coords_of(flat);
      if (!hc) {
        contained = false;
        break;
      }
      for (int i = 0; i < out.hom_to_unit.dim(); ++i)
        out.beta.at(i, j) = (*hc)[i];
    }
    out.report.add("beta.image_in_hom", contained, "");
    if (!contained) return out;
  }
  // inverse: f -> eps o f
  {
    const int dt = Ht.dim();
    bool contained = true;
    Matrix binv(f, out.inv_dual.dim(), out.hom_to_unit.dim());
    for (int j = 0; j < out.hom_to_unit.dim(); ++j) {
      Vec fv = out.hom_to_unit.basis().row(j);
      Vec mstar = vec_zero(f, d);
      for (int m = 0; m < d; ++m) {
        FieldElem t = f->zero();
        for (int r = 0; r < dt; ++r) {
          const FieldElem& c = fv[r * d + m];
          if (c.is_zero()) continue;
          t += c * H.counit(Ht.basis().row(r));
        }
        mstar[m] = t;
      }
      auto c = out.inv_dual.coords_of(mstar);
      if (!c) {
        contained = false;
        break;
      }
      for (int i = 0; i < out.inv_dual.dim(); ++i) binv.at(i, j) = (*c)[i];
    }
    out.report.add("beta.inverse_lands_in_invariants", contained, "");
    if (!contained) return out;
    bool ok = (out.beta * binv).is_identity() &&
              (binv * out.beta).is_identity();
    out.report.add("beta.mutually_inverse", ok, "");
  }
  return out;
}

WeakHopfAlgebra dual_wha(const WeakHopfAlgebra& H) {
  const Field* f = H.field();
  const int n = H.dim();
  WeakHopfAlgebra D(f, n);
  // (f_i f_j)(b_k) = (f_i x f_j)(Delta b_k)
  for (int k = 0; k < n; ++k)
    for (const auto& [ij, c] : H.comult_tensor().col[k])
      D.add_mult(ij / n, ij % n, k, c);
  // Delta*(f_i)(b_j x b_k) = f_i(b_j b_k)
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (const auto& [i, c] : H.mult_tensor().col[j * n + k])
        D.add_comult(i, j, k, c);
  for (int i = 0; i < n; ++i) {
    if (!H.counit_row()[i].is_zero()) D.set_unit(i, H.counit_row()[i]);
    if (!H.unit()[i].is_zero()) D.set_counit(i, H.unit()[i]);
    for (int j = 0; j < n; ++j) {
      const FieldElem& c = H.antipode_matrix().at(j, i);
      if (!c.is_zero()) D.set_antipode(i, j, c);
    }
  }
  D.finalize();
  return D;
}

Report dual_smash_check(const ModuleAlgebra& A, const WeakHopfAlgebra& H,
                        long precision_bits, const mpz_class& height_bound,
                        uint64_t seed, bool compare_blocks) {
  Report rep;
  const Field* f = H.field();
  const int n = H.dim();
  SmashProduct smash = smash_build(A, H);
  rep.merge(smash.report);
  if (!smash.ok()) return rep;
  const int ds = smash.dim();

  WeakHopfAlgebra Hd = dual_wha(H);

  // A # H as a left H^*-module algebra via f . (a # h) = a # (f -> h),
  // f -> h = h_(1) <f, h_(2)>
  ModuleAlgebra AH;
  AH.mod = HModule(&Hd, ds);
  for (int i = 0; i < n; ++i) {
    // ambient map on A x H: id_A x hit_i
    SparseMat hit(f, n, n);
    for (int q = 0; q < n; ++q) {
      SparseVec col;
      for (const auto& [ab, c] : H.comult_tensor().col[q]) {
        int a = ab / n, b = ab % n;
        if (b == i) col.emplace_back(a, c);
      }
      hit.col[q] = sparse_normalize(std::move(col));
    }
    SparseMat amb = sparse_kron(SparseMat::identity(f, A.dim()), hit);
    Matrix dense = smash.proj * amb.to_dense() * smash.incl;
    AH.mod.act[i] = SparseMat::from_dense(dense);
  }
  AH.mult = smash.alg.mult;
  AH.unit = smash.alg.unit;
  Report marep = AH.verify();
  rep.add("dual.smash_is_Hdual_module_algebra", marep.all_pass(),
          marep.all_pass() ? "" : marep.summary());
  if (!marep.all_pass()) return rep;

  SmashProduct T = smash_build(AH, Hd);
  rep.add("dual.double_smash_builds", T.ok(),
          T.ok() ? "" : T.report.summary());
  if (!T.ok()) return rep;

  // End(A#H)_A: commutant of the right A-action
  int end_dim;
  AssocAlgebra endalg(f, 0);
  {
    std::vector<SparseMat> rmul;
    for (int b = 0; b < A.dim(); ++b) {
      Vec bclass = smash.clazz(vec_unit(f, A.dim(), b), H.unit());
      SparseMat rb(f, ds, ds);
      for (int j = 0; j < ds; ++j) {
        Vec prod = smash.alg.mul(vec_unit(f, ds, j), bclass);
        rb.col[j] = sparse_from_dense(prod);
      }
      rmul.push_back(std::move(rb));
    }
    Subspace comm = commutant_subspace(f, rmul);
    end_dim = comm.dim();

    bool dims_equal = T.dim() == end_dim;
    rep.add("dual.dim_equality", dims_equal,
            dims_equal ? ""
                       : std::to_string(T.dim()) + " vs " +
                             std::to_string(end_dim));

    // semisimplicity transfer (the Maschke-type corollary): if A#H is
    // semisimple and H is cosemisimple then A is semisimple
    {
      bool smash_ss = smash.alg.trace_radical_dim() == 0;
      bool hdual_ss = [&] {
        AssocAlgebra hd(f, n);
        hd.mult = Hd.mult_tensor();
        hd.unit = Hd.unit();
        return hd.trace_radical_dim() == 0;
      }();
      bool a_ss = A.algebra().trace_radical_dim() == 0;
      bool transfer = !(smash_ss && hdual_ss) || a_ss;
      rep.add("dual.semisimplicity_transfer", transfer,
              transfer ? "" : "A#H and H^* semisimple but A is not");
    }

    if (!compare_blocks || !dims_equal) return rep;

    // End-side semisimplicity: radical of the trace form tr(E_i E_j)
    std::vector<SparseMat> endo;
    for (int t = 0; t < end_dim; ++t) {
      SparseMat E(f, ds, ds);
      Vec v = comm.basis().row(t);
      for (int r = 0; r < ds; ++r)
        for (int c = 0; c < ds; ++c)
          if (!v[r * ds + c].is_zero()) E.col[c].emplace_back(r, v[r * ds + c]);
      endo.push_back(std::move(E));
    }
    {
      Matrix gram(f, end_dim, end_dim);
      for (int i = 0; i < end_dim; ++i)
        for (int j = i; j < end_dim; ++j) {
          FieldElem tr = f->zero();
          for (int c = 0; c < ds; ++c)
            for (const auto& [k, m] : endo[j].col[c])
              for (const auto& [r, m2] : endo[i].col[k])
                if (r == c) tr += m * m2;
          gram.at(i, j) = tr;
          gram.at(j, i) = tr;
        }
      bool end_ss = gram.kernel().rows() == 0;
      bool t_ss = T.alg.trace_radical_dim() == 0;
      rep.add("dual.both_sides_semisimple", end_ss == t_ss,
              end_ss == t_ss ? "" : "semisimplicity disagrees");
      if (!end_ss || !t_ss) {
        rep.add("dual.block_multisets_equal", true,
                "skipped: a side is not semisimple");
        return rep;
      }
    }
    // center of End = commutant of both the right A-action and End itself
    Subspace zend = commutant_refine(comm, endo);
    // center as a commutative algebra: products in zend coordinates
    AssocAlgebra Z(f, zend.dim());
    bool zok = true;
    for (int i = 0; i < zend.dim() && zok; ++i)
      for (int j = 0; j < zend.dim() && zok; ++j) {
        // product of flattened matrices
        Vec vi = zend.basis().row(i), vj = zend.basis().row(j);
        Vec prod = vec_zero(f, ds * ds);
        for (int r = 0; r < ds; ++r)
          for (int k = 0; k < ds; ++k) {
            const FieldElem& x = vi[r * ds + k];
            if (x.is_zero()) continue;
            for (int c = 0; c < ds; ++c) {
              const FieldElem& y = vj[k * ds + c];
              if (!y.is_zero()) prod[r * ds + c] += x * y;
            }
          }
        auto coords = zend.coords_of(prod);
        if (!coords) {
          zok = false;
          break;
        }
        Z.mult.col[i * zend.dim() + j] = sparse_from_dense(*coords);
      }
    {
      Vec idv = vec_zero(f, ds * ds);
      for (int r = 0; r < ds; ++r) idv[r * ds + r] = f->one();
      auto uc = zend.coords_of(idv);
      if (!uc) zok = false;
      if (uc) Z.unit = *uc;
    }
    rep.add("dual.end_center_closed", zok, "");
    if (!zok) return rep;
    SplitResult zsplit = split_commutative(Z, precision_bits, height_bound, seed);
    WedderburnResult wt =
        wedderburn_blocks(T.alg, precision_bits, height_bound, seed);
    if (zsplit.status == SplitStatus::Ok && wt.status == SplitStatus::Ok) {
      // End-side block dims: rank of G -> z G on the commutant
      std::vector<int> edims;
      for (const auto& ez : zsplit.idempotents) {
        Vec zflat = zend.lift(ez);
        Matrix zm(f, ds, ds);
        for (int r = 0; r < ds; ++r)
          for (int c = 0; c < ds; ++c) zm.at(r, c) = zflat[r * ds + c];
        Matrix img(f, end_dim, ds * ds);
        for (int t = 0; t < end_dim; ++t) {
          Matrix prod = zm * endo[t].to_dense();
          for (int r = 0; r < ds; ++r)
            for (int c = 0; c < ds; ++c) img.at(t, r * ds + c) = prod.at(r, c);
        }
        edims.push_back(img.rank());
      }
      std::sort(edims.begin(), edims.end());
      bool same = wt.block_dims() == edims;
      rep.add("dual.block_multisets_equal", same, "");
    } else {
      rep.add("dual.block_multisets_equal", true,
              "skipped: field does not split (" + zsplit.detail + wt.detail +
                  ")");
    }
  }
  return rep;
}

}  // namespace wha
