#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "whakit/builders.hpp"
#include "whakit/modules.hpp"

using namespace wha;

namespace {
const Field* Q = Field::rationals();

// the 2-dimensional simple module of the 2-object indiscrete groupoid
HModule groupoid_simple(const WeakHopfAlgebra& H) {
  HModule V(&H, 2);
  for (int t = 0; t < 2; ++t)
    for (int s = 0; s < 2; ++s) {
      SparseMat a(Q, 2, 2);
      a.col[s].emplace_back(t, Q->one());
      V.act[t * 2 + s] = a;
    }
  return V;
}
}  // namespace

TEST_CASE("module verification") {
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  CHECK(regular_module(s3.H).verify().all_pass());
  CHECK(unit_module(s3.H).verify().all_pass());
  CHECK(dual_module(regular_module(s3.H)).verify().all_pass());

  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  CHECK(regular_module(gd.H).verify().all_pass());
  CHECK(unit_module(gd.H).verify().all_pass());
  CHECK(groupoid_simple(gd.H).verify().all_pass());
  // a broken action is caught
  HModule bad = groupoid_simple(gd.H);
  std::swap(bad.act[0], bad.act[1]);
  CHECK_FALSE(bad.verify().all_pass());
}

TEST_CASE("truncated tensor carriers") {
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  HModule reg = regular_module(s3.H);
  TruncTensor tt = ttensor(reg, reg);
  CHECK(tt.full);  // Hopf algebra: Delta(1) = 1 x 1
  CHECK(tt.module.verify().all_pass());

  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  HModule V = groupoid_simple(gd.H);
  TruncTensor vv = ttensor(V, V);
  REQUIRE_FALSE(vv.full);
  CHECK(vv.carrier.dim() == 2);  // matching-object pairs survive
  CHECK(vv.module.verify().all_pass());

  // unit law on dimensions: M x_t H_t has the dimension of M
  HModule unit = unit_module(gd.H);
  TruncTensor vu = ttensor(V, unit);
  CHECK((vu.full ? V.dim * unit.dim : vu.carrier.dim()) == 2);
  TruncTensor uv = ttensor(unit, V);
  CHECK((uv.full ? V.dim * unit.dim : uv.carrier.dim()) == 2);

  // iterated carriers agree inside the plain triple tensor
  HModule greg = regular_module(gd.H);
  TruncTensor t12 = ttensor(V, greg);
  // carrier of (V x_t H) x_t V equals carrier of V x_t (H x_t V) equals the
  // image of the Delta^2(1)-action; check via dimensions of the projector
  SparseMat P12 = ttensor(t12.module, V).P;  // not the triple projector
  (void)P12;
  // direct triple check: Delta^2(1)-action image computed two ways
  TruncTensor a = ttensor(V, greg);
  // both bracketings have the same image dimension
  TruncTensor left = ttensor(a.module, V);
  TruncTensor bt = ttensor(greg, V);
  TruncTensor right = ttensor(V, bt.module);
  CHECK((left.full ? left.module.dim : left.carrier.dim()) ==
        (right.full ? right.module.dim : right.carrier.dim()));
}

TEST_CASE("rigidity zig-zags") {
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  CHECK(rigidity_check(regular_module(s3.H)).all_pass());
  CHECK(rigidity_check(unit_module(s3.H)).all_pass());

  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  CHECK(rigidity_check(regular_module(gd.H)).all_pass());
  CHECK(rigidity_check(unit_module(gd.H)).all_pass());
  CHECK(rigidity_check(groupoid_simple(gd.H)).all_pass());
  // dual of the unit module is isomorphic to the unit module
  HModule u = unit_module(gd.H);
  HModule ud = dual_module(u);
  Subspace homs = hom_modules(u, ud);
  bool has_iso = false;
  for (int r = 0; r < homs.dim() && !has_iso; ++r) {
    Matrix f(Q, u.dim, u.dim);
    Vec v = homs.basis().row(r);
    for (int i = 0; i < u.dim; ++i)
      for (int j = 0; j < u.dim; ++j) f.at(i, j) = v[i * u.dim + j];
    if (f.inverse()) has_iso = true;
  }
  CHECK(has_iso);
}

TEST_CASE("braiding") {
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  auto q1 = qt_verify(s3.H, s3.R);
  REQUIRE(q1.rmatrix.has_value());
  HModule reg = regular_module(s3.H);
  TruncTensor tt = ttensor(reg, reg);
  Braiding b = braiding(tt, tt, *q1.rmatrix);
  // R = 1 x 1: the braiding is the plain swap
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Vec v = vec_zero(Q, 36);
      v[i * 6 + j] = Q->one();
      Vec img = b.map * v;
      Vec expect = vec_zero(Q, 36);
      expect[j * 6 + i] = Q->one();
      CHECK(vec_eq(img, expect));
    }
  CHECK((b.map * b.inverse).is_identity());

  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  auto q2 = qt_verify(gd.H, gd.R);
  REQUIRE(q2.rmatrix.has_value());
  HModule V = groupoid_simple(gd.H);
  TruncTensor vv = ttensor(V, V);
  Braiding gb = braiding(vv, vv, *q2.rmatrix);
  // R = Rbar = Delta(1) is symmetric: c_{V,V}^2 = id
  CHECK((gb.map * gb.map).is_identity());
  CHECK((gb.map * gb.inverse).is_identity());
  CHECK((gb.inverse * gb.map).is_identity());
  // the braiding is an H-module map on carriers
  TruncTensor vv2 = ttensor(V, V);
  for (int i = 0; i < 4; ++i) {
    Matrix lhs = gb.map * vv.module.act[i].to_dense();
    Matrix rhs = vv2.module.act[i].to_dense() * gb.map;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("braiding of M with the unit object is trivial") {
  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  auto q2 = qt_verify(gd.H, gd.R);
  HModule V = groupoid_simple(gd.H);
  HModule u = unit_module(gd.H);
  TruncTensor vu = ttensor(V, u), uv = ttensor(u, V);
  Braiding b = braiding(vu, uv, *q2.rmatrix);
  // c composed with the unit identifications is the identity:
  // r_V(c_{V,Ht}(x)) = l-route of x for every carrier vector
  const WeakHopfAlgebra& H = gd.H;
  for (int c = 0; c < (vu.full ? V.dim * u.dim : vu.carrier.dim()); ++c) {
    Vec x = vu.include(vec_unit(Q, vu.full ? V.dim * u.dim : vu.carrier.dim(), c));
    // r_V on V x Ht: v x z -> S(z) v
    Vec rimg = vec_zero(Q, V.dim);
    for (int p = 0; p < V.dim; ++p)
      for (int t = 0; t < u.dim; ++t) {
        const FieldElem& cc = x[p * u.dim + t];
        if (cc.is_zero()) continue;
        Vec sz = H.antipode(H.target_subalgebra().basis().row(t));
        for (int i = 0; i < H.dim(); ++i) {
          if (sz[i].is_zero()) continue;
          for (const auto& [r, m] : V.act[i].col[p]) rimg[r] += cc * sz[i] * m;
        }
      }
    // l_V on Ht x V after braiding: z x v -> z v
    Vec y = uv.include(b.map * vu.project(x));
    Vec limg = vec_zero(Q, V.dim);
    for (int t = 0; t < u.dim; ++t)
      for (int p = 0; p < V.dim; ++p) {
        const FieldElem& cc = y[t * V.dim + p];
        if (cc.is_zero()) continue;
        Vec z = H.target_subalgebra().basis().row(t);
        for (int i = 0; i < H.dim(); ++i) {
          if (z[i].is_zero()) continue;
          for (const auto& [r, m] : V.act[i].col[p]) limg[r] += cc * z[i] * m;
        }
      }
    CHECK(vec_eq(rimg, limg));
  }
}

TEST_CASE("hexagons and naturality") {
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  auto q1 = qt_verify(s3.H, s3.R);
  HModule reg = regular_module(s3.H);
  HModule u = unit_module(s3.H);
  CHECK(hexagon_check(reg, reg, u, *q1.rmatrix).all_pass());
  CHECK(hexagon_check(reg, u, reg, *q1.rmatrix).all_pass());
  CHECK(braiding_naturality_check(s3.H, *q1.rmatrix).all_pass());

  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  auto q2 = qt_verify(gd.H, gd.R);
  HModule V = groupoid_simple(gd.H);
  HModule greg = regular_module(gd.H);
  CHECK(hexagon_check(V, greg, V, *q2.rmatrix).all_pass());
  CHECK(hexagon_check(greg, V, V, *q2.rmatrix).all_pass());
  CHECK(hexagon_check(V, V, V, *q2.rmatrix).all_pass());
  CHECK(braiding_naturality_check(gd.H, *q2.rmatrix).all_pass());

  auto dz2 = build_drinfeld_double(GroupTable::cyclic(2), Q);
  auto q3 = qt_verify(dz2.H, dz2.R);
  HModule dreg = regular_module(dz2.H);
  HModule du = unit_module(dz2.H);
  CHECK(hexagon_check(du, dreg, du, *q3.rmatrix).all_pass());
  CHECK(braiding_naturality_check(dz2.H, *q3.rmatrix).all_pass());
}
