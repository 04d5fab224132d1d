#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "whakit/braided.hpp"
#include "whakit/builders.hpp"

using namespace wha;

namespace {
const Field* Q = Field::rationals();

BraidedGroup make(const BuiltAlgebra& built) {
  auto qt = qt_verify(built.H, built.R);
  REQUIRE(qt.rmatrix.has_value());
  auto bb = braided_group_build(built.H, *qt.rmatrix);
  REQUIRE(bb.report.all_pass());
  REQUIRE(bb.group.has_value());
  return *bb.group;
}

// conjugacy classes straight from the multiplication table
std::vector<std::vector<int>> conjugacy_classes(const GroupTable& g) {
  std::vector<std::vector<int>> classes;
  std::vector<bool> seen(g.order, false);
  for (int x = 0; x < g.order; ++x) {
    if (seen[x]) continue;
    std::vector<int> cls;
    for (int h = 0; h < g.order; ++h) {
      int y = g.mul[g.mul[h][x]][g.inverse[h]];
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(cls);
  }
  return classes;
}
}  // namespace

TEST_CASE("centralizer of H_s") {
  // Hopf algebra: H_s = k, so B = H
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  CHECK(centralizer_Hs(s3.H).dim() == 6);
  // trivial algebra: B = k
  auto tg = build_group_algebra(GroupTable::trivial(), Q);
  CHECK(centralizer_Hs(tg.H).dim() == 1);
  // 2-object indiscrete groupoid: only the identities commute with H_s
  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  Subspace B = centralizer_Hs(gd.H);
  CHECK(B.dim() == 2);
  // hand check: the morphism m01 does not commute with id_0 = m00
  {
    Vec f = vec_unit(Q, 4, 1);   // m01
    Vec e = vec_unit(Q, 4, 0);   // id at object 0
    CHECK_FALSE(vec_eq(gd.H.mul(f, e), gd.H.mul(e, f)));
    CHECK_FALSE(B.contains(f));
    CHECK(B.contains(vec_unit(Q, 4, 0)));
    CHECK(B.contains(vec_unit(Q, 4, 3)));
  }
}

TEST_CASE("group algebra with R = 1 x 1: the braided structure collapses") {
  for (auto table : {GroupTable::symmetric3(), GroupTable::cyclic(3),
                     GroupTable::klein4()}) {
    auto built = build_group_algebra(table, Q);
    BraidedGroup bg = make(built);
    const int n = built.H.dim();
    REQUIRE(bg.dim == n);
    REQUIRE(bg.carrier.basis().is_identity());
    // Delta_B = Delta and S_B = S entrywise
    for (int k = 0; k < n; ++k)
      CHECK(vec_eq(bg.DeltaB.col(k), built.H.comul(vec_unit(Q, n, k))));
    CHECK(bg.SB == built.H.antipode_matrix());
    // m_B is the multiplication of H
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        CHECK(vec_eq(bg.mB.col(p * n + q),
                     built.H.mul(vec_unit(Q, n, p), vec_unit(Q, n, q))));
    CHECK(braided_group_verify(bg).all_pass());
  }
}

TEST_CASE("u_B is the inclusion of H_t") {
  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  BraidedGroup bg = make(gd);
  const Subspace& Ht = gd.H.target_subalgebra();
  for (int j = 0; j < Ht.dim(); ++j) {
    Vec z = Ht.basis().row(j);
    Vec img = bg.b_lift(bg.uB.col(j));
    CHECK(vec_eq(img, z));
  }
}

TEST_CASE("groupoid braided group") {
  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  BraidedGroup bg = make(gd);
  CHECK(bg.dim == 2);
  CHECK(braided_group_verify(bg).all_pass());
  // Delta_B(id_x) = id_x x id_x (hand evaluation with R = Delta(1))
  for (int k = 0; k < 2; ++k) {
    Vec d = bg.DeltaB.col(k);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        CHECK(d[p * 2 + q] ==
              ((p == k && q == k) ? Q->one() : Q->zero()));
  }
}

TEST_CASE("decomposition of kS3 matches brute-force conjugacy classes") {
  GroupTable table = GroupTable::symmetric3();
  auto s3 = build_group_algebra(table, Q);
  BraidedGroup bg = make(s3);
  DecomposeResult dec = decompose_braided_group(bg, 256, mpz_class(1000000), 7);
  REQUIRE(dec.status == SplitStatus::Ok);
  REQUIRE(dec.report.all_pass());
  auto classes = conjugacy_classes(table);
  REQUIRE(dec.components.size() == classes.size());
  CHECK(dec.component_dims() == std::vector<int>{1, 2, 3});
  // subspace equality with the class spans (B coordinates = H coordinates)
  for (const auto& cls : classes) {
    Matrix rows(Q, (int)cls.size(), 6);
    for (size_t i = 0; i < cls.size(); ++i)
      rows.set_row((int)i, vec_unit(Q, 6, cls[i]));
    Subspace span = Subspace::span(rows);
    bool found = false;
    for (const auto& comp : dec.components)
      if (comp.space == span) found = true;
    CHECK(found);
  }
}

TEST_CASE("decomposition edge cases") {
  // trivial group: one 1-dimensional component
  auto tg = build_group_algebra(GroupTable::trivial(), Q);
  BraidedGroup bt = make(tg);
  auto dt = decompose_braided_group(bt, 256, mpz_class(1000000), 7);
  REQUIRE(dt.status == SplitStatus::Ok);
  CHECK(dt.component_dims() == std::vector<int>{1});

  // 2-object indiscrete groupoid: the two simple subcoalgebras merge under
  // conjugation by the connecting morphism
  auto gd = build_groupoid_algebra(GroupoidTable::indiscrete(2), Q);
  BraidedGroup bg = make(gd);
  auto dg = decompose_braided_group(bg, 256, mpz_class(1000000), 7);
  REQUIRE(dg.status == SplitStatus::Ok);
  REQUIRE(dg.components.size() == 1);
  CHECK(dg.components[0].space.dim() == 2);

  // 2-object discrete groupoid: H = k x k, adjoint action trivial, r = 2
  auto dd = build_groupoid_algebra(GroupoidTable::discrete(2), Q);
  BraidedGroup bd = make(dd);
  CHECK(bd.dim == 2);
  auto d2 = decompose_braided_group(bd, 256, mpz_class(1000000), 7);
  REQUIRE(d2.status == SplitStatus::Ok);
  CHECK(d2.component_dims() == std::vector<int>{1, 1});
}

TEST_CASE("D(S3): honest NotSplit over Q, splits over Q(zeta3)") {
  auto ds3q = build_drinfeld_double(GroupTable::symmetric3(), Q);
  BraidedGroup bq = make(ds3q);
  auto dq = decompose_braided_group(bq, 256, mpz_class(1000000), 7);
  CHECK(dq.status == SplitStatus::NotSplit);
  CHECK_FALSE(dq.detail.empty());

  const Field* C3 = Field::cyclotomic(3);
  auto ds3 = build_drinfeld_double(GroupTable::symmetric3(), C3);
  BraidedGroup bc = make(ds3);
  auto dc = decompose_braided_group(bc, 256, mpz_class(1000000), 7);
  REQUIRE(dc.status == SplitStatus::Ok);
  REQUIRE(dc.report.all_pass());
  // components biject with the simple modules of D(S3) and have the squared
  // dimensions {1,1,2,2,2,2,3,3}^2
  CHECK(dc.component_dims() ==
        std::vector<int>{1, 1, 4, 4, 4, 4, 9, 9});
}

TEST_CASE("D(Z2) braided group verifies and decomposes") {
  auto dz2 = build_drinfeld_double(GroupTable::cyclic(2), Q);
  BraidedGroup bg = make(dz2);
  CHECK(braided_group_verify(bg).all_pass());
  auto dec = decompose_braided_group(bg, 256, mpz_class(1000000), 7);
  REQUIRE(dec.status == SplitStatus::Ok);
  // D(Z2) has four 1-dimensional simples; B decomposes into 4 lines
  CHECK(dec.component_dims() == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("flipped comultiplication legs break the bialgebra law") {
  auto ds3 = build_drinfeld_double(GroupTable::symmetric3(), Q);
  BraidedGroup bg = make(ds3);
  const int m = bg.dim;
  Matrix flipped(Q, m * m, m);
  for (int k = 0; k < m; ++k)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        flipped.at(q * m + p, k) = bg.DeltaB.at(p * m + q, k);
  bg.DeltaB = flipped;
  Report rep = braided_group_verify(bg);
  const CheckResult* c = rep.find("bg.bialgebra_law");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
  CHECK_FALSE(c->witness.empty());
}

TEST_CASE("dual algebra of the braided group") {
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  BraidedGroup bg = make(s3);
  AssocAlgebra dual = dual_algebra(bg);
  CHECK(dual.verify().all_pass());
  // for a group algebra the dual of (B, Delta) is the function algebra:
  // commutative, semisimple, all blocks one-dimensional
  CHECK(dual.is_commutative());
  CHECK(dual.trace_radical_dim() == 0);
  CHECK(dual.center().dim() == 6);
}
