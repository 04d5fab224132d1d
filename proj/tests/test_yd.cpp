#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>

#include "whakit/builders.hpp"
#include "whakit/yd.hpp"

using namespace wha;

namespace {

// Setup owns the algebra and structures pointing into it, so it lives on
// the heap and is never moved after construction.
struct Setup {
  BuiltAlgebra built;
  RMatrix R;
  BraidedGroup bg;
  std::vector<SubcoalgebraComponent> components;
};

std::unique_ptr<Setup> make_setup(BuiltAlgebra b) {
  auto s = std::make_unique<Setup>();
  s->built = std::move(b);
  auto qt = qt_verify(s->built.H, s->built.R);
  REQUIRE(qt.rmatrix.has_value());
  s->R = *qt.rmatrix;
  auto bb = braided_group_build(s->built.H, s->R);
  REQUIRE(bb.group.has_value());
  s->bg = std::move(*bb.group);
  auto dec = decompose_braided_group(s->bg, 256, mpz_class(1000000), 7);
  REQUIRE(dec.status == SplitStatus::Ok);
  s->components = std::move(dec.components);
  return s;
}

// Conjugacy-class Yetter-Drinfeld modules of a group algebra built from a
// class representative, a transversal, and a centralizer representation;
// the independent construction used to cross-check the enumeration.
struct CentralizerRep {
  std::vector<int> elements;           // centralizer of the representative
  std::vector<Matrix> rho;             // one matrix per centralizer element
  int dim = 0;
};

YDModule class_yd_module(const WeakHopfAlgebra& H, const GroupTable& g,
                         int rep, const CentralizerRep& cr) {
  const Field* f = H.field();
  const int n = g.order;
  // class elements and a transversal t_x with x = t_x c t_x^{-1}
  std::vector<int> cls;
  std::vector<int> trans;
  for (int h = 0; h < n; ++h) {
    int y = g.mul[g.mul[h][rep]][g.inverse[h]];
    bool seen = false;
    for (int c : cls)
      if (c == y) seen = true;
    if (!seen) {
      cls.push_back(y);
      trans.push_back(h);
    }
  }
  auto cz_index = [&](int z) {
    for (size_t i = 0; i < cr.elements.size(); ++i)
      if (cr.elements[i] == z) return (int)i;
    return -1;
  };
  const int k = (int)cls.size();
  const int dv = cr.dim;
  YDModule out;
  out.mod = HModule(&H, k * dv);
  for (int gi = 0; gi < n; ++gi) {
    SparseMat a(f, k * dv, k * dv);
    for (int xi = 0; xi < k; ++xi) {
      int y = g.mul[g.mul[gi][cls[xi]]][g.inverse[gi]];
      int yi = -1;
      for (int j = 0; j < k; ++j)
        if (cls[j] == y) yi = j;
      // cocycle t_y^{-1} g t_x lies in the centralizer
      int z = g.mul[g.mul[g.inverse[trans[yi]]][gi]][trans[xi]];
      int zi = cz_index(z);
      REQUIRE(zi >= 0);
      for (int v = 0; v < dv; ++v)
        for (int w = 0; w < dv; ++w) {
          const FieldElem& c = cr.rho[zi].at(w, v);
          if (!c.is_zero()) a.col[xi * dv + v].emplace_back(yi * dv + w, c);
        }
    }
    out.mod.act[gi] = std::move(a);
  }
  out.coaction = Matrix(f, n * k * dv, k * dv);
  for (int xi = 0; xi < k; ++xi)
    for (int v = 0; v < dv; ++v)
      out.coaction.at(cls[xi] * (k * dv) + xi * dv + v, xi * dv + v) = f->one();
  return out;
}

std::vector<YDModule> dpr_simples_s3(const WeakHopfAlgebra& H,
                                     const GroupTable& g) {
  const Field* f = H.field();
  std::vector<YDModule> out;
  auto onedim = [&](const std::vector<int>& elts,
                    const std::vector<FieldElem>& chars) {
    CentralizerRep cr;
    cr.elements = elts;
    cr.dim = 1;
    for (const auto& c : chars) {
      Matrix m(f, 1, 1);
      m.at(0, 0) = c;
      cr.rho.push_back(m);
    }
    return cr;
  };
  // class {e}: centralizer S3 with irreps 1, sign, standard (dim 2)
  std::vector<int> all{0, 1, 2, 3, 4, 5};
  out.push_back(class_yd_module(
      H, g, 0, onedim(all, std::vector<FieldElem>(6, f->one()))));
  {
    std::vector<FieldElem> sgn;
    for (int i = 0; i < 6; ++i) sgn.push_back(f->integer(i < 3 ? 1 : -1));
    out.push_back(class_yd_module(H, g, 0, onedim(all, sgn)));
  }
  {
    CentralizerRep std2;
    std2.elements = all;
    std2.dim = 2;
    // standard representation: r -> [[0,-1],[1,-1]], s01 -> [[0,1],[1,0]]
    Matrix R(f, 2, 2), S(f, 2, 2), I = Matrix::identity(f, 2);
    R.at(0, 1) = f->integer(-1);
    R.at(1, 0) = f->one();
    R.at(1, 1) = f->integer(-1);
    S.at(0, 1) = f->one();
    S.at(1, 0) = f->one();
    std2.rho = {I, R, R * R, S, S * R, R * S};
    // sanity: representation property against the table
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        REQUIRE(std2.rho[i] * std2.rho[j] == std2.rho[g.mul[i][j]]);
    out.push_back(class_yd_module(H, g, 0, std2));
  }
  // class of 3-cycles (rep r = 1): centralizer {e, r, r2}, three characters
  REQUIRE(H.field()->kind() == FieldKind::Cyclotomic);
  FieldElem w = f->gen();
  for (int p = 0; p < 3; ++p)
    out.push_back(class_yd_module(
        H, g, 1,
        onedim({0, 1, 2}, {f->one(), w.pow(p), w.pow(2 * p)})));
  // class of transpositions (rep s01 = 3): centralizer {e, s01}, two signs
  for (int sign : {1, -1})
    out.push_back(class_yd_module(
        H, g, 3, onedim({0, 3}, {f->one(), f->integer(sign)})));
  return out;
}

}  // namespace

TEST_CASE("canonical Yetter-Drinfeld structures verify") {
  const Field* Q = Field::rationals();
  auto s_ptr = make_setup(build_group_algebra(GroupTable::symmetric3(), Q));
  Setup& s = *s_ptr;
  CHECK(yd_verify(yd_braided_group(s.bg)).all_pass());
  CHECK(yd_verify(yd_unit(s.built.H)).all_pass());
  for (const auto& c : s.components) {
    CHECK(yd_verify(yd_component(s.bg, c)).all_pass());
    CHECK(bcomod_verify(bcomod_component(s.bg, c), s.bg).all_pass());
  }

  auto g_ptr = make_setup(build_groupoid_algebra(GroupoidTable::indiscrete(2), Q));
  Setup& g = *g_ptr;
  CHECK(yd_verify(yd_braided_group(g.bg)).all_pass());
  CHECK(yd_verify(yd_unit(g.built.H)).all_pass());
  CHECK(yd_verify(yd_component(g.bg, g.components[0])).all_pass());
}

TEST_CASE("round trips are the identity on coactions") {
  const Field* Q = Field::rationals();
  for (auto built :
       {build_group_algebra(GroupTable::symmetric3(), Q),
        build_groupoid_algebra(GroupoidTable::indiscrete(2), Q)}) {
    auto s_ptr = make_setup(std::move(built));
  Setup& s = *s_ptr;
    std::vector<YDModule> corpus;
    for (const auto& c : s.components)
      corpus.push_back(yd_component(s.bg, c));
    corpus.push_back(yd_braided_group(s.bg));
    corpus.push_back(yd_unit(s.built.H));
    for (size_t i = 0; i + 1 < s.components.size(); ++i)
      corpus.push_back(yd_direct_sum(corpus[i], corpus[i + 1]));
    for (const auto& m : corpus) {
      BComodule bc = to_bcomod(m, s.bg);
      YDModule back = to_yd(bc, s.bg);
      CHECK(back.coaction == m.coaction);
      BComodule bc2 = to_bcomod(back, s.bg);
      CHECK(bc2.coaction == bc.coaction);
    }
    // starting from the comodule side: (B, Delta_B) itself
    BComodule bb;
    bb.mod = s.bg.adjoint;
    bb.coaction = s.bg.DeltaB;
    CHECK(bcomod_verify(bb, s.bg).all_pass());
    YDModule y = to_yd(bb, s.bg);
    CHECK(yd_verify(y).all_pass());
    CHECK(to_bcomod(y, s.bg).coaction == bb.coaction);
  }
}

TEST_CASE("with R = 1 x 1 the conversions are the identity") {
  const Field* Q = Field::rationals();
  auto s_ptr = make_setup(build_group_algebra(GroupTable::symmetric3(), Q));
  Setup& s = *s_ptr;
  for (const auto& c : s.components) {
    YDModule y = yd_component(s.bg, c);
    BComodule bc = to_bcomod(y, s.bg);
    // B = H with the identity basis, so the coordinates agree entrywise
    CHECK(bc.coaction == y.coaction);
  }
}

TEST_CASE("Schur certificates for the kS3 components") {
  const Field* Q = Field::rationals();
  auto s_ptr = make_setup(build_group_algebra(GroupTable::symmetric3(), Q));
  Setup& s = *s_ptr;
  std::vector<YDModule> comps;
  for (const auto& c : s.components) comps.push_back(yd_component(s.bg, c));
  for (size_t i = 0; i < comps.size(); ++i) {
    CHECK(yd_is_simple(comps[i]));
    for (size_t j = 0; j < comps.size(); ++j)
      CHECK(hom_yd(comps[i], comps[j]).dim() == (i == j ? 1 : 0));
  }
  YDModule z = yd_zero(s.built.H);
  CHECK(hom_yd(z, comps[0]).dim() == 0);
  CHECK_FALSE(yd_is_simple(z));
  YDModule sum = yd_direct_sum(comps[0], comps[1]);
  CHECK(yd_verify(sum).all_pass());
  CHECK(hom_yd(sum, sum).dim() == 2);
  CHECK_FALSE(yd_is_simple(sum));
}

TEST_CASE("flipped coaction mutant fails with a witness") {
  const Field* Q = Field::rationals();
  auto s3 = build_group_algebra(GroupTable::symmetric3(), Q);
  YDModule bad;
  bad.mod = regular_module(s3.H);
  bad.coaction = Matrix(Q, 36, 6);
  for (int j = 0; j < 6; ++j) bad.coaction.at(j * 6 + j, j) = Q->one();
  Report r = yd_verify(bad);
  const CheckResult* c = r.find("yd.compatibility");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
  CHECK_FALSE(c->witness.empty());
}

TEST_CASE("DPR simples of kS3: oracle modules verify, are simple, and "
          "give the semisimple expansion") {
  const Field* C3 = Field::cyclotomic(3);
  GroupTable table = GroupTable::symmetric3();
  auto s_ptr = make_setup(build_group_algebra(table, C3));
  Setup& s = *s_ptr;
  std::vector<YDModule> simples = dpr_simples_s3(s.built.H, table);
  REQUIRE(simples.size() == 8);
  std::vector<int> dims;
  for (const auto& v : simples) {
    CHECK(yd_verify(v).all_pass());
    CHECK(yd_is_simple(v));
    dims.push_back(v.dim());
  }
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{1, 1, 2, 2, 2, 2, 3, 3});
  // pairwise non-isomorphic
  for (size_t i = 0; i < simples.size(); ++i)
    for (size_t j = i + 1; j < simples.size(); ++j)
      CHECK(hom_yd(simples[i], simples[j]).dim() == 0);
  // semisimple expansion: sum over simples of dim Hom(V, M) * dim V = dim M
  std::vector<YDModule> corpus;
  for (const auto& c : s.components) corpus.push_back(yd_component(s.bg, c));
  corpus.push_back(yd_braided_group(s.bg));
  corpus.push_back(yd_unit(s.built.H));
  corpus.push_back(yd_direct_sum(corpus[0], corpus[1]));
  for (const auto& m : corpus) {
    long total = 0;
    for (const auto& v : simples)
      total += (long)hom_yd(v, m).dim() * v.dim();
    CHECK(total == m.dim());
  }
}
