#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "whakit/matrix.hpp"

using namespace wha;

namespace {
const Field* Q = Field::rationals();

Matrix rand_matrix(int r, int c, std::mt19937_64& rng) {
  Matrix m(Q, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      m.at(i, j) = Q->integer((long)(rng() % 7) - 3);
  return m;
}
}  // namespace

TEST_CASE("kernel basics") {
  CHECK(Matrix::identity(Q, 3).kernel().rows() == 0);
  CHECK(Matrix(Q, 2, 5).kernel().rows() == 5);

  Matrix m(Q, 2, 3);
  m.at(0, 0) = Q->one();
  m.at(0, 1) = Q->one();
  m.at(1, 2) = Q->one();
  Matrix k = m.kernel();
  REQUIRE(k.rows() == 1);
  CHECK(k.at(0, 0) == Q->one());
  CHECK(k.at(0, 1) == Q->integer(-1));
  CHECK(k.at(0, 2).is_zero());
}

TEST_CASE("rank-nullity and kernel verification on random matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    int r = 1 + (int)(rng() % 8), c = 1 + (int)(rng() % 8);
    Matrix m = rand_matrix(r, c, rng);
    Matrix k = m.kernel();
    CHECK(k.rows() + m.rank() == c);
    for (int i = 0; i < k.rows(); ++i) CHECK(vec_is_zero(m * k.row(i)));
  }
}

TEST_CASE("tall-system kernel agrees with the Gram shortcut") {
  // exercised over a cyclotomic field where the conjugate matters
  const Field* C3 = Field::cyclotomic(3);
  std::mt19937_64 rng(11);
  Matrix m(C3, 200, 6);
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 6; ++j)
      m.at(i, j) = C3->integer((long)(rng() % 3) - 1) +
                   C3->integer((long)(rng() % 3) - 1) * C3->gen();
  Matrix k = m.kernel();
  for (int i = 0; i < k.rows(); ++i) CHECK(vec_is_zero(m * k.row(i)));
  // direct (non-Gram) computation on the small transpose-free copy
  Matrix direct = m;
  std::vector<int> piv;
  int rank = direct.rref_inplace(&piv);
  CHECK(k.rows() + rank == 6);
}

TEST_CASE("subspace operations") {
  // xy-plane and yz-plane intersect in the y-axis
  Matrix xy(Q, 2, 3), yz(Q, 2, 3);
  xy.at(0, 0) = Q->one();
  xy.at(1, 1) = Q->one();
  yz.at(0, 1) = Q->one();
  yz.at(1, 2) = Q->one();
  Subspace U = Subspace::span(xy), V = Subspace::span(yz);
  Subspace inter = U.intersect(V);
  CHECK(inter.dim() == 1);
  CHECK(inter.contains(vec_unit(Q, 3, 1)));

  CHECK(U.sum(U) == U);
  CHECK(Subspace::full(Q, 3).contains(U));
  CHECK(U.dim() + V.dim() == U.sum(V).dim() + inter.dim());

  CHECK_THROWS_AS(U.sum(Subspace::zero(Q, 5)), std::invalid_argument);
  CHECK_THROWS_AS(U.intersect(Subspace::zero(Q, 5)), std::invalid_argument);

  // dimension formula on random pairs
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    Subspace A = Subspace::span(rand_matrix(1 + rng() % 4, 6, rng));
    Subspace B = Subspace::span(rand_matrix(1 + rng() % 4, 6, rng));
    CHECK(A.dim() + B.dim() == A.sum(B).dim() + A.intersect(B).dim());
    CHECK(A.sum(B).contains(A));
    CHECK(A.contains(A.intersect(B)));
  }
}

TEST_CASE("coords and lift round trip") {
  std::mt19937_64 rng(17);
  Subspace S = Subspace::span(rand_matrix(3, 7, rng));
  for (int t = 0; t < 20; ++t) {
    Vec coords = vec_zero(Q, S.dim());
    for (int i = 0; i < S.dim(); ++i)
      coords[i] = Q->integer((long)(rng() % 9) - 4);
    Vec v = S.lift(coords);
    auto back = S.coords_of(v);
    REQUIRE(back.has_value());
    CHECK(vec_eq(*back, coords));
  }
  CHECK_FALSE(S.dim() == 7);
}

TEST_CASE("solve and inverse") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    Matrix m = rand_matrix(4, 4, rng);
    auto inv = m.inverse();
    if (inv) {
      CHECK((m * *inv).is_identity());
      CHECK((*inv * m).is_identity());
    } else {
      CHECK(m.rank() < 4);
    }
    Vec b = rand_matrix(4, 1, rng).col(0);
    auto x = m.solve(b);
    if (x) CHECK(vec_eq(m * *x, b));
  }
  // inconsistent system
  Matrix m(Q, 2, 1);
  m.at(0, 0) = Q->one();
  m.at(1, 0) = Q->one();
  Vec b{Q->one(), Q->integer(2)};
  CHECK_FALSE(m.solve(b).has_value());
}

TEST_CASE("minimal polynomials") {
  CHECK(fpoly_str(min_poly(Matrix::identity(Q, 4))) == "(-1) + (1)*x");

  Matrix d(Q, 2, 2);
  d.at(0, 0) = Q->one();
  d.at(1, 1) = Q->integer(2);
  FPoly p = min_poly(d);  // (x-1)(x-2) = x^2 - 3x + 2
  REQUIRE(fpoly_deg(p) == 2);
  CHECK(p[0] == Q->integer(2));
  CHECK(p[1] == Q->integer(-3));
  CHECK(p[2].is_one());

  Matrix nil(Q, 2, 2);
  nil.at(0, 1) = Q->one();
  FPoly np = min_poly(nil);
  REQUIRE(fpoly_deg(np) == 2);
  CHECK(np[0].is_zero());
  CHECK(np[1].is_zero());

  // annihilation and minimality on random matrices
  std::mt19937_64 rng(29);
  for (int t = 0; t < 15; ++t) {
    Matrix m = rand_matrix(4, 4, rng);
    FPoly mp = min_poly(m);
    // exact annihilation
    Matrix acc(Q, 4, 4);
    Matrix power = Matrix::identity(Q, 4);
    for (int i = 0; i <= fpoly_deg(mp); ++i) {
      acc = acc + power.scaled(mp[i]);
      power = power * m;
    }
    CHECK(acc.is_zero());
    // minimality: powers up to deg-1 are linearly independent
    int deg = fpoly_deg(mp);
    Matrix flat(Q, deg, 16);
    power = Matrix::identity(Q, 4);
    for (int i = 0; i < deg; ++i) {
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) flat.at(i, r * 4 + c) = power.at(r, c);
      power = power * m;
    }
    CHECK(flat.rank() == deg);
  }
}

TEST_CASE("tensor leg helpers") {
  std::vector<int> dims{2, 3, 2};
  for (int flat = 0; flat < 12; ++flat) {
    auto idx = tensor_unrank_index(dims, flat);
    CHECK(tensor_rank_index(dims, idx) == flat);
  }
  SparseMat m(Q, 3, 3);
  m.col[0].emplace_back(1, Q->one());
  m.col[1].emplace_back(2, Q->integer(2));
  m.col[2].emplace_back(0, Q->one());
  SparseVec v{{tensor_rank_index(dims, {1, 0, 1}), Q->one()}};
  SparseVec out = apply_leg(m, 1, dims, v);
  REQUIRE(out.size() == 1);
  CHECK(out[0].first == tensor_rank_index(dims, {1, 1, 1}));
  SparseVec sw = swap_legs(0, 2, dims, v);
  CHECK(sw[0].first == tensor_rank_index(dims, {1, 0, 1}));
  SparseVec v2{{tensor_rank_index(dims, {0, 2, 1}), Q->one()}};
  SparseVec sw2 = swap_legs(0, 2, dims, v2);
  std::vector<int> odims{2, 3, 2};
  CHECK(sw2[0].first == tensor_rank_index(odims, {1, 2, 0}));
}

TEST_CASE("commutant subspace") {
  // commutant of a regular representation basis of M2(Q): the center is 1-dim
  // here we take the two matrix units E11, E12 as generators; the commutant
  // of {E11, E12, E21, E22} is the scalars
  std::vector<SparseMat> mats;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      SparseMat e(Q, 2, 2);
      e.col[c].emplace_back(r, Q->one());
      mats.push_back(e);
    }
  Subspace comm = commutant_subspace(Q, mats);
  REQUIRE(comm.dim() == 1);
  Vec id = vec_zero(Q, 4);
  id[0] = id[3] = Q->one();
  CHECK(comm.contains(id));
}
