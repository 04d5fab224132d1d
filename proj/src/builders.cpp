#include "whakit/builders.hpp"

#include <array>
#include <stdexcept>

namespace wha {

Report GroupTable::verify() const {
  Report rep;
  bool assoc = true, ident = true, invs = true;
  std::string wa, wi, wv;
  for (int i = 0; i < order && assoc; ++i)
    for (int j = 0; j < order && assoc; ++j)
      for (int k = 0; k < order && assoc; ++k)
        if (mul[mul[i][j]][k] != mul[i][mul[j][k]]) {
          assoc = false;
          wa = std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(k);
        }
  if (identity < 0 || identity >= order) {
    ident = false;
  } else {
    for (int i = 0; i < order && ident; ++i)
      if (mul[identity][i] != i || mul[i][identity] != i) {
        ident = false;
        wi = std::to_string(i);
      }
  }
  for (int i = 0; i < order && invs; ++i)
    if (inverse[i] < 0 || mul[i][inverse[i]] != identity ||
        mul[inverse[i]][i] != identity) {
      invs = false;
      wv = std::to_string(i);
    }
  rep.add("table.associativity", assoc, wa);
  rep.add("table.identity", ident, wi);
  rep.add("table.inverses", invs, wv);
  return rep;
}

GroupTable GroupTable::trivial() {
  GroupTable g;
  g.order = 1;
  g.mul = {{0}};
  g.inverse = {0};
  g.identity = 0;
  g.labels = {"e"};
  return g;
}

GroupTable GroupTable::cyclic(int n) {
  GroupTable g;
  g.order = n;
  g.mul.assign(n, std::vector<int>(n));
  g.inverse.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.mul[i][j] = (i + j) % n;
    g.inverse[i] = (n - i) % n;
    g.labels.push_back("g" + std::to_string(i));
  }
  g.identity = 0;
  return g;
}

GroupTable GroupTable::symmetric3() {
  // permutations of {0,1,2} in one-line notation
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::vector<std::string> names = {"e", "r", "r2", "s01", "s12", "s02"};
  GroupTable g;
  g.order = 6;
  g.mul.assign(6, std::vector<int>(6, -1));
  g.inverse.assign(6, -1);
  g.identity = 0;
  g.labels = names;
  auto find = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    return -1;
  };
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> comp{};
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
      g.mul[i][j] = find(comp);
    }
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (g.mul[i][j] == 0) g.inverse[i] = j;
  return g;
}

GroupTable GroupTable::klein4() {
  GroupTable g;
  g.order = 4;
  g.mul = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  g.inverse = {0, 1, 2, 3};
  g.identity = 0;
  g.labels = {"e", "a", "b", "ab"};
  return g;
}

Report GroupoidTable::verify() const {
  Report rep;
  bool st = true, comp_ok = true, id_ok = true, inv_ok = true;
  std::string w;
  for (int i = 0; i < morphisms && st; ++i)
    if (source[i] < 0 || source[i] >= objects || target[i] < 0 ||
        target[i] >= objects) {
      st = false;
      w = std::to_string(i);
    }
  rep.add("table.source_target", st, w);
  w.clear();
  // compose[i][j] defined iff source(i) == target(j)
  for (int i = 0; i < morphisms && comp_ok; ++i)
    for (int j = 0; j < morphisms && comp_ok; ++j) {
      bool defined = compose[i][j] >= 0;
      bool should = source[i] == target[j];
      if (defined != should) {
        comp_ok = false;
        w = std::to_string(i) + "," + std::to_string(j);
      } else if (defined) {
        int k = compose[i][j];
        if (source[k] != source[j] || target[k] != target[i]) {
          comp_ok = false;
          w = std::to_string(i) + "," + std::to_string(j);
        }
      }
    }
  // associativity where defined
  for (int i = 0; i < morphisms && comp_ok; ++i)
    for (int j = 0; j < morphisms && comp_ok; ++j) {
      if (compose[i][j] < 0) continue;
      for (int k = 0; k < morphisms && comp_ok; ++k) {
        if (compose[j][k] < 0) continue;
        if (compose[compose[i][j]][k] != compose[i][compose[j][k]]) {
          comp_ok = false;
          w = std::to_string(i) + "," + std::to_string(j) + "," +
              std::to_string(k);
        }
      }
    }
  rep.add("table.composition", comp_ok, w);
  w.clear();
  for (int x = 0; x < objects && id_ok; ++x) {
    int e = identity_of[x];
    if (e < 0 || source[e] != x || target[e] != x) {
      id_ok = false;
      w = std::to_string(x);
      break;
    }
  }
  for (int i = 0; i < morphisms && id_ok; ++i) {
    if (compose[identity_of[target[i]]][i] != i ||
        compose[i][identity_of[source[i]]] != i) {
      id_ok = false;
      w = std::to_string(i);
    }
  }
  rep.add("table.identities", id_ok, w);
  w.clear();
  for (int i = 0; i < morphisms && inv_ok; ++i) {
    int v = inverse[i];
    if (v < 0 || compose[v][i] != identity_of[source[i]] ||
        compose[i][v] != identity_of[target[i]]) {
      inv_ok = false;
      w = std::to_string(i);
    }
  }
  rep.add("table.inverses", inv_ok, w);
  return rep;
}

GroupoidTable GroupoidTable::indiscrete(int objects) {
  GroupoidTable g;
  g.objects = objects;
  g.morphisms = objects * objects;  // morphism (x <- y) for each pair
  auto idx = [objects](int tgt, int src) { return tgt * objects + src; };
  g.source.resize(g.morphisms);
  g.target.resize(g.morphisms);
  g.labels.resize(g.morphisms);
  for (int t = 0; t < objects; ++t)
    for (int s = 0; s < objects; ++s) {
      g.source[idx(t, s)] = s;
      g.target[idx(t, s)] = t;
      g.labels[idx(t, s)] = "m" + std::to_string(t) + std::to_string(s);
    }
  g.compose.assign(g.morphisms, std::vector<int>(g.morphisms, -1));
  for (int t = 0; t < objects; ++t)
    for (int m = 0; m < objects; ++m)
      for (int s = 0; s < objects; ++s)
        g.compose[idx(t, m)][idx(m, s)] = idx(t, s);
  g.identity_of.resize(objects);
  for (int x = 0; x < objects; ++x) g.identity_of[x] = idx(x, x);
  g.inverse.resize(g.morphisms);
  for (int t = 0; t < objects; ++t)
    for (int s = 0; s < objects; ++s) g.inverse[idx(t, s)] = idx(s, t);
  return g;
}

GroupoidTable GroupoidTable::discrete(int objects) {
  GroupoidTable g;
  g.objects = objects;
  g.morphisms = objects;
  g.source.resize(objects);
  g.target.resize(objects);
  g.identity_of.resize(objects);
  g.inverse.resize(objects);
  g.compose.assign(objects, std::vector<int>(objects, -1));
  for (int x = 0; x < objects; ++x) {
    g.source[x] = g.target[x] = x;
    g.identity_of[x] = x;
    g.inverse[x] = x;
    g.compose[x][x] = x;
    g.labels.push_back("id" + std::to_string(x));
  }
  return g;
}

GroupoidTable GroupoidTable::one_object(const GroupTable& grp) {
  GroupoidTable g;
  g.objects = 1;
  g.morphisms = grp.order;
  g.source.assign(grp.order, 0);
  g.target.assign(grp.order, 0);
  g.compose = grp.mul;
  g.identity_of = {grp.identity};
  g.inverse = grp.inverse;
  g.labels = grp.labels;
  return g;
}

BuiltAlgebra build_group_algebra(const GroupTable& g, const Field* f) {
  if (!g.verify().all_pass())
    throw std::invalid_argument("invalid group table");
  const int n = g.order;
  BuiltAlgebra out{WeakHopfAlgebra(f, n), vec_zero(f, n * n), g.labels};
  WeakHopfAlgebra& H = out.H;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) H.add_mult(i, j, g.mul[i][j], f->one());
    H.add_comult(i, i, i, f->one());
    H.set_counit(i, f->one());
    H.set_antipode(g.inverse[i], i, f->one());
  }
  H.set_unit(g.identity, f->one());
  H.finalize();
  out.R[g.identity * n + g.identity] = f->one();
  return out;
}

BuiltAlgebra build_groupoid_algebra(const GroupoidTable& g, const Field* f) {
  if (!g.verify().all_pass())
    throw std::invalid_argument("invalid groupoid table");
  const int n = g.morphisms;
  BuiltAlgebra out{WeakHopfAlgebra(f, n), vec_zero(f, n * n), g.labels};
  WeakHopfAlgebra& H = out.H;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (g.compose[i][j] >= 0) H.add_mult(i, j, g.compose[i][j], f->one());
    H.add_comult(i, i, i, f->one());
    H.set_counit(i, f->one());
    H.set_antipode(g.inverse[i], i, f->one());
  }
  for (int x = 0; x < g.objects; ++x) H.set_unit(g.identity_of[x], f->one());
  H.finalize();
  // R = Delta(1) = sum of id_x x id_x
  for (int x = 0; x < g.objects; ++x) {
    int e = g.identity_of[x];
    out.R[e * n + e] = f->one();
  }
  return out;
}

BuiltAlgebra build_drinfeld_double(const GroupTable& g, const Field* f) {
  if (!g.verify().all_pass())
    throw std::invalid_argument("invalid group table");
  const int m = g.order;
  const int n = m * m;  // basis delta_a x g at index a*m + g
  auto idx = [m](int a, int gi) { return a * m + gi; };
  BuiltAlgebra out{WeakHopfAlgebra(f, n), vec_zero(f, n * n), {}};
  WeakHopfAlgebra& H = out.H;
  out.basis_labels.resize(n);
  for (int a = 0; a < m; ++a)
    for (int gi = 0; gi < m; ++gi)
      out.basis_labels[idx(a, gi)] =
          "d" + (g.labels.empty() ? std::to_string(a) : g.labels[a]) + "." +
          (g.labels.empty() ? std::to_string(gi) : g.labels[gi]);
  // (delta_a x g)(delta_b x h) = [a = g b g^-1] delta_a x gh
  for (int a = 0; a < m; ++a)
    for (int gi = 0; gi < m; ++gi)
      for (int b = 0; b < m; ++b) {
        int conj = g.mul[g.mul[gi][b]][g.inverse[gi]];
        if (conj != a) continue;
        for (int h = 0; h < m; ++h)
          H.add_mult(idx(a, gi), idx(b, h), idx(a, g.mul[gi][h]), f->one());
      }
  // Delta(delta_a x g) = sum_{bc = a} (delta_b x g) x (delta_c x g)
  for (int a = 0; a < m; ++a)
    for (int gi = 0; gi < m; ++gi)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          if (g.mul[b][c] == a)
            H.add_comult(idx(a, gi), idx(b, gi), idx(c, gi), f->one());
  // eps(delta_a x g) = [a = e]; unit = sum_a delta_a x e
  for (int gi = 0; gi < m; ++gi) H.set_counit(idx(g.identity, gi), f->one());
  for (int a = 0; a < m; ++a) H.set_unit(idx(a, g.identity), f->one());
  // S(delta_a x g) = delta_{g^-1 a^-1 g} x g^-1
  for (int a = 0; a < m; ++a)
    for (int gi = 0; gi < m; ++gi) {
      int ai = g.inverse[a];
      int tgt = g.mul[g.mul[g.inverse[gi]][ai]][gi];
      H.set_antipode(idx(tgt, g.inverse[gi]), idx(a, gi), f->one());
    }
  H.finalize();
  // R = sum_g (delta_g x e) x (1 x g) = sum_{g,a} (delta_g x e) x (delta_a x g)
  for (int gi = 0; gi < m; ++gi)
    for (int a = 0; a < m; ++a)
      out.R[idx(gi, g.identity) * n + idx(a, gi)] = f->one();
  return out;
}

}  // namespace wha
