// Builders for the verification corpus: group algebras, groupoid algebras,
// and Drinfeld doubles of finite groups.  Builders only assemble structure
// constants; validity is established by the same axiom suites users run.

#pragma once

#include <string>
#include <vector>

#include "whakit/wha.hpp"

namespace wha {

struct GroupTable {
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[i][j] = index of g_i g_j
  std::vector<int> inverse;
  int identity = -1;
  std::vector<std::string> labels;

  Report verify() const;  // associativity, identity, inverses
  static GroupTable trivial();
  static GroupTable cyclic(int n);
  static GroupTable symmetric3();
  static GroupTable klein4();
};

struct GroupoidTable {
  int objects = 0;
  int morphisms = 0;
  std::vector<int> source, target;
  std::vector<std::vector<int>> compose;  // compose[i][j] = i after j, or -1
  std::vector<int> identity_of;           // per object
  std::vector<int> inverse;
  std::vector<std::string> labels;

  Report verify() const;
  /// The groupoid with the given objects and exactly one morphism between
  /// any two (indiscrete); its algebra is a matrix algebra.
  static GroupoidTable indiscrete(int objects);
  /// Disjoint union of points (identity morphisms only).
  static GroupoidTable discrete(int objects);
  static GroupoidTable one_object(const GroupTable& g);
};

struct BuiltAlgebra {
  WeakHopfAlgebra H;
  Vec R;
  std::vector<std::string> basis_labels;
};

/// Group algebra kG: Delta(g) = g x g, eps(g) = 1, S(g) = g^{-1}, R = 1 x 1.
BuiltAlgebra build_group_algebra(const GroupTable& g, const Field* f);

/// Groupoid algebra: basis = morphisms, product = composition or zero,
/// unit = sum of identities, R = Delta(1).
BuiltAlgebra build_groupoid_algebra(const GroupoidTable& g, const Field* f);

/// Drinfeld double D(G): basis delta_a x g with the canonical R-matrix.
BuiltAlgebra build_drinfeld_double(const GroupTable& g, const Field* f);

}  // namespace wha
