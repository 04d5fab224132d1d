// Acceptance suite: runs every acceptance criterion end to end and prints
// one pass/fail line per criterion.  All comparisons are exact (zero
// tolerance); the two runtime budgets are wall-clock checks.

#include <chrono>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "whakit/comod.hpp"
#include "whakit/io.hpp"
#include "whakit/smash.hpp"

using namespace wha;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void line(int criterion, bool pass, const std::string& text,
          const std::string& detail = "") {
  std::cout << "criterion " << criterion << " "
            << (pass ? "PASS" : "FAIL") << ": " << text;
  if (!pass && !detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// A pipeline owns its algebra together with structures that point into it,
// so it lives on the heap and is never moved after construction.
struct Pipeline {
  BuiltAlgebra built;
  Report verify_report;
  std::optional<RMatrix> R;
  std::optional<BraidedGroup> bg;
  Report bg_report;
};

std::unique_ptr<Pipeline> run_pipeline(BuiltAlgebra built) {
  auto p = std::make_unique<Pipeline>();
  p->built = std::move(built);
  p->verify_report = wha_verify(p->built.H);
  QTResult qt = qt_verify(p->built.H, p->built.R);
  p->verify_report.merge(qt.report);
  if (!qt.rmatrix) return p;
  p->R = qt.rmatrix;
  BraidedGroupBuild bb = braided_group_build(p->built.H, *p->R);
  p->bg_report.merge(bb.report);
  if (bb.group) {
    p->bg = std::move(bb.group);
    p->bg_report.merge(braided_group_verify(*p->bg));
  }
  return p;
}

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

// Dijkgraaf-Pasquier-Roche census for a finite group, straight from the
// table: for each conjugacy class, the centralizer of a representative and
// the multiset of its irreducible-character degrees (obtained as the unique
// multiset of divisors of |Z| with sum of squares |Z| and count = number of
// conjugacy classes of Z; unique for every group of order < 12).
std::vector<int> dpr_dimension_census(const GroupTable& g) {
  std::vector<int> dims;
  for (const auto& cls : conjugacy_classes(g)) {
    int rep = cls[0];
    std::vector<int> cz;
    for (int h = 0; h < g.order; ++h)
      if (g.mul[g.mul[h][rep]][g.inverse[h]] == rep) cz.push_back(h);
    // class count of the centralizer
    GroupTable z;
    z.order = (int)cz.size();
    z.mul.assign(z.order, std::vector<int>(z.order, -1));
    z.inverse.assign(z.order, -1);
    auto index_of = [&](int elt) {
      for (size_t i = 0; i < cz.size(); ++i)
        if (cz[i] == elt) return (int)i;
      return -1;
    };
    for (int a = 0; a < z.order; ++a)
      for (int b = 0; b < z.order; ++b)
        z.mul[a][b] = index_of(g.mul[cz[a]][cz[b]]);
    z.identity = index_of(g.identity);
    for (int a = 0; a < z.order; ++a) z.inverse[a] = index_of(g.inverse[cz[a]]);
    int classes_of_z = (int)conjugacy_classes(z).size();
    // unique multiset d_1 <= ... <= d_k, k = classes_of_z, sum d_i^2 = |Z|
    std::vector<int> degs;
    std::function<bool(int, int, int, std::vector<int>&)> search =
        [&](int remaining, int count, int minimum, std::vector<int>& acc) {
          if (count == 0) return remaining == 0;
          for (int d = minimum; d * d <= remaining; ++d) {
            if (z.order % d != 0) continue;
            acc.push_back(d);
            if (search(remaining - d * d, count - 1, d, acc)) return true;
            acc.pop_back();
          }
          return false;
        };
    std::vector<int> acc;
    bool found = search(z.order, classes_of_z, 1, acc);
    if (!found) return {};
    degs = acc;
    // verify uniqueness by counting all solutions
    int solutions = 0;
    std::function<void(int, int, int)> count_all = [&](int remaining,
                                                       int count, int minimum) {
      if (count == 0) {
        if (remaining == 0) ++solutions;
        return;
      }
      for (int d = minimum; d * d <= remaining; ++d) {
        if (z.order % d != 0) continue;
        count_all(remaining - d * d, count - 1, d);
      }
    };
    count_all(z.order, classes_of_z, 1);
    if (solutions != 1) return {};
    for (int d : degs) dims.push_back((int)cls.size() * d);
  }
  std::sort(dims.begin(), dims.end());
  return dims;
}

}  // namespace

int main() {
  const Field* Q = Field::rationals();
  const Field* C3 = Field::cyclotomic(3);
  const mpz_class HB(1000000);
  GroupTable s3_table = GroupTable::symmetric3();

  // ---- criterion 1: axiom suites with the runtime budget ----
  auto t1 = Clock::now();
  auto ks3_ptr = run_pipeline(build_group_algebra(s3_table, Q));
  Pipeline& ks3 = *ks3_ptr;
  auto gpd_ptr =
      run_pipeline(build_groupoid_algebra(GroupoidTable::indiscrete(2), Q));
  Pipeline& gpd = *gpd_ptr;
  auto ds3_ptr = run_pipeline(build_drinfeld_double(s3_table, Q));
  Pipeline& ds3 = *ds3_ptr;
  double dt1 = seconds_since(t1);
  {
    bool pass = ks3.verify_report.all_pass() && ks3.bg_report.all_pass() &&
                gpd.verify_report.all_pass() && gpd.bg_report.all_pass() &&
                ds3.verify_report.all_pass() && ds3.bg_report.all_pass() &&
                ks3.bg && gpd.bg && ds3.bg && dt1 < 120.0;
    std::ostringstream d;
    d << "kS3 " << ks3.verify_report.summary() << " | groupoid "
      << gpd.verify_report.summary() << " | D(S3) "
      << ds3.verify_report.summary() << " | time " << dt1 << "s";
    line(1, pass,
         "kS3, 2-object indiscrete groupoid, and D(S3) pass wha/qt/braided "
         "verification with zero failures in under 120 s",
         d.str());
  }

  // ---- criterion 2: braided collapse for group algebras with R = 1 x 1 ----
  {
    bool pass = true;
    std::string detail;
    for (auto table : {GroupTable::symmetric3(), GroupTable::cyclic(3),
                       GroupTable::klein4(), GroupTable::cyclic(4)}) {
      auto p_ptr = run_pipeline(build_group_algebra(table, Q));
      Pipeline& p = *p_ptr;
      if (!p.bg) {
        pass = false;
        detail = "pipeline failed";
        break;
      }
      const int n = p.built.H.dim();
      if (!p.bg->carrier.basis().is_identity()) pass = false;
      for (int k = 0; k < n && pass; ++k)
        if (!vec_eq(p.bg->DeltaB.col(k), p.built.H.comul(vec_unit(Q, n, k))))
          pass = false;
      if (pass && !(p.bg->SB == p.built.H.antipode_matrix())) pass = false;
      if (!pass) detail = "collapse failed at order " + std::to_string(n);
      if (!pass) break;
    }
    line(2, pass,
         "for group algebras with R = 1 x 1 the braided coproduct and "
         "antipode equal Delta and S entrywise",
         detail);
  }

  // ---- criterion 3: decomposition of kS3 = conjugacy class spans ----
  {
    bool pass = ks3.bg.has_value();
    std::string detail;
    if (pass) {
      DecomposeResult dec =
          decompose_braided_group(*ks3.bg, 256, HB, 7);
      pass = dec.status == SplitStatus::Ok && dec.report.all_pass() &&
             dec.components.size() == 3 &&
             dec.component_dims() == std::vector<int>{1, 2, 3};
      if (pass) {
        for (const auto& cls : conjugacy_classes(s3_table)) {
          Matrix rows(Q, (int)cls.size(), 6);
          for (size_t i = 0; i < cls.size(); ++i)
            rows.set_row((int)i, vec_unit(Q, 6, cls[i]));
          Subspace span = Subspace::span(rows);
          bool found = false;
          for (const auto& comp : dec.components)
            if (comp.space == span) found = true;
          if (!found) pass = false;
        }
        if (!pass) detail = "component subspaces differ from class spans";
      } else {
        detail = dec.detail;
      }
    }
    line(3, pass,
         "decompose(kS3) returns r = 3 components of dims {1,2,3} equal to "
         "the brute-force conjugacy class spans",
         detail);
  }

  // ---- criterion 4: enumeration of kS3 against the DPR oracle ----
  {
    auto t4 = Clock::now();
    auto built = build_group_algebra(s3_table, C3);
    QTResult qt = qt_verify(built.H, built.R);
    bool pass = qt.rmatrix.has_value();
    std::string detail;
    if (pass) {
      EnumerateOptions opts;
      EnumerationResult en = enumerate_yd(built.H, *qt.rmatrix, opts);
      std::vector<int> oracle = dpr_dimension_census(s3_table);
      double dt4 = seconds_since(t4);
      pass = en.status == SplitStatus::Ok && en.report.all_pass() &&
             en.total_simples == 8 &&
             en.simple_dims == std::vector<int>{1, 1, 2, 2, 2, 2, 3, 3} &&
             en.simple_dims == oracle && en.sum_dim_sq == 36 && dt4 < 300.0;
      if (!pass) {
        std::ostringstream d;
        d << "status " << (int)en.status << " simples " << en.total_simples
          << " sumsq " << en.sum_dim_sq << " time " << dt4 << "s "
          << en.detail;
        detail = d.str();
      }
    }
    line(4, pass,
         "enumerate_yd(kS3 over Q(zeta3)) reports 8 simples with dims "
         "{1,1,2,2,2,2,3,3}, sum of squares 36, matching the "
         "Dijkgraaf-Pasquier-Roche census, in under 5 minutes",
         detail);
  }

  // ---- criterion 5: the genuinely weak case ----
  {
    bool pass = gpd.bg.has_value() && gpd.bg->dim == 2;
    std::string detail;
    if (pass) {
      DecomposeResult dec = decompose_braided_group(*gpd.bg, 256, HB, 7);
      pass = dec.status == SplitStatus::Ok && dec.components.size() == 1 &&
             dec.components[0].space.dim() == 2;
      if (pass) {
        EnumerateOptions opts;
        EnumerationResult en = enumerate_yd(gpd.built.H, *gpd.R, opts);
        pass = en.status == SplitStatus::Ok && en.report.all_pass() &&
               en.total_simples == 1 &&
               en.simple_dims == std::vector<int>{2};
        if (!pass) detail = "enumeration: " + en.detail;
        if (pass) {
          // the hand oracle's simple module is realized explicitly by
          // inducing from a simple subcomodule (one identity morphism)
          CoalgebraInC D = component_coalgebra(*gpd.bg, dec.components[0]);
          PlainDComodule W;
          W.D = &D;
          W.dim = 1;
          W.coaction = Matrix(Q, D.dim(), 1);
          W.coaction.at(0, 0) = Q->one();
          InducedResult ind = induce(D, W);
          pass = ind.report.all_pass() && ind.module.dim() == 2 &&
                 hom_HD(ind.module, ind.module).dim() == 1;
          if (!pass) detail = "explicit simple construction failed";
        }
      } else {
        detail = "decomposition: " + dec.detail;
      }
    }
    line(5, pass,
         "2-object indiscrete groupoid: dim B = 2, r = 1, exactly one "
         "simple Yetter-Drinfeld module, of dimension 2",
         detail);
  }

  // ---- criterion 6: round-trip equivalence on >= 10 modules per algebra ----
  {
    bool pass = true;
    std::string detail;
    for (Pipeline* p : {&ks3, &gpd, &ds3}) {
      if (!p->bg) {
        pass = false;
        break;
      }
      // components enrich the corpus where the base field splits; over Q the
      // D(S3) decomposition honestly reports NotSplit and contributes none
      DecomposeResult dec = decompose_braided_group(*p->bg, 256, HB, 7);
      std::vector<YDModule> corpus;
      corpus.push_back(yd_braided_group(*p->bg));
      corpus.push_back(yd_unit(p->built.H));
      for (const auto& c : dec.components)
        corpus.push_back(yd_component(*p->bg, c));
      // pad with direct sums until the corpus has at least 10 modules
      size_t base = corpus.size();
      size_t i = 0;
      while (corpus.size() < 10) {
        corpus.push_back(yd_direct_sum(corpus[i % base],
                                       corpus[(i + 1) % base]));
        ++i;
      }
      for (const auto& m : corpus) {
        if (!yd_verify(m).all_pass()) {
          pass = false;
          detail = "corpus module fails yd_verify";
          break;
        }
        BComodule bc = to_bcomod(m, *p->bg);
        YDModule back = to_yd(bc, *p->bg);
        if (!(back.coaction == m.coaction)) {
          pass = false;
          detail = "toYD o toBComod is not the identity";
          break;
        }
        BComodule bc2 = to_bcomod(back, *p->bg);
        if (!(bc2.coaction == bc.coaction)) {
          pass = false;
          detail = "toBComod o toYD is not the identity";
          break;
        }
      }
      if (!pass) break;
    }
    line(6, pass,
         "toYD and toBComod are mutually inverse on a corpus of >= 10 "
         "modules per input algebra (exact, entrywise)",
         detail);
  }

  // ---- criterion 7: antipode inverse on every corpus input ----
  {
    bool pass = true;
    std::string detail;
    std::vector<std::unique_ptr<Pipeline>> extra;
    extra.push_back(run_pipeline(build_group_algebra(GroupTable::klein4(), Q)));
    extra.push_back(
        run_pipeline(build_drinfeld_double(GroupTable::cyclic(2), Q)));
    extra.push_back(run_pipeline(
        build_groupoid_algebra(GroupoidTable::discrete(2), Q)));
    std::vector<Pipeline*> all{&ks3, &gpd, &ds3};
    for (auto& e : extra) all.push_back(e.get());
    for (Pipeline* p : all) {
      if (!p->bg) {
        pass = false;
        detail = "pipeline failed";
        break;
      }
      if (!((p->bg->SB * p->bg->TB).is_identity() &&
            (p->bg->TB * p->bg->SB).is_identity())) {
        pass = false;
        detail = "S_B T_B != id";
        break;
      }
    }
    line(7, pass, "S_B T_B = T_B S_B = id for every corpus input", detail);
  }

  // ---- criteria 8 and 9: internal Hom vs cotensor; induction adjunction ----
  {
    bool pass8 = true, pass9 = true;
    std::string d8, d9;
    struct Case {
      const WeakHopfAlgebra* H;
      BraidedGroup* bg;
    };
    DecomposeResult dk = decompose_braided_group(*ks3.bg, 256, HB, 7);
    DecomposeResult dg = decompose_braided_group(*gpd.bg, 256, HB, 7);
    struct Pair {
      CoalgebraInC D;
      std::vector<LeftDComodule> modules;
    };
    std::vector<Pair> corpus;
    for (const auto& c : dk.components) {
      Pair p{component_coalgebra(*ks3.bg, c), {}};
      corpus.push_back(std::move(p));
    }
    for (const auto& c : dg.components) {
      Pair p{component_coalgebra(*gpd.bg, c), {}};
      corpus.push_back(std::move(p));
    }
    corpus.push_back({unit_coalgebra(ks3.built.H), {}});
    corpus.push_back({unit_coalgebra(gpd.built.H), {}});
    for (auto& pair : corpus) {
      LeftDComodule reg = regular_comodule(pair.D);
      InducedResult ind = induce(pair.D, forget_action(reg));
      if (!ind.report.all_pass()) {
        pass9 = false;
        d9 = "induction failed";
        continue;
      }
      pair.modules.push_back(reg);
      pair.modules.push_back(ind.module);
      pair.modules.push_back(comodule_direct_sum(reg, reg));
      for (const auto& M : pair.modules)
        for (const auto& N : pair.modules) {
          if (!internal_hom_vs_cotensor(M, N).all_pass()) {
            pass8 = false;
            d8 = "pair of dims " + std::to_string(M.dim()) + "," +
                 std::to_string(N.dim());
          }
        }
      for (const auto& M : pair.modules) {
        int lhs = hom_HD(ind.module, M).dim();
        int rhs = hom_D_plain(forget_action(reg), M).dim();
        if (lhs != rhs) {
          pass9 = false;
          d9 = "dims " + std::to_string(lhs) + " vs " + std::to_string(rhs);
        }
      }
    }
    line(8, pass8,
         "Hom^D(M,N) is isomorphic to *M box_D N (dimension and explicit "
         "bijection) for every corpus pair",
         d8);
    line(9, pass9,
         "dim Hom_H^D(Ind(W), M) = dim Hom^D(W, M) on every corpus pair",
         d9);
  }

  // ---- criterion 10: smash product checks ----
  {
    bool pass = true;
    std::string detail;
    struct SmashCase {
      ModuleAlgebra A;
      const WeakHopfAlgebra* H;
      bool blocks;
    };
    std::vector<SmashCase> cases;
    cases.push_back({scalar_module_algebra(ks3.built.H), &ks3.built.H, true});
    cases.push_back({target_module_algebra(gpd.built.H), &gpd.built.H, true});
    cases.push_back(
        {braided_group_module_algebra(*gpd.bg), &gpd.built.H, true});
    cases.push_back(
        {braided_group_module_algebra(*ks3.bg), &ks3.built.H, true});
    for (auto& c : cases) {
      if (!c.A.verify().all_pass()) {
        pass = false;
        detail = "module algebra invalid";
        break;
      }
      Report phi = phi_check(c.A, *c.H);
      if (!phi.all_pass()) {
        pass = false;
        detail = "phi: " + phi.summary();
        break;
      }
      Report dual = dual_smash_check(c.A, *c.H, 256, HB, 5, c.blocks);
      if (!dual.all_pass()) {
        pass = false;
        detail = "dual: " + dual.summary();
        break;
      }
    }
    if (pass) {
      // beta on a module corpus over both algebras
      std::vector<HModule> mods;
      mods.push_back(regular_module(ks3.built.H));
      mods.push_back(unit_module(ks3.built.H));
      mods.push_back(regular_module(gpd.built.H));
      mods.push_back(unit_module(gpd.built.H));
      mods.push_back(regular_module(ds3.built.H));
      for (const auto& m : mods) {
        InvariantsBeta ib = invariants_beta(m);
        if (!ib.report.all_pass()) {
          pass = false;
          detail = "beta not bijective";
          break;
        }
      }
    }
    line(10, pass,
         "Phi is bijective and right A-linear, beta_M is bijective, and the "
         "dual smash dimensions agree on every corpus input",
         detail);
  }

  // ---- criterion 11: negative controls ----
  {
    bool pass = true;
    std::string detail;
    // mutant 1: broken axiom 4 (antipode replaced by the identity map)
    {
      WeakHopfAlgebra H(Q, 6);
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j)
          H.add_mult(i, j, s3_table.mul[i][j], Q->one());
        H.add_comult(i, i, i, Q->one());
        H.set_counit(i, Q->one());
        H.set_antipode(i, i, Q->one());
      }
      H.set_unit(0, Q->one());
      H.finalize();
      Report r = wha_verify(H);
      const CheckResult* c = r.find("wha.axiom4.antipode_left_counital");
      if (!c || c->pass || c->witness.empty()) {
        pass = false;
        detail = "axiom-4 mutant not rejected with a witness";
      }
    }
    // mutant 2: broken quasi-triangular intertwiner (R = g x g, g != e)
    if (pass) {
      Vec bad = vec_zero(Q, 36);
      bad[1 * 6 + 1] = Q->one();
      QTResult qt = qt_verify(ks3.built.H, bad);
      const CheckResult* c = qt.report.find("qt.intertwiner");
      if (!c || c->pass || c->witness.empty() || qt.rmatrix) {
        pass = false;
        detail = "intertwiner mutant not rejected with a witness";
      }
    }
    // mutant 3: flipped Delta_B legs on a non-cocommutative input
    if (pass) {
      BraidedGroup bg = *ds3.bg;
      const int m = bg.dim;
      Matrix flipped(Q, m * m, m);
      for (int k = 0; k < m; ++k)
        for (int p = 0; p < m; ++p)
          for (int q = 0; q < m; ++q)
            flipped.at(q * m + p, k) = bg.DeltaB.at(p * m + q, k);
      bg.DeltaB = flipped;
      Report r = braided_group_verify(bg);
      const CheckResult* c = r.find("bg.bialgebra_law");
      if (!c || c->pass || c->witness.empty()) {
        pass = false;
        detail = "flipped-coproduct mutant not rejected with a witness";
      }
    }
    line(11, pass,
         "the three documented mutants are rejected by the correct named "
         "check, each with a witness",
         detail);
  }

  std::cout << (g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL")
            << " (" << g_failures << " failed criteria)" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
