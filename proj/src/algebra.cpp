#include "whakit/algebra.hpp"

#include <random>
#include <sstream>

namespace wha {

void Report::add(const std::string& name, bool pass,
                 const std::string& witness) {
  checks.push_back({name, pass, witness});
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks) checks.push_back(c);
}

bool Report::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string Report::summary() const {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : checks)
    if (!c.pass) ++failed;
  os << checks.size() << " checks, " << failed << " failed";
  for (const auto& c : checks)
    if (!c.pass) os << "; " << c.name << " [" << c.witness << "]";
  return os.str();
}

Vec AssocAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out = vec_zero(fld, dim);
  for (int i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      FieldElem c = a[i] * b[j];
      for (const auto& [k, m] : mult.col[i * dim + j]) out[k] += c * m;
    }
  }
  return out;
}

Matrix AssocAlgebra::left_mult(const Vec& a) const {
  Matrix m(fld, dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec col = mul(a, vec_unit(fld, dim, j));
    for (int i = 0; i < dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Matrix AssocAlgebra::right_mult(const Vec& a) const {
  Matrix m(fld, dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec col = mul(vec_unit(fld, dim, j), a);
    for (int i = 0; i < dim; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Matrix AssocAlgebra::basis_left_mult(int i) const {
  return left_mult(vec_unit(fld, dim, i));
}

Report AssocAlgebra::verify(bool expect_commutative) const {
  Report rep;
  bool assoc = true;
  std::string w;
  SparseVec l, r;
  for (int i = 0; i < dim && assoc; ++i)
    for (int j = 0; j < dim && assoc; ++j) {
      const SparseVec& ij = mult.col[i * dim + j];
      for (int k = 0; k < dim && assoc; ++k) {
        l.clear();
        r.clear();
        for (const auto& [x, c] : ij)
          sparse_accumulate(l, mult.col[x * dim + k], c);
        for (const auto& [x, c] : mult.col[j * dim + k])
          sparse_accumulate(r, mult.col[i * dim + x], c);
        if (sparse_normalize(l) != sparse_normalize(r)) {
          assoc = false;
          w = "(e" + std::to_string(i) + ", e" + std::to_string(j) + ", e" +
              std::to_string(k) + ")";
        }
      }
    }
  rep.add("algebra.associativity", assoc, w);
  bool unital = true;
  w.clear();
  for (int i = 0; i < dim; ++i) {
    Vec e = vec_unit(fld, dim, i);
    if (!vec_eq(mul(unit, e), e) || !vec_eq(mul(e, unit), e)) {
      unital = false;
      w = "e" + std::to_string(i);
      break;
    }
  }
  rep.add("algebra.unit", unital, w);
  if (expect_commutative) {
    bool comm = true;
    w.clear();
    for (int i = 0; i < dim && comm; ++i)
      for (int j = i + 1; j < dim && comm; ++j) {
        if (sparse_normalize(SparseVec(mult.col[i * dim + j])) !=
            sparse_normalize(SparseVec(mult.col[j * dim + i]))) {
          comm = false;
          w = "(e" + std::to_string(i) + ", e" + std::to_string(j) + ")";
        }
      }
    rep.add("algebra.commutativity", comm, w);
  }
  return rep;
}

bool AssocAlgebra::is_commutative() const {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (!vec_eq(mul(vec_unit(fld, dim, i), vec_unit(fld, dim, j)),
                  mul(vec_unit(fld, dim, j), vec_unit(fld, dim, i))))
        return false;
  return true;
}

int AssocAlgebra::trace_radical_dim() const {
  // sparse left-multiplication columns: L_i col j = mult.col[i*dim + j]
  auto lcol = [&](int i, int j) -> const SparseVec& {
    return mult.col[i * dim + j];
  };
  Matrix gram(fld, dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      // tr(L_i L_j) = sum_q <e_q^*, e_i (e_j e_q)>
      FieldElem t = fld->zero();
      for (int q = 0; q < dim; ++q)
        for (const auto& [p, c] : lcol(j, q))
          for (const auto& [r, c2] : lcol(i, p))
            if (r == q) t += c * c2;
      gram.at(i, j) = t;
      gram.at(j, i) = t;
    }
  return gram.kernel().rows();
}

Subspace AssocAlgebra::center() const {
  // kernel of sum_i C_i^* C_i with C_i = L_i - R_i; over a cyclotomic field
  // the conjugate Gram matrix has the same kernel as the stacked system.
  Matrix G(fld, dim, dim);
  for (int i = 0; i < dim; ++i) {
    SparseMat C(fld, dim, dim);
    for (int j = 0; j < dim; ++j) {
      SparseVec col = mult.col[i * dim + j];  // e_i e_j
      sparse_accumulate(col, mult.col[j * dim + i], fld->integer(-1));
      C.col[j] = sparse_normalize(std::move(col));
    }
    for (int p = 0; p < dim; ++p)
      for (int q = p; q < dim; ++q) {
        // (C^* C)_{p q} = sum_k conj(C_{k p}) C_{k q}
        FieldElem t = fld->zero();
        size_t a = 0, b = 0;
        while (a < C.col[p].size() && b < C.col[q].size()) {
          if (C.col[p][a].first < C.col[q][b].first) {
            ++a;
          } else if (C.col[p][a].first > C.col[q][b].first) {
            ++b;
          } else {
            t += C.col[p][a].second.conj() * C.col[q][b].second;
            ++a;
            ++b;
          }
        }
        if (!t.is_zero()) {
          G.at(p, q) = G.at(p, q) + t;
          if (p != q) G.at(q, p) = G.at(q, p) + t.conj();
        }
      }
  }
  return Subspace::span(G.kernel());
}

AssocAlgebra AssocAlgebra::subalgebra(const Subspace& s,
                                      const Vec& sub_unit) const {
  int d = s.dim();
  AssocAlgebra out(fld, d);
  auto u = s.coords_of(sub_unit);
  if (!u) throw std::invalid_argument("subalgebra: unit outside subspace");
  out.unit = *u;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec prod = mul(s.basis().row(i), s.basis().row(j));
      auto c = s.coords_of(prod);
      if (!c) throw std::invalid_argument("subalgebra: not closed");
      out.mult.col[i * d + j] = sparse_from_dense(*c);
    }
  return out;
}

namespace {

struct IdemState {
  Vec e;
  int block_dim;
};

int block_dim_of(const AssocAlgebra& Z, const Vec& e) {
  return Z.left_mult(e).rank();
}

}  // namespace

SplitResult split_commutative(const AssocAlgebra& Z, long precision_bits,
                              const mpz_class& height_bound, uint64_t seed) {
  SplitResult res;
  const Field* f = Z.fld;
  std::vector<IdemState> idems{{Z.unit, block_dim_of(Z, Z.unit)}};

  // Candidate separating elements: basis sweep first, random combinations
  // only as a fallback.
  std::vector<Vec> candidates;
  for (int i = 0; i < Z.dim; ++i) candidates.push_back(vec_unit(f, Z.dim, i));
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 16; ++t) {
    Vec v = vec_zero(f, Z.dim);
    for (int i = 0; i < Z.dim; ++i)
      v[i] = f->integer((long)(rng() % 19) - 9);
    candidates.push_back(std::move(v));
  }

  auto all_primitive = [&]() {
    for (const auto& s : idems)
      if (s.block_dim > 1) return false;
    return true;
  };

  size_t cursor = 0;
  size_t last_progress = 0;
  while (!all_primitive()) {
    if (cursor >= candidates.size() ||
        cursor - last_progress > candidates.size()) {
      res.status = SplitStatus::NotSplit;
      res.detail = "separating elements exhausted before all blocks reached "
                   "dimension 1";
      return res;
    }
    const Vec& z = candidates[cursor % candidates.size()];
    ++cursor;
    bool progressed = false;
    std::vector<IdemState> next;
    for (auto& st : idems) {
      if (st.block_dim == 1) {
        next.push_back(st);
        continue;
      }
      // multiplication by e z e on the block eZ
      Vec w = Z.mul(st.e, Z.mul(z, st.e));
      Subspace block = Subspace::image(Z.left_mult(st.e));
      int bd = block.dim();
      Matrix op(f, bd, bd);
      for (int j = 0; j < bd; ++j) {
        Vec img = Z.mul(w, block.basis().row(j));
        auto c = block.coords_of(img);
        if (!c) {
          res.status = SplitStatus::NotSplit;
          res.detail = "block not closed under multiplication";
          return res;
        }
        for (int i = 0; i < bd; ++i) op.at(i, j) = (*c)[i];
      }
      FPoly p = min_poly(op);
      if (fpoly_deg(p) <= 1) {
        next.push_back(st);
        continue;
      }
      if (!fpoly_squarefree(p)) {
        res.status = SplitStatus::NotSemisimple;
        res.detail = "minimal polynomial has a repeated root: " + fpoly_str(p);
        return res;
      }
      std::vector<CBall> roots;
      try {
        roots = complex_roots(p, precision_bits);
      } catch (const std::exception& ex) {
        res.status = SplitStatus::NotSplit;
        res.detail = std::string("numeric root location failed: ") + ex.what();
        return res;
      }
      std::vector<FieldElem> lambda;
      bool ok = true;
      for (const auto& ball : roots) {
        auto cand = reconstruct_exact(ball, f, height_bound, precision_bits);
        if (!cand) {
          ok = false;
          break;
        }
        // mandatory exact verification by substitution
        if (!fpoly_eval(p, *cand).is_zero()) {
          ok = false;
          break;
        }
        lambda.push_back(*cand);
      }
      if (ok) {
        for (size_t a = 0; a < lambda.size() && ok; ++a)
          for (size_t b = a + 1; b < lambda.size() && ok; ++b)
            if (lambda[a] == lambda[b]) ok = false;
      }
      if (!ok) {
        res.status = SplitStatus::NotSplit;
        res.detail =
            "eigenvalue reconstruction failed for " + fpoly_str(p) +
            " over " + f->describe();
        return res;
      }
      // Lagrange projectors onto the eigenspaces inside eZ
      for (size_t jj = 0; jj < lambda.size(); ++jj) {
        Vec proj = st.e;  // unit of the block
        for (size_t ll = 0; ll < lambda.size(); ++ll) {
          if (ll == jj) continue;
          FieldElem denom = (lambda[jj] - lambda[ll]).inv();
          Vec factor = vec_sub(w, vec_scaled(st.e, lambda[ll]));
          proj = vec_scaled(Z.mul(proj, factor), denom);
        }
        next.push_back({proj, block_dim_of(Z, proj)});
      }
      progressed = true;
    }
    idems = std::move(next);
    if (progressed) last_progress = cursor;
  }

  // Verification: orthogonal idempotents summing to the unit.
  Vec total = vec_zero(f, Z.dim);
  for (const auto& s : idems) total = vec_add(total, s.e);
  if (!vec_eq(total, Z.unit)) {
    res.status = SplitStatus::NotSplit;
    res.detail = "idempotents do not sum to the unit";
    return res;
  }
  for (size_t a = 0; a < idems.size(); ++a) {
    if (!vec_eq(Z.mul(idems[a].e, idems[a].e), idems[a].e)) {
      res.status = SplitStatus::NotSplit;
      res.detail = "non-idempotent output";
      return res;
    }
    for (size_t b = a + 1; b < idems.size(); ++b)
      if (!vec_is_zero(Z.mul(idems[a].e, idems[b].e))) {
        res.status = SplitStatus::NotSplit;
        res.detail = "outputs not orthogonal";
        return res;
      }
  }
  for (const auto& s : idems) res.idempotents.push_back(s.e);
  return res;
}

std::vector<int> WedderburnResult::block_dims() const {
  std::vector<int> d;
  for (const auto& b : blocks) d.push_back(b.block_dim);
  std::sort(d.begin(), d.end());
  return d;
}

WedderburnResult wedderburn_blocks(const AssocAlgebra& A, long precision_bits,
                                   const mpz_class& height_bound,
                                   uint64_t seed) {
  WedderburnResult out;
  if (A.trace_radical_dim() != 0) {
    out.status = SplitStatus::NotSemisimple;
    out.detail = "trace form radical is nonzero";
    return out;
  }
  Subspace zc = A.center();
  Vec unit_coords;
  AssocAlgebra Z = A.subalgebra(zc, A.unit);
  SplitResult split = split_commutative(Z, precision_bits, height_bound, seed);
  if (split.status != SplitStatus::Ok) {
    out.status = split.status;
    out.detail = split.detail;
    return out;
  }
  for (const auto& ez : split.idempotents) {
    WedderburnBlock blk;
    blk.central_idempotent = zc.lift(ez);
    blk.block_dim = A.left_mult(blk.central_idempotent).rank();
    int d = 0;
    while ((d + 1) * (d + 1) <= blk.block_dim) ++d;
    blk.matrix_size = (d * d == blk.block_dim) ? d : 0;
    out.blocks.push_back(std::move(blk));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const WedderburnBlock& a, const WedderburnBlock& b) {
              return a.block_dim < b.block_dim;
            });
  return out;
}

}  // namespace wha
