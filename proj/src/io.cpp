#include "whakit/io.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#include "json.hpp"

namespace wha {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// splits "a b c : coeff string" into tokens before ':' and the coeff text
bool split_coeff_line(const std::string& s, std::vector<std::string>* toks,
                      std::string* coeff) {
  auto pos = s.find(':');
  if (pos == std::string::npos) return false;
  *toks = split_ws(s.substr(0, pos));
  *coeff = s.substr(pos + 1);
  // trim
  while (!coeff->empty() && isspace((unsigned char)coeff->front()))
    coeff->erase(coeff->begin());
  while (!coeff->empty() && isspace((unsigned char)coeff->back()))
    coeff->pop_back();
  return !coeff->empty();
}

}  // namespace

std::variant<AlgebraFile, ParseError> parse_algebra(std::istream& in) {
  AlgebraFile out;
  std::string line;
  int lineno = 0;
  bool have_header = false, have_field = false, have_dim = false;
  struct Entry {
    std::string kind;
    std::vector<int> idx;
    FieldElem coeff;
  };
  std::vector<Entry> entries;
  bool saw_rmatrix = false;

  auto err = [&](const std::string& m) {
    return ParseError{lineno, m};
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "whakit-algebra" || toks[1] != "1")
        return err("expected header 'whakit-algebra 1'");
      have_header = true;
      continue;
    }
    if (toks[0] == "field") {
      if (have_field) return err("duplicate field line");
      if (toks.size() == 2 && toks[1] == "rational") {
        out.field = Field::rationals();
      } else if (toks.size() == 3 && toks[1] == "cyclotomic") {
        int order = 0;
        try {
          order = std::stoi(toks[2]);
        } catch (...) {
          return err("bad cyclotomic order");
        }
        if (order < 1 || order > 1000) return err("cyclotomic order out of range");
        out.field = Field::cyclotomic(order);
      } else {
        return err("field must be 'rational' or 'cyclotomic <n>'");
      }
      have_field = true;
      continue;
    }
    if (toks[0] == "dim") {
      if (!have_field) return err("field must precede dim");
      if (have_dim) return err("duplicate dim line");
      try {
        out.dim = std::stoi(toks[1]);
      } catch (...) {
        return err("bad dimension");
      }
      if (out.dim < 1 || out.dim > 4096) return err("dimension out of range");
      out.labels.assign(out.dim, "");
      have_dim = true;
      continue;
    }
    if (!have_dim) return err("field and dim must precede structure lines");
    if (toks[0] == "label") {
      if (toks.size() < 3) return err("label needs index and name");
      int i;
      try {
        i = std::stoi(toks[1]);
      } catch (...) {
        return err("bad label index");
      }
      if (i < 0 || i >= out.dim) return err("label index out of range");
      out.labels[i] = toks[2];
      continue;
    }
    std::vector<std::string> head;
    std::string coeff;
    if (!split_coeff_line(line, &head, &coeff))
      return err("expected '<kind> <indices> : <coefficient>'");
    auto want = [&](const std::string& kind, size_t n) {
      return head[0] == kind && head.size() == n + 1;
    };
    Entry e;
    e.kind = head[0];
    size_t nidx;
    if (want("mult", 3) || want("comult", 3)) {
      nidx = 3;
    } else if (want("antipode", 2) || want("rmatrix", 2)) {
      nidx = 2;
    } else if (want("unit", 1) || want("counit", 1)) {
      nidx = 1;
    } else {
      return err("unknown structure line '" + head[0] + "'");
    }
    for (size_t k = 1; k <= nidx; ++k) {
      int v;
      try {
        v = std::stoi(head[k]);
      } catch (...) {
        return err("bad index");
      }
      if (v < 0 || v >= out.dim) return err("index out of range");
      e.idx.push_back(v);
    }
    auto c = out.field->parse(coeff);
    if (!c) return err("cannot parse coefficient '" + coeff + "'");
    e.coeff = *c;
    if (e.kind == "rmatrix") saw_rmatrix = true;
    entries.push_back(std::move(e));
  }
  if (!have_header) return err("empty input");
  if (!have_dim) return err("missing dim");

  out.algebra = WeakHopfAlgebra(out.field, out.dim);
  if (saw_rmatrix) out.rmatrix = vec_zero(out.field, out.dim * out.dim);
  for (const auto& e : entries) {
    if (e.kind == "mult")
      out.algebra.add_mult(e.idx[0], e.idx[1], e.idx[2], e.coeff);
    else if (e.kind == "comult")
      out.algebra.add_comult(e.idx[0], e.idx[1], e.idx[2], e.coeff);
    else if (e.kind == "antipode")
      out.algebra.set_antipode(e.idx[0], e.idx[1], e.coeff);
    else if (e.kind == "unit")
      out.algebra.set_unit(e.idx[0], e.coeff);
    else if (e.kind == "counit")
      out.algebra.set_counit(e.idx[0], e.coeff);
    else if (e.kind == "rmatrix")
      (*out.rmatrix)[e.idx[0] * out.dim + e.idx[1]] =
          (*out.rmatrix)[e.idx[0] * out.dim + e.idx[1]] + e.coeff;
  }
  try {
    out.algebra.finalize();
  } catch (const std::exception& ex) {
    return ParseError{0, std::string("inconsistent structure: ") + ex.what()};
  }
  return out;
}

std::variant<AlgebraFile, ParseError> parse_algebra_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return ParseError{0, "cannot open " + path};
  return parse_algebra(in);
}

std::string serialize_algebra(const WeakHopfAlgebra& H,
                              const std::optional<Vec>& R,
                              const std::vector<std::string>& labels) {
  std::ostringstream os;
  const int n = H.dim();
  os << "whakit-algebra 1\n";
  const Field* f = H.field();
  if (f->kind() == FieldKind::Rationals)
    os << "field rational\n";
  else
    os << "field cyclotomic " << f->order() << "\n";
  os << "dim " << n << "\n";
  for (int i = 0; i < n && i < (int)labels.size(); ++i)
    if (!labels[i].empty()) os << "label " << i << " " << labels[i] << "\n";
  for (int i = 0; i < n; ++i)
    if (!H.unit()[i].is_zero())
      os << "unit " << i << " : " << H.unit()[i].str() << "\n";
  for (int i = 0; i < n; ++i)
    if (!H.counit_row()[i].is_zero())
      os << "counit " << i << " : " << H.counit_row()[i].str() << "\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [k, c] : H.mult_tensor().col[i * n + j])
        os << "mult " << i << " " << j << " " << k << " : " << c.str() << "\n";
  for (int i = 0; i < n; ++i)
    for (const auto& [jk, c] : H.comult_tensor().col[i])
      os << "comult " << i << " " << jk / n << " " << jk % n << " : "
         << c.str() << "\n";
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!H.antipode_matrix().at(i, j).is_zero())
        os << "antipode " << i << " " << j << " : "
           << H.antipode_matrix().at(i, j).str() << "\n";
  if (R)
    for (int i = 0; i < n * n; ++i)
      if (!(*R)[i].is_zero())
        os << "rmatrix " << i / n << " " << i % n << " : " << (*R)[i].str()
           << "\n";
  return os.str();
}

std::variant<TableFile, ParseError> parse_table(std::istream& in) {
  TableFile out;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  auto err = [&](const std::string& m) { return ParseError{lineno, m}; };
  std::vector<std::vector<std::string>> body;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "whakit-table" || toks[1] != "1")
        return err("expected header 'whakit-table 1'");
      have_header = true;
      continue;
    }
    body.push_back(toks);
  }
  if (!have_header) return ParseError{0, "empty input"};
  if (body.empty() || body[0][0] != "kind" || body[0].size() != 2)
    return ParseError{0, "expected 'kind group' or 'kind groupoid'"};
  out.kind = body[0][1];
  auto geti = [](const std::string& s, int* v) {
    try {
      *v = std::stoi(s);
      return true;
    } catch (...) {
      return false;
    }
  };
  if (out.kind == "group") {
    GroupTable g;
    for (size_t bi = 1; bi < body.size(); ++bi) {
      const auto& t = body[bi];
      if (t[0] == "order" && t.size() == 2) {
        if (!geti(t[1], &g.order) || g.order < 1 || g.order > 256)
          return ParseError{0, "bad order"};
        g.mul.assign(g.order, std::vector<int>(g.order, -1));
        g.labels.assign(g.order, "");
      } else if (t[0] == "mul" && t.size() == 4) {
        int i, j, k;
        if (g.order == 0) return ParseError{0, "order must precede mul"};
        if (!geti(t[1], &i) || !geti(t[2], &j) || !geti(t[3], &k))
          return ParseError{0, "bad mul line"};
        if (i < 0 || i >= g.order || j < 0 || j >= g.order || k < 0 ||
            k >= g.order)
          return ParseError{0, "mul index out of range"};
        g.mul[i][j] = k;
      } else if (t[0] == "label" && t.size() == 3) {
        int i;
        if (!geti(t[1], &i) || i < 0 || i >= g.order)
          return ParseError{0, "bad label"};
        g.labels[i] = t[2];
      } else {
        return ParseError{0, "unknown group table line '" + t[0] + "'"};
      }
    }
    for (int i = 0; i < g.order; ++i)
      for (int j = 0; j < g.order; ++j)
        if (g.mul[i][j] < 0) return ParseError{0, "incomplete mul table"};
    // derive identity and inverses
    g.identity = -1;
    for (int e = 0; e < g.order; ++e) {
      bool ok = true;
      for (int i = 0; i < g.order && ok; ++i)
        if (g.mul[e][i] != i || g.mul[i][e] != i) ok = false;
      if (ok) {
        g.identity = e;
        break;
      }
    }
    if (g.identity < 0) return ParseError{0, "no identity element"};
    g.inverse.assign(g.order, -1);
    for (int i = 0; i < g.order; ++i)
      for (int j = 0; j < g.order; ++j)
        if (g.mul[i][j] == g.identity && g.mul[j][i] == g.identity)
          g.inverse[i] = j;
    for (int i = 0; i < g.order; ++i)
      if (g.inverse[i] < 0) return ParseError{0, "missing inverse"};
    out.group = std::move(g);
    return out;
  }
  if (out.kind == "groupoid") {
    GroupoidTable g;
    for (size_t bi = 1; bi < body.size(); ++bi) {
      const auto& t = body[bi];
      if (t[0] == "objects" && t.size() == 2) {
        if (!geti(t[1], &g.objects) || g.objects < 1 || g.objects > 64)
          return ParseError{0, "bad objects"};
      } else if (t[0] == "morphisms" && t.size() == 2) {
        if (!geti(t[1], &g.morphisms) || g.morphisms < 1 || g.morphisms > 256)
          return ParseError{0, "bad morphisms"};
        g.source.assign(g.morphisms, -1);
        g.target.assign(g.morphisms, -1);
        g.compose.assign(g.morphisms, std::vector<int>(g.morphisms, -1));
        g.labels.assign(g.morphisms, "");
      } else if (t[0] == "mor" && t.size() == 4) {
        int i, s, tg;
        if (!geti(t[1], &i) || !geti(t[2], &s) || !geti(t[3], &tg))
          return ParseError{0, "bad mor line"};
        if (i < 0 || i >= g.morphisms || s < 0 || s >= g.objects || tg < 0 ||
            tg >= g.objects)
          return ParseError{0, "mor index out of range"};
        g.source[i] = s;
        g.target[i] = tg;
      } else if (t[0] == "compose" && t.size() == 4) {
        int i, j, k;
        if (!geti(t[1], &i) || !geti(t[2], &j) || !geti(t[3], &k))
          return ParseError{0, "bad compose line"};
        if (i < 0 || i >= g.morphisms || j < 0 || j >= g.morphisms || k < 0 ||
            k >= g.morphisms)
          return ParseError{0, "compose index out of range"};
        g.compose[i][j] = k;
      } else if (t[0] == "label" && t.size() == 3) {
        int i;
        if (!geti(t[1], &i) || i < 0 || i >= g.morphisms)
          return ParseError{0, "bad label"};
        g.labels[i] = t[2];
      } else {
        return ParseError{0, "unknown groupoid table line '" + t[0] + "'"};
      }
    }
    for (int i = 0; i < g.morphisms; ++i)
      if (g.source[i] < 0 || g.target[i] < 0)
        return ParseError{0, "morphism without source/target"};
    // derive identities and inverses
    g.identity_of.assign(g.objects, -1);
    for (int e = 0; e < g.morphisms; ++e) {
      if (g.source[e] != g.target[e]) continue;
      bool ok = true;
      for (int i = 0; i < g.morphisms && ok; ++i) {
        if (g.target[i] == g.source[e] && g.compose[e][i] != i) ok = false;
        if (g.source[i] == g.source[e] && g.compose[i][e] != i) ok = false;
      }
      if (ok) g.identity_of[g.source[e]] = e;
    }
    for (int x = 0; x < g.objects; ++x)
      if (g.identity_of[x] < 0)
        return ParseError{0, "object without identity morphism"};
    g.inverse.assign(g.morphisms, -1);
    for (int i = 0; i < g.morphisms; ++i)
      for (int j = 0; j < g.morphisms; ++j)
        if (g.compose[j][i] == g.identity_of[g.source[i]] &&
            g.compose[i][j] == g.identity_of[g.target[i]])
          g.inverse[i] = j;
    for (int i = 0; i < g.morphisms; ++i)
      if (g.inverse[i] < 0) return ParseError{0, "morphism without inverse"};
    out.groupoid = std::move(g);
    return out;
  }
  return ParseError{0, "kind must be 'group' or 'groupoid'"};
}

std::variant<TableFile, ParseError> parse_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return ParseError{0, "cannot open " + path};
  return parse_table(in);
}

std::string serialize_group_table(const GroupTable& g) {
  std::ostringstream os;
  os << "whakit-table 1\nkind group\norder " << g.order << "\n";
  for (int i = 0; i < g.order; ++i)
    if (!g.labels.empty() && !g.labels[i].empty())
      os << "label " << i << " " << g.labels[i] << "\n";
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j)
      os << "mul " << i << " " << j << " " << g.mul[i][j] << "\n";
  return os.str();
}

std::string serialize_groupoid_table(const GroupoidTable& g) {
  std::ostringstream os;
  os << "whakit-table 1\nkind groupoid\nobjects " << g.objects
     << "\nmorphisms " << g.morphisms << "\n";
  for (int i = 0; i < g.morphisms; ++i)
    if (!g.labels.empty() && !g.labels[i].empty())
      os << "label " << i << " " << g.labels[i] << "\n";
  for (int i = 0; i < g.morphisms; ++i)
    os << "mor " << i << " " << g.source[i] << " " << g.target[i] << "\n";
  for (int i = 0; i < g.morphisms; ++i)
    for (int j = 0; j < g.morphisms; ++j)
      if (g.compose[i][j] >= 0)
        os << "compose " << i << " " << j << " " << g.compose[i][j] << "\n";
  return os.str();
}

std::variant<std::vector<UserModuleSpec>, ParseError> parse_user_modules(
    std::istream& in, const Field* field) {
  std::vector<UserModuleSpec> out;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  std::optional<UserModuleSpec> cur;
  int cur_abasis = -1;
  auto err = [&](const std::string& m) { return ParseError{lineno, m}; };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "whakit-modules" || toks[1] != "1")
        return err("expected header 'whakit-modules 1'");
      have_header = true;
      continue;
    }
    if (toks[0] == "module" && toks.size() == 5) {
      if (cur) return err("previous module not closed with 'end'");
      UserModuleSpec s;
      int dimU, abasis;
      try {
        s.component = std::stoi(toks[1]);
        s.block = std::stoi(toks[2]);
        dimU = std::stoi(toks[3]);
        abasis = std::stoi(toks[4]);
      } catch (...) {
        return err("bad module line");
      }
      if (dimU < 1 || dimU > 256 || abasis < 1 || abasis > 4096)
        return err("module dimensions out of range");
      s.module.dim = dimU;
      s.module.act.assign(abasis, Matrix(field, dimU, dimU));
      cur = std::move(s);
      cur_abasis = abasis;
      continue;
    }
    if (toks[0] == "end") {
      if (!cur) return err("'end' without module");
      out.push_back(std::move(*cur));
      cur.reset();
      continue;
    }
    if (toks[0] == "act") {
      if (!cur) return err("'act' outside module");
      std::vector<std::string> head;
      std::string coeff;
      if (!split_coeff_line(line, &head, &coeff) || head.size() != 4)
        return err("expected 'act <t> <i> <j> : <coeff>'");
      int t, i, j;
      try {
        t = std::stoi(head[1]);
        i = std::stoi(head[2]);
        j = std::stoi(head[3]);
      } catch (...) {
        return err("bad act indices");
      }
      if (t < 0 || t >= cur_abasis || i < 0 || i >= cur->module.dim || j < 0 ||
          j >= cur->module.dim)
        return err("act index out of range");
      auto c = field->parse(coeff);
      if (!c) return err("cannot parse coefficient '" + coeff + "'");
      cur->module.act[t].at(i, j) = cur->module.act[t].at(i, j) + *c;
      continue;
    }
    return err("unknown line '" + toks[0] + "'");
  }
  if (cur) return err("unterminated module");
  return out;
}

std::string digest_bytes(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << h;
  return os.str();
}

std::string ReportDocument::to_json() const {
  json j;
  j["schema"] = "whakit-report/1";
  j["command"] = command;
  j["input"] = input_path;
  j["input_digest"] = input_digest;
  j["field"] = field;
  j["dim"] = dim;
  j["seed"] = seed;
  j["precision_bits"] = precision_bits;
  j["height_bound"] = height_bound;
  if (!error.empty()) j["error"] = error;
  json arr = json::array();
  int failed = 0;
  for (const auto& c : checks.checks) {
    json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.pass) {
      e["witness"] = c.witness;
      ++failed;
    }
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["summary"] = {{"total", checks.checks.size()},
                  {"failed", failed},
                  {"pass", pass()}};
  if (decomposition) {
    json d;
    d["r"] = decomposition->components.size();
    d["component_dims"] = decomposition->component_dims();
    if (component_hom_dims) d["pairwise_hom_dims"] = *component_hom_dims;
    j["decomposition"] = d;
  }
  if (enumeration) {
    json e;
    json comps = json::array();
    for (const auto& c : enumeration->components) {
      json cj;
      cj["index"] = c.index;
      cj["dim_component"] = c.dim_component;
      cj["dim_induced"] = c.dim_induced;
      cj["dim_end_algebra"] = c.dim_end_algebra;
      json blocks = json::array();
      for (const auto& b : c.blocks) {
        blocks.push_back({{"block_dim", b.block_dim},
                          {"d", b.d},
                          {"isotypic_dim", b.isotypic_dim},
                          {"simple_dim", b.simple_dim},
                          {"constructed", b.constructed},
                          {"certified_simple", b.certified_simple}});
      }
      cj["blocks"] = blocks;
      comps.push_back(cj);
    }
    e["components"] = comps;
    e["induction_convention"] =
        "counit pairs the first coproduct leg: <eps_C, h_(1) w_(-1)> h_(2) x w_(0)";
    e["total_simples"] = enumeration->total_simples;
    e["simple_dims"] = enumeration->simple_dims;
    e["sum_dim_sq"] = enumeration->sum_dim_sq;
    j["enumeration"] = e;
  }
  // byte-determinism for fixed (input, seed, precision, format): timing is
  // reported on stderr by the CLI, never in the document
  j["timing_ms"] = nullptr;
  return j.dump(2) + "\n";
}

std::string ReportDocument::to_text() const {
  std::ostringstream os;
  os << "whakit report: " << command << " " << input_path << "\n";
  os << "  field " << field << ", dim " << dim << ", seed " << seed
     << ", precision " << precision_bits << ", height bound " << height_bound
     << "\n";
  os << "  input digest " << input_digest << "\n";
  if (!error.empty()) os << "  ERROR: " << error << "\n";
  int failed = 0;
  for (const auto& c : checks.checks) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
    if (!c.pass && !c.witness.empty()) os << "  witness: " << c.witness;
    os << "\n";
    if (!c.pass) ++failed;
  }
  if (decomposition) {
    os << "  decomposition: r = " << decomposition->components.size()
       << ", dims =";
    for (int d : decomposition->component_dims()) os << " " << d;
    os << "\n";
    if (component_hom_dims) {
      os << "  pairwise dim Hom_YD(D_i, D_j):\n";
      for (const auto& row : *component_hom_dims) {
        os << "   ";
        for (int v : row) os << " " << v;
        os << "\n";
      }
    }
  }
  if (enumeration) {
    os << "  enumeration: " << enumeration->total_simples
       << " simple Yetter-Drinfeld modules, dims =";
    for (int d : enumeration->simple_dims) os << " " << d;
    os << ", sum of squares = " << enumeration->sum_dim_sq << "\n";
    for (const auto& c : enumeration->components) {
      os << "    component " << c.index << ": dim " << c.dim_component
         << ", Ind dim " << c.dim_induced << ", End dim "
         << c.dim_end_algebra << ", blocks:";
      for (const auto& b : c.blocks)
        os << " [d=" << b.d << " dimV=" << b.simple_dim
           << (b.certified_simple ? " certified" : "") << "]";
      os << "\n";
    }
  }
  os << "  result: " << (pass() ? "PASS" : "FAIL") << " (" << failed
     << " failed checks)\n";
  return os.str();
}

}  // namespace wha
