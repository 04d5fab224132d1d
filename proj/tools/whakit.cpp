// Command-line front end: verify / decompose / enumerate-yd / example with
// deterministic machine-readable reports.
//
// Exit codes: 0 all requested checks pass, 1 verification failure,
// 2 input parse error, 3 environment/IO error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "whakit/io.hpp"
#include "whakit/smash.hpp"

namespace {

using namespace wha;

struct CommonOpts {
  uint64_t seed = 0;
  long precision = 256;
  std::string height_bound = "1000000";
  std::string format = "json";
  std::string out_path;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--seed", o->seed, "random seed for the splitting fallback");
  cmd->add_option("--precision", o->precision,
                  "binary precision for numeric root location");
  cmd->add_option("--height-bound", o->height_bound,
                  "denominator bound for exact reconstruction");
  cmd->add_option("--format", o->format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", o->out_path, "write the report to a file");
  cmd->add_flag("--timing", o->timing, "print elapsed time to stderr");
}

int emit(const ReportDocument& doc, const CommonOpts& o,
         std::chrono::steady_clock::time_point t0) {
  std::string text = o.format == "text" ? doc.to_text() : doc.to_json();
  if (!o.out_path.empty()) {
    std::ofstream out(o.out_path);
    if (!out) {
      std::cerr << "whakit: cannot write " << o.out_path << "\n";
      return 3;
    }
    out << text;
  } else {
    std::cout << text;
  }
  if (o.timing) {
    auto dt = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - t0);
    std::cerr << "elapsed: " << dt.count() << " ms\n";
  }
  return doc.pass() ? 0 : 1;
}

std::string read_file(const std::string& path, bool* ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *ok = false;
    return "";
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  *ok = true;
  return ss.str();
}

struct LoadedAlgebra {
  AlgebraFile file;
  ReportDocument doc;
};

int load_algebra(const std::string& path, const CommonOpts& o,
                 const std::string& command, LoadedAlgebra* out) {
  bool ok = false;
  std::string bytes = read_file(path, &ok);
  if (!ok) {
    std::cerr << "whakit: cannot open " << path << "\n";
    return 3;
  }
  std::istringstream in(bytes);
  auto parsed = parse_algebra(in);
  if (std::holds_alternative<ParseError>(parsed)) {
    const auto& e = std::get<ParseError>(parsed);
    std::cerr << "whakit: parse error in " << path << " (line " << e.line
              << "): " << e.message << "\n";
    return 2;
  }
  out->file = std::move(std::get<AlgebraFile>(parsed));
  out->doc.command = command;
  out->doc.input_path = path;
  out->doc.input_digest = digest_bytes(bytes);
  out->doc.field = out->file.field->describe();
  out->doc.dim = out->file.dim;
  out->doc.seed = o.seed;
  out->doc.precision_bits = o.precision;
  out->doc.height_bound = o.height_bound;
  return 0;
}

// Shared verification ladder: axioms, quasi-triangularity, braided group.
struct VerifyState {
  std::optional<RMatrix> rmatrix;
  std::optional<BraidedGroup> group;
};

void run_verification(const AlgebraFile& af, ReportDocument* doc,
                      VerifyState* st) {
  doc->checks.merge(wha_verify(af.algebra));
  if (!af.rmatrix) {
    doc->checks.add("qt.rmatrix_present", false, "no rmatrix in input");
    return;
  }
  QTResult qt = qt_verify(af.algebra, *af.rmatrix);
  doc->checks.merge(qt.report);
  if (!qt.rmatrix) return;
  st->rmatrix = qt.rmatrix;
  BraidedGroupBuild bb = braided_group_build(af.algebra, *qt.rmatrix);
  doc->checks.merge(bb.report);
  if (!bb.group) return;
  doc->checks.merge(braided_group_verify(*bb.group));
  st->group = std::move(bb.group);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"whakit: exact computations with quasi-triangular weak Hopf "
               "algebras, braided groups, and Yetter-Drinfeld modules"};
  app.require_subcommand(1);

  CommonOpts vo, de, eo, xo;
  std::string vfile, dfile, efile, modfile;
  std::string xkind, xtable;

  auto* vcmd = app.add_subcommand(
      "verify", "verify the weak Hopf axioms, quasi-triangularity, and the "
                "braided group laws");
  vcmd->add_option("file", vfile, "algebra file")->required();
  add_common(vcmd, &vo);

  auto* dcmd = app.add_subcommand(
      "decompose",
      "decompose the braided group into minimal adjoint-stable subcoalgebras");
  dcmd->add_option("file", dfile, "algebra file")->required();
  add_common(dcmd, &de);

  auto* ecmd = app.add_subcommand(
      "enumerate-yd",
      "enumerate irreducible Yetter-Drinfeld modules per component");
  ecmd->add_option("file", efile, "algebra file")->required();
  ecmd->add_option("--modules", modfile,
                   "user-supplied simple right A-modules");
  add_common(ecmd, &eo);

  auto* xcmd = app.add_subcommand(
      "example", "build an algebra file from a group or groupoid table");
  xcmd->add_option("kind", xkind, "group | groupoid | double")
      ->required()
      ->check(CLI::IsMember({"group", "groupoid", "double"}));
  xcmd->add_option("table", xtable, "table file")->required();
  std::string xfield = "rational";
  xcmd->add_option("--coefficients", xfield,
                   "coefficient field: rational | cyclotomic:<n>");
  add_common(xcmd, &xo);

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();

  try {
    if (*vcmd) {
      LoadedAlgebra la;
      if (int rc = load_algebra(vfile, vo, "verify", &la)) return rc;
      VerifyState st;
      run_verification(la.file, &la.doc, &st);
      return emit(la.doc, vo, t0);
    }
    if (*dcmd) {
      LoadedAlgebra la;
      if (int rc = load_algebra(dfile, de, "decompose", &la)) return rc;
      VerifyState st;
      run_verification(la.file, &la.doc, &st);
      if (st.group) {
        mpz_class hb(de.height_bound);
        DecomposeResult dec = decompose_braided_group(*st.group, de.precision,
                                                      hb, de.seed);
        la.doc.checks.merge(dec.report);
        if (dec.status != SplitStatus::Ok) la.doc.error = dec.detail;
        if (dec.status == SplitStatus::Ok)
          la.doc.component_hom_dims =
              component_hom_table(*st.group, dec.components);
        la.doc.decomposition = std::move(dec);
      } else {
        la.doc.error = "verification failed before decomposition";
      }
      return emit(la.doc, de, t0);
    }
    if (*ecmd) {
      LoadedAlgebra la;
      if (int rc = load_algebra(efile, eo, "enumerate-yd", &la)) return rc;
      VerifyState st;
      run_verification(la.file, &la.doc, &st);
      if (st.rmatrix && la.doc.checks.all_pass()) {
        EnumerateOptions opts;
        opts.precision_bits = eo.precision;
        opts.height_bound = mpz_class(eo.height_bound);
        opts.seed = eo.seed;
        if (!modfile.empty()) {
          std::ifstream min(modfile);
          if (!min) {
            std::cerr << "whakit: cannot open " << modfile << "\n";
            return 3;
          }
          auto mods = parse_user_modules(min, la.file.field);
          if (std::holds_alternative<ParseError>(mods)) {
            const auto& e = std::get<ParseError>(mods);
            std::cerr << "whakit: parse error in " << modfile << " (line "
                      << e.line << "): " << e.message << "\n";
            return 2;
          }
          opts.user_modules = std::get<std::vector<UserModuleSpec>>(mods);
        }
        EnumerationResult en = enumerate_yd(la.file.algebra, *st.rmatrix, opts);
        la.doc.checks.merge(en.report);
        if (en.status != SplitStatus::Ok) la.doc.error = en.detail;
        la.doc.enumeration = std::move(en);
      } else {
        la.doc.error = "verification failed before enumeration";
      }
      return emit(la.doc, eo, t0);
    }
    if (*xcmd) {
      bool ok = false;
      std::string bytes = read_file(xtable, &ok);
      if (!ok) {
        std::cerr << "whakit: cannot open " << xtable << "\n";
        return 3;
      }
      std::istringstream in(bytes);
      auto parsed = parse_table(in);
      if (std::holds_alternative<ParseError>(parsed)) {
        const auto& e = std::get<ParseError>(parsed);
        std::cerr << "whakit: parse error in " << xtable << " (line "
                  << e.line << "): " << e.message << "\n";
        return 2;
      }
      const TableFile& tf = std::get<TableFile>(parsed);
      const Field* field = Field::rationals();
      if (xfield.rfind("cyclotomic:", 0) == 0) {
        int order = std::stoi(xfield.substr(11));
        field = Field::cyclotomic(order);
      } else if (xfield != "rational") {
        std::cerr << "whakit: unknown coefficient field " << xfield << "\n";
        return 2;
      }
      BuiltAlgebra built;
      if (xkind == "group") {
        if (!tf.group) {
          std::cerr << "whakit: table is not a group table\n";
          return 2;
        }
        built = build_group_algebra(*tf.group, field);
      } else if (xkind == "groupoid") {
        if (!tf.groupoid) {
          std::cerr << "whakit: table is not a groupoid table\n";
          return 2;
        }
        built = build_groupoid_algebra(*tf.groupoid, field);
      } else {
        if (!tf.group) {
          std::cerr << "whakit: drinfeld double needs a group table\n";
          return 2;
        }
        built = build_drinfeld_double(*tf.group, field);
      }
      std::string text =
          serialize_algebra(built.H, built.R, built.basis_labels);
      if (!xo.out_path.empty()) {
        std::ofstream out(xo.out_path);
        if (!out) {
          std::cerr << "whakit: cannot write " << xo.out_path << "\n";
          return 3;
        }
        out << text;
      } else {
        std::cout << text;
      }
      if (xo.timing) {
        auto dt = std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0);
        std::cerr << "elapsed: " << dt.count() << " ms\n";
      }
      return 0;
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "whakit: invalid input: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "whakit: error: " << ex.what() << "\n";
    return 3;
  }
  return 3;
}
