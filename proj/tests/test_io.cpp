#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "whakit/io.hpp"

using namespace wha;

TEST_CASE("algebra serialization fixpoint") {
  const Field* Q = Field::rationals();
  for (auto built :
       {build_group_algebra(GroupTable::symmetric3(), Q),
        build_groupoid_algebra(GroupoidTable::indiscrete(2), Q),
        build_drinfeld_double(GroupTable::cyclic(2), Q)}) {
    std::string text =
        serialize_algebra(built.H, built.R, built.basis_labels);
    std::istringstream in(text);
    auto parsed = parse_algebra(in);
    REQUIRE(std::holds_alternative<AlgebraFile>(parsed));
    const AlgebraFile& af = std::get<AlgebraFile>(parsed);
    CHECK(af.dim == built.H.dim());
    REQUIRE(af.rmatrix.has_value());
    CHECK(vec_eq(*af.rmatrix, built.R));
    std::string text2 =
        serialize_algebra(af.algebra, af.rmatrix, af.labels);
    CHECK(text2 == text);  // parse -> serialize is a fixpoint
    // and the parsed algebra is structurally identical
    CHECK(af.algebra.mult_tensor().to_dense() ==
          built.H.mult_tensor().to_dense());
    CHECK(af.algebra.comult_tensor().to_dense() ==
          built.H.comult_tensor().to_dense());
    CHECK(af.algebra.antipode_matrix() == built.H.antipode_matrix());
    CHECK(vec_eq(af.algebra.unit(), built.H.unit()));
    CHECK(vec_eq(af.algebra.counit_row(), built.H.counit_row()));
  }
}

TEST_CASE("cyclotomic coefficients round trip") {
  const Field* C3 = Field::cyclotomic(3);
  auto built = build_group_algebra(GroupTable::cyclic(3), C3);
  // perturb nothing; just serialize over the cyclotomic field and re-parse
  std::string text = serialize_algebra(built.H, built.R, {});
  CHECK(text.find("field cyclotomic 3") != std::string::npos);
  std::istringstream in(text);
  auto parsed = parse_algebra(in);
  REQUIRE(std::holds_alternative<AlgebraFile>(parsed));
  CHECK(std::get<AlgebraFile>(parsed).field == C3);
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_error = [](const std::string& text) {
    std::istringstream in(text);
    auto parsed = parse_algebra(in);
    REQUIRE(std::holds_alternative<ParseError>(parsed));
    return std::get<ParseError>(parsed);
  };
  CHECK(expect_error("bogus\n").message.find("header") != std::string::npos);
  CHECK(expect_error("whakit-algebra 1\nfield rational\ndim 2\nmult 0 5 0 : 1\n")
            .message.find("out of range") != std::string::npos);
  CHECK(expect_error("whakit-algebra 1\nfield rational\ndim 2\nmult 0 0 0 : x\n")
            .message.find("coefficient") != std::string::npos);
  CHECK(expect_error("whakit-algebra 1\nfield wibble\n").line == 2);
  CHECK(expect_error("whakit-algebra 1\nfield rational\n").message ==
        "missing dim");
}

TEST_CASE("table files") {
  GroupTable g = GroupTable::symmetric3();
  std::string text = serialize_group_table(g);
  std::istringstream in(text);
  auto parsed = parse_table(in);
  REQUIRE(std::holds_alternative<TableFile>(parsed));
  const TableFile& tf = std::get<TableFile>(parsed);
  REQUIRE(tf.group.has_value());
  CHECK(tf.group->order == 6);
  CHECK(tf.group->identity == g.identity);
  CHECK(tf.group->inverse == g.inverse);
  CHECK(tf.group->mul == g.mul);
  CHECK(tf.group->verify().all_pass());

  GroupoidTable gd = GroupoidTable::indiscrete(2);
  std::string text2 = serialize_groupoid_table(gd);
  std::istringstream in2(text2);
  auto parsed2 = parse_table(in2);
  REQUIRE(std::holds_alternative<TableFile>(parsed2));
  const TableFile& tf2 = std::get<TableFile>(parsed2);
  REQUIRE(tf2.groupoid.has_value());
  CHECK(tf2.groupoid->morphisms == 4);
  CHECK(tf2.groupoid->identity_of == gd.identity_of);
  CHECK(tf2.groupoid->inverse == gd.inverse);
  CHECK(tf2.groupoid->verify().all_pass());

  // a broken table is rejected
  std::istringstream bad("whakit-table 1\nkind group\norder 2\nmul 0 0 0\n");
  auto pbad = parse_table(bad);
  CHECK(std::holds_alternative<ParseError>(pbad));
}

TEST_CASE("digest is deterministic and content sensitive") {
  CHECK(digest_bytes("abc") == digest_bytes("abc"));
  CHECK(digest_bytes("abc") != digest_bytes("abd"));
  CHECK(digest_bytes("").rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("report documents are byte-deterministic") {
  ReportDocument doc;
  doc.command = "verify";
  doc.input_path = "x.alg";
  doc.input_digest = digest_bytes("test");
  doc.field = "Q";
  doc.dim = 6;
  doc.seed = 42;
  doc.precision_bits = 256;
  doc.height_bound = "1000000";
  doc.checks.add("a.check", true);
  doc.checks.add("b.check", false, "witness b3");
  std::string j1 = doc.to_json();
  std::string j2 = doc.to_json();
  CHECK(j1 == j2);
  CHECK(j1.find("\"timing_ms\": null") != std::string::npos);
  CHECK(j1.find("witness b3") != std::string::npos);
  CHECK_FALSE(doc.pass());
  std::string t1 = doc.to_text();
  CHECK(t1.find("[FAIL] b.check") != std::string::npos);
  CHECK(t1.find("result: FAIL") != std::string::npos);
}

TEST_CASE("user module files") {
  const Field* Q = Field::rationals();
  std::istringstream in(
      "whakit-modules 1\n"
      "# a one-dimensional module for component 1, block 0\n"
      "module 1 0 1 4\n"
      "act 0 0 0 : 1\n"
      "act 1 0 0 : -1/2\n"
      "end\n");
  auto parsed = parse_user_modules(in, Q);
  REQUIRE(std::holds_alternative<std::vector<UserModuleSpec>>(parsed));
  const auto& mods = std::get<std::vector<UserModuleSpec>>(parsed);
  REQUIRE(mods.size() == 1);
  CHECK(mods[0].component == 1);
  CHECK(mods[0].block == 0);
  CHECK(mods[0].module.dim == 1);
  REQUIRE(mods[0].module.act.size() == 4);
  CHECK(mods[0].module.act[1].at(0, 0) == Q->rational(-1, 2));

  std::istringstream bad("whakit-modules 1\nact 0 0 0 : 1\n");
  CHECK(std::holds_alternative<ParseError>(parse_user_modules(bad, Q)));
}
