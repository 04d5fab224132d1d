// File formats and reports: the structure-constant algebra format, group
// and groupoid table files, the user-supplied right-module format, and
// deterministic machine-readable reports (JSON) with a human text mode.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "whakit/builders.hpp"
#include "whakit/comod.hpp"

namespace wha {

struct AlgebraFile {
  const Field* field = nullptr;
  int dim = 0;
  WeakHopfAlgebra algebra;
  std::optional<Vec> rmatrix;
  std::vector<std::string> labels;
};

struct ParseError {
  int line = 0;
  std::string message;
};

/// Parses the whakit-algebra format; on failure returns the first error.
std::variant<AlgebraFile, ParseError> parse_algebra(std::istream& in);
std::variant<AlgebraFile, ParseError> parse_algebra_file(
    const std::string& path);
/// Canonical serialization; parse(serialize(x)) reproduces x byte-for-byte
/// after one round trip.
std::string serialize_algebra(const WeakHopfAlgebra& H,
                              const std::optional<Vec>& R,
                              const std::vector<std::string>& labels);

struct TableFile {
  std::string kind;  // "group" or "groupoid"
  std::optional<GroupTable> group;
  std::optional<GroupoidTable> groupoid;
};
std::variant<TableFile, ParseError> parse_table(std::istream& in);
std::variant<TableFile, ParseError> parse_table_file(const std::string& path);
std::string serialize_group_table(const GroupTable& g);
std::string serialize_groupoid_table(const GroupoidTable& g);

/// User-supplied simple right A-modules for enumerate-yd.
std::variant<std::vector<UserModuleSpec>, ParseError> parse_user_modules(
    std::istream& in, const Field* field);

/// FNV-1a 64-bit digest of raw bytes, as "fnv1a64:<hex>".
std::string digest_bytes(const std::string& bytes);

struct ReportDocument {
  std::string command;
  std::string input_path;
  std::string input_digest;
  std::string field;
  int dim = 0;
  uint64_t seed = 0;
  long precision_bits = 256;
  std::string height_bound;
  Report checks;
  // optional payloads
  std::optional<DecomposeResult> decomposition;
  std::optional<std::vector<std::vector<int>>> component_hom_dims;
  std::optional<EnumerationResult> enumeration;
  std::string error;  // nonempty for hard failures

  bool pass() const { return error.empty() && checks.all_pass(); }
  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace wha
