#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "narcert/arith.hpp"
#include "narcert/signature.hpp"

namespace narcert {

enum class Arithmeticity { kVerifiedByLiterature, kIncludedUnverified };

std::string_view to_string(Arithmeticity flag);

/// One row of the table of cocompact arithmetic signatures with μ < π.
/// Arithmeticity is recorded data, never computed.
struct SigmaEntry {
  Signature signature;
  Rational mu_over_pi;
  Rational s_over_r;
  Arithmeticity flag = Arithmeticity::kVerifiedByLiterature;

  bool operator==(const SigmaEntry&) const = default;
};

struct TableRowIssue {
  std::size_t line_number = 0;  // 1-based line in the source text
  std::string line;
  std::string reason;
};

struct SigmaTableLoad {
  std::vector<SigmaEntry> entries;
  std::vector<TableRowIssue> issues;
};

/// Row format, byte for byte:
///   `<periods separated by single spaces> | <mu num/den> | <s/r> | <flag>`
/// Lines that are empty or start with '#' are skipped. A row is accepted only
/// if re-rendering it reproduces the line exactly and the recomputed measure
/// and s/r match the stored columns.
SigmaTableLoad load_sigma_table(std::string_view text);

/// As load_sigma_table, but throws TableCorrupt on the first bad row.
std::vector<SigmaEntry> parse_sigma_table(std::string_view text);

std::string render_sigma_row(const SigmaEntry& entry);

/// The shipped table (74 rows), parsed and self-verified once.
const std::vector<SigmaEntry>& sigma_table();
std::string_view embedded_sigma_table_text();

}  // namespace narcert
