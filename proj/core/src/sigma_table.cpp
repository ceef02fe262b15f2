#include "narcert/sigma_table.hpp"

#include <optional>

#include "narcert/error.hpp"

namespace narcert {

namespace detail {
std::string_view embedded_sigma_table();
}  // namespace detail

namespace {

constexpr std::string_view kSeparator = " | ";

std::optional<Arithmeticity> parse_flag(std::string_view text) {
  if (text == to_string(Arithmeticity::kVerifiedByLiterature)) {
    return Arithmeticity::kVerifiedByLiterature;
  }
  if (text == to_string(Arithmeticity::kIncludedUnverified)) {
    return Arithmeticity::kIncludedUnverified;
  }
  return std::nullopt;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(kSeparator, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + kSeparator.size();
  }
  return out;
}

// Returns the entry or fills `reason`.
std::optional<SigmaEntry> parse_row(std::string_view line, std::string& reason) {
  const auto fields = split_fields(line);
  if (fields.size() != 4) {
    reason = "expected 4 fields separated by \" | \"";
    return std::nullopt;
  }
  SigmaEntry entry;
  try {
    std::vector<int> periods;
    std::size_t start = 0;
    const std::string_view period_field = fields[0];
    while (true) {
      const auto space = period_field.find(' ', start);
      const std::string token(period_field.substr(start, space - start));
      const Rational value = parse_rational(token);
      if (denominator_of(value) != 1) throw Error(ErrorKind::kParse, "period is not an integer");
      periods.push_back(static_cast<int>(numerator_of(value)));
      if (space == std::string_view::npos) break;
      start = space + 1;
    }
    entry.signature = Signature(0, std::move(periods));
    if (fields[1].find('/') == std::string_view::npos) {
      reason = "measure column must be written num/den";
      return std::nullopt;
    }
    entry.mu_over_pi = parse_rational(fields[1]);
    entry.s_over_r = parse_rational(fields[2]);
  } catch (const Error& e) {
    reason = e.what();
    return std::nullopt;
  }
  const auto flag = parse_flag(fields[3]);
  if (!flag) {
    reason = "unknown arithmeticity flag '" + std::string(fields[3]) + "'";
    return std::nullopt;
  }
  entry.flag = *flag;

  if (render_sigma_row(entry) != line) {
    reason = "row is not in canonical form";
    return std::nullopt;
  }
  const Rational mu = measure(entry.signature);
  if (mu != entry.mu_over_pi) {
    reason = "stored measure " + to_string(entry.mu_over_pi) + " but " +
             entry.signature.str() + " has measure " + to_string(mu);
    return std::nullopt;
  }
  if (mu <= 0) {
    reason = entry.signature.str() + " is not admissible";
    return std::nullopt;
  }
  const Rational s_over_r = measure_class(entry.signature).s_over_r();
  if (s_over_r != entry.s_over_r) {
    reason = "stored s/r " + to_string(entry.s_over_r) + " but recomputed " +
             to_string(s_over_r);
    return std::nullopt;
  }
  return entry;
}

}  // namespace

std::string_view to_string(Arithmeticity flag) {
  switch (flag) {
    case Arithmeticity::kVerifiedByLiterature: return "verified-by-literature";
    case Arithmeticity::kIncludedUnverified: return "included-unverified";
  }
  return "unknown";
}

std::string render_sigma_row(const SigmaEntry& entry) {
  std::string out;
  for (std::size_t i = 0; i < entry.signature.periods().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(entry.signature.periods()[i]);
  }
  out += kSeparator;
  out += numerator_of(entry.mu_over_pi).str() + "/" + denominator_of(entry.mu_over_pi).str();
  out += kSeparator;
  out += to_string(entry.s_over_r);
  out += kSeparator;
  out += to_string(entry.flag);
  return out;
}

SigmaTableLoad load_sigma_table(std::string_view text) {
  SigmaTableLoad out;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (line.empty() || line.front() == '#') continue;

    std::string reason;
    if (auto entry = parse_row(line, reason)) {
      out.entries.push_back(std::move(*entry));
    } else {
      out.issues.push_back({line_number, std::string(line), reason});
    }
  }
  return out;
}

std::vector<SigmaEntry> parse_sigma_table(std::string_view text) {
  auto load = load_sigma_table(text);
  if (!load.issues.empty()) {
    const auto& issue = load.issues.front();
    throw Error(ErrorKind::kTableCorrupt,
                "line " + std::to_string(issue.line_number) + " '" + issue.line +
                    "': " + issue.reason,
                static_cast<std::int64_t>(issue.line_number));
  }
  return std::move(load.entries);
}

std::string_view embedded_sigma_table_text() { return detail::embedded_sigma_table(); }

const std::vector<SigmaEntry>& sigma_table() {
  static const std::vector<SigmaEntry> table = parse_sigma_table(embedded_sigma_table_text());
  return table;
}

}  // namespace narcert
