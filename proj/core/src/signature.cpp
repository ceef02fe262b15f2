#include "narcert/signature.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "narcert/error.hpp"

namespace narcert {

namespace {

int parse_int(std::string_view text, std::string_view context) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::kParse, "bad integer '" + std::string(text) + "' in signature '" +
                                       std::string(context) + "'");
  }
  return value;
}

std::vector<int> parse_period_list(std::string_view text, std::string_view context) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma - start), context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_periods(const std::vector<int>& periods) {
  std::string out;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(periods[i]);
  }
  return out;
}

}  // namespace

Signature::Signature(int genus, std::vector<int> periods)
    : genus_(genus), periods_(std::move(periods)) {
  if (genus_ < 0) throw Error(ErrorKind::kInvalidArgument, "negative orbit genus");
  for (int m : periods_) {
    if (m < 2) {
      throw Error(ErrorKind::kInvalidArgument,
                  "elliptic period " + std::to_string(m) + " is below 2");
    }
  }
  std::sort(periods_.begin(), periods_.end());
}

Signature Signature::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  std::string_view s = compact;
  if (s.empty()) throw Error(ErrorKind::kParse, "empty signature");

  if (s.front() == '(') {
    if (s.back() != ')') throw Error(ErrorKind::kParse, "unbalanced signature '" + compact + "'");
    const std::string_view inner = s.substr(1, s.size() - 2);
    const auto semi = inner.find(';');
    if (semi == std::string_view::npos) return Signature(0, parse_period_list(inner, compact));
    return Signature(parse_int(inner.substr(0, semi), compact),
                     parse_period_list(inner.substr(semi + 1), compact));
  }
  if (s.front() == 'g') {
    const auto p = s.find('p');
    if (p == std::string_view::npos) return Signature(parse_int(s.substr(1), compact), {});
    return Signature(parse_int(s.substr(1, p - 1), compact),
                     parse_period_list(s.substr(p + 1), compact));
  }
  return Signature(0, parse_period_list(s, compact));
}

bool Signature::admissible() const { return measure(*this) > 0; }

std::string Signature::str() const {
  if (genus_ == 0) return "(" + join_periods(periods_) + ")";
  return "(" + std::to_string(genus_) + ";" + join_periods(periods_) + ")";
}

std::string Signature::spec() const {
  if (genus_ == 0) return join_periods(periods_);
  std::string out = "g" + std::to_string(genus_);
  if (!periods_.empty()) out += "p" + join_periods(periods_);
  return out;
}

Rational measure(const Signature& sig) {
  Rational sum = 2 * sig.genus() - 2;
  for (int m : sig.periods()) sum += 1 - Rational(1, m);
  return 2 * sum;
}

MeasureClass measure_class(const Signature& sig) {
  MeasureClass out;
  out.mu_over_pi = measure(sig);
  if (out.mu_over_pi <= 0) {
    throw Error(ErrorKind::kNonAdmissible,
                sig.str() + " has measure " + format_pi_multiple(out.mu_over_pi));
  }
  out.q = out.mu_over_pi / 4;
  return out;
}

std::int64_t kernel_genus(const Signature& sig, std::int64_t index) {
  if (index < 1) throw Error(ErrorKind::kInvalidArgument, "index must be positive");
  const MeasureClass mc = measure_class(sig);
  const Rational genus = 1 + index * mc.q;
  if (denominator_of(genus) != 1) {
    throw Error(ErrorKind::kNonIntegralGenus,
                "index " + std::to_string(index) + " over " + sig.str() + " gives genus " +
                    to_string(genus));
  }
  return static_cast<std::int64_t>(numerator_of(genus));
}

IntMatrix abelianization_relations(const Signature& sig) {
  const std::size_t k = sig.period_count();
  const std::size_t n = sig.generator_count();
  const std::size_t elliptic0 = 2 * static_cast<std::size_t>(sig.genus());
  IntMatrix rows;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Integer> row(n, 0);
    row[elliptic0 + j] = sig.periods()[j];
    rows.push_back(std::move(row));
  }
  std::vector<Integer> long_relation(n, 0);
  for (std::size_t j = 0; j < k; ++j) long_relation[elliptic0 + j] = 1;
  rows.push_back(std::move(long_relation));
  return rows;
}

AbelianInvariants abelianization(const Signature& sig) {
  return abelian_invariants(abelianization_relations(sig), sig.generator_count());
}

std::vector<Signature> enumerate_signatures(const Rational& mu_bound_over_pi, int max_genus,
                                            int max_periods, int max_period) {
  if (mu_bound_over_pi <= 0 || max_genus < 0 || max_periods < 0 || max_period < 2) {
    throw Error(ErrorKind::kInvalidArgument, "enumeration caps must be positive");
  }
  std::vector<Signature> out;
  std::vector<int> periods;

  // Adding a period or raising one only increases μ, so a partial signature
  // whose μ already reaches the bound prunes its whole subtree.
  auto extend = [&](auto&& self, int genus, const Rational& mu, int min_period) -> void {
    if (mu > 0) out.emplace_back(genus, periods);
    if (static_cast<int>(periods.size()) == max_periods) return;
    for (int m = min_period; m <= max_period; ++m) {
      const Rational next = mu + 2 * (1 - Rational(1, m));
      if (next >= mu_bound_over_pi) break;
      periods.push_back(m);
      self(self, genus, next, m);
      periods.pop_back();
    }
  };
  for (int g = 0; g <= max_genus; ++g) {
    const Rational base = 2 * Rational(2 * g - 2);
    if (base >= mu_bound_over_pi) break;
    extend(extend, g, base, 2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace narcert
