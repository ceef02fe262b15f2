#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "narcert/arith.hpp"
#include "narcert/smith.hpp"

namespace narcert {

/// Signature (g; m_1, …, m_k) of a cocompact Fuchsian group. Periods are
/// kept sorted, so equality of signatures is equality of normal forms.
class Signature {
 public:
  Signature() = default;
  Signature(int genus, std::vector<int> periods);
  /// Genus-0 signature from its periods.
  static Signature of_periods(std::vector<int> periods) { return Signature(0, std::move(periods)); }

  /// Accepts "2,3,7", "(2,3,7)", "g1p2", "(1;2)", "g2", "(2;)".
  static Signature parse(std::string_view text);

  int genus() const { return genus_; }
  const std::vector<int>& periods() const { return periods_; }
  std::size_t period_count() const { return periods_.size(); }
  /// Number of canonical generators α_1, β_1, …, α_g, β_g, γ_1, …, γ_k.
  std::size_t generator_count() const { return 2 * static_cast<std::size_t>(genus_) + periods_.size(); }

  /// Cocompact Fuchsian iff the measure is strictly positive.
  bool admissible() const;

  /// Display form; genus 0 omits the genus: "(2,3,7)", "(1;2)".
  std::string str() const;
  /// Command-line form: "2,3,7", "g1p2", "g2".
  std::string spec() const;

  auto operator<=>(const Signature&) const = default;
  bool operator==(const Signature&) const = default;

 private:
  int genus_ = 0;
  std::vector<int> periods_;
};

/// μ/π = 2(2g − 2 + Σ (1 − 1/m_j)).
Rational measure(const Signature& sig);

/// q = μ/(4π) = r/s in lowest terms.
struct MeasureClass {
  Rational mu_over_pi;
  Rational q;

  Integer r() const { return numerator_of(q); }
  Integer s() const { return denominator_of(q); }
  Rational s_over_r() const { return 1 / q; }
};

MeasureClass measure_class(const Signature& sig);

/// Genus g' of a torsion-free normal subgroup of the given index:
/// index·μ = 2π(2g' − 2). Throws NonIntegralGenus when 1 + index·q is not
/// an integer and NonAdmissible when μ ≤ 0.
std::int64_t kernel_genus(const Signature& sig, std::int64_t index);

/// Abelianization of the canonical presentation, via the Smith form of its
/// relation matrix: one row per period relation m_j·γ_j, one row for the
/// long relation (commutators vanish, leaving Σ γ_j).
AbelianInvariants abelianization(const Signature& sig);
IntMatrix abelianization_relations(const Signature& sig);

/// Every admissible signature with genus ≤ max_genus, at most max_periods
/// periods, each period ≤ max_period and 0 < μ/π < mu_bound_over_pi, sorted
/// by normal form.
std::vector<Signature> enumerate_signatures(const Rational& mu_bound_over_pi,
                                            int max_genus, int max_periods,
                                            int max_period);

}  // namespace narcert
