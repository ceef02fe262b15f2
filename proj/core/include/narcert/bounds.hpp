#pragma once

// The bound layer: constants of the signature table, the prime conditions
// for g − 1 = p, the finite-arithmetic obstructions ruling out groups larger
// than 4(g − 1), attained genera, and the small-genus witnesses.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "narcert/arith.hpp"
#include "narcert/covers.hpp"
#include "narcert/sigma_table.hpp"
#include "narcert/ske.hpp"

namespace narcert {

struct RankedSignature {
  Integer s;
  Signature signature;
};

struct TheoremConstants {
  Integer R;                             // lcm of r over the table
  Integer S;                             // max s with r = 1
  std::vector<std::uint64_t> Pi;         // primes dividing a period of an r = 1 entry
  std::vector<RankedSignature> s_ranking;  // r = 1 entries, s descending, ties in table order

  /// Distinct s values of the ranking, descending.
  std::vector<std::uint64_t> distinct_s() const;
  std::vector<Signature> signatures_with_s(std::uint64_t s) const;
};

TheoremConstants theorem_constants(const std::vector<SigmaEntry>& table);
/// Constants of the shipped table, computed once.
const TheoremConstants& theorem_constants();

struct PrimeConditions {
  std::uint64_t p = 0;
  bool prime = false;
  bool coprime_to_R = false;
  bool outside_Pi = false;
  bool above_S = false;
  std::uint64_t residue_mod_60 = 0;
  bool congruence = false;  // p mod 60 in {23, 47, 59}

  /// Everything except p > S, which the obstruction ledger replaces.
  bool qualifies() const { return prime && coprime_to_R && outside_Pi && congruence; }
};

PrimeConditions prime_conditions(std::uint64_t p);

/// True iff the only divisor of s congruent to 1 mod p is 1.
bool sylow_forces_normal(std::uint64_t p, std::uint64_t s);
/// True iff Γ(sig) has no epimorphism onto C_p.
bool frobenius_obstruction(const Signature& sig, std::uint64_t p);

struct ListedGroup {
  std::string name;
  Integer order;
};

struct Degree24Report {
  bool not_prime_power = false;       // 24 is not a prime power
  bool stabilizer_bound = false;      // 2 < (24 − 2)/2
  std::vector<ListedGroup> listed;    // groups of degree 24 in the classification
  Integer threshold;                  // 48 · 23
  bool orders_exceed = false;         // every listed order > threshold
  bool passes() const { return not_prime_power && stabilizer_bound && orders_exceed; }
};

Degree24Report degree24_obstruction();

enum class Discharge { kGeneric, kSylowForced, kFrobenius, kDegree24 };
std::string_view to_string(Discharge d);

struct LedgerEntry {
  std::uint64_t s = 0;
  Discharge discharge = Discharge::kGeneric;
  std::vector<Signature> signatures;
  std::string argument;

  bool operator==(const LedgerEntry&) const = default;
};

/// One entry per distinct r = 1 value of s, or std::nullopt if some s
/// cannot be discharged by any of the mechanized arguments.
std::optional<std::vector<LedgerEntry>> obstruction_ledger(std::uint64_t p);

/// K = K_1 ∩ … ∩ K_t for covers of one base at distinct primes: the index in
/// Δ is the product of the primes because they are coprime.
struct IntersectionWitness {
  std::vector<CoverCertificate> covers;
  std::uint64_t index = 0;
  std::int64_t genus = 0;
  std::uint64_t bound = 0;
};

IntersectionWitness intersect_covers(std::vector<CoverCertificate> covers);

struct Witness {
  std::string label;
  std::variant<SkeCertificate, CoverCertificate, IntersectionWitness> data;

  std::uint64_t order() const;
  std::int64_t genus() const;
};

enum class CertificateStatus { kCatalog, kAttained, kLowerBoundOnly };
std::string_view to_string(CertificateStatus s);

struct GenusCertificate {
  std::int64_t genus = 0;
  std::uint64_t bound = 0;
  CertificateStatus status = CertificateStatus::kLowerBoundOnly;
  std::vector<Witness> witnesses;
  std::vector<LedgerEntry> ledger;  // attained genera only
  std::optional<Degree24Report> degree24;
};

/// Attained genera g ≤ limit: g − 1 = p qualifying and every s discharged.
std::vector<GenusCertificate> attained_genera(std::int64_t limit);

/// The witnesses for 2 ≤ g ≤ 23; throws WitnessSearchFailed(g) if any genus
/// ends up with bound ≤ 4(g − 1).
std::vector<GenusCertificate> small_genus_catalog(unsigned threads = 1);
GenusCertificate small_genus_entry(std::int64_t g);

/// Catalog entry for g ≤ 23, attained certificate when g − 1 qualifies,
/// otherwise the dihedral witness alone.
GenusCertificate certify_genus(std::int64_t g);

/// The (C3×C3)⋊D4 action used at genus 10, fixed as data.
FiniteGroup genus10_group();
/// Re-derives that action: first faithful D4 pair (entries in base-3 order)
/// for which Γ(2,2,2,4) admits an SKE.
FiniteGroup search_genus10_group();

nlohmann::json to_json(const GenusCertificate& cert);
/// Re-verifies every witness and ledger entry; throws on any mismatch.
GenusCertificate verify_genus_certificate(const nlohmann::json& doc,
                                          const GroupOptions& options = {});

}  // namespace narcert
