#include "narcert/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "narcert/error.hpp"
#include "narcert/version.hpp"

namespace narcert {

namespace {

std::vector<std::uint64_t> qualifying_divisors(std::uint64_t p, std::uint64_t s) {
  std::vector<std::uint64_t> out;
  for (auto d : divisors(s)) {
    if (d > 1 && d % p == 1) out.push_back(d);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> TheoremConstants::distinct_s() const {
  std::vector<std::uint64_t> out;
  for (const auto& entry : s_ranking) {
    const auto s = static_cast<std::uint64_t>(entry.s);
    if (out.empty() || out.back() != s) out.push_back(s);
  }
  return out;
}

std::vector<Signature> TheoremConstants::signatures_with_s(std::uint64_t s) const {
  std::vector<Signature> out;
  for (const auto& entry : s_ranking) {
    if (entry.s == s) out.push_back(entry.signature);
  }
  return out;
}

TheoremConstants theorem_constants(const std::vector<SigmaEntry>& table) {
  TheoremConstants out;
  out.R = 1;
  out.S = 0;
  for (const auto& entry : table) {
    const MeasureClass mc = measure_class(entry.signature);
    out.R = boost::multiprecision::lcm(out.R, mc.r());
    if (mc.r() != 1) continue;
    out.S = std::max(out.S, mc.s());
    out.s_ranking.push_back({mc.s(), entry.signature});
    for (int m : entry.signature.periods()) {
      for (auto q : prime_factors(static_cast<std::uint64_t>(m))) out.Pi.push_back(q);
    }
  }
  std::sort(out.Pi.begin(), out.Pi.end());
  out.Pi.erase(std::unique(out.Pi.begin(), out.Pi.end()), out.Pi.end());
  std::stable_sort(out.s_ranking.begin(), out.s_ranking.end(),
                   [](const auto& x, const auto& y) { return x.s > y.s; });
  return out;
}

const TheoremConstants& theorem_constants() {
  static const TheoremConstants constants = theorem_constants(sigma_table());
  return constants;
}

PrimeConditions prime_conditions(std::uint64_t p) {
  const TheoremConstants& c = theorem_constants();
  PrimeConditions out;
  out.p = p;
  out.prime = is_prime(p);
  out.coprime_to_R = p > 0 && boost::multiprecision::gcd(Integer(p), c.R) == 1;
  out.outside_Pi = std::find(c.Pi.begin(), c.Pi.end(), p) == c.Pi.end();
  out.above_S = Integer(p) > c.S;
  out.residue_mod_60 = p % 60;
  out.congruence = out.residue_mod_60 == 23 || out.residue_mod_60 == 47 ||
                   out.residue_mod_60 == 59;
  return out;
}

bool sylow_forces_normal(std::uint64_t p, std::uint64_t s) {
  if (p < 2 || s < 1) throw Error(ErrorKind::kInvalidArgument, "need a prime p and s >= 1");
  return qualifying_divisors(p, s).empty();
}

bool frobenius_obstruction(const Signature& sig, std::uint64_t p) {
  return abelianization(sig).epimorphisms_onto_cyclic(p) == 0;
}

Degree24Report degree24_obstruction() {
  constexpr std::uint64_t n = 24;
  constexpr std::uint64_t q = 23;
  Degree24Report out;
  out.not_prime_power = !is_prime_power(n);
  out.stabilizer_bound = 2 < (n - 2) / 2;
  out.listed = {
      {"S24", factorial(24)},
      {"A24", factorial(24) / 2},
      {"M24", Integer(244823040)},
      {"PGL(2,23)", Integer(q * (q * q - 1))},
      {"PSL(2,23)", Integer(q * (q * q - 1) / 2)},
  };
  out.threshold = 48 * 23;
  out.orders_exceed = std::all_of(out.listed.begin(), out.listed.end(),
                                  [&](const auto& g) { return g.order > out.threshold; });
  return out;
}

std::string_view to_string(Discharge d) {
  switch (d) {
    case Discharge::kGeneric: return "generic";
    case Discharge::kSylowForced: return "sylow-forced";
    case Discharge::kFrobenius: return "frobenius";
    case Discharge::kDegree24: return "degree-24";
  }
  return "unknown";
}

std::optional<std::vector<LedgerEntry>> obstruction_ledger(std::uint64_t p) {
  const TheoremConstants& c = theorem_constants();
  const std::string P = std::to_string(p);
  std::vector<LedgerEntry> ledger;
  for (const std::uint64_t s : c.distinct_s()) {
    LedgerEntry entry;
    entry.s = s;
    entry.signatures = c.signatures_with_s(s);
    const std::string S = std::to_string(s);
    const auto divisors_1 = qualifying_divisors(p, s);

    if (Integer(p) > c.S) {
      entry.discharge = Discharge::kGeneric;
      entry.argument = "p = " + P + " > S = " + to_string(c.S) +
                       ", so a group of order " + P + "*" + S + " has a normal Sylow " + P +
                       "-subgroup";
    } else if (divisors_1.empty()) {
      entry.discharge = Discharge::kSylowForced;
      entry.argument = "no divisor of " + S + " other than 1 is 1 mod " + P +
                       ", so the Sylow " + P + "-subgroup is normal";
    } else if (p == 23 && divisors_1 == std::vector<std::uint64_t>{24} &&
               degree24_obstruction().passes()) {
      entry.discharge = Discharge::kDegree24;
      entry.argument = "n_23 = 24 Sylow subgroups; 24 is not a prime power, two-point "
                       "stabilizers have order 2 < 11, and every listed group of degree 24 "
                       "has order above 48*23 = 1104";
    } else if (divisors_1 == std::vector<std::uint64_t>{s} &&
               std::all_of(entry.signatures.begin(), entry.signatures.end(),
                           [p](const auto& sig) { return frobenius_obstruction(sig, p); })) {
      entry.discharge = Discharge::kFrobenius;
      std::string invariants;
      for (const auto& sig : entry.signatures) {
        if (!invariants.empty()) invariants += ", ";
        invariants += "Γ" + sig.str() + " has abelianization " + abelianization(sig).str();
      }
      entry.argument = "n_" + P + " = " + S + " forces a Frobenius group with kernel of order " +
                       S + " and an epimorphism onto C_" + P + "; " + invariants +
                       ", so no such epimorphism exists";
    } else {
      return std::nullopt;
    }
    ledger.push_back(std::move(entry));
  }
  return ledger;
}

IntersectionWitness intersect_covers(std::vector<CoverCertificate> covers) {
  if (covers.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "an intersection needs at least two covers");
  }
  const SkeCertificate& base = covers.front().base;
  std::uint64_t index = 1;
  std::vector<std::uint32_t> primes;
  for (const auto& c : covers) {
    if (c.base.signature != base.signature ||
        c.base.group.descriptor() != base.group.descriptor() || c.base.images != base.images) {
      throw Error(ErrorKind::kVerificationFailed, "covers of an intersection share one base");
    }
    if (std::find(primes.begin(), primes.end(), c.prime) != primes.end()) {
      throw Error(ErrorKind::kVerificationFailed, "intersection primes must be distinct");
    }
    primes.push_back(c.prime);
    index *= c.prime;
  }
  const std::uint64_t bound = index * base.group_order;
  const std::int64_t genus = kernel_genus(base.signature, static_cast<std::int64_t>(bound));
  if (genus != static_cast<std::int64_t>(index) * (base.kernel_genus - 1) + 1) {
    throw Error(ErrorKind::kVerificationFailed, "intersection genus is inconsistent");
  }
  return IntersectionWitness{std::move(covers), index, genus, bound};
}

std::uint64_t Witness::order() const {
  return std::visit(
      [](const auto& w) -> std::uint64_t {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, SkeCertificate>) return w.group_order;
        else return w.bound;
      },
      data);
}

std::int64_t Witness::genus() const {
  return std::visit(
      [](const auto& w) -> std::int64_t {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, SkeCertificate>) return w.kernel_genus;
        else return w.genus;
      },
      data);
}

std::string_view to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::kCatalog: return "catalog";
    case CertificateStatus::kAttained: return "attained";
    case CertificateStatus::kLowerBoundOnly: return "lower-bound-only";
  }
  return "unknown";
}

namespace {

Witness dihedral_witness(std::int64_t g) {
  return Witness{"dihedral family", lemma32_ske(g)};
}

std::optional<GenusCertificate> attained_certificate(std::int64_t g) {
  const auto p = static_cast<std::uint64_t>(g - 1);
  if (!prime_conditions(p).qualifies()) return std::nullopt;
  auto ledger = obstruction_ledger(p);
  if (!ledger) return std::nullopt;
  GenusCertificate cert;
  cert.genus = g;
  cert.status = CertificateStatus::kAttained;
  cert.witnesses.push_back(dihedral_witness(g));
  cert.bound = cert.witnesses.front().order();
  cert.ledger = std::move(*ledger);
  for (const auto& entry : cert.ledger) {
    if (entry.discharge == Discharge::kDegree24) cert.degree24 = degree24_obstruction();
  }
  return cert;
}

SkeCertificate first_ske(std::int64_t g, const Signature& sig, const FiniteGroup& group) {
  auto result = search_ske(sig, group);
  if (result.certificates.empty()) {
    throw Error(ErrorKind::kWitnessSearchFailed,
                "genus " + std::to_string(g) + ": no SKE from Γ" + sig.str() + " onto " +
                    group.descriptor(),
                g);
  }
  return std::move(result.certificates.front());
}

}  // namespace

std::vector<GenusCertificate> attained_genera(std::int64_t limit) {
  if (limit < 2) throw Error(ErrorKind::kInvalidArgument, "limit must be at least 2");
  std::vector<GenusCertificate> out;
  for (std::int64_t g = 3; g <= limit; ++g) {
    if (auto cert = attained_certificate(g)) out.push_back(std::move(*cert));
  }
  return out;
}

FiniteGroup genus10_group() {
  return semidirect_c3xc3_d4({{{0, 1}, {2, 0}}}, {{{0, 1}, {1, 0}}});
}

FiniteGroup search_genus10_group() {
  const Signature sig = Signature::of_periods({2, 2, 2, 4});
  auto matrix = [](int code) {
    return Matrix3x2{{{code / 27, (code / 9) % 3}, {(code / 3) % 3, code % 3}}};
  };
  for (int r = 0; r < 81; ++r) {
    for (int s = 0; s < 81; ++s) {
      std::optional<FiniteGroup> group;
      try {
        group = semidirect_c3xc3_d4(matrix(r), matrix(s));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kInvalidArgument) throw;
        continue;
      }
      if (group->order() == 72 && !search_ske(sig, *group).certificates.empty()) return *group;
    }
  }
  throw Error(ErrorKind::kWitnessSearchFailed, "no D4 action admits the genus-10 SKE", 10);
}

GenusCertificate small_genus_entry(std::int64_t g) {
  if (g < 2 || g > 23) throw Error(ErrorKind::kInvalidArgument, "catalog covers 2 <= g <= 23");
  GenusCertificate cert;
  cert.genus = g;
  cert.status = CertificateStatus::kCatalog;
  cert.witnesses.push_back(dihedral_witness(g));

  if (g == 2) {
    cert.witnesses.push_back(
        {"triangle group onto GL(2,3)", first_ske(g, Signature::of_periods({2, 3, 8}), gl2_3())});
  }
  if (g % 2 == 1) {
    const std::int64_t m = (g - 1) / 2;
    const FiniteGroup group = construct("product:symmetric:3,dihedral:" + std::to_string(m));
    cert.witnesses.push_back({"S3 x dihedral of order " + std::to_string(2 * m),
                              first_ske(g, Signature::of_periods({2, 2, 2, 6}), group)});
  }
  if (g == 10) {
    cert.witnesses.push_back({"split extension of C3xC3 by D4",
                              first_ske(g, Signature::of_periods({2, 2, 2, 4}), genus10_group())});
  }
  if (g == 16) {
    cert.witnesses.push_back({"triangle group onto A6",
                              first_ske(g, Signature::of_periods({3, 3, 4}), alternating(6))});
  }

  const auto p = static_cast<std::uint32_t>(g - 1);
  if (is_prime(p)) {
    for (const auto& c : kazaz_cases()) {
      const KernelPresentation kp(kazaz_base(c));
      const HomologyAction h(kp, p);
      const auto planes = invariant_hyperplanes(h);
      if (planes.empty()) continue;
      cert.witnesses.push_back({std::string("case ") + c.letter + " cover",
                                build_cover(kp, h, planes.front())});
    }
  }
  if (g == 22) {
    const KernelPresentation kp(kazaz_base(kazaz_case('g')));
    std::vector<CoverCertificate> covers;
    for (const std::uint32_t q : {3U, 7U}) {
      const HomologyAction h(kp, q);
      const auto planes = invariant_hyperplanes(h);
      if (planes.empty()) {
        throw Error(ErrorKind::kWitnessSearchFailed, "genus 22: no invariant hyperplane", g);
      }
      covers.push_back(build_cover(kp, h, planes.front()));
    }
    cert.witnesses.push_back({"case g covers at 3 and 7", intersect_covers(std::move(covers))});
  }

  for (const auto& w : cert.witnesses) cert.bound = std::max(cert.bound, w.order());
  if (cert.bound <= static_cast<std::uint64_t>(4 * (g - 1))) {
    throw Error(ErrorKind::kWitnessSearchFailed,
                "genus " + std::to_string(g) + ": no witness beats 4(g-1)", g);
  }
  return cert;
}

std::vector<GenusCertificate> small_genus_catalog(unsigned threads) {
  constexpr std::int64_t kFirst = 2;
  constexpr std::int64_t kLast = 23;
  std::vector<std::optional<GenusCertificate>> slots(kLast - kFirst + 1);
  const unsigned workers = std::max(1U, threads);
  if (workers == 1) {
    for (std::int64_t g = kFirst; g <= kLast; ++g) slots[g - kFirst] = small_genus_entry(g);
  } else {
    std::atomic<std::int64_t> next{kFirst};
    std::exception_ptr error;
    std::mutex mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::int64_t g = next++; g <= kLast; g = next++) {
          try {
            slots[g - kFirst] = small_genus_entry(g);
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  std::vector<GenusCertificate> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

GenusCertificate certify_genus(std::int64_t g) {
  if (g < 2) throw Error(ErrorKind::kInvalidArgument, "genus must be at least 2");
  if (g <= 23) return small_genus_entry(g);
  if (auto cert = attained_certificate(g)) return std::move(*cert);
  GenusCertificate cert;
  cert.genus = g;
  cert.status = CertificateStatus::kLowerBoundOnly;
  cert.witnesses.push_back(dihedral_witness(g));
  cert.bound = cert.witnesses.front().order();
  return cert;
}

namespace {

nlohmann::json signatures_json(const std::vector<Signature>& sigs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : sigs) out.push_back(s.spec());
  return out;
}

nlohmann::json to_json(const IntersectionWitness& w) {
  nlohmann::json covers = nlohmann::json::array();
  for (const auto& c : w.covers) covers.push_back(to_json(c));
  return {{"kind", "intersection"}, {"covers", std::move(covers)}, {"index", w.index},
          {"genus", w.genus},       {"bound", w.bound}};
}

nlohmann::json to_json(const Degree24Report& r) {
  nlohmann::json listed = nlohmann::json::array();
  for (const auto& g : r.listed) listed.push_back({{"name", g.name}, {"order", to_string(g.order)}});
  return {{"not_prime_power", r.not_prime_power},
          {"stabilizer_bound", r.stabilizer_bound},
          {"listed", std::move(listed)},
          {"threshold", to_string(r.threshold)},
          {"orders_exceed", r.orders_exceed},
          {"passes", r.passes()}};
}

Witness witness_from_json(const nlohmann::json& doc, const GroupOptions& options) {
  const auto label = doc.at("label").get<std::string>();
  const auto kind = doc.at("kind").get<std::string>();
  const auto& body = doc.at("certificate");
  if (kind == "ske") return Witness{label, ske_from_json(body, options)};
  if (kind == "cover") return Witness{label, cover_from_json(body, options)};
  if (kind == "intersection") {
    std::vector<CoverCertificate> covers;
    for (const auto& c : body.at("covers")) covers.push_back(cover_from_json(c, options));
    IntersectionWitness w = intersect_covers(std::move(covers));
    if (w.index != body.at("index").get<std::uint64_t>() ||
        w.genus != body.at("genus").get<std::int64_t>() ||
        w.bound != body.at("bound").get<std::uint64_t>()) {
      throw Error(ErrorKind::kVerificationFailed, "intersection witness numbers disagree");
    }
    return Witness{label, std::move(w)};
  }
  throw Error(ErrorKind::kParse, "unknown witness kind '" + kind + "'");
}

}  // namespace

nlohmann::json to_json(const GenusCertificate& cert) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : cert.witnesses) {
    nlohmann::json item{{"label", w.label}};
    std::visit(
        [&item](const auto& data) {
          using T = std::decay_t<decltype(data)>;
          if constexpr (std::is_same_v<T, SkeCertificate>) item["kind"] = "ske";
          else if constexpr (std::is_same_v<T, CoverCertificate>) item["kind"] = "cover";
          else item["kind"] = "intersection";
          item["certificate"] = to_json(data);
        },
        w.data);
    witnesses.push_back(std::move(item));
  }
  nlohmann::json ledger = nlohmann::json::array();
  for (const auto& e : cert.ledger) {
    ledger.push_back({{"s", e.s},
                      {"discharge", to_string(e.discharge)},
                      {"signatures", signatures_json(e.signatures)},
                      {"argument", e.argument}});
  }
  nlohmann::json doc{
      {"schema_version", kSchemaVersion},
      {"kind", "genus"},
      {"genus", cert.genus},
      {"bound", cert.bound},
      {"status", to_string(cert.status)},
      {"witnesses", std::move(witnesses)},
      {"ledger", std::move(ledger)},
      {"verifier_version", kVersion},
  };
  if (cert.degree24) doc["degree24"] = to_json(*cert.degree24);
  return doc;
}

GenusCertificate verify_genus_certificate(const nlohmann::json& doc, const GroupOptions& options) {
  GenusCertificate cert;
  std::string status;
  try {
    if (doc.at("schema_version").get<int>() != kSchemaVersion ||
        doc.at("kind").get<std::string>() != "genus") {
      throw Error(ErrorKind::kParse, "not a genus certificate of this schema");
    }
    cert.genus = doc.at("genus").get<std::int64_t>();
    cert.bound = doc.at("bound").get<std::uint64_t>();
    status = doc.at("status").get<std::string>();
    for (const auto& w : doc.at("witnesses")) cert.witnesses.push_back(witness_from_json(w, options));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed genus certificate: ") + e.what());
  }
  const std::int64_t g = cert.genus;
  if (g < 2) throw Error(ErrorKind::kVerificationFailed, "genus below 2");
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::kVerificationFailed, "genus " + std::to_string(g) + ": " + why);
  };

  std::uint64_t best = 0;
  for (const auto& w : cert.witnesses) {
    if (w.genus() != g) fail("witness '" + w.label + "' has genus " + std::to_string(w.genus()));
    best = std::max(best, w.order());
  }
  if (cert.witnesses.empty() || best != cert.bound) fail("bound is not the best witness order");
  const auto floor = static_cast<std::uint64_t>(4 * (g - 1));
  if (cert.bound < floor) fail("bound below 4(g-1)");

  if (status == "catalog") {
    cert.status = CertificateStatus::kCatalog;
    if (g > 23 || cert.bound <= floor) fail("catalog entries must beat 4(g-1) below genus 24");
  } else if (status == "attained") {
    cert.status = CertificateStatus::kAttained;
    if (cert.bound != floor) fail("attained bound must equal 4(g-1)");
    const auto p = static_cast<std::uint64_t>(g - 1);
    if (!prime_conditions(p).qualifies()) fail("g-1 does not satisfy the prime conditions");
    auto ledger = obstruction_ledger(p);
    if (!ledger) fail("some s cannot be discharged");
    nlohmann::json expected = nlohmann::json::array();
    for (const auto& e : *ledger) {
      expected.push_back({{"s", e.s},
                          {"discharge", to_string(e.discharge)},
                          {"signatures", signatures_json(e.signatures)},
                          {"argument", e.argument}});
    }
    if (doc.at("ledger") != expected) fail("ledger disagrees with recomputation");
    cert.ledger = std::move(*ledger);
    for (const auto& e : cert.ledger) {
      if (e.discharge == Discharge::kDegree24) cert.degree24 = degree24_obstruction();
    }
    if (cert.degree24 && !cert.degree24->passes()) fail("degree-24 sub-checks fail");
  } else if (status == "lower-bound-only") {
    cert.status = CertificateStatus::kLowerBoundOnly;
  } else {
    fail("unknown status '" + status + "'");
  }
  return cert;
}

}  // namespace narcert
