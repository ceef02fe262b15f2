#include <doctest.h>

#include <algorithm>
#include <set>

#include "narcert/bounds.hpp"
#include "narcert/error.hpp"
#include "narcert/sigma_table.hpp"

using namespace narcert;

namespace {

std::vector<std::uint64_t> ranking_prefix(const TheoremConstants& c, std::size_t n) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < n && i < c.s_ranking.size(); ++i)
    out.push_back(static_cast<std::uint64_t>(c.s_ranking[i].s));
  return out;
}

const LedgerEntry& entry_for(const std::vector<LedgerEntry>& ledger, std::uint64_t s) {
  const auto it = std::find_if(ledger.begin(), ledger.end(), [&](const auto& e) { return e.s == s; });
  REQUIRE(it != ledger.end());
  return *it;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("constants computed from the table") {
  const auto& c = theorem_constants();
  // The table's r values are {1, 2, 3, 5, 7}; see the acceptance run for 420.
  CHECK(c.R == 210);
  CHECK(c.S == 84);
  CHECK(c.Pi == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(ranking_prefix(c, 9) == std::vector<std::uint64_t>{84, 48, 40, 36, 30, 24, 24, 24, 21});
  std::vector<std::string> first;
  for (std::size_t i = 0; i < 9; ++i) first.push_back(c.s_ranking[i].signature.str());
  CHECK(first == std::vector<std::string>{"(2,3,7)", "(2,3,8)", "(2,4,5)", "(2,3,9)", "(2,3,10)",
                                          "(2,3,12)", "(2,4,6)", "(3,3,4)", "(2,3,14)"});
  CHECK(c.distinct_s().front() == 84);
  CHECK(c.signatures_with_s(48) == std::vector<Signature>{Signature::parse("2,3,8")});
}

TEST_CASE("constants ignore the three unverified entries") {
  std::vector<SigmaEntry> verified;
  for (const auto& e : sigma_table())
    if (e.flag == Arithmeticity::kVerifiedByLiterature) verified.push_back(e);
  REQUIRE(verified.size() == 71);
  const auto full = theorem_constants(sigma_table());
  const auto trimmed = theorem_constants(verified);
  CHECK(full.R == trimmed.R);
  CHECK(full.S == trimmed.S);
  CHECK(full.Pi == trimmed.Pi);
}

TEST_CASE("prime conditions") {
  const auto p107 = prime_conditions(107);
  CHECK(p107.prime);
  CHECK(p107.coprime_to_R);
  CHECK(p107.outside_Pi);
  CHECK(p107.above_S);
  CHECK(p107.congruence);
  CHECK(p107.qualifies());
  const auto p23 = prime_conditions(23);
  CHECK(p23.congruence);
  CHECK_FALSE(p23.above_S);
  CHECK(p23.qualifies());
  const auto p61 = prime_conditions(61);
  CHECK(p61.residue_mod_60 == 1);
  CHECK_FALSE(p61.congruence);
  CHECK(prime_conditions(83).congruence);
  CHECK_FALSE(prime_conditions(83).above_S);
}

TEST_CASE("congruence implications hold for every prime below 10^6") {
  // p = 23, 47, 59 mod 60 means p = 3 mod 4, p = 2 mod 3, p = 3 or 4 mod 5.
  // Then p - 1 is 2 mod 4 and prime to 3 and 5, so gcd(p - 1, E) = 2 for
  // every even E built from 2, 3, 5.
  std::size_t checked = 0;
  bool ok = true;
  for (std::uint64_t p = 2; p < 1'000'000; ++p) {
    const auto r = p % 60;
    if (r != 23 && r != 47 && r != 59) continue;
    if (!is_prime(p)) continue;
    ++checked;
    ok = ok && gcd_u64(p, 420) == 1 && p > 7;
    for (std::uint64_t e : {2ull, 4ull, 8ull, 24ull, 48ull, 120ull, 240ull, 720ull, 2880ull})
      ok = ok && gcd_u64(p - 1, e) == 2;
  }
  CHECK(ok);
  CHECK(checked > 10000);
}

TEST_CASE("sylow forcing") {
  CHECK(sylow_forces_normal(59, 84));
  CHECK_FALSE(sylow_forces_normal(47, 48));
  CHECK_FALSE(sylow_forces_normal(23, 24));
  CHECK(sylow_forces_normal(107, 84));
  CHECK_FALSE(sylow_forces_normal(83, 84));
}

TEST_CASE("frobenius obstruction") {
  CHECK(frobenius_obstruction(Signature::parse("2,3,8"), 47));
  CHECK_FALSE(frobenius_obstruction(Signature::parse("g1p2"), 47));
  CHECK(frobenius_obstruction(Signature::parse("2,3,7"), 83));
  CHECK_FALSE(frobenius_obstruction(Signature::parse("3,3,4"), 3));
}

TEST_CASE("degree-24 analysis") {
  const auto r = degree24_obstruction();
  CHECK(r.not_prime_power);
  CHECK(r.stabilizer_bound);
  CHECK(r.threshold == 1104);
  CHECK(r.orders_exceed);
  CHECK(r.passes());
  Integer smallest = r.listed.front().order;
  for (const auto& g : r.listed) smallest = std::min(smallest, g.order);
  CHECK(smallest == 6072);
}

TEST_CASE("obstruction ledgers") {
  const auto l60 = obstruction_ledger(59).value();
  CHECK(l60.size() == theorem_constants().distinct_s().size());
  for (const auto& e : l60) CHECK(e.discharge == Discharge::kSylowForced);

  const auto l48 = obstruction_ledger(47).value();
  const auto& e48 = entry_for(l48, 48);
  CHECK(e48.discharge == Discharge::kFrobenius);
  CHECK(e48.signatures == std::vector<Signature>{Signature::parse("2,3,8")});
  for (const auto& e : l48)
    if (e.s != 48) CHECK(e.discharge == Discharge::kSylowForced);

  const auto l84 = obstruction_ledger(83).value();
  CHECK(entry_for(l84, 84).discharge == Discharge::kFrobenius);

  const auto l24 = obstruction_ledger(23).value();
  CHECK(entry_for(l24, 48).discharge == Discharge::kDegree24);
  CHECK(entry_for(l24, 24).discharge == Discharge::kDegree24);

  for (const auto& e : obstruction_ledger(107).value()) CHECK(e.discharge == Discharge::kGeneric);
  // At p = 11 the divisor 12 of 84 is 1 mod 11 and no pattern applies.
  CHECK_FALSE(obstruction_ledger(11).has_value());
}

TEST_CASE("attained genera") {
  std::vector<std::int64_t> genera;
  for (const auto& c : attained_genera(120)) {
    genera.push_back(c.genus);
    CHECK(c.bound == static_cast<std::uint64_t>(4 * (c.genus - 1)));
    CHECK(c.status == CertificateStatus::kAttained);
    CHECK(c.ledger.size() == theorem_constants().distinct_s().size());
  }
  CHECK(genera == std::vector<std::int64_t>{24, 48, 60, 84, 108});
  CHECK(attained_genera(23).empty());
  genera.clear();
  for (const auto& c : attained_genera(300)) genera.push_back(c.genus);
  CHECK(genera == std::vector<std::int64_t>{24, 48, 60, 84, 108, 168, 180, 228, 240, 264});
  CHECK(attained_genera(300).size() == 10);
  CHECK_THROWS_AS(attained_genera(1), Error);
}

TEST_CASE("small genus catalog") {
  const auto cat = small_genus_catalog();
  REQUIRE(cat.size() == 22);
  const std::vector<std::uint64_t> bounds{48, 32, 36, 24, 50, 36, 84, 48, 72, 60, 110,
                                          72, 156, 84, 360, 96, 136, 108, 228, 120, 252, 132};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const auto& c = cat[i];
    CHECK(c.genus == static_cast<std::int64_t>(i + 2));
    CHECK(c.bound == bounds[i]);
    CHECK(c.bound > static_cast<std::uint64_t>(4 * (c.genus - 1)));
    CHECK(c.status == CertificateStatus::kCatalog);
    for (const auto& w : c.witnesses) CHECK(w.genus() == c.genus);
    if (c.genus % 2 == 1) {
      const auto has_s3 = std::any_of(c.witnesses.begin(), c.witnesses.end(), [&](const Witness& w) {
        return w.label.rfind("S3 x", 0) == 0 && w.order() == static_cast<std::uint64_t>(6 * (c.genus - 1));
      });
      CHECK(has_s3);
    }
  }
  CHECK(small_genus_catalog(3).size() == 22);
}

TEST_CASE("certify_genus") {
  const auto g24 = certify_genus(24);
  CHECK(g24.bound == 92);
  CHECK(g24.status == CertificateStatus::kAttained);
  REQUIRE(g24.degree24.has_value());
  const auto g30 = certify_genus(30);
  CHECK(g30.status == CertificateStatus::kLowerBoundOnly);
  CHECK(g30.bound == 116);
  CHECK(g30.ledger.empty());
  CHECK(certify_genus(16).bound == 360);
  CHECK(certify_genus(7).bound == 36);
  CHECK_THROWS_AS(certify_genus(1), Error);
}

TEST_CASE("genus 10 action is the first faithful pair that works") {
  const auto found = search_genus10_group();
  CHECK(found.descriptor() == genus10_group().descriptor());
  CHECK(found.order() == 72);
}

TEST_CASE("intersections") {
  const KernelPresentation kp(kazaz_base(kazaz_case('g')));
  const HomologyAction h3(kp, 3), h7(kp, 7);
  const auto c3 = build_cover(kp, h3, invariant_hyperplanes(h3).at(0));
  const auto c7 = build_cover(kp, h7, invariant_hyperplanes(h7).at(0));
  const auto both = intersect_covers({c3, c7});
  CHECK(both.index == 21);
  CHECK(both.genus == 22);
  CHECK(both.bound == 252);
  CHECK_THROWS_AS(intersect_covers({c3}), Error);
  CHECK_THROWS_AS(intersect_covers({c3, c3}), Error);
}

TEST_CASE("genus certificates re-verify from JSON alone") {
  for (const auto& c : small_genus_catalog()) {
    const auto doc = to_json(c);
    const auto back = verify_genus_certificate(nlohmann::json::parse(doc.dump()));
    CHECK(back.bound == c.bound);
    CHECK(to_json(back).dump() == doc.dump());
  }
  for (const auto& c : attained_genera(300)) {
    const auto doc = to_json(c);
    CHECK(verify_genus_certificate(doc).bound == c.bound);
  }
  auto doc = to_json(certify_genus(24));
  doc["ledger"][0]["discharge"] = "generic";
  CHECK_THROWS_AS(verify_genus_certificate(doc), Error);
  doc = to_json(certify_genus(10));
  doc["bound"] = 80;
  CHECK_THROWS_AS(verify_genus_certificate(doc), Error);
  doc = to_json(certify_genus(30));
  doc["status"] = "attained";
  CHECK_THROWS_AS(verify_genus_certificate(doc), Error);
}

}  // TEST_SUITE
