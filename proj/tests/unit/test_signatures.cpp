#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "narcert/error.hpp"
#include "narcert/sigma_table.hpp"
#include "narcert/signature.hpp"
#include "narcert/smith.hpp"
#include "oracles.hpp"

using namespace narcert;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST_SUITE("signatures") {

TEST_CASE("measure") {
  CHECK(measure(Signature::parse("2,3,7")) == rat(1, 21));
  CHECK(measure(Signature::parse("g1p2")) == rat(1));
  CHECK(measure(Signature::parse("g2")) == rat(4));
  CHECK(measure(Signature::parse("2,2,3,5")) == rat(14, 15));
}

TEST_CASE("measure class") {
  auto mc = measure_class(Signature::parse("2,3,7"));
  CHECK(mc.q == rat(1, 84));
  CHECK(mc.s_over_r() == rat(84));
  CHECK(mc.r() == 1);
  CHECK(mc.s() == 84);
  mc = measure_class(Signature::parse("2,4,7"));
  CHECK(mc.q == rat(3, 56));
  CHECK(mc.s_over_r() == rat(56, 3));
  mc = measure_class(Signature::parse("2,2,2,2,2"));
  CHECK(mc.q == rat(1, 4));
  CHECK(mc.s_over_r() == rat(4));
}

TEST_CASE("kernel genus") {
  const auto five = Signature::parse("2,2,2,2,2");
  for (std::int64_t g = 2; g <= 200; ++g) CHECK(kernel_genus(five, 4 * (g - 1)) == g);
  CHECK(kernel_genus(Signature::parse("2,3,8"), 48) == 2);
  try {
    kernel_genus(Signature::parse("2,3,7"), 5);
    FAIL("expected NonIntegralGenus");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNonIntegralGenus);
  }
  CHECK_THROWS_AS(kernel_genus(Signature::parse("2,2,2"), 4), Error);
}

TEST_CASE("Riemann-Hurwitz holds whenever kernel_genus returns") {
  for (const auto& sig : enumerate_signatures(rat(3), 1, 4, 9)) {
    for (std::int64_t n = 1; n <= 60; ++n) {
      try {
        const auto g = kernel_genus(sig, n);
        CHECK(Rational(2 * (2 * g - 2)) == measure(sig) * n);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kNonIntegralGenus);
      }
    }
    CHECK(measure_class(sig).q * 4 == measure(sig));
  }
}

TEST_CASE("abelianization") {
  auto ab = abelianization(Signature::parse("2,3,8"));
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion == std::vector<Integer>{2});
  ab = abelianization(Signature::parse("2,2,2,2,2"));
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion == std::vector<Integer>{2, 2, 2, 2});
  ab = abelianization(Signature::parse("g1p2"));
  CHECK(ab.free_rank == 2);
  CHECK(ab.torsion.empty());
  CHECK(abelianization(Signature::parse("2,3,7")).str() == "0");
}

TEST_CASE("cyclic quotient counts match exhaustive enumeration") {
  // Every signature with genus <= 1, at most 3 periods, periods <= 8.
  std::vector<Signature> sigs;
  for (int genus = 0; genus <= 1; ++genus) {
    for (int a = 2; a <= 8; ++a) {
      sigs.emplace_back(genus, std::vector<int>{a});
      for (int b = a; b <= 8; ++b) {
        sigs.emplace_back(genus, std::vector<int>{a, b});
        for (int c = b; c <= 8; ++c) sigs.emplace_back(genus, std::vector<int>{a, b, c});
      }
    }
  }
  sigs.emplace_back(2, std::vector<int>{});
  sigs.emplace_back(0, std::vector<int>{2, 2, 2, 2});
  sigs.emplace_back(0, std::vector<int>{2, 2, 3, 6});
  for (const auto& sig : sigs) {
    const auto ab = abelianization(sig);
    for (std::uint32_t n = 1; n <= 12; ++n) {
      if (sig.generator_count() >= 5 && n > 6) continue;  // keeps n^k small
      CAPTURE(sig.str());
      CAPTURE(n);
      CHECK(ab.epimorphisms_onto_cyclic(n) == oracle::cyclic_epimorphisms(sig, n));
    }
  }
}

TEST_CASE("parse and print") {
  CHECK(Signature::parse("7,2,3").str() == "(2,3,7)");
  CHECK(Signature::parse("(2,3,7)").spec() == "2,3,7");
  CHECK(Signature::parse("g1p2").str() == "(1;2)");
  CHECK(Signature::parse("(1;2)").spec() == "g1p2");
  CHECK(Signature::parse("g2").str() == "(2;)");
  CHECK_THROWS_AS(Signature::parse("2,x,7"), Error);
  CHECK_THROWS_AS(Signature::parse("1,3,7"), Error);
  CHECK_THROWS_AS(Signature::parse(""), Error);
}

TEST_CASE("enumerate_signatures matches a nested-loop oracle") {
  struct Caps {
    Rational bound;
    int genus, periods, period;
  };
  for (const auto& c : {Caps{rat(1), 0, 4, 12}, Caps{rat(1), 0, 3, 7}, Caps{rat(1, 12), 0, 4, 100},
                        Caps{rat(5, 2), 1, 4, 10}, Caps{rat(9), 2, 3, 6}}) {
    const auto got = enumerate_signatures(c.bound, c.genus, c.periods, c.period);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    const auto want = oracle::signatures_below(c.bound, c.genus, c.periods, c.period);
    CHECK(std::set<Signature>(got.begin(), got.end()) == want);
  }
  const auto small = enumerate_signatures(rat(1), 0, 3, 7);
  auto has = [&](const char* s) {
    return std::count(small.begin(), small.end(), Signature::parse(s)) == 1;
  };
  CHECK(has("2,3,7"));
  CHECK(has("2,4,5"));
  CHECK_FALSE(has("2,2,3,3"));
  const auto twelfth = enumerate_signatures(rat(1, 12), 0, 4, 100);
  CHECK(std::count(twelfth.begin(), twelfth.end(), Signature::parse("2,3,7")) == 1);
  CHECK(std::count(twelfth.begin(), twelfth.end(), Signature::parse("2,3,8")) == 0);
}

TEST_CASE("enumeration up to pi covers every table entry") {
  const auto all = enumerate_signatures(rat(1), 0, 4, 30);
  const std::set<Signature> got(all.begin(), all.end());
  for (const auto& e : sigma_table()) {
    if (std::all_of(e.signature.periods().begin(), e.signature.periods().end(),
                    [](int m) { return m <= 30; }))
      CHECK(got.count(e.signature) == 1);
  }
}

TEST_CASE("sigma table") {
  const auto& t = sigma_table();
  REQUIRE(t.size() == 74);
  CHECK(t.front().signature.str() == "(2,3,7)");
  for (const auto& e : t) {
    CHECK(measure(e.signature) == e.mu_over_pi);
    CHECK(measure_class(e.signature).s_over_r() == e.s_over_r);
    CHECK(e.mu_over_pi < 1);
    CHECK(e.signature.genus() == 0);
    CHECK((e.signature.period_count() == 3 || e.signature.period_count() == 4));
  }
  std::set<int> tails;
  for (const auto& e : t) {
    const auto& p = e.signature.periods();
    if (p.size() == 4 && p[0] == 2 && p[1] == 2 && p[2] == 2) tails.insert(p[3]);
  }
  CHECK(tails == std::set<int>{3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18, 22});
  std::set<std::string> unverified;
  for (const auto& e : t)
    if (e.flag == Arithmeticity::kIncludedUnverified) unverified.insert(e.signature.str());
  CHECK(unverified == std::set<std::string>{"(2,2,3,3)", "(2,2,3,4)", "(2,2,3,5)"});
}

TEST_CASE("sigma table loader is exact about the row format") {
  std::string text(embedded_sigma_table_text());
  CHECK(load_sigma_table(text).issues.empty());

  // Wrong s/r on the (2,3,8) row.
  std::string bad = text;
  const std::string row = "2 3 8 | 1/12 | 48 | verified-by-literature";
  const auto at = bad.find(row);
  REQUIRE(at != std::string::npos);
  bad.replace(at, row.size(), "2 3 8 | 1/12 | 47 | verified-by-literature");
  const auto load = load_sigma_table(bad);
  REQUIRE(load.issues.size() == 1);
  CHECK(load.issues[0].line.find("2 3 8") == 0);
  CHECK(load.entries.size() == 73);
  try {
    parse_sigma_table(bad);
    FAIL("expected TableCorrupt");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTableCorrupt);
    CHECK(e.detail() == static_cast<std::int64_t>(load.issues[0].line_number));
  }

  // Non-canonical spacing and unsorted periods are rejected too.
  for (const char* line : {"2 3 7 |  1/21 | 84 | verified-by-literature",
                           "3 2 7 | 1/21 | 84 | verified-by-literature",
                           "2 3 7 | 2/42 | 84 | verified-by-literature",
                           "2 3 7 | 1/21 | 84 | verified"}) {
    CAPTURE(line);
    CHECK(load_sigma_table(line).issues.size() == 1);
  }
  const auto ok = load_sigma_table("# comment\n\n2 3 7 | 1/21 | 84 | verified-by-literature\n");
  CHECK(ok.issues.empty());
  CHECK(ok.entries.size() == 1);
  for (const auto& e : sigma_table()) CHECK(load_sigma_table(render_sigma_row(e)).entries.size() == 1);
}

TEST_CASE("smith normal form") {
  CHECK(smith_diagonal({{2, 4}, {6, 8}}) == std::vector<Integer>{2, 4});
  CHECK(smith_diagonal({{0, 0}, {0, 0}}).empty());
  CHECK(smith_diagonal({{4, 0}, {0, 6}}) == std::vector<Integer>{2, 12});
  const auto inv = abelian_invariants({{2, 0, 0}, {0, 3, 0}}, 3);
  CHECK(inv.free_rank == 1);
  CHECK(inv.torsion == std::vector<Integer>{6});
  CHECK(inv.str() == "Z + Z/6");
  CHECK(inv.torsion_order() == 6);
}

}  // TEST_SUITE
