#include <doctest.h>

#include <random>

#include "narcert/error.hpp"
#include "narcert/group.hpp"
#include "oracles.hpp"

using namespace narcert;

namespace {

Element w(std::int64_t rot, int flip = 0) { return Element(Word{rot, flip}); }

// Polygon action of D_n, n >= 3: a is i -> i+1, b is i -> -i.
Permutation rotation(std::uint32_t n) {
  Permutation p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}
Permutation reflection(std::uint32_t n) {
  Permutation p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = (n - i) % n;
  return p;
}
// Left-to-right product: apply x, then y.
Permutation then(const Permutation& x, const Permutation& y) {
  Permutation z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = y[x[i]];
  return z;
}
Permutation word_perm(std::uint32_t n, std::int64_t rot, int flip) {
  Permutation p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  for (std::int64_t k = 0; k < rot; ++k) p = then(p, rotation(n));
  if (flip) p = then(p, reflection(n));
  return p;
}

std::vector<FiniteGroup> named_groups() {
  return {FiniteGroup::cyclic(1),  FiniteGroup::cyclic(12), FiniteGroup::dihedral(1),
          FiniteGroup::dihedral(2), FiniteGroup::dihedral(7), klein_four(),
          quaternion8(),           semidihedral16(),         symmetric(4),
          alternating(5),          gl2_3(),                  construct("product:S3,D5"),
          construct("product:C6,C2")};
}

}  // namespace

TEST_SUITE("groups") {

TEST_CASE("orders of named constructions") {
  CHECK(FiniteGroup::dihedral(46).order() == 92);
  CHECK(gl2_3().order() == 48);
  CHECK(alternating(6).order() == 360);
  CHECK(klein_four().order() == 4);
  CHECK(quaternion8().order() == 8);
  CHECK(semidihedral16().order() == 16);
  for (std::uint32_t n = 1; n <= 6; ++n) {
    std::uint64_t f = 1;
    for (std::uint32_t k = 2; k <= n; ++k) f *= k;
    CHECK(symmetric(n).order() == f);
    CHECK(symmetric(n).elements().size() == f);
    if (n >= 2) CHECK(alternating(n).order() == f / 2);
  }
  for (std::int64_t n = 1; n <= 20; ++n) {
    CHECK(FiniteGroup::dihedral(n).order() == static_cast<std::uint64_t>(2 * n));
    CHECK(FiniteGroup::dihedral(n).to_permutation_group().order() ==
          static_cast<std::uint64_t>(2 * n));
  }
  const auto p = direct_product(symmetric(3), FiniteGroup::dihedral(5));
  CHECK(p.order() == 60);
  CHECK(p.elements().size() == 60);
  CHECK(construct("semidirect:C3xC3:D4:0,1,2,0;0,1,1,0").order() == 72);
}

TEST_CASE("descriptor grammar") {
  CHECK(construct("dihedral:46").descriptor() == "dihedral:46");
  CHECK(construct("D46").order() == 92);
  CHECK(construct("C8").order() == 8);
  CHECK(construct("S3").order() == 6);
  CHECK(construct("A6").order() == 360);
  CHECK(construct("V4").order() == 4);
  CHECK(construct("Q8").order() == 8);
  CHECK(construct("SD16").order() == 16);
  CHECK(construct("GL(2,3)").order() == 48);
  CHECK(construct("product:(product:C2,C2),C3").order() == 12);
  const auto g = construct("product:symmetric:3,dihedral:5");
  CHECK(construct(g.descriptor()).order() == 60);
  CHECK_THROWS_AS(construct("nope"), Error);
  CHECK_THROWS_AS(construct("cyclic:0"), Error);
  CHECK_THROWS_AS(construct("semidirect:C3xC3:D4:1,0,0,1;1,0,0,1"), Error);
}

TEST_CASE("order cap") {
  GroupOptions small;
  small.order_cap = 100;
  try {
    symmetric(6, small);
    FAIL("expected OrderCapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kOrderCapExceeded);
  }
  const auto big = FiniteGroup::dihedral(1'000'000'000);
  CHECK(big.order() == 2'000'000'000);
  CHECK(element_order(big, w(2)) == 500'000'000);
  CHECK_THROWS_AS(big.elements(), Error);
}

TEST_CASE("element_order") {
  CHECK(element_order(FiniteGroup::dihedral(23), w(5, 1)) == 2);
  CHECK(element_order(FiniteGroup::cyclic(8), w(2)) == 4);
  CHECK(element_order(FiniteGroup::dihedral(46), w(2)) == 23);
  CHECK(element_order(FiniteGroup::cyclic(8), w(0)) == 1);
}

TEST_CASE("generates") {
  for (std::int64_t g = 2; g <= 40; ++g) {
    const auto d = FiniteGroup::dihedral(2 * (g - 1));
    const std::vector<Element> s{w(1, 1), w(0, 1)};
    CHECK(generates(d, s));
  }
  const std::vector<Element> sq{w(2)};
  CHECK_FALSE(generates(FiniteGroup::cyclic(8), sq));
  const std::vector<Element> three{w(3)};
  CHECK(generates(FiniteGroup::cyclic(8), three));
  const std::vector<Element> refl{w(0, 1), w(2, 1)};
  CHECK_FALSE(generates(FiniteGroup::dihedral(6), refl));
  CHECK(generates(FiniteGroup::dihedral(7), refl));
}

TEST_CASE("exponent") {
  CHECK(exponent(klein_four()) == 2);
  CHECK(exponent(construct("product:cyclic:6,cyclic:2")) == 6);
  CHECK(exponent(quaternion8()) == 4);
  CHECK(exponent(FiniteGroup::dihedral(46)) == 46);
  CHECK(exponent(gl2_3()) == 24);
  CHECK(exponent(alternating(6)) == 60);
}

TEST_CASE("Lagrange and exponent properties over named groups") {
  std::mt19937_64 rng(7);
  for (const auto& g : named_groups()) {
    CAPTURE(g.descriptor());
    const auto e = exponent(g);
    CHECK(g.order() % e == 0);
    const auto& elems = g.elements();
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    for (int i = 0; i < 50; ++i) {
      const auto& x = elems[pick(rng)];
      const auto o = element_order(g, x);
      CHECK(g.order() % o == 0);
      CHECK(e % o == 0);
      CHECK(g.power(x, static_cast<std::int64_t>(o)) == g.identity());
      CHECK(g.multiply(x, g.inverse(x)) == g.identity());
    }
    CHECK(elems.front() == g.identity());
    CHECK(std::is_sorted(elems.begin(), elems.end()));
  }
}

TEST_CASE("parametric dihedral agrees with the polygon action for n <= 50") {
  for (std::uint32_t n = 3; n <= 50; ++n) {
    const auto d = FiniteGroup::dihedral(n);
    const auto& elems = d.elements();
    REQUIRE(elems.size() == 2 * n);
    std::vector<Permutation> perm;
    for (const auto& x : elems) perm.push_back(word_perm(n, x.word().rot, x.word().flip));
    CHECK(std::set<Permutation>(perm.begin(), perm.end()).size() == 2 * n);
    const auto model = d.to_permutation_group();
    bool ok = true;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      ok = ok && word_in_model(model, elems[i].word()).permutation() == perm[i];
      for (std::size_t j = 0; j < elems.size(); ++j) {
        const auto xy = d.multiply(elems[i], elems[j]);
        ok = ok && word_perm(n, xy.word().rot, xy.word().flip) == then(perm[i], perm[j]);
        ok = ok && model.multiply(Element(perm[i]), Element(perm[j])).permutation() ==
                       then(perm[i], perm[j]);
      }
    }
    CAPTURE(n);
    CHECK(ok);
  }
}

TEST_CASE("parametric cyclic and small dihedral agree with their regular models") {
  for (std::int64_t n = 1; n <= 50; ++n) {
    for (const auto& g : {FiniteGroup::cyclic(n), FiniteGroup::dihedral(std::min<std::int64_t>(n, 2))}) {
      const auto model = g.to_permutation_group();
      REQUIRE(model.order() == g.order());
      const auto& elems = g.elements();
      for (const auto& x : elems)
        for (const auto& y : elems)
          CHECK(word_in_model(model, g.multiply(x, y).word()) ==
                model.multiply(word_in_model(model, x.word()), word_in_model(model, y.word())));
    }
  }
}

TEST_CASE("element text round-trips") {
  for (const auto& g : named_groups()) {
    for (const auto& x : g.elements()) CHECK(g.parse_element(format_element(x)) == x);
  }
  const auto d = FiniteGroup::dihedral(23);
  CHECK(format_element(w(0)) == "1");
  CHECK(format_element(w(1, 1)) == "ab");
  CHECK(d.parse_element("a^21b") == w(21, 1));
  CHECK(d.parse_element("a^-1") == w(22));
  CHECK_THROWS_AS(d.parse_element("c"), Error);
  CHECK_THROWS_AS(klein_four().parse_element("1 1 1 1"), Error);
}

TEST_CASE("IndexedGroup matches the oracle table") {
  for (const auto& g : named_groups()) {
    const IndexedGroup ig(g);
    const oracle::Table t(g);
    REQUIRE(ig.size() == t.size());
    for (std::uint32_t i = 0; i < ig.size(); ++i) {
      CHECK(ig.index_of(ig.element(i)) == i);
      CHECK(ig.inv(i) == t.inv[i]);
      CHECK(ig.order_of(i) == t.order[i]);
      for (std::uint32_t j = 0; j < ig.size(); ++j) CHECK(ig.mul(i, j) == t.mul[i][j]);
    }
  }
}

}  // TEST_SUITE
