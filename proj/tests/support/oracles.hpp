#pragma once

// Brute-force oracles. These share nothing with the library beyond
// FiniteGroup::multiply / elements(): no index tables, no search, no
// Smith form.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "narcert/arith.hpp"
#include "narcert/group.hpp"
#include "narcert/modp.hpp"
#include "narcert/signature.hpp"

namespace oracle {

using narcert::Element;
using narcert::FiniteGroup;
using narcert::Signature;

// Cayley table over group.elements(), built by plain multiplication.
struct Table {
  std::vector<Element> elems;
  std::vector<std::vector<std::uint32_t>> mul;
  std::vector<std::uint32_t> inv;
  std::vector<std::uint32_t> order;
  std::uint32_t id = 0;

  explicit Table(const FiniteGroup& g) : elems(g.elements()) {
    std::map<Element, std::uint32_t> at;
    for (std::uint32_t i = 0; i < elems.size(); ++i) at[elems[i]] = i;
    const std::size_t n = elems.size();
    id = at.at(g.identity());
    mul.assign(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mul[i][j] = at.at(g.multiply(elems[i], elems[j]));
    inv.resize(n);
    order.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j)
        if (mul[i][j] == id) inv[i] = j;
      std::uint32_t x = i, k = 1;
      while (x != id) {
        x = mul[x][i];
        ++k;
      }
      order[i] = k;
    }
  }

  std::size_t size() const { return elems.size(); }

  std::size_t closure_size(const std::vector<std::uint32_t>& gens) const {
    std::vector<bool> seen(size(), false);
    std::vector<std::uint32_t> todo{id};
    seen[id] = true;
    while (!todo.empty()) {
      const auto x = todo.back();
      todo.pop_back();
      for (auto s : gens) {
        const auto y = mul[x][s];
        if (!seen[y]) {
          seen[y] = true;
          todo.push_back(y);
        }
      }
    }
    return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  }
};

// SKE test straight from the definition: long relation, exact elliptic
// orders, surjectivity, integral kernel genus.
inline bool is_ske(const Signature& sig, const Table& t, const std::vector<std::uint32_t>& img) {
  const auto g = static_cast<std::size_t>(sig.genus());
  std::uint32_t prod = t.id;
  for (std::size_t i = 0; i < g; ++i) {
    const auto x = img[2 * i], y = img[2 * i + 1];
    prod = t.mul[prod][t.mul[t.mul[x][y]][t.mul[t.inv[x]][t.inv[y]]]];
  }
  for (std::size_t j = 0; j < sig.period_count(); ++j) prod = t.mul[prod][img[2 * g + j]];
  if (prod != t.id) return false;
  for (std::size_t j = 0; j < sig.period_count(); ++j)
    if (t.order[img[2 * g + j]] != static_cast<std::uint32_t>(sig.periods()[j])) return false;
  if (t.closure_size(img) != t.size()) return false;
  // 1 + |G| q must be an integer.
  const narcert::Rational q = narcert::measure(sig) / 4;
  const narcert::Rational genus = 1 + q * static_cast<long>(t.size());
  return narcert::denominator_of(genus) == 1;
}

// Every tuple in G^n, in lexicographic order of element index.
inline void for_each_tuple(std::size_t n, std::uint32_t order,
                           const std::function<void(const std::vector<std::uint32_t>&)>& f) {
  std::vector<std::uint32_t> t(n, 0);
  if (n == 0) {
    f(t);
    return;
  }
  while (true) {
    f(t);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++t[i] < order) break;
      t[i] = 0;
      if (i == 0) return;
    }
  }
}

inline std::set<std::vector<std::uint32_t>> all_skes(const Signature& sig, const Table& t) {
  std::set<std::vector<std::uint32_t>> out;
  for_each_tuple(sig.generator_count(), static_cast<std::uint32_t>(t.size()),
                 [&](const std::vector<std::uint32_t>& img) {
                   if (is_ske(sig, t, img)) out.insert(img);
                 });
  return out;
}

// Epimorphisms Γ → Z/n by enumerating images in Z/n: commutators vanish, so
// only Σ γ_j = 0 and m_j γ_j = 0 constrain; onto iff gcd(images, n) = 1.
inline std::uint64_t cyclic_epimorphisms(const Signature& sig, std::uint32_t n) {
  std::uint64_t count = 0;
  const auto g = static_cast<std::size_t>(sig.genus());
  for_each_tuple(sig.generator_count(), n, [&](const std::vector<std::uint32_t>& x) {
    std::uint64_t sum = 0;
    for (std::size_t j = 0; j < sig.period_count(); ++j) {
      const auto m = static_cast<std::uint64_t>(sig.periods()[j]);
      if ((m * x[2 * g + j]) % n != 0) return;
      sum += x[2 * g + j];
    }
    if (sum % n != 0) return;
    std::uint64_t d = n;
    for (auto v : x) d = std::gcd(d, static_cast<std::uint64_t>(v));
    if (d == 1) ++count;
  });
  return count;
}

// Admissible signatures with μ/π < bound by nested loops over sorted
// period tuples.
inline std::set<Signature> signatures_below(const narcert::Rational& bound, int max_genus,
                                            int max_periods, int max_period) {
  std::set<Signature> out;
  std::vector<int> periods;
  std::function<void(int, int)> rec = [&](int genus, int from) {
    const Signature s(genus, periods);
    const narcert::Rational mu = narcert::measure(s);
    if (mu > 0 && mu < bound) out.insert(s);
    if (static_cast<int>(periods.size()) == max_periods) return;
    for (int m = from; m <= max_period; ++m) {
      periods.push_back(m);
      rec(genus, m);
      periods.pop_back();
    }
  };
  for (int genus = 0; genus <= max_genus; ++genus) rec(genus, 2);
  return out;
}

// Every functional f over F_p with leading nonzero entry 1 such that
// f·A ∈ F_p·f for all A.
inline std::vector<std::vector<std::uint32_t>> invariant_functionals(
    const std::vector<narcert::ModpMatrix>& mats, std::size_t dim, std::uint32_t p) {
  std::vector<std::vector<std::uint32_t>> out;
  for_each_tuple(dim, p, [&](const std::vector<std::uint32_t>& v) {
    std::size_t lead = 0;
    while (lead < dim && v[lead] == 0) ++lead;
    if (lead == dim || v[lead] != 1) return;
    for (const auto& a : mats) {
      std::vector<std::uint64_t> fa(dim, 0);
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) fa[c] = (fa[c] + std::uint64_t{v[r]} * a(r, c)) % p;
      // fa must be λ·v with λ = fa[lead].
      const std::uint64_t lambda = fa[lead];
      for (std::size_t c = 0; c < dim; ++c)
        if (fa[c] != (lambda * v[c]) % p) return;
    }
    out.push_back(v);
  });
  return out;
}

}  // namespace oracle
