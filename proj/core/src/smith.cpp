#include "narcert/smith.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "narcert/error.hpp"

namespace narcert {

namespace {

using boost::multiprecision::abs;

struct Position {
  std::size_t row;
  std::size_t col;
};

std::optional<Position> min_modulus_entry(const IntMatrix& m, std::size_t from) {
  std::optional<Position> best;
  Integer best_abs;
  for (std::size_t i = from; i < m.size(); ++i) {
    for (std::size_t j = from; j < m[i].size(); ++j) {
      if (m[i][j] == 0) continue;
      Integer a = abs(m[i][j]);
      if (!best || a < best_abs) {
        best = Position{i, j};
        best_abs = std::move(a);
        if (best_abs == 1) return best;
      }
    }
  }
  return best;
}

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (auto& row : m) std::swap(row[a], row[b]);
}

}  // namespace

std::vector<Integer> smith_diagonal(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  for (const auto& row : m) {
    if (row.size() != cols) {
      throw Error(ErrorKind::kInvalidArgument, "ragged relation matrix");
    }
  }

  std::vector<Integer> diagonal;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    bool settled = false;
    while (!settled) {
      const auto pivot = min_modulus_entry(m, t);
      if (!pivot) return diagonal;  // remaining block is zero
      std::swap(m[t], m[pivot->row]);
      swap_columns(m, t, pivot->col);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const Integer q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const Integer q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into the pivot row and repeat.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < rows && !offending; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            offending = i;
            break;
          }
        }
      }
      if (offending) {
        for (std::size_t j = t; j < cols; ++j) m[t][j] += m[*offending][j];
        continue;
      }
      settled = true;
    }
    diagonal.push_back(abs(m[t][t]));
  }
  return diagonal;
}

AbelianInvariants abelian_invariants(const IntMatrix& relations, std::size_t columns) {
  for (const auto& row : relations) {
    if (row.size() != columns) {
      throw Error(ErrorKind::kInvalidArgument, "relation row has wrong width");
    }
  }
  const auto diagonal = smith_diagonal(relations);
  AbelianInvariants out;
  out.free_rank = columns - diagonal.size();
  for (const auto& d : diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

Integer AbelianInvariants::torsion_order() const {
  Integer out = 1;
  for (const auto& d : torsion) out *= d;
  return out;
}

Integer AbelianInvariants::epimorphisms_onto_cyclic(std::uint64_t n) const {
  // |Hom(A, C_d)| = d^rank · Π gcd(d_i, d); surjections by Möbius inversion
  // over the divisors of n.
  auto hom_count = [&](std::uint64_t d) {
    Integer count = 1;
    for (std::size_t i = 0; i < free_rank; ++i) count *= d;
    for (const auto& t : torsion) count *= boost::multiprecision::gcd(t, Integer(d));
    return count;
  };
  auto mobius = [](std::uint64_t k) {
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
      if (k % p != 0) continue;
      k /= p;
      if (k % p == 0) return 0;
      sign = -sign;
    }
    if (k > 1) sign = -sign;
    return sign;
  };
  Integer total = 0;
  for (std::uint64_t d : divisors(n)) {
    const int mu = mobius(n / d);
    if (mu != 0) total += mu * hom_count(d);
  }
  return total;
}

std::string AbelianInvariants::str() const {
  std::string out;
  if (free_rank > 0) {
    out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  }
  for (const auto& d : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.str();
  }
  return out.empty() ? "0" : out;
}

}  // namespace narcert
