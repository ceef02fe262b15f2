#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "narcert/arith.hpp"

namespace narcert {

/// Dense integer matrix, row-major, rows may not be ragged.
using IntMatrix = std::vector<std::vector<Integer>>;

/// Finitely generated abelian group Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_t with
/// d_1 | d_2 | … | d_t and every d_i > 1.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool operator==(const AbelianInvariants&) const = default;

  Integer torsion_order() const;
  /// Number of homomorphisms onto the cyclic group of order n.
  Integer epimorphisms_onto_cyclic(std::uint64_t n) const;
  std::string str() const;  // e.g. "Z^2 + Z/2 + Z/4", "0"
};

/// Nonzero diagonal of the Smith normal form, positive and normalized to a
/// divisibility chain. Computed with min-modulus pivoting.
std::vector<Integer> smith_diagonal(IntMatrix matrix);

/// Abelian group presented by `columns` generators and the rows of
/// `relations` as relators.
AbelianInvariants abelian_invariants(const IntMatrix& relations, std::size_t columns);

}  // namespace narcert
