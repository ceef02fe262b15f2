#pragma once

// Surface-kernel epimorphisms Γ(σ) → G, given by the images of the canonical
// generators α_1, β_1, …, α_g, β_g, γ_1, …, γ_k subject to
//   ∏ [α_i, β_i] · ∏ γ_j = 1,   γ_j^{m_j} = 1,   [x, y] = x y x⁻¹ y⁻¹.
// The kernel is torsion-free iff every γ_j keeps its exact order m_j.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "narcert/group.hpp"
#include "narcert/signature.hpp"

namespace narcert {

struct SkeCertificate {
  Signature signature;
  FiniteGroup group;
  std::vector<Element> images;
  std::int64_t kernel_genus = 0;
  std::uint64_t group_order = 0;
};

/// Checks, in order: image count, membership, the long relation, exact
/// elliptic orders, surjectivity, integrality of the kernel genus. Throws
/// the first failure (OrderNotPreserved carries the 1-based j of γ_j).
SkeCertificate verify_ske(const Signature& sig, const FiniteGroup& group,
                          std::vector<Element> images);

enum class SearchMode { kFirst, kAll, kCount };

struct SearchOptions {
  SearchMode mode = SearchMode::kFirst;
  /// Keep only the lexicographically least tuple of each orbit under
  /// simultaneous conjugation.
  bool dedup = false;
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 1;
};

struct SearchStats {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
};

/// Receives each accepted tuple as element indices of the IndexedGroup, in
/// canonical order. Returning false stops the search.
using SkeVisitor = std::function<bool(std::span<const std::uint32_t> images)>;

/// Backtracking search. Elliptic images range over elements of exact order
/// m_j, rarest order class first (ties by position); hyperbolic images range
/// over the whole group; the elliptic generator searched last is solved from
/// the long relation instead. Results arrive in depth-first order of that
/// search, independent of `threads`. In count mode the visitor is not called.
/// Throws SearchSpaceTooLarge when the node budget runs out.
SearchStats visit_skes(const Signature& sig, const IndexedGroup& group,
                       const SearchOptions& options, const SkeVisitor& visit);

struct SearchResult {
  std::vector<SkeCertificate> certificates;
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
};

SearchResult search_ske(const Signature& sig, const FiniteGroup& group,
                        const SearchOptions& options = {});

/// γ ↦ (ab, b, a^{g−2}b, b, a^{g−1}) from Γ(2,2,2,2,2) onto the dihedral group
/// of order 4(g−1), verified symbolically in the word normal form.
SkeCertificate lemma32_ske(std::int64_t g);

nlohmann::json to_json(const SkeCertificate& cert);
/// Rebuilds the group from its descriptor, re-verifies the images and checks
/// the recorded kernel genus and order. Throws on any failure.
SkeCertificate ske_from_json(const nlohmann::json& doc, const GroupOptions& options = {});

}  // namespace narcert
