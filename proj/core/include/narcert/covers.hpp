#pragma once

// Elementary abelian covers of a surface-kernel quotient. Given an SKE
// θ: Γ → Q with kernel Δ, the Schreier generators of Δ (spanning-tree
// transversal of the regular coset action) abelianize to H_1(Δ); Q acts on
// H_1(Δ, Z_p) by conjugation, and every Q-invariant hyperplane W gives a
// normal subgroup K of Γ with Δ/K ≅ C_p, hence a surface of genus
// p(γ − 1) + 1 with at least p|Q| automorphisms.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "narcert/group.hpp"
#include "narcert/modp.hpp"
#include "narcert/ske.hpp"
#include "narcert/smith.hpp"

namespace narcert {

/// A word in Γ's canonical generators: letter +(i+1) is generator i, -(i+1)
/// its inverse.
using GammaWord = std::vector<int>;

class KernelPresentation {
 public:
  explicit KernelPresentation(SkeCertificate base);

  const SkeCertificate& base() const { return base_; }
  const IndexedGroup& quotient() const { return quotient_; }
  std::uint32_t coset_count() const { return quotient_.size(); }
  std::size_t generator_count() const { return n_; }
  std::uint32_t identity_coset() const { return identity_; }

  /// Coset reached from c by generator x (x < generator_count()).
  std::uint32_t act(std::uint32_t c, std::size_t x) const { return next_[c * n_ + x]; }

  /// Nontrivial Schreier generators s_{c,x} = t_c x t_{cx}⁻¹, i.e. those not
  /// on the spanning tree: 1 + |Q|(n − 1) of them.
  std::size_t schreier_count() const { return columns_.size(); }
  /// Column of s_{c,x}, or -1 for a tree edge.
  std::ptrdiff_t column(std::uint32_t c, std::size_t x) const { return column_of_[c * n_ + x]; }
  GammaWord transversal_word(std::uint32_t c) const;
  GammaWord schreier_word(std::size_t column) const;

  /// Abelianized Reidemeister–Schreier rewrite of `word` read from coset
  /// `start`, added into `out` (size schreier_count()). Returns the end coset.
  std::uint32_t rewrite(const GammaWord& word, std::uint32_t start,
                        std::vector<std::int64_t>& out) const;

  /// Rewrites of every relator of Γ from every coset, one row each.
  const std::vector<std::vector<std::int64_t>>& relation_rows() const { return relations_; }
  /// H_1(Δ, Z) from the Smith form of relation_rows().
  const AbelianInvariants& integral_homology() const { return homology_; }
  /// Image of a word of Γ under θ, as a quotient index.
  std::uint32_t evaluate(const GammaWord& word) const;

 private:
  SkeCertificate base_;
  IndexedGroup quotient_;
  std::size_t n_ = 0;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> images_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> prev_;
  std::vector<std::uint32_t> tree_parent_;
  std::vector<std::size_t> tree_generator_;
  std::vector<std::ptrdiff_t> column_of_;
  std::vector<std::pair<std::uint32_t, std::size_t>> columns_;
  std::vector<std::vector<std::int64_t>> relations_;
  AbelianInvariants homology_;
};

/// Relators of Γ as words: the long relation, then γ_j^{m_j} for each j.
std::vector<GammaWord> gamma_relators(const Signature& sig);

/// H_1(Δ, Z_p) with its Q-action. Coordinates are the non-pivot Schreier
/// columns of the reduced relation matrix mod p.
class HomologyAction {
 public:
  HomologyAction(const KernelPresentation& kp, std::uint32_t p);

  std::uint32_t prime() const { return p_; }
  std::size_t dimension() const { return free_columns_.size(); }
  /// Matrix of conjugation by Γ generator x: column j holds x s_j x⁻¹.
  const std::vector<ModpMatrix>& generator_matrices() const { return matrices_; }
  /// The representation on every element of Q, by quotient index.
  const std::vector<ModpMatrix>& element_matrices() const { return element_matrices_; }
  /// Class of Schreier column `column` in H_1(Δ, Z_p) coordinates.
  std::vector<std::uint32_t> project_column(std::size_t column) const;
  std::vector<std::uint32_t> project(std::vector<std::int64_t> v) const;

 private:
  std::uint32_t p_;
  ModpMatrix reduced_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_columns_;
  std::vector<ModpMatrix> matrices_;
  std::vector<ModpMatrix> element_matrices_;
};

inline HomologyAction homology_action(const KernelPresentation& kp, std::uint32_t p) {
  return HomologyAction(kp, p);
}

/// W = ker f for a row vector f normalized to leading entry 1; `basis` is the
/// reduced echelon basis of W.
struct Hyperplane {
  std::vector<std::uint32_t> functional;
  ModpMatrix basis;

  bool operator==(const Hyperplane&) const = default;
};

/// True iff f·A is a multiple of f for every generator matrix A.
bool is_invariant(const HomologyAction& h, const std::vector<std::uint32_t>& functional);

/// Every Q-invariant hyperplane: common left eigenvectors of the generator
/// matrices, found by intersecting eigenspaces character by character.
/// Sorted by functional.
std::vector<Hyperplane> invariant_hyperplanes(const HomologyAction& h);

struct CoverCertificate {
  SkeCertificate base;
  std::uint32_t prime = 0;
  Hyperplane hyperplane;
  std::int64_t genus = 0;
  std::uint64_t bound = 0;
};

/// Throws NotInvariant if the hyperplane fails the re-check.
CoverCertificate build_cover(const KernelPresentation& kp, const HomologyAction& h,
                             const Hyperplane& w);

/// One elementary abelian layer of Δ/K: a prime and an invariant functional.
struct CoverLayer {
  const HomologyAction* action;
  std::vector<std::uint32_t> functional;
};

/// Γ/K as a permutation group on Q × ∏ F_p, K the intersection of the layers'
/// kernels, with the images of Γ's generators. Feeding these to verify_ske
/// checks a cover end to end.
struct QuotientGroup {
  FiniteGroup group;
  std::vector<Element> images;
};
QuotientGroup cover_quotient_group(const KernelPresentation& kp,
                                   std::span<const CoverLayer> layers);

struct KazazCase {
  char letter;
  Signature signature;
  std::string group;
  std::string prediction;  // e.g. "p = 1 mod 8 or p = 2"
  bool predicts(std::uint32_t p) const;
};

/// Cases (a)–(g): genus-2 quotients Γ/Δ with Γ a triangle group.
const std::vector<KazazCase>& kazaz_cases();
const KazazCase& kazaz_case(char letter);
/// First SKE found by search for the case.
SkeCertificate kazaz_base(const KazazCase& c);

struct KazazPrimeResult {
  std::uint32_t prime = 0;
  std::size_t dimension = 0;
  std::size_t hyperplanes = 0;
  bool predicted = false;
  bool exists() const { return hyperplanes > 0; }
  bool agrees() const { return exists() == predicted; }
};

struct KazazReport {
  char letter = 'a';
  std::vector<KazazPrimeResult> results;
  bool agrees() const;
};

KazazReport kazaz_case_check(char letter, std::span<const std::uint32_t> primes,
                             unsigned threads = 1);

/// Γ(2,2,2,2,2) → V4 with γ ↦ (xy, y, y, y, x), the quotient of the dihedral
/// family by its rotation squares when g is even.
SkeCertificate klein_four_base();

nlohmann::json to_json(const CoverCertificate& cert);
/// Recomputes the homology action from the embedded base SKE and checks the
/// hyperplane, genus and bound.
CoverCertificate cover_from_json(const nlohmann::json& doc, const GroupOptions& options = {});

}  // namespace narcert
