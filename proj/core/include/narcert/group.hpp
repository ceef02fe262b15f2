#pragma once

// Finite groups in two representations:
//   * parametric cyclic C_n and dihedral D_n (order 2n), elements in the word
//     normal form a^i b^e, valid for arbitrarily large n without enumeration;
//   * permutation groups given by generators, whose closure is enumerated
//     eagerly at construction under a configurable order cap.
//
// Products read left to right: for permutations (x*y)(i) = y(x(i)).

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace narcert {

/// a^rot b^flip; flip is always 0 in cyclic groups.
struct Word {
  std::int64_t rot = 0;
  int flip = 0;

  auto operator<=>(const Word&) const = default;
};

using Permutation = std::vector<std::uint32_t>;

/// Group element handle; only meaningful together with its FiniteGroup.
class Element {
 public:
  Element() : rep_(Word{}) {}
  explicit Element(Word w) : rep_(w) {}
  explicit Element(Permutation p) : rep_(std::move(p)) {}

  bool is_word() const { return std::holds_alternative<Word>(rep_); }
  const Word& word() const { return std::get<Word>(rep_); }
  const Permutation& permutation() const { return std::get<Permutation>(rep_); }

  auto operator<=>(const Element&) const = default;
  bool operator==(const Element&) const = default;

  std::size_t hash() const;

 private:
  std::variant<Word, Permutation> rep_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

/// "1", "a^5", "b", "a^5b" for words; 1-based one-line notation
/// ("2 3 1 4") for permutations.
std::string format_element(const Element& x);

enum class Backend { kCyclic, kDihedral, kPermutation };

struct GroupOptions {
  std::uint64_t order_cap = 1'000'000;
  std::uint32_t degree_cap = 100'000;
};

/// 2×2 matrix over the field with three elements, entries in 0..2.
using Matrix3x2 = std::array<std::array<int, 2>, 2>;

class FiniteGroup {
 public:
  static FiniteGroup cyclic(std::int64_t n);
  static FiniteGroup dihedral(std::int64_t n);
  static FiniteGroup from_permutations(std::string descriptor, std::uint32_t degree,
                                       std::vector<Permutation> generators,
                                       const GroupOptions& options = {});

  const std::string& descriptor() const;
  Backend backend() const;
  bool is_parametric() const { return backend() != Backend::kPermutation; }
  /// n for cyclic(n) and dihedral(n); 0 for permutation groups.
  std::int64_t modulus() const;
  /// Permutation degree; 0 for parametric groups.
  std::uint32_t degree() const;
  std::uint64_t order() const;

  const std::vector<Element>& generators() const;
  Element identity() const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  Element power(const Element& x, std::int64_t k) const;
  bool contains(const Element& x) const;

  /// All elements in ascending order, identity first. Parametric groups
  /// enumerate on first call and throw OrderCapExceeded beyond the cap.
  const std::vector<Element>& elements() const;

  Element parse_element(std::string_view text) const;

  /// Faithful permutation model of the same group with the same generator
  /// list (polygon action for dihedral n ≥ 3, regular action otherwise).
  FiniteGroup to_permutation_group(const GroupOptions& options = {}) const;

 private:
  struct Impl;
  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

FiniteGroup klein_four();
FiniteGroup quaternion8();
FiniteGroup semidihedral16();
FiniteGroup symmetric(std::uint32_t n, const GroupOptions& options = {});
FiniteGroup alternating(std::uint32_t n, const GroupOptions& options = {});
/// GL(2,3) acting on the eight nonzero row vectors of F_3^2.
FiniteGroup gl2_3();
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           const GroupOptions& options = {});
/// (C3×C3)⋊D4 as affine maps of F_3^2: translations plus the linear action
/// r ↦ rotation, s ↦ reflection. The pair must define a faithful D4.
FiniteGroup semidirect_c3xc3_d4(const Matrix3x2& rotation, const Matrix3x2& reflection);

/// Text grammar used by the CLI and certificates:
///   cyclic:N  dihedral:N  klein_four  quaternion8  semidihedral16
///   symmetric:N  alternating:N  gl2_3  product:G,H
///   semidirect:C3xC3:D4:r11,r12,r21,r22;s11,s12,s21,s22
/// Aliases: C8, D46, S3, A6, V4, Q8, SD16, GL23. A factor of a product that
/// itself contains a comma must be parenthesized.
FiniteGroup construct(std::string_view descriptor, const GroupOptions& options = {});

/// Image of the word a^rot b^flip in a permutation model produced by
/// to_permutation_group (generators a, b in that order).
Element word_in_model(const FiniteGroup& model, const Word& w);

std::uint64_t element_order(const FiniteGroup& group, const Element& x);
/// True iff `set` generates the whole group. Dihedral and cyclic groups use
/// the subgroup-lattice criterion; permutation groups enumerate the closure.
bool generates(const FiniteGroup& group, std::span<const Element> set);
std::uint64_t exponent(const FiniteGroup& group);

/// Elements numbered in canonical order with a multiplication table when the
/// group is small enough; used by the search and coset machinery.
class IndexedGroup {
 public:
  explicit IndexedGroup(FiniteGroup group, std::uint32_t table_cap = 2048);

  const FiniteGroup& group() const { return group_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(elements_->size()); }
  const Element& element(std::uint32_t i) const { return (*elements_)[i]; }
  std::uint32_t index_of(const Element& x) const;

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(x) * size() + y];
    return index_of(group_.multiply(element(x), element(y)));
  }
  std::uint32_t inv(std::uint32_t x) const { return inverse_[x]; }
  std::uint32_t order_of(std::uint32_t x) const { return orders_[x]; }
  bool generates(std::span<const std::uint32_t> set) const;

 private:
  FiniteGroup group_;
  const std::vector<Element>* elements_;
  std::unordered_map<Element, std::uint32_t, ElementHash> index_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> orders_;
};

}  // namespace narcert
