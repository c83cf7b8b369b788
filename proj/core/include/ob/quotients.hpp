// Specializations, cyclotomic quotients, Jucys-Murphy elements, the level-one
// functor, duality transports and walled Brauer structure constants.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ob/diagrams.hpp"
#include "ob/rewrite.hpp"
#include "ob/scalar.hpp"

namespace ob {

// f(u) = u^ℓ + a_1 u^{ℓ-1} + ... + a_ℓ, optionally with values for Δ_1..Δ_ℓ.
class CyclotomicData {
 public:
  explicit CyclotomicData(UPoly f, std::optional<std::vector<Scalar>> deltas = std::nullopt);

  const UPoly& f() const { return f_; }
  std::uint32_t level() const { return static_cast<std::uint32_t>(f_.degree()); }
  // a_i, with a_0 = 1.
  const Scalar& a(std::uint32_t i) const { return f_.coeff(level() - i); }
  const std::optional<std::vector<Scalar>>& deltas() const { return deltas_; }

  // Δ_k for every k ≥ 1 written in Δ_1..Δ_ℓ (or their values) by the recursion
  // Δ_k = −Σ a_i Δ_{k−i}, k > ℓ.
  Scalar bubble(std::uint32_t k) const;

 private:
  UPoly f_;
  std::optional<std::vector<Scalar>> deltas_;
  mutable std::vector<Scalar> cache_;
};

class SpecializationMap {
 public:
  // Explicit values for finitely many indices.
  static SpecializationMap values(std::map<std::uint32_t, Scalar> v);
  // Values of Δ_1..Δ_ℓ, extended to all indices by the cyclotomic recursion.
  static SpecializationMap cyclotomic(const CyclotomicData& cd);

  // Throws std::invalid_argument if k is not covered.
  Scalar value(std::uint32_t k) const;

 private:
  std::map<std::uint32_t, Scalar> values_;
  std::optional<CyclotomicData> recursion_;
};

Morphism specialize(const Morphism& m, const SpecializationMap& s);

// Rewrites a normal-form morphism of the affine category into the cyclotomic
// quotient: every strand ends with at most ℓ−1 dots and only Δ_1..Δ_ℓ remain.
class CyclotomicReducer {
 public:
  CyclotomicReducer(const Engine& engine, CyclotomicData cd);

  const CyclotomicData& data() const { return cd_; }
  Morphism reduce(const Morphism& m) const;
  Morphism reduce_bubbles(const Morphism& m) const;

 private:
  Morphism reduce_top(const NormalDiagram& d, std::uint32_t position, std::uint32_t dots) const;
  Morphism reduce_bottom(const NormalDiagram& d, std::uint32_t position, std::uint32_t dots) const;
  // g(x) placed on the upward strand at `position` of `w` (as endomorphism of w).
  Morphism poly_at(const Word& w, std::uint32_t position, const UPoly& g) const;
  // x^k on position p of w, modulo the ideal.
  Morphism reduced_power(const Word& w, std::uint32_t position, std::uint32_t k) const;
  // σ∘f(x)_p − f(x)_0∘σ where σ carries position p to the left edge.
  const Morphism& commutator(const Word& w, std::uint32_t position) const;

  const Engine* engine_;
  CyclotomicData cd_;
  mutable std::map<std::pair<Word, std::uint32_t>, Morphism> commutators_;
};

Morphism cyclotomic_reduce(const Morphism& m, const CyclotomicData& cd, const Engine& engine);

// (p,q)^a with 1-based p ≠ q: the crossing of strands p and q when a_p = a_q,
// otherwise minus the cap-cup pair joining them.
Morphism transposition(const Word& a, std::uint32_t p, std::uint32_t q);
// Σ_{q<p} (p,q)^a.
Morphism jm_morphism(const Word& a, std::uint32_t p);

// The functor from the level-one quotient (f = u − m0) back to the undotted
// category: x at position p of a ↦ JM^a_{p} + m0.
class LevelOneFunctor {
 public:
  LevelOneFunctor(const Engine& engine, Scalar root);

  const Scalar& root() const { return root_; }
  Morphism map(const SliceWord& w) const;
  Morphism map(const Morphism& m) const;

 private:
  Morphism map_slice(const Word& w, Slice s) const;
  const Engine* engine_;
  Scalar root_;
};

// Nested unit ∅ → a⊗a* and counit a*⊗a → ∅.
SliceWord unit_slices(const Word& a);
SliceWord counit_slices(const Word& a);

// h: a*⊗b → c  ↦  (1_a⊗h)∘(η_a⊗1_b): b → a⊗c, and its inverse.
Morphism hom_transport_left(const Morphism& h, const Word& a, const Engine& engine);
Morphism hom_transport_left_inverse(const Morphism& g, const Word& a, const Engine& engine);
// h: b → c⊗a*  ↦  (1_c⊗ε_a)∘(h⊗1_a): b⊗a → c, and its inverse.
Morphism hom_transport_right(const Morphism& h, const Word& a, const Engine& engine);
Morphism hom_transport_right_inverse(const Morphism& g, const Word& a, const Engine& engine);

struct PrimedGenerators {
  Morphism cup;    // c' = t∘c
  Morphism cap;    // d' = d∘t
  Morphism cross;  // s'
  Morphism dot;    // x' = (d↓)(↓x↓)(↓c)
};
PrimedGenerators primed_generators(const Engine& engine);

// Undotted composition with every loop replaced by δ.
Morphism compose_specialized_ob(const Morphism& f, const Morphism& g, const Scalar& delta);

enum class AlgebraKind : std::uint8_t { Ob, Affine, Cyclotomic };

struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::Ob;
  std::optional<Scalar> delta;                // Ob: loop value (symbolic Δ1 when absent)
  std::optional<CyclotomicData> cyclotomic;   // Cyclotomic
  BasisBounds bounds;                         // Affine
  bool use_engine = false;                    // Ob: force the rewriting engine
};

struct StructureTable {
  AlgebraKind kind = AlgebraKind::Ob;  // bubbles are basis factors only for Affine
  Word word;
  std::vector<BasisElement> basis;
  std::vector<std::vector<Morphism>> products;  // products[i][j] = basis[i] ∘ basis[j]
  // Index of a diagram with bubble monomial in the basis, if present.
  std::optional<std::size_t> index_of(const NormalDiagram& d, const Monomial& bubbles) const;
};

// End(↑^r ↓^s) in the requested category.
StructureTable walled_brauer_algebra(std::uint32_t r, std::uint32_t s, const AlgebraSpec& spec);

}  // namespace ob
