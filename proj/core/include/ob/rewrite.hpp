// Normalization of slice words to normally ordered diagrams, with composition
// and tensor product on top. Works in the filtered (affine) and graded settings.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ob/diagrams.hpp"
#include "ob/scalar.hpp"

namespace ob {

enum class BubblePolicy : std::uint8_t {
  Polynomial,   // keep Δ_k as indeterminates
  Specialized,  // Δ_k ↦ supplied values
  GradedDelta,  // Δ_1 ↦ δ, dotted bubbles ↦ 0
};

struct EngineMode {
  int correction = 1;  // 1: dot/crossing exchange has a correction term; 0: graded
  BubblePolicy policy = BubblePolicy::Polynomial;
  std::map<std::uint32_t, Scalar> delta_values;  // Δ_k values for Specialized / GradedDelta (k = 1)

  static EngineMode filtered() { return {}; }
  static EngineMode graded() { return {0, BubblePolicy::Polynomial, {}}; }
  static EngineMode specialized(std::map<std::uint32_t, Scalar> values, int correction = 1) {
    return {correction, BubblePolicy::Specialized, std::move(values)};
  }
  static EngineMode graded_delta(const Scalar& delta) { return {0, BubblePolicy::GradedDelta, {{1, delta}}}; }

  bool is_graded() const { return correction == 0; }
  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

// One dot/crossing exchange: a dot just below bottom side `side` of the crossing
// equals the dot just above the opposite top side plus `coefficient` times the
// smoothing of the crossing.
struct ExchangeRule {
  Gen crossing;
  std::uint32_t side;
  int coefficient;
  std::string name() const;
};

// A dot passes a cup or cap freely, switching legs.
struct FreeSlide {
  Gen turn;  // Cup, CupRev, Cap or CapRev
  std::string name() const;
};

class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::vector<ExchangeRule> exchanges, int correction);

  int coefficient(Gen crossing, std::uint32_t side) const;
  int correction() const { return correction_; }
  const std::vector<ExchangeRule>& exchanges() const { return exchanges_; }
  static const std::vector<FreeSlide>& free_slides();
  // Undotted diagram with the same boundary as the crossing and no crossing.
  static std::vector<Slice> smoothing(Gen crossing, std::uint32_t offset);

  // Copy with one coefficient replaced (for mutation tests).
  RuleSet with_coefficient(Gen crossing, std::uint32_t side, int coefficient) const;

 private:
  std::vector<ExchangeRule> exchanges_;
  int correction_ = 1;
};

struct RuleCheck {
  std::string name;
  bool passed;
};

// Derives all exchange coefficients from the defining relations and checks every
// rule (alone and inside a wider word) against the tensor-space representation.
// Throws RuleCertificationError naming the first failing rule.
RuleSet derive_slide_rules(const EngineMode& mode);
RuleSet derive_slide_rules_unchecked(const EngineMode& mode);
std::vector<RuleCheck> certify_rules(const RuleSet& rules);

class RuleCertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undotted slice word: its matching and number of closed loops.
MatchingComposite trace_undotted(const SliceWord& w);

using SliceCombination = std::vector<std::pair<Scalar, SliceWord>>;

class Engine {
 public:
  explicit Engine(EngineMode mode = EngineMode::filtered());
  // Skips certification; used to exercise deliberately corrupted rule sets.
  static Engine unchecked(RuleSet rules, EngineMode mode);
  ~Engine();
  Engine(Engine&&) noexcept;
  Engine& operator=(Engine&&) noexcept;

  const EngineMode& mode() const;
  const RuleSet& rules() const;

  Morphism normalize(const SliceWord& w) const;
  Morphism normalize(const SliceCombination& ws) const;
  // f ∘ g.
  Morphism compose(const Morphism& f, const Morphism& g) const;
  // f ⊗ g with f on the left.
  Morphism tensor(const Morphism& f, const Morphism& g) const;
  // Throws std::invalid_argument when the hom spaces differ.
  bool equals(const Morphism& f, const Morphism& g) const;
  // Apply the mode's bubble policy to coefficients.
  Morphism apply_policy(const Morphism& f) const;

  // Δ_k placed to the right of an upward strand, as Σ_j c_j x^j on that strand
  // with bubbles moved to the left edge.
  const std::vector<Scalar>& bubble_past_up(std::uint32_t k) const;

  std::size_t cache_size() const;

 private:
  Engine(RuleSet rules, EngineMode mode);
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Filtered degree: strand dots plus Σ (k−1) over bubble factors Δ_k.
// nullopt stands for −∞ (zero morphism).
std::optional<std::int64_t> filtered_degree(const Morphism& f);
// Degree-i part, as a morphism to be read in the graded category.
Morphism associated_graded(const Morphism& f, std::int64_t degree);

}  // namespace ob
