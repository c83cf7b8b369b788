// Words, oriented Brauer matchings, normally ordered diagrams and slice words.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ob/scalar.hpp"

namespace ob {

enum class Orient : std::uint8_t { Up, Down };

constexpr Orient flip(Orient o) { return o == Orient::Up ? Orient::Down : Orient::Up; }

// An object: a finite sequence of arrows. Text form uses '^', 'v' and '0'.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Orient> letters) : letters_(letters) {}
  explicit Word(std::vector<Orient> letters) : letters_(std::move(letters)) {}
  static Word parse(std::string_view text);
  static Word repeat(Orient o, std::size_t count);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Orient operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Orient>& letters() const { return letters_; }
  std::size_t count(Orient o) const;

  Word dual() const;  // reverse and flip
  Word flipped() const;  // flip only
  Word slice(std::size_t from, std::size_t to) const;
  Word operator+(const Word& o) const;

  std::string to_string() const;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Orient> letters_;
};

Word word_dual(const Word& a);

// A boundary point of a diagram a -> b. Positions are 0-based; text output is 1-based.
enum class Side : std::uint8_t { Bottom, Top };

struct Endpoint {
  Side side;
  std::uint32_t position;
  auto operator<=>(const Endpoint&) const = default;
  std::string to_string() const;  // "b1", "t2", ...
};

// An oriented Brauer diagram as a perfect matching of boundary points. Endpoint
// codes: bottom i -> i, top j -> |source| + j. Inputs are bottom-up and top-down
// points; outputs are top-up and bottom-down points. A strand is named by its
// output endpoint.
class Matching {
 public:
  Matching() = default;
  // Validates that every pair joins one input to one output.
  Matching(Word source, Word target, std::vector<std::uint32_t> partner);
  static Matching identity(const Word& a);
  // Build from (input, output) pairs.
  static Matching from_pairs(const Word& source, const Word& target,
                             const std::vector<std::pair<Endpoint, Endpoint>>& pairs);

  const Word& source() const { return source_; }
  const Word& target() const { return target_; }
  std::size_t endpoint_count() const { return partner_.size(); }
  std::uint32_t code(Endpoint e) const;
  Endpoint endpoint(std::uint32_t code) const;
  Orient letter(std::uint32_t code) const;
  bool is_input(std::uint32_t code) const;
  bool is_output(std::uint32_t code) const { return !is_input(code); }
  std::uint32_t partner(std::uint32_t code) const { return partner_[code]; }
  const std::vector<std::uint32_t>& partners() const { return partner_; }
  std::vector<std::uint32_t> inputs() const;
  std::vector<std::uint32_t> outputs() const;

  std::string to_string() const;
  auto operator<=>(const Matching&) const = default;

 private:
  Word source_;
  Word target_;
  std::vector<std::uint32_t> partner_;
};

// All matchings a -> b, ordered lexicographically by the output assigned to each input.
std::vector<Matching> enumerate_matchings(const Word& a, const Word& b);

struct MatchingComposite {
  Matching matching;
  std::uint32_t loops = 0;
};
// upper ∘ lower, requires lower.target() == upper.source().
MatchingComposite compose_matchings(const Matching& upper, const Matching& lower);

// A matching with a dot count on each strand (indexed by endpoint code; only
// output endpoints may carry dots).
class NormalDiagram {
 public:
  NormalDiagram() = default;
  explicit NormalDiagram(Matching m);
  NormalDiagram(Matching m, std::vector<std::uint32_t> dots);

  const Matching& matching() const { return matching_; }
  const Word& source() const { return matching_.source(); }
  const Word& target() const { return matching_.target(); }
  std::uint32_t dots(std::uint32_t output_code) const { return dots_[output_code]; }
  const std::vector<std::uint32_t>& dot_vector() const { return dots_; }
  std::uint32_t degree() const;
  NormalDiagram with_dots(std::uint32_t output_code, std::uint32_t count) const;
  NormalDiagram undotted() const { return NormalDiagram(matching_); }

  std::string to_string() const;
  auto operator<=>(const NormalDiagram&) const = default;

 private:
  Matching matching_;
  std::vector<std::uint32_t> dots_;
};

// Linear combination of normal diagrams a -> b. A Δ-monomial in a coefficient
// stands for the corresponding clockwise bubbles at the left edge.
class Morphism {
 public:
  using Terms = std::map<NormalDiagram, Scalar>;

  Morphism() = default;
  Morphism(Word source, Word target) : source_(std::move(source)), target_(std::move(target)) {}
  static Morphism identity(const Word& a);
  static Morphism from_diagram(const NormalDiagram& d, const Scalar& coef = Scalar(1L));

  const Word& source() const { return source_; }
  const Word& target() const { return target_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const NormalDiagram& d) const;

  void add_term(const NormalDiagram& d, const Scalar& coef);
  Morphism& operator+=(const Morphism& o);
  Morphism& operator-=(const Morphism& o);
  Morphism& operator*=(const Scalar& s);
  friend Morphism operator+(Morphism a, const Morphism& b) { return a += b; }
  friend Morphism operator-(Morphism a, const Morphism& b) { return a -= b; }
  friend Morphism operator*(const Scalar& s, Morphism a) { return a *= s; }
  Morphism operator-() const { return Scalar(-1L) * *this; }
  bool operator==(const Morphism& o) const = default;

  // Apply a map to every coefficient, dropping zeros.
  template <class F>
  Morphism map_coefficients(F&& f) const {
    Morphism out(source_, target_);
    for (const auto& [d, c] : terms_) out.add_term(d, f(c));
    return out;
  }

  std::string to_string() const;

 private:
  void check_type(const Word& s, const Word& t) const;
  Word source_;
  Word target_;
  Terms terms_;
};

enum class Gen : std::uint8_t {
  Cup,       // c  : 0 -> ^v
  CupRev,    // c' : 0 -> v^
  Cap,       // d  : v^ -> 0
  CapRev,    // d' : ^v -> 0
  CrossUU,   // s  : ^^ -> ^^
  CrossDD,   // s' : vv -> vv
  CrossUD,   // t  : ^v -> v^
  CrossDU,   // t' : v^ -> ^v
  DotUp,     // x  : ^ -> ^
  DotDown,   // x' : v -> v
};

const std::vector<Orient>& gen_source(Gen g);
const std::vector<Orient>& gen_target(Gen g);
std::string_view gen_name(Gen g);
std::optional<Gen> gen_from_name(std::string_view name);
bool is_crossing(Gen g);
bool is_dot(Gen g);
// Crossing generator for the given bottom letters.
Gen crossing_for(Orient left, Orient right);

// A generator placed with `offset` strands to its left.
struct Slice {
  Gen gen;
  std::uint32_t offset;
  auto operator<=>(const Slice&) const = default;
};

// Vertical composite of slices, bottom first.
class SliceWord {
 public:
  SliceWord() = default;
  explicit SliceWord(Word source) : source_(source), target_(std::move(source)) {}
  // Throws std::invalid_argument if some slice does not type-check.
  SliceWord(Word source, std::vector<Slice> slices);

  const Word& source() const { return source_; }
  const Word& target() const { return target_; }
  const std::vector<Slice>& slices() const { return slices_; }
  std::size_t size() const { return slices_.size(); }

  void push(Slice s);
  void push(Gen g, std::uint32_t offset) { push(Slice{g, offset}); }
  // this followed by `upper`.
  SliceWord then(const SliceWord& upper) const;
  // Place `right` strands to the right and `left` to the left of every slice.
  SliceWord widened(const Word& left, const Word& right) const;
  // The word between slice i-1 and slice i (level 0 is the source).
  std::vector<Word> levels() const;
  std::size_t dot_count() const;

  std::string to_string() const;
  auto operator<=>(const SliceWord&) const = default;

 private:
  Word source_;
  Word target_;
  std::vector<Slice> slices_;
};

// Word type after applying one slice; nullopt if it does not type-check.
std::optional<Word> apply_slice(const Word& w, Slice s);

// Reduced word of adjacent transpositions turning `order` into sorted order;
// each entry is the left offset of a swap. Greedy smallest descent first.
std::vector<std::uint32_t> sorting_word(std::vector<std::uint32_t> order);

// Canonical layout of a normal diagram with bubbles.
SliceWord to_slices(const NormalDiagram& d, const Monomial& bubbles = Monomial{});

struct BasisBounds {
  std::optional<std::uint32_t> max_dots_per_strand;
  std::optional<std::uint32_t> max_total_degree;
  std::uint32_t max_bubble_degree = 0;  // number of bubble factors
  std::optional<std::uint32_t> max_bubble_index;
};

struct BasisElement {
  NormalDiagram diagram;
  Monomial bubbles;
  std::uint32_t degree() const;
  Morphism morphism() const;
};

// Throws std::invalid_argument if the request is unbounded on an infinite family.
std::vector<BasisElement> enumerate_normal_basis(const Word& a, const Word& b,
                                                 const BasisBounds& bounds);

// Orientation reversal on undotted morphisms; throws on dots or dotted bubbles.
Morphism reverse_orientation(const Morphism& m);
NormalDiagram reverse_orientation(const NormalDiagram& d);

}  // namespace ob
