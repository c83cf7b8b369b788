#include <doctest.h>

#include <random>

#include "ob/diagrams.hpp"
#include "ob/expr.hpp"
#include "ob/rewrite.hpp"

using namespace ob;

namespace {

Word W(const char* text) { return Word::parse(text); }

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// Independent count of matchings a -> b: the inputs are the up letters of a and
// the down letters of b, outputs the rest, and any bijection is allowed.
std::size_t matching_count_oracle(const Word& a, const Word& b) {
  const std::size_t in = a.count(Orient::Up) + b.count(Orient::Down);
  const std::size_t out = a.count(Orient::Down) + b.count(Orient::Up);
  return in == out ? factorial(in) : 0;
}

}  // namespace

TEST_CASE("words: parsing, duals and concatenation") {
  CHECK(W("^^v").dual() == W("^vv"));
  CHECK(W("0").empty());
  CHECK(W("0").dual().empty());
  for (const char* t : {"^", "v^", "^^vv^", "v"}) CHECK(W(t).dual().dual() == W(t));
  CHECK(W("^v") + W("v") == W("^vv"));
  CHECK(W("^vv^").to_string() == "^vv^");
  CHECK_THROWS_AS(W("^x"), std::invalid_argument);
}

TEST_CASE("matchings: counts and endpoint conventions") {
  CHECK(enumerate_matchings(W("0"), W("0")).size() == 1);
  CHECK(enumerate_matchings(W("^"), W("v")).empty());
  CHECK(enumerate_matchings(W("^v"), W("^v")).size() == 2);
  CHECK(enumerate_matchings(W("^^vv"), W("^^vv")).size() == 24);

  for (std::size_t r = 0; r <= 5; ++r) {
    for (std::size_t s = 0; r + s <= 5; ++s) {
      const Word w = Word::repeat(Orient::Up, r) + Word::repeat(Orient::Down, s);
      CHECK_MESSAGE(enumerate_matchings(w, w).size() == factorial(r + s), "r=" << r << " s=" << s);
    }
  }
  for (const char* a : {"0", "^", "v", "^v", "v^", "^^"})
    for (const char* b : {"0", "^", "v", "^v", "v^", "^^", "^v^"})
      CHECK(enumerate_matchings(W(a), W(b)).size() == matching_count_oracle(W(a), W(b)));

  // Every strand has one input and one output.
  for (const auto& m : enumerate_matchings(W("^v^"), W("v^^"))) {
    CHECK(m.inputs().size() == m.outputs().size());
    for (std::uint32_t in : m.inputs()) {
      CHECK(m.is_input(in));
      CHECK(m.is_output(m.partner(in)));
      CHECK(m.partner(m.partner(in)) == in);
    }
  }

  const Matching id = Matching::identity(W("^v"));
  CHECK(id.code(Endpoint{Side::Bottom, 1}) == 1);
  CHECK(id.code(Endpoint{Side::Top, 0}) == 2);
  CHECK(id.partner(0) == 2);  // up strand from b1 to t1
  CHECK(id.partner(3) == 1);  // down strand from t2 to b2
}

TEST_CASE("matching composition traces strands and counts loops") {
  Engine engine;
  const auto matching_of = [&](const char* expr) {
    return evaluate_expression(expr, engine).terms().begin()->first.matching();
  };
  const auto bubble = compose_matchings(matching_of("d'"), matching_of("c"));
  CHECK(bubble.loops == 1);
  CHECK(bubble.matching.endpoint_count() == 0);

  const auto ss = compose_matchings(matching_of("s"), matching_of("s"));
  CHECK(ss.loops == 0);
  CHECK(ss.matching == Matching::identity(W("^^")));

  for (const auto& m : enumerate_matchings(W("^v"), W("v^v^"))) {
    CHECK(compose_matchings(Matching::identity(W("v^v^")), m).matching == m);
    CHECK(compose_matchings(m, Matching::identity(W("^v"))).matching == m);
  }
  CHECK_THROWS_AS(compose_matchings(matching_of("s"), matching_of("c")), std::invalid_argument);
}

TEST_CASE("canonical slice layout") {
  Engine engine;
  const Morphism ax = evaluate_expression("(1[^] * x) . s", engine);
  REQUIRE(ax.terms().size() == 1);
  const SliceWord sw = to_slices(ax.terms().begin()->first);
  REQUIRE(sw.size() == 2);
  CHECK(sw.slices()[0] == Slice{Gen::CrossUU, 0});
  CHECK(sw.slices()[1] == Slice{Gen::DotUp, 1});

  const NormalDiagram id(Matching::identity(W("^")));
  CHECK(to_slices(id).size() == 0);

  // Δ2 to the left of an up strand: c, one dot, d'.
  const SliceWord d2 = to_slices(id, Monomial(Symbol::delta(2)));
  REQUIRE(d2.size() == 3);
  CHECK(d2.slices()[0].gen == Gen::Cup);
  CHECK(d2.slices()[1] == Slice{Gen::DotUp, 0});
  CHECK(d2.slices()[2].gen == Gen::CapRev);
  CHECK(d2.source() == W("^"));
  CHECK(d2.target() == W("^"));
}

TEST_CASE("normal basis enumeration") {
  BasisBounds b;
  b.max_dots_per_strand = 1;
  CHECK(enumerate_normal_basis(W("^"), W("^"), b).size() == 2);
  for (std::uint32_t l = 1; l <= 3; ++l) {
    b.max_dots_per_strand = l - 1;
    CHECK(enumerate_normal_basis(W("^v"), W("^v"), b).size() == 2 * l * l);
  }
  CHECK(enumerate_normal_basis(W("^"), W("v"), b).empty());

  BasisBounds bubbles;
  bubbles.max_dots_per_strand = 0;
  bubbles.max_bubble_degree = 1;
  bubbles.max_bubble_index = 2;
  const auto empty = enumerate_normal_basis(W("0"), W("0"), bubbles);
  REQUIRE(empty.size() == 3);
  CHECK(empty[0].bubbles.is_one());

  BasisBounds unbounded;
  CHECK_THROWS_AS(enumerate_normal_basis(W("^"), W("^"), unbounded), std::invalid_argument);

  // Round trip through the slice layout, including bubbles.
  Engine engine;
  BasisBounds rb;
  rb.max_dots_per_strand = 2;
  rb.max_bubble_degree = 1;
  rb.max_bubble_index = 2;
  for (const char* a : {"^v", "v^", "^^"})
    for (const auto& e : enumerate_normal_basis(W(a), W(a), rb))
      CHECK_MESSAGE(engine.normalize(to_slices(e.diagram, e.bubbles)) == e.morphism(), e.diagram.to_string());
}

TEST_CASE("orientation reversal") {
  Engine engine;
  const auto ev = [&](const char* e) { return evaluate_expression(e, engine); };
  CHECK(reverse_orientation(ev("c")) == ev("c'"));
  CHECK(reverse_orientation(ev("s")) == ev("s'"));
  CHECK(reverse_orientation(ev("d")) == ev("d'"));
  for (const auto& m : enumerate_matchings(W("^v^"), W("^v^"))) {
    const NormalDiagram d(m);
    CHECK(reverse_orientation(reverse_orientation(d)) == d);
    CHECK(reverse_orientation(d).source() == W("v^v"));
  }
  CHECK_THROWS_AS(reverse_orientation(ev("x")), std::invalid_argument);
}

TEST_CASE("morphism arithmetic") {
  Engine engine;
  const Morphism s = evaluate_expression("s", engine);
  const Morphism id = Morphism::identity(W("^^"));
  const Morphism sum = s + Scalar(2L) * id;
  CHECK(sum.terms().size() == 2);
  CHECK((sum - s) == Scalar(2L) * id);
  CHECK((s - s).is_zero());
  CHECK_THROWS_AS(s + Morphism::identity(W("^v")), std::invalid_argument);
}
