#include <doctest.h>

#include <random>

#include "ob/expr.hpp"
#include "ob/quotients.hpp"
#include "ob/reps.hpp"
#include "ob/symfun.hpp"
#include "ob/verify.hpp"

using namespace ob;

namespace {

Word W(const char* text) { return Word::parse(text); }

const Engine& engine() {
  static const Engine e;
  return e;
}

Morphism E(const char* expr) { return evaluate_expression(expr, engine()); }

Scalar D(std::uint32_t k) { return Scalar::variable(Symbol::delta(k)); }

// Δ_k drawn as a clockwise bubble with k-1 dots.
SliceWord bubble_word(std::uint32_t k) {
  SliceWord w(W("0"), {{Gen::Cup, 0}});
  for (std::uint32_t i = 1; i < k; ++i) w.push(Gen::DotUp, 0);
  w.push(Gen::CapRev, 0);
  return w;
}

}  // namespace

TEST_CASE("cyclotomic bubble recursion") {
  const UPoly f = parse_monic("u^3 - 2u^2 + 5u - 7");
  const CyclotomicData cd(f);
  CHECK(cd.level() == 3);
  CHECK(cd.a(1) == Scalar(-2L));
  CHECK(cd.a(3) == Scalar(-7L));
  CHECK(cd.bubble(2) == D(2));
  CHECK(cd.bubble(4) == parse_scalar("2 D3 - 5 D2 + 7 D1"));

  for (const char* text : {"u - 3", "u^2 - 1", "u^2 + 1/2 u - 4", "u^3 - u + 2"}) {
    const CyclotomicData data(parse_monic(text));
    const std::uint32_t l = data.level();
    const CyclotomicReducer reducer(engine(), data);
    INFO("f = " << text);
    // Δ_{ℓ+1} + Σ a_i Δ_{ℓ+1-i} vanishes in the quotient.
    Morphism sum = engine().normalize(bubble_word(l + 1));
    for (std::uint32_t i = 1; i <= l; ++i) sum += data.a(i) * engine().normalize(bubble_word(l + 1 - i));
    CHECK(reducer.reduce(sum).is_zero());
    for (std::uint32_t k = l + 1; k <= l + 3; ++k) {
      Scalar rec;
      for (std::uint32_t i = 1; i <= l; ++i) rec -= data.a(i) * data.bubble(k - i);
      CHECK(data.bubble(k) == rec);
    }
  }
}

TEST_CASE("series bubble values obey the same recursion") {
  std::mt19937_64 rng(4);
  for (std::uint32_t l = 1; l <= 3; ++l) {
    const auto m = random_parameters(rng, l);
    std::vector<Scalar> lam;
    for (std::uint32_t i = 0; i < l; ++i) lam.emplace_back(static_cast<long>(i + 1));
    const UPoly f = pyramid_f(m);
    const auto d = deltas_from_pair(f, pyramid_fprime(m, lam), l + 3);
    const CyclotomicData cd(f, std::vector<Scalar>(d.begin(), d.begin() + l));
    for (std::uint32_t k = 1; k <= l + 3; ++k) CHECK(cd.bubble(k) == d[k - 1]);
  }
}

TEST_CASE("specialization") {
  const Morphism m = Scalar(D(1) * D(2)) * Morphism::identity(W("^"));
  CHECK(specialize(m, SpecializationMap::values({{1, Scalar(2L)}, {2, Scalar(3L)}})) ==
        Scalar(6L) * Morphism::identity(W("^")));
  CHECK_THROWS_AS(specialize(m, SpecializationMap::values({{1, Scalar(2L)}})), std::invalid_argument);
  const CyclotomicData cd(parse_monic("u - 2"), std::vector<Scalar>{Scalar(5L)});
  CHECK(SpecializationMap::cyclotomic(cd).value(3) == Scalar(20L));
  CHECK_THROWS_AS(SpecializationMap::cyclotomic(CyclotomicData(parse_monic("u"))), std::invalid_argument);
  CHECK_THROWS_AS(CyclotomicData(parse_monic("u^2"), std::vector<Scalar>{Scalar(1L)}), std::invalid_argument);
}

TEST_CASE("cyclotomic reduction is a projection compatible with the tensor representation") {
  std::mt19937_64 rng(8);
  const Pyramid p({2, 2});
  const auto m = random_parameters(rng, 2);
  const CyclotomicData cd(poly_from_roots(m));
  const CyclotomicReducer reducer(engine(), cd);
  const TensorRep<Rational> rep(p, m, RepKind::Filtered);
  FuzzBounds bounds;
  bounds.max_slices = 6;
  for (int trial = 0; trial < 40; ++trial) {
    const SliceWord w = random_slice_word(rng, bounds);
    INFO(w.to_string());
    const Morphism nf = engine().normalize(w);
    const Morphism red = reducer.reduce(nf);
    CHECK(reducer.reduce(red) == red);
    CHECK(rep.matrix(red) == rep.matrix(nf));
    for (const auto& [d, c] : red.terms()) {
      for (std::uint32_t out : d.matching().outputs()) CHECK(d.dots(out) < 2);
      for (const auto& t : c.terms())
        for (const auto& [code, e] : t.mono.factors()) CHECK(Symbol::from_code(code).index() <= 2);
    }
  }
}

TEST_CASE("Jucys-Murphy morphisms") {
  const Morphism jm2 = jm_morphism(W("^^"), 2);
  CHECK(jm2 == E("s"));
  CHECK(jm_morphism(W("^v"), 2) == -E("c . d'"));
  CHECK(jm_morphism(W("v^"), 2) == -E("c' . d"));
  CHECK(jm_morphism(W("^"), 1).is_zero());
  CHECK(transposition(W("^v"), 1, 2) == -E("c . d'"));

  // (g ↑ h) JM = JM (g ↑ h) for a generator g on the left and identities.
  struct Case {
    const char* g;
    Word a, c;
  };
  const std::vector<Case> cases{
      {"c", W("0"), W("^v")}, {"c'", W("0"), W("v^")}, {"d", W("v^"), W("0")},
      {"d'", W("^v"), W("0")}, {"s", W("^^"), W("^^")}, {"t", W("^v"), W("v^")},
  };
  for (const auto& cs : cases)
    for (const char* h : {"1[0]", "1[v]", "1[^v]"}) {
      INFO(cs.g << " | " << h);
      const Morphism g = E(cs.g), hm = E(h);
      const Morphism ghm = engine().tensor(engine().tensor(g, Morphism::identity(W("^"))), hm);
      const auto k = static_cast<std::uint32_t>(cs.a.size()), l = static_cast<std::uint32_t>(cs.c.size());
      const Word src = cs.a + W("^") + hm.source(), tgt = cs.c + W("^") + hm.target();
      CHECK(engine().compose(ghm, jm_morphism(src, k + 1)) == engine().compose(jm_morphism(tgt, l + 1), ghm));
    }
  // JM_{k+2} s = s JM_{k+1} + 1.
  for (const char* a : {"0", "^", "v", "v^"}) {
    const Word aw = W(a), w = aw + W("^^");
    const auto k = static_cast<std::uint32_t>(aw.size());
    SliceWord sw(w, {{Gen::CrossUU, k}});
    const Morphism s = engine().normalize(sw);
    CHECK(engine().compose(jm_morphism(w, k + 2), s) ==
          engine().compose(s, jm_morphism(w, k + 1)) + Morphism::identity(w));
  }
}

TEST_CASE("the level-one functor") {
  const Scalar root(Rational(5, 3));
  const LevelOneFunctor fn(engine(), root);
  CHECK(fn.map(SliceWord(W("^"), {{Gen::DotUp, 0}})) == root * Morphism::identity(W("^")));
  CHECK(fn.map(SliceWord(W("^^"), {{Gen::DotUp, 1}})) == E("s") + root * Morphism::identity(W("^^")));
  CHECK(fn.map(E("s")) == E("s"));
  CHECK(fn.map(E("t . c")) == E("t . c"));
  CHECK(fn.map(Scalar(D(3)) * Morphism::identity(W("0"))) ==
        Scalar(root * root * D(1)) * Morphism::identity(W("0")));

  const CyclotomicData cd(UPoly::linear_root(root));
  BasisBounds b;
  b.max_dots_per_strand = 0;
  for (const char* a : {"^v", "^^", "^v^"}) {
    const Word w = W(a);
    CHECK(enumerate_normal_basis(w, w, b).size() == enumerate_matchings(w, w).size());
  }
  CHECK(enumerate_normal_basis(W("^v"), W("^v"), b).size() == 2);
}

TEST_CASE("primed generators") {
  const auto pg = primed_generators(engine());
  CHECK(pg.cup == E("c'"));
  CHECK(pg.cap == E("d'"));
  CHECK(pg.cross == E("s'"));
  CHECK(pg.dot == E("x'"));
  CHECK(pg.cup == E("t . c"));
  CHECK(pg.cap == E("d . t"));
  CHECK(pg.dot == E("(d * 1[v]) . (1[v] * x * 1[v]) . (1[v] * c)"));
  // (↓d')(c'↓) = ↓
  CHECK(E("(1[v] * d') . (c' * 1[v])") == Morphism::identity(W("v")));
}

TEST_CASE("duality transports are mutually inverse") {
  const Word a = W("^v");
  BasisBounds b;
  b.max_dots_per_strand = 1;
  for (const auto& e : enumerate_normal_basis(a.dual() + W("^"), W("^"), b)) {
    const Morphism h = e.morphism();
    const Morphism g = hom_transport_left(h, a, engine());
    CHECK(g.source() == W("^"));
    CHECK(g.target() == a + W("^"));
    CHECK(hom_transport_left_inverse(g, a, engine()) == h);
  }
  for (const auto& e : enumerate_normal_basis(W("v"), W("^") + a.dual(), b)) {
    const Morphism h = e.morphism();
    const Morphism g = hom_transport_right(h, a, engine());
    CHECK(hom_transport_right_inverse(g, a, engine()) == h);
  }
  CHECK_THROWS_AS(hom_transport_left(E("s"), a, engine()), std::invalid_argument);
}

TEST_CASE("walled Brauer algebras") {
  AlgebraSpec spec;
  spec.delta = Scalar(5L);
  const StructureTable t = walled_brauer_algebra(1, 1, spec);
  REQUIRE(t.basis.size() == 2);
  // Find e, the cap-cup element, and check e.e = 5e.
  std::optional<std::size_t> e;
  for (std::size_t i = 0; i < 2; ++i)
    if (t.basis[i].diagram.matching() != Matching::identity(W("^v"))) e = i;
  REQUIRE(e);
  CHECK(t.products[*e][*e] == Scalar(5L) * t.basis[*e].morphism());

  std::size_t fact = 1;
  for (std::uint32_t total = 0; total <= 4; ++total) {
    if (total > 0) fact *= total;
    for (std::uint32_t r = 0; r <= total; ++r)
      CHECK(walled_brauer_algebra(r, total - r, spec).basis.size() == fact);
  }

  // The counting shortcut agrees with the rewriting engine.
  AlgebraSpec slow = spec;
  slow.use_engine = true;
  const StructureTable fast21 = walled_brauer_algebra(2, 1, spec);
  const StructureTable slow21 = walled_brauer_algebra(2, 1, slow);
  CHECK(fast21.products == slow21.products);
  CHECK_THROWS_AS(compose_specialized_ob(E("x"), E("x"), Scalar(2L)), std::invalid_argument);

  AlgebraSpec symbolic;
  const StructureTable sym = walled_brauer_algebra(1, 1, symbolic);
  CHECK(sym.products[*e][*e] == Scalar(D(1)) * sym.basis[*e].morphism());

  AlgebraSpec cyc;
  cyc.kind = AlgebraKind::Cyclotomic;
  cyc.cyclotomic = CyclotomicData(parse_monic("u^2 - 1"));
  CHECK(walled_brauer_algebra(1, 1, cyc).basis.size() == 8);
}
