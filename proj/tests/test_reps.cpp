#include <doctest.h>

#include <random>

#include "ob/expr.hpp"
#include "ob/quotients.hpp"
#include "ob/reps.hpp"
#include "ob/rewrite.hpp"
#include "ob/symfun.hpp"
#include "ob/verify.hpp"

using namespace ob;

namespace {

Word W(const char* text) { return Word::parse(text); }

const Pyramid& worked_example() {
  static const Pyramid p({2, 3, 2, 1, 1});
  return p;
}

// Row-major index of a 1-based box tuple.
std::uint64_t index_of(std::initializer_list<std::uint32_t> boxes, std::uint32_t n) {
  std::uint64_t k = 0;
  for (std::uint32_t b : boxes) k = k * n + (b - 1);
  return k;
}

// 1-based box tuple of a row-major index.
std::vector<std::uint32_t> tuple_of(std::uint64_t k, std::uint32_t n, std::size_t len) {
  std::vector<std::uint32_t> t(len);
  for (std::size_t j = len; j-- > 0;) {
    t[j] = static_cast<std::uint32_t>(k % n) + 1;
    k /= n;
  }
  return t;
}

LinearMap<Rational> slice_matrix(const Word& w, Gen g, std::uint32_t offset, const Pyramid& p) {
  const TensorRep<Rational> rep(p, std::vector<Scalar>(p.levels(), Scalar(0L)), RepKind::Filtered);
  return rep.matrix(SliceWord(w, {{g, offset}}));
}

using MT = LinearMap<Rational>;
MT tr(const Word& a, std::uint32_t p, std::uint32_t q, const Pyramid& P) { return mod_transposition_matrix(a, p, q, P); }

std::vector<std::uint32_t> up_positions(const Word& a) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < a.size(); ++i)
    if (a[i] == Orient::Up) out.push_back(i + 1);
  return out;
}

}  // namespace

TEST_CASE("pyramid numbering") {
  const Pyramid& p = worked_example();
  CHECK(p.n() == 9);
  CHECK(p.levels() == 5);
  CHECK(p.col(6) == 2);
  CHECK(p.col(1) == 2);
  const std::vector<std::vector<std::uint32_t>> rows{{1}, {2, 3, 4}, {5, 6, 7, 8, 9}};
  CHECK(p.rows() == rows);
  CHECK(p.min_height() == 1);
  CHECK(Pyramid({1}).n() == 1);
  CHECK(Pyramid({1}).col(1) == 1);
  CHECK_THROWS_AS(Pyramid({2, 1, 2}), std::invalid_argument);
}

TEST_CASE("the undotted functor on transpositions") {
  const std::uint32_t n = 3;
  const Word a = W("^^vv");
  const auto swap12 = psi_matrix(transposition(a, 1, 2), n);
  const auto pair24 = psi_matrix(transposition(a, 2, 4), n);
  for (std::uint64_t k = 0; k < tensor_dim(n, 4); ++k) {
    const auto i = tuple_of(k, n, 4);
    SparseVec<Rational> want;
    want[index_of({i[1], i[0], i[2], i[3]}, n)] = 1;
    CHECK(sparse_equal(swap12.column(k), want));

    SparseVec<Rational> want24;
    if (i[1] == i[3])
      for (std::uint32_t j = 1; j <= n; ++j) want24[index_of({i[0], j, i[2], j}, n)] = -1;
    CHECK(sparse_equal(pair24.column(k), want24));
  }

  Engine engine;
  const auto t = psi_matrix(evaluate_expression("t", engine), n);
  const auto x = psi_matrix(evaluate_expression("(d * 1[^v]) . (1[v] * s * 1[v]) . (1[v^] * c)", engine), n);
  CHECK(x.after(t) == MT::identity(W("^v"), n));
  CHECK(t.after(x) == MT::identity(W("v^"), n));
}

TEST_CASE("modified transpositions on the worked example") {
  const Pyramid& p = worked_example();
  const Word a = W("^^vv");
  const auto v = index_of({7, 6, 5, 6}, 9);
  const auto t12 = tr(a, 1, 2, p);
  CHECK(t12.column(v).size() == 1);
  CHECK(t12.entry(index_of({6, 7, 5, 6}, 9), v) == -1);

  const auto t24 = tr(a, 2, 4, p);
  SparseVec<Rational> want;
  want[index_of({7, 2, 5, 2}, 9)] = 1;
  want[index_of({7, 5, 5, 5}, 9)] = 1;
  CHECK(sparse_equal(t24.column(v), want));

  // One column: p > q gives the plain transposition, p < q gives zero.
  const Pyramid col({3});
  const Word b = W("^^v");
  for (std::uint32_t pp : {1u, 2u})
    for (std::uint32_t q = 1; q <= 3; ++q) {
      if (q == pp) continue;
      if (pp > q) CHECK(tr(b, pp, q, col) == psi_matrix(transposition(b, pp, q), 3));
      else CHECK(tr(b, pp, q, col).is_zero());
    }
}

TEST_CASE("filtered and graded images of generators") {
  const Pyramid p11({1, 1});
  const TensorRep<Scalar> rep(p11, symbolic_m(2), RepKind::Filtered);
  const auto x = rep.matrix(SliceWord(W("^"), {{Gen::DotUp, 0}}));
  CHECK(x.entry(0, 0) == Scalar::variable(Symbol::m(1)));
  CHECK(x.entry(0, 1) == Scalar(1L));
  CHECK(x.entry(1, 0).is_zero());
  CHECK(x.entry(1, 1) == Scalar::variable(Symbol::m(2)));

  const Pyramid& p = worked_example();
  const auto m = symbolic_m(5);
  const TensorRep<Scalar> big(p, m, RepKind::Filtered);
  const std::vector<Scalar> heights{Scalar(2L), Scalar(3L), Scalar(2L), Scalar(1L), Scalar(1L)};
  for (std::uint32_t k = 1; k <= 5; ++k) {
    SliceWord bubble(W("0"), {{Gen::Cup, 0}});
    for (std::uint32_t d = 1; d < k; ++d) bubble.push(Gen::DotUp, 0);
    bubble.push(Gen::CapRev, 0);
    CHECK_MESSAGE(big.matrix(bubble).entry(0, 0) == delta_explicit(m, heights, k), "k = " << k);
  }
  CHECK(big.matrix(SliceWord(W("0"), {{Gen::Cup, 0}, {Gen::CapRev, 0}})).entry(0, 0) == Scalar(9L));

  // The graded functor: x acts by the nilpotent e, bubbles by n or 0.
  const TensorRep<Rational> gr(p, std::vector<Scalar>(5, Scalar(0L)), RepKind::Graded);
  const auto e = gr.matrix(SliceWord(W("^"), {{Gen::DotUp, 0}}));
  CHECK(e == e_matrix(W("^"), 1, p));
  MT power = MT::identity(W("^"), 9);
  for (int i = 0; i < 4; ++i) power = e.after(power);
  CHECK_FALSE(power.is_zero());
  CHECK(e.after(power).is_zero());
  CHECK(gr.matrix(SliceWord(W("0"), {{Gen::Cup, 0}, {Gen::CapRev, 0}})).entry(0, 0) == 9);
  CHECK(gr.matrix(SliceWord(W("0"), {{Gen::Cup, 0}, {Gen::DotUp, 0}, {Gen::CapRev, 0}})).is_zero());
  CHECK(gr.matrix(SliceWord(W("^^"), {{Gen::CrossUU, 0}})) == psi_matrix(transposition(W("^^"), 1, 2), 9));
}

TEST_CASE("exact rank") {
  CHECK(matrix_rank(std::vector<std::vector<Rational>>{{1, 0}, {0, 1}}) == 2);
  CHECK(matrix_rank(std::vector<std::vector<Rational>>{{0, 0}, {0, 0}}) == 0);
  CHECK(matrix_rank(std::vector<std::vector<Rational>>{{1, 2}, {2, 4}}) == 1);
  const Scalar m1 = Scalar::variable(Symbol::m(1)), m2 = Scalar::variable(Symbol::m(2));
  // Vectorized identity and [[m1, 1], [0, m2]].
  const std::vector<std::vector<Scalar>> rows{{Scalar(1L), Scalar(0L), Scalar(0L), Scalar(1L)},
                                              {m1, Scalar(1L), Scalar(0L), m2}};
  CHECK(matrix_rank(rows) == 2);
  const std::vector<std::vector<Scalar>> dependent{{m1, m2}, {m1 * m2, m2 * m2}};
  CHECK(matrix_rank(dependent) == 1);
}

TEST_CASE("identities between modified transpositions") {
  const Pyramid& p = worked_example();
  const Word a = W("^^v^");
  const auto ups = up_positions(a);
  for (std::uint32_t pp : ups)
    for (std::uint32_t r : ups) {
      if (pp == r) continue;
      CHECK(tr(a, pp, r, p).after(tr(a, r, pp, p)).is_zero());
      // (r,p) e_p = -e_r (p,r)
      CHECK(tr(a, r, pp, p).after(e_matrix(a, pp, p)) == e_matrix(a, r, p).after(tr(a, pp, r, p)).scaled(-1));
      for (std::uint32_t q = 1; q <= a.size(); ++q) {
        if (q == pp || q == r) continue;
        const MT lhs = tr(a, pp, q, p).after(tr(a, r, q, p));
        if (a[q - 1] == Orient::Up) {
          CHECK(lhs == tr(a, r, q, p).after(tr(a, pp, r, p)) + tr(a, r, pp, p).after(tr(a, pp, q, p)));
        } else {
          CHECK((lhs + tr(a, pp, r, p).after(tr(a, r, q, p)) + tr(a, pp, q, p).after(tr(a, r, pp, p))).is_zero());
        }
      }
    }
  // Disjoint pairs commute.
  const Word b = W("^^^v");
  CHECK(tr(b, 1, 2, p).after(tr(b, 3, 4, p)) == tr(b, 3, 4, p).after(tr(b, 1, 2, p)));
  CHECK(tr(b, 1, 4, p).after(tr(b, 2, 3, p)) == tr(b, 2, 3, p).after(tr(b, 1, 4, p)));
}

TEST_CASE("cups, caps and crossings against modified transpositions") {
  const Pyramid p({2, 2});
  const Word a = W("^v"), b = W("^");
  const std::uint32_t k = static_cast<std::uint32_t>(a.size());
  const auto shift = [&](std::uint32_t i) { return i <= k ? i : i - 2; };
  const auto valid_p = [&](const Word& w, std::uint32_t i) { return i != k + 1 && i != k + 2 && w[i - 1] == Orient::Up; };

  SUBCASE("cup") {
    const Word small = a + b, big = a + W("^v") + b;
    const MT cup = slice_matrix(small, Gen::Cup, k, p);
    for (std::uint32_t pp = 1; pp <= big.size(); ++pp) {
      if (!valid_p(big, pp)) continue;
      for (std::uint32_t q = 1; q <= big.size(); ++q) {
        if (q == pp || q == k + 1 || q == k + 2) continue;
        CHECK(cup.after(tr(small, shift(pp), shift(q), p)) == tr(big, pp, q, p).after(cup));
      }
      CHECK((tr(big, pp, k + 1, p).after(cup) + tr(big, pp, k + 2, p).after(cup)).is_zero());
    }
  }
  SUBCASE("cap") {
    const Word small = a + b, big = a + W("v^") + b;
    const MT cap = slice_matrix(big, Gen::Cap, k, p);
    for (std::uint32_t pp = 1; pp <= big.size(); ++pp) {
      if (!valid_p(big, pp)) continue;
      for (std::uint32_t q = 1; q <= big.size(); ++q) {
        if (q == pp || q == k + 1 || q == k + 2) continue;
        CHECK(cap.after(tr(big, pp, q, p)) == tr(small, shift(pp), shift(q), p).after(cap));
      }
      CHECK((cap.after(tr(big, pp, k + 1, p)) + cap.after(tr(big, pp, k + 2, p))).is_zero());
    }
  }
  SUBCASE("crossing") {
    const Word big = a + W("^^") + b;
    const MT s = slice_matrix(big, Gen::CrossUU, k, p);
    for (std::uint32_t pp = 1; pp <= big.size(); ++pp) {
      if (!valid_p(big, pp)) continue;
      for (std::uint32_t q = 1; q <= big.size(); ++q) {
        if (q == pp) continue;
        if (q <= k || q > k + 2) CHECK(s.after(tr(big, pp, q, p)) == tr(big, pp, q, p).after(s));
      }
      CHECK(s.after(tr(big, pp, k + 1, p)) == tr(big, pp, k + 2, p).after(s));
      CHECK(s.after(tr(big, pp, k + 2, p)) == tr(big, pp, k + 1, p).after(s));
    }
    for (std::uint32_t q = 1; q <= big.size(); ++q)
      if (q <= k || q > k + 2) CHECK(s.after(tr(big, k + 1, q, p)) == tr(big, k + 2, q, p).after(s));
    CHECK(tr(big, k + 2, k + 1, p).after(s) == s.after(tr(big, k + 1, k + 2, p)) + MT::identity(big, p.n()));
  }
}

TEST_CASE("the product of (x - m_i) kills the first tensor factor") {
  const Pyramid& p = worked_example();
  std::mt19937_64 rng(11);
  const auto m = random_parameters(rng, 5);
  const TensorRep<Rational> rep(p, m, RepKind::Filtered);
  const Word w = W("^v");
  const MT x = rep.matrix(SliceWord(w, {{Gen::DotUp, 0}}));
  const MT id = MT::identity(w, 9);
  for (std::uint32_t k = 5; k >= 1; --k) {
    MT g = id;
    for (std::uint32_t i = k; i <= 5; ++i) g = (x - id.scaled(m[i - 1].constant_value())).after(g);
    for (std::uint64_t c = 0; c < g.source_dim(); ++c)
      for (const auto& [row, v] : g.column(c)) CHECK(p.col(tuple_of(row, 9, 2)[0]) < k);
    if (k == 1) CHECK(g.is_zero());
  }
}

TEST_CASE("closed form for powers of a dot next to a down strand") {
  const Pyramid& p = worked_example();
  const auto m = symbolic_m(5);
  const TensorRep<Scalar> rep(p, m, RepKind::Filtered);
  const Word w = W("^v");
  const auto x = rep.matrix(SliceWord(w, {{Gen::DotUp, 0}}));
  auto power = LinearMap<Scalar>::identity(w, 9);
  for (std::uint32_t k = 1; k <= 4; ++k) {
    power = x.after(power);
    for (std::uint32_t i = 1; i <= 9; ++i)
      for (std::uint32_t j = 1; j <= 9; ++j)
        CHECK_MESSAGE(power.entry(index_of({i, i}, 9), index_of({j, j}, 9)) == eta_closed_form(p, m, i, j, k),
                      "i=" << i << " j=" << j << " k=" << k);
  }
}

TEST_CASE("functoriality on random words") {
  std::mt19937_64 rng(17);
  const Pyramid p({2, 2});
  const auto m = random_parameters(rng, 2);
  const TensorRep<Rational> rep(p, m, RepKind::Filtered);
  const TensorRep<Rational> gr(p, m, RepKind::Graded);
  Engine engine;
  Engine graded(EngineMode::graded());
  FuzzBounds bounds;
  bounds.max_slices = 6;
  for (int trial = 0; trial < 25; ++trial) {
    const SliceWord w = random_slice_word(rng, bounds);
    if (w.size() < 2) continue;
    const auto levels = w.levels();
    const std::size_t cut = w.size() / 2;
    const SliceWord lower(levels[0], std::vector<Slice>(w.slices().begin(), w.slices().begin() + cut));
    const SliceWord upper(levels[cut], std::vector<Slice>(w.slices().begin() + cut, w.slices().end()));
    const Morphism g = engine.normalize(lower), f = engine.normalize(upper);
    CHECK(rep.matrix(engine.compose(f, g)) == rep.matrix(f).after(rep.matrix(g)));

    // Graded matrices are homogeneous of the dot degree.
    const auto phi = gr.matrix(w);
    CHECK(homogeneous_part(phi, p, static_cast<std::int64_t>(w.dot_count())) == phi);
    CHECK(gr.matrix(graded.normalize(w)) == phi);
  }
}

TEST_CASE("tensor products of undotted and graded images") {
  Engine engine;
  Engine graded(EngineMode::graded());
  const Pyramid p({2, 1});
  const TensorRep<Rational> gr(p, {Scalar(0L), Scalar(0L)}, RepKind::Graded);
  for (const char* f : {"s", "c", "t . t'", "d'"})
    for (const char* g : {"1[^]", "t", "c'", "s'"}) {
      const Morphism mf = evaluate_expression(f, engine), mg = evaluate_expression(g, engine);
      CHECK(psi_matrix(engine.tensor(mf, mg), 3) == psi_matrix(mf, 3).kron(psi_matrix(mg, 3)));
    }
  for (const char* f : {"x", "x * x", "s . (x * 1[^])"})
    for (const char* g : {"x'", "c", "1[^]"}) {
      const Morphism mf = evaluate_expression(f, graded), mg = evaluate_expression(g, graded);
      CHECK(gr.matrix(graded.tensor(mf, mg)) == gr.matrix(mf).kron(gr.matrix(mg)));
    }
}
