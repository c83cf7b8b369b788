#include <doctest.h>

#include <random>
#include <vector>

#include "ob/expr.hpp"
#include "ob/scalar.hpp"
#include "ob/symfun.hpp"

using namespace ob;

namespace {

Scalar S(const char* text) { return parse_scalar(text); }

// Series coefficients of num/den in u^-1 by plain long division, written
// independently of SeriesTrunc: c_k = num_{ℓ-k} - Σ_{i=1..k} den_{ℓ-i} c_{k-i}.
std::vector<Scalar> long_division(const UPoly& num, const UPoly& den, std::size_t count) {
  const auto l = static_cast<std::size_t>(den.degree());
  std::vector<Scalar> c(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    Scalar v = k <= l ? num.coeff(static_cast<std::uint32_t>(l - k)) : Scalar();
    for (std::size_t i = 1; i <= std::min(k, l); ++i) v -= den.coeff(static_cast<std::uint32_t>(l - i)) * c[k - i];
    c[k] = v;
  }
  return c;
}

}  // namespace

TEST_CASE("elementary and complete symmetric polynomials") {
  const std::vector<Scalar> ab{S("m1"), S("m2")};
  CHECK(sym_e(0, ab) == Scalar(1L));
  CHECK(sym_e(2, std::vector<Scalar>{S("m1")}) == Scalar());
  CHECK(sym_e(1, std::vector<Scalar>{S("l1 - m1")}) == S("l1 - m1"));
  CHECK(sym_e(2, ab) == S("m1 m2"));

  CHECK(sym_h(0, std::vector<Scalar>{S("m1"), S("m2"), S("m3")}) == Scalar(1L));
  CHECK(sym_h(2, std::vector<Scalar>{S("m1")}) == S("m1^2"));
  CHECK(sym_h(1, ab) == S("m1 + m2"));
  CHECK(sym_h(2, ab) == S("m1^2 + m1 m2 + m2^2"));
}

TEST_CASE("h and e satisfy the alternating convolution identity") {
  const std::vector<Scalar> vars{S("m1"), S("m2"), S("m3")};
  for (std::size_t k = 1; k <= 6; ++k) {
    Scalar total;
    for (std::size_t j = 0; j <= k; ++j) {
      const Scalar term = sym_h(k - j, vars) * sym_e(j, vars);
      total += j % 2 == 0 ? term : -term;
    }
    CHECK_MESSAGE(total.is_zero(), "k = " << k);
  }
}

TEST_CASE("bubble values from a pair of polynomials") {
  const UPoly f = UPoly::from_scalar(S("u - m1"));
  const UPoly fp = UPoly::from_scalar(S("u + l1 - m1"));
  const auto d = deltas_from_pair(f, fp, 3);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == S("l1"));
  CHECK(d[1] == S("l1 m1"));
  CHECK(d[2] == S("l1 m1^2"));

  for (const auto& v : deltas_from_pair(f, f, 5)) CHECK(v.is_zero());

  const UPoly fp3 = UPoly::from_scalar(S("u + 3 - m1"));
  CHECK(deltas_from_pair(f, fp3, 2)[1] == S("3 m1"));

  CHECK_THROWS_AS(deltas_from_pair(f, UPoly::from_scalar(S("u^2")), 2), std::invalid_argument);
  CHECK_THROWS_AS(deltas_from_pair(UPoly::from_scalar(S("2u")), fp, 2), std::invalid_argument);
}

TEST_CASE("closed-form bubble values") {
  const std::vector<Scalar> m{S("m1")};
  const std::vector<Scalar> l1{S("l1")};
  CHECK(delta_explicit(m, l1, 2) == S("m1 l1"));
  CHECK(delta_explicit(m, std::vector<Scalar>{Scalar(3L)}, 2) == S("3 m1"));

  const std::vector<Scalar> m5{S("m1"), S("m2"), S("m3"), S("m4"), S("m5")};
  const std::vector<Scalar> lam{Scalar(2L), Scalar(3L), Scalar(2L), Scalar(1L), Scalar(1L)};
  CHECK(delta_explicit(m5, lam, 1) == Scalar(9L));
  CHECK_THROWS_AS(delta_explicit(m, l1, 0), std::invalid_argument);
}

TEST_CASE("closed form agrees with the series, random data up to level 3") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coin(-6, 6);
  for (std::uint32_t l = 1; l <= 3; ++l) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Scalar> m;
      std::vector<Scalar> lam;
      for (std::uint32_t i = 0; i < l; ++i) {
        m.emplace_back(Rational(coin(rng), 1 + (coin(rng) + 6) % 4));
        lam.emplace_back(static_cast<long>(1 + (coin(rng) + 6) % 3));
      }
      const auto series = deltas_from_pair(pyramid_f(m), pyramid_fprime(m, lam), 6);
      const auto oracle = long_division(pyramid_fprime(m, lam), pyramid_f(m), 6);
      for (std::size_t k = 1; k <= 6; ++k) {
        CHECK(series[k - 1] == delta_explicit(m, lam, k));
        CHECK(series[k - 1] == oracle[k]);
      }
    }
  }
}

TEST_CASE("primed bubbles invert the bubble series") {
  const std::vector<Scalar> d{S("D1"), S("D2"), S("D3"), S("D4")};
  const auto p = delta_prime_from_delta(d, 4);
  CHECK(p[0] == S("D1"));
  CHECK(p[1] == S("D2 - D1^2"));
  CHECK(p[2] == S("D3 - D1 D2 - D1 (D2 - D1^2)"));

  std::vector<Scalar> zeros(5);
  for (const auto& v : delta_prime_from_delta(zeros, 5)) CHECK(v.is_zero());

  // (1 + x)(1 - y) = 1 turns around as (1 - y)(1 + x) = 1, so applying the map
  // to -y returns -x.
  std::vector<Scalar> neg;
  for (const auto& v : p) neg.push_back(-v);
  const auto back = delta_prime_from_delta(neg, 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == -d[i]);
}

TEST_CASE("scalar arithmetic and polynomial division") {
  const Scalar a = S("m1 + 1/2");
  CHECK((a * a) == S("m1^2 + m1 + 1/4"));
  CHECK((a - a).is_zero());
  CHECK(S("(m1 + m2)^2 - m1^2 - m2^2") == S("2 m1 m2"));
  CHECK(Scalar(Rational(6, 4)).to_string() == "3/2");

  const UPoly f = UPoly::from_scalar(S("u^2 - 1"));
  const UPoly x5 = UPoly::from_scalar(S("u^5 + 2u"));
  const auto [q, r] = x5.divmod_monic(f);
  CHECK(q.degree() == 3);
  CHECK(r.degree() <= 1);
  CHECK(r.coeff(1) == Scalar(3L));
  CHECK(r.coeff(0).is_zero());

  CHECK_THROWS_AS(parse_monic("2u^2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scalar("m1 +"), ParseError);
}
