#include "ob/symfun.hpp"

#include <stdexcept>

namespace ob {

Scalar sym_e(std::size_t j, std::span<const Scalar> vars) {
  // table[r] = e_r of the variables seen so far
  std::vector<Scalar> table(j + 1);
  table[0] = Scalar(1L);
  for (const Scalar& v : vars) {
    for (std::size_t r = j; r >= 1; --r) table[r] += v * table[r - 1];
  }
  return table[j];
}

Scalar sym_h(std::size_t i, std::span<const Scalar> vars) {
  std::vector<Scalar> table(i + 1);
  table[0] = Scalar(1L);
  for (const Scalar& v : vars) {
    for (std::size_t r = 1; r <= i; ++r) table[r] += v * table[r - 1];
  }
  return table[i];
}

SeriesTrunc::SeriesTrunc(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("series needs at least one coefficient");
}

SeriesTrunc SeriesTrunc::quotient(const UPoly& num, const UPoly& den, std::size_t order) {
  if (!num.is_monic() || !den.is_monic()) throw std::invalid_argument("series quotient needs monic polynomials");
  if (num.degree() != den.degree()) throw std::invalid_argument("series quotient needs equal degrees");
  const auto deg = static_cast<std::size_t>(den.degree());
  // With u^-deg scaling, num = Σ b_i u^{deg-i}, den = Σ a_i u^{deg-i}, a_0 = b_0 = 1.
  std::vector<Scalar> q(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    Scalar v = i <= deg ? num.coeff(deg - i) : Scalar();
    for (std::size_t j = 1; j <= std::min(i, deg); ++j) v -= den.coeff(deg - j) * q[i - j];
    q[i] = std::move(v);
  }
  return SeriesTrunc(std::move(q));
}

std::vector<Scalar> deltas_from_pair(const UPoly& f, const UPoly& fprime, std::size_t count) {
  SeriesTrunc s = SeriesTrunc::quotient(fprime, f, count);
  return {s.coeffs().begin() + 1, s.coeffs().end()};
}

Scalar delta_explicit(std::span<const Scalar> m, std::span<const Scalar> lambda, std::size_t k) {
  if (k == 0) throw std::invalid_argument("delta index must be positive");
  if (m.size() != lambda.size() || m.empty()) throw std::invalid_argument("need |m| = |lambda| >= 1");
  std::vector<Scalar> shifted;
  shifted.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) shifted.push_back(lambda[i] - m[i]);
  Scalar total;
  for (std::size_t i = 0; i <= k; ++i) total += sym_h(i, m) * sym_e(k - i, shifted);
  return total;
}

std::vector<Scalar> delta_prime_from_delta(std::span<const Scalar> deltas, std::size_t count) {
  if (deltas.size() < count) throw std::invalid_argument("not enough deltas for requested count");
  std::vector<Scalar> primes(count);
  for (std::size_t k = 1; k <= count; ++k) {
    Scalar v = deltas[k - 1];
    for (std::size_t i = 1; i < k; ++i) v -= deltas[i - 1] * primes[k - i - 1];
    primes[k - 1] = std::move(v);
  }
  return primes;
}

UPoly poly_from_roots(std::span<const Scalar> roots) {
  UPoly p({Scalar(1L)});
  for (const Scalar& r : roots) p = p * UPoly::linear_root(r);
  return p;
}

UPoly pyramid_f(std::span<const Scalar> m) { return poly_from_roots(m); }

UPoly pyramid_fprime(std::span<const Scalar> m, std::span<const Scalar> lambda) {
  if (m.size() != lambda.size()) throw std::invalid_argument("need |m| = |lambda|");
  std::vector<Scalar> roots;
  for (std::size_t i = 0; i < m.size(); ++i) roots.push_back(m[i] - lambda[i]);
  return poly_from_roots(roots);
}

}  // namespace ob
