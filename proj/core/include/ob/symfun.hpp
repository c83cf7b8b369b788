// Symmetric polynomials and the bubble-parameter formulas built from them.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ob/scalar.hpp"

namespace ob {

// e_j(vars); zero when j exceeds the number of variables.
Scalar sym_e(std::size_t j, std::span<const Scalar> vars);
// h_i(vars).
Scalar sym_h(std::size_t i, std::span<const Scalar> vars);

// Truncated expansion c_0 + c_1 u^-1 + ... + c_N u^-N.
class SeriesTrunc {
 public:
  explicit SeriesTrunc(std::vector<Scalar> coeffs);
  // Expansion of num/den in k[[u^-1]] for monic num, den of equal degree.
  static SeriesTrunc quotient(const UPoly& num, const UPoly& den, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Scalar& operator[](std::size_t i) const { return coeffs_.at(i); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

 private:
  std::vector<Scalar> coeffs_;
};

// (δ_1, ..., δ_N) from 1 + Σ δ_i u^-i = fprime(u)/f(u).
std::vector<Scalar> deltas_from_pair(const UPoly& f, const UPoly& fprime, std::size_t count);

// Closed form δ_k = Σ_{i+j=k} h_i(m) e_j(λ - m).
Scalar delta_explicit(std::span<const Scalar> m, std::span<const Scalar> lambda, std::size_t k);

// (Δ'_1, ..., Δ'_N) with (1 + Σ Δ_i u^-i)(1 - Σ Δ'_j u^-j) = 1.
std::vector<Scalar> delta_prime_from_delta(std::span<const Scalar> deltas, std::size_t count);

// Π (u - roots_i).
UPoly poly_from_roots(std::span<const Scalar> roots);
// f(u) = Π(u - m_i) and f'(u) = Π(u + λ_i - m_i).
UPoly pyramid_f(std::span<const Scalar> m);
UPoly pyramid_fprime(std::span<const Scalar> m, std::span<const Scalar> lambda);

}  // namespace ob
