// Tensor-space representations built from a pyramid, and exact rank.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ob/diagrams.hpp"
#include "ob/scalar.hpp"

namespace ob {

// Column heights λ_1..λ_ℓ, unimodular. Boxes are numbered 1..n along rows from
// the top, left to right.
class Pyramid {
 public:
  explicit Pyramid(std::vector<std::uint32_t> heights);

  const std::vector<std::uint32_t>& heights() const { return heights_; }
  std::uint32_t n() const { return static_cast<std::uint32_t>(col_.size()); }
  std::uint32_t levels() const { return static_cast<std::uint32_t>(heights_.size()); }
  std::uint32_t min_height() const;
  // 1-based box -> 1-based column / row (rows counted from the top).
  std::uint32_t col(std::uint32_t box) const { return col_.at(box - 1) + 1; }
  std::uint32_t row_of(std::uint32_t box) const { return row_.at(box - 1) + 1; }
  std::vector<std::vector<std::uint32_t>> rows() const;  // 1-based boxes
  bool leftmost_in_row(std::uint32_t box) const { return row_start_.at(box - 1); }

  // 0-based views used by the tensor code.
  std::uint32_t col0(std::uint32_t i) const { return col_[i]; }
  bool row_start0(std::uint32_t i) const { return row_start_[i]; }

 private:
  std::vector<std::uint32_t> heights_;
  std::vector<std::uint32_t> col_;
  std::vector<std::uint32_t> row_;
  std::vector<bool> row_start_;
};

// Exact coefficient fields for matrices: rationals, or polynomials in m.
template <class K>
K field_from_scalar(const Scalar& s);
template <>
inline Rational field_from_scalar<Rational>(const Scalar& s) { return s.constant_value(); }
template <>
inline Scalar field_from_scalar<Scalar>(const Scalar& s) { return s; }

inline bool field_is_zero(const Rational& r) { return r == 0; }
inline bool field_is_zero(const Scalar& s) { return s.is_zero(); }
inline std::string field_string(const Rational& r) { return rational_string(r); }
inline std::string field_string(const Scalar& s) { return s.to_string(); }

// Vector in V(a): basis index Σ i_j n^{k-1-j} (row-major over index tuples).
template <class K>
using SparseVec = std::unordered_map<std::uint64_t, K>;

template <class K>
void sparse_add(SparseVec<K>& v, std::uint64_t key, const K& coef);
template <class K>
bool sparse_equal(const SparseVec<K>& a, const SparseVec<K>& b);

// A linear map V(source) -> V(target), stored column by column.
template <class K>
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(Word source, Word target, std::uint32_t n);
  static LinearMap identity(const Word& a, std::uint32_t n);

  const Word& source() const { return source_; }
  const Word& target() const { return target_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t source_dim() const { return columns_.size(); }
  const SparseVec<K>& column(std::uint64_t j) const { return columns_[j]; }
  SparseVec<K>& column(std::uint64_t j) { return columns_[j]; }
  K entry(std::uint64_t row, std::uint64_t col) const;

  LinearMap operator+(const LinearMap& o) const;
  LinearMap operator-(const LinearMap& o) const;
  LinearMap scaled(const K& s) const;
  // this ∘ lower
  LinearMap after(const LinearMap& lower) const;
  // Kronecker product in the row-major basis: this on the left factor.
  LinearMap kron(const LinearMap& right) const;
  bool operator==(const LinearMap& o) const;
  bool is_zero() const;
  std::size_t nonzeros() const;

 private:
  Word source_;
  Word target_;
  std::uint32_t n_ = 0;
  std::vector<SparseVec<K>> columns_;
};

std::uint64_t tensor_dim(std::uint32_t n, std::size_t length);

// Which functor to realize on tensor space.
enum class RepKind : std::uint8_t {
  Plain,     // Ψ: undotted only, bubble ↦ n
  Filtered,  // Ψ_λ with parameters m
  Graded,    // Φ_λ: x ↦ e, undotted bubble ↦ n, dotted bubbles ↦ 0
};

template <class K>
class TensorRep {
 public:
  TensorRep(Pyramid pyramid, std::vector<Scalar> m, RepKind kind);
  static TensorRep plain(std::uint32_t n);

  const Pyramid& pyramid() const { return pyramid_; }
  RepKind kind() const { return kind_; }
  std::uint32_t n() const { return pyramid_.n(); }
  const std::vector<Scalar>& m() const { return m_; }

  // Apply one slice to a vector of V(w).
  SparseVec<K> apply(const Word& w, Slice s, const SparseVec<K>& v) const;
  SparseVec<K> apply(const SliceWord& sw, SparseVec<K> v) const;
  LinearMap<K> matrix(const SliceWord& sw) const;
  LinearMap<K> matrix(const Morphism& f) const;
  // Value of a morphism coefficient: Δ_k and m_i are evaluated.
  K coefficient(const Scalar& c) const;
  // Image of the bubble Δ_k as a scalar.
  Scalar bubble_value(std::uint32_t k) const;

  // Building blocks.
  SparseVec<K> apply_e(const Word& w, std::uint32_t p, const SparseVec<K>& v) const;
  // The modified transposition (p,q)_λ (0-based positions), requires w[p] = Up.
  SparseVec<K> apply_mod_transposition(const Word& w, std::uint32_t p, std::uint32_t q,
                                       const SparseVec<K>& v) const;

 private:
  SparseVec<K> apply_dot_up(const Word& w, std::uint32_t p, const SparseVec<K>& v) const;

  Pyramid pyramid_;
  std::vector<Scalar> m_;
  std::vector<K> m_field_;
  RepKind kind_;
  mutable std::vector<Scalar> bubble_cache_;
};

// Convenience wrappers.
LinearMap<Rational> psi_matrix(const Morphism& g, std::uint32_t n);
template <class K>
LinearMap<K> psi_lambda_matrix(const SliceWord& w, const Pyramid& p, const std::vector<Scalar>& m);
template <class K>
LinearMap<K> psi_lambda_matrix(const Morphism& g, const Pyramid& p, const std::vector<Scalar>& m);
LinearMap<Rational> phi_lambda_matrix(const Morphism& g, const Pyramid& p);
// (p,q)^a_λ with 1-based p, q as in the usual notation.
LinearMap<Rational> mod_transposition_matrix(const Word& a, std::uint32_t p, std::uint32_t q, const Pyramid& P);
// e at 1-based position p of a.
LinearMap<Rational> e_matrix(const Word& a, std::uint32_t p, const Pyramid& P);

// Closed form for the coefficient of v_i⊗f_i in Ψ_λ(x↓)^k (v_j⊗f_j), 1-based
// boxes: sums over column chains col(i) = p_0 < ... < p_r = col(j).
Scalar eta_closed_form(const Pyramid& p, std::span<const Scalar> m, std::uint32_t i, std::uint32_t j,
                       std::uint32_t k);

// Symbolic parameters m_1..m_ℓ.
std::vector<Scalar> symbolic_m(std::uint32_t levels);

// Rank over the fraction field; rows are vectors of equal length.
std::size_t matrix_rank(std::vector<std::vector<Rational>> rows);
std::size_t matrix_rank(std::vector<std::vector<Scalar>> rows);

// Stack the maps as vectorized rows and return their rank.
template <class K>
std::size_t stacked_rank(const std::vector<LinearMap<K>>& maps);

// Degree of the matrix entry v_i <- v_j under deg v = -col, deg f = +col.
std::int64_t entry_degree(const Pyramid& p, const Word& target, std::uint64_t row, const Word& source,
                          std::uint64_t col);
// Part of `m` whose entries have the given degree.
template <class K>
LinearMap<K> homogeneous_part(const LinearMap<K>& m, const Pyramid& p, std::int64_t degree);

}  // namespace ob
