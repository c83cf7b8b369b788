#include "ob/reps.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "ob/symfun.hpp"

namespace ob {

// ---------------------------------------------------------------- Pyramid

Pyramid::Pyramid(std::vector<std::uint32_t> heights) : heights_(std::move(heights)) {
  if (heights_.empty()) throw std::invalid_argument("pyramid needs at least one column");
  for (auto h : heights_) {
    if (h == 0) throw std::invalid_argument("pyramid column heights must be positive");
  }
  std::size_t k = 0;
  while (k + 1 < heights_.size() && heights_[k] <= heights_[k + 1]) ++k;
  for (std::size_t j = k; j + 1 < heights_.size(); ++j) {
    if (heights_[j] < heights_[j + 1]) throw std::invalid_argument("pyramid heights must be unimodular");
  }
  const std::uint32_t top = *std::max_element(heights_.begin(), heights_.end());
  for (std::uint32_t r = 0; r < top; ++r) {
    bool first = true;
    for (std::uint32_t j = 0; j < heights_.size(); ++j) {
      if (heights_[j] >= top - r) {
        col_.push_back(j);
        row_.push_back(r);
        row_start_.push_back(first);
        first = false;
      }
    }
  }
}

std::uint32_t Pyramid::min_height() const { return *std::min_element(heights_.begin(), heights_.end()); }

std::vector<std::vector<std::uint32_t>> Pyramid::rows() const {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t i = 0; i < col_.size(); ++i) {
    if (row_[i] >= out.size()) out.resize(row_[i] + 1);
    out[row_[i]].push_back(i + 1);
  }
  return out;
}

std::vector<Scalar> symbolic_m(std::uint32_t levels) {
  std::vector<Scalar> m;
  for (std::uint32_t i = 1; i <= levels; ++i) m.push_back(Scalar::variable(Symbol::m(i)));
  return m;
}

Scalar eta_closed_form(const Pyramid& p, std::span<const Scalar> m, std::uint32_t i, std::uint32_t j,
                       std::uint32_t k) {
  const std::uint32_t ci = p.col(i);
  const std::uint32_t cj = p.col(j);
  if (i == j) return m[ci - 1].pow(k);
  if (ci >= cj) return Scalar{};
  // Intermediate columns strictly between ci and cj, chosen as a bitmask.
  const std::uint32_t gap = cj - ci - 1;
  Scalar total;
  for (std::uint32_t mask = 0; mask < (1u << gap); ++mask) {
    std::vector<Scalar> chain{m[ci - 1]};
    Scalar weight(1L);
    for (std::uint32_t b = 0; b < gap; ++b) {
      if (!(mask & (1u << b))) continue;
      const std::uint32_t col = ci + 1 + b;
      chain.push_back(m[col - 1]);
      weight *= Scalar(static_cast<long>(p.heights()[col - 1]));
    }
    chain.push_back(m[cj - 1]);
    const auto r = static_cast<std::uint32_t>(chain.size() - 1);
    if (r > k) continue;
    total += sym_h(k - r, chain) * weight;
  }
  return total;
}

// ---------------------------------------------------------------- index tuples

namespace {

constexpr std::size_t kMaxLength = 20;

struct Digits {
  std::array<std::uint32_t, kMaxLength> d{};
  std::uint32_t k = 0;
};

Digits decode(std::uint64_t idx, std::size_t k, std::uint32_t n) {
  Digits out;
  out.k = static_cast<std::uint32_t>(k);
  for (std::size_t j = k; j-- > 0;) {
    out.d[j] = static_cast<std::uint32_t>(idx % n);
    idx /= n;
  }
  return out;
}

std::uint64_t encode(const Digits& t, std::uint32_t n) {
  std::uint64_t idx = 0;
  for (std::uint32_t j = 0; j < t.k; ++j) idx = idx * n + t.d[j];
  return idx;
}

Digits insert_pair(const Digits& t, std::uint32_t at, std::uint32_t value) {
  Digits out;
  out.k = t.k + 2;
  for (std::uint32_t j = 0; j < at; ++j) out.d[j] = t.d[j];
  out.d[at] = value;
  out.d[at + 1] = value;
  for (std::uint32_t j = at; j < t.k; ++j) out.d[j + 2] = t.d[j];
  return out;
}

Digits remove_pair(const Digits& t, std::uint32_t at) {
  Digits out;
  out.k = t.k - 2;
  for (std::uint32_t j = 0; j < at; ++j) out.d[j] = t.d[j];
  for (std::uint32_t j = at + 2; j < t.k; ++j) out.d[j - 2] = t.d[j];
  return out;
}

}  // namespace

std::uint64_t tensor_dim(std::uint32_t n, std::size_t length) {
  if (length > kMaxLength) throw std::invalid_argument("word too long for tensor space");
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (d > UINT64_MAX / std::max<std::uint32_t>(n, 1)) throw std::overflow_error("tensor space too large");
    d *= n;
  }
  return d;
}

template <class K>
void sparse_add(SparseVec<K>& v, std::uint64_t key, const K& coef) {
  if (field_is_zero(coef)) return;
  auto [it, inserted] = v.try_emplace(key, coef);
  if (!inserted) {
    it->second += coef;
    if (field_is_zero(it->second)) v.erase(it);
  }
}

template <class K>
bool sparse_equal(const SparseVec<K>& a, const SparseVec<K>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || !(it->second == v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- LinearMap

template <class K>
LinearMap<K>::LinearMap(Word source, Word target, std::uint32_t n)
    : source_(std::move(source)), target_(std::move(target)), n_(n), columns_(tensor_dim(n, source_.size())) {
  tensor_dim(n, target_.size());
}

template <class K>
LinearMap<K> LinearMap<K>::identity(const Word& a, std::uint32_t n) {
  LinearMap out(a, a, n);
  for (std::uint64_t j = 0; j < out.columns_.size(); ++j) out.columns_[j].emplace(j, K(1));
  return out;
}

template <class K>
K LinearMap<K>::entry(std::uint64_t row, std::uint64_t col) const {
  auto it = columns_.at(col).find(row);
  return it == columns_[col].end() ? K(0) : it->second;
}

template <class K>
LinearMap<K> LinearMap<K>::operator+(const LinearMap& o) const {
  if (source_ != o.source_ || target_ != o.target_ || n_ != o.n_) throw std::invalid_argument("map shape mismatch");
  LinearMap out = *this;
  for (std::uint64_t j = 0; j < columns_.size(); ++j) {
    for (const auto& [i, v] : o.columns_[j]) sparse_add(out.columns_[j], i, v);
  }
  return out;
}

template <class K>
LinearMap<K> LinearMap<K>::operator-(const LinearMap& o) const {
  return *this + o.scaled(K(-1));
}

template <class K>
LinearMap<K> LinearMap<K>::scaled(const K& s) const {
  LinearMap out(source_, target_, n_);
  if (field_is_zero(s)) return out;
  for (std::uint64_t j = 0; j < columns_.size(); ++j) {
    for (const auto& [i, v] : columns_[j]) out.columns_[j].emplace(i, v * s);
  }
  return out;
}

template <class K>
LinearMap<K> LinearMap<K>::after(const LinearMap& lower) const {
  if (lower.target_ != source_ || lower.n_ != n_) throw std::invalid_argument("map composition mismatch");
  LinearMap out(lower.source_, target_, n_);
  for (std::uint64_t j = 0; j < lower.columns_.size(); ++j) {
    for (const auto& [mid, c] : lower.columns_[j]) {
      for (const auto& [i, v] : columns_[mid]) sparse_add(out.columns_[j], i, K(c * v));
    }
  }
  return out;
}

template <class K>
LinearMap<K> LinearMap<K>::kron(const LinearMap& right) const {
  if (n_ != right.n_) throw std::invalid_argument("kron: dimension mismatch");
  LinearMap out(source_ + right.source_, target_ + right.target_, n_);
  const std::uint64_t rs = right.columns_.size();
  const std::uint64_t rt = tensor_dim(n_, right.target_.size());
  for (std::uint64_t j1 = 0; j1 < columns_.size(); ++j1) {
    for (std::uint64_t j2 = 0; j2 < rs; ++j2) {
      auto& col = out.columns_[j1 * rs + j2];
      for (const auto& [i1, v1] : columns_[j1]) {
        for (const auto& [i2, v2] : right.columns_[j2]) sparse_add(col, i1 * rt + i2, K(v1 * v2));
      }
    }
  }
  return out;
}

template <class K>
bool LinearMap<K>::operator==(const LinearMap& o) const {
  if (source_ != o.source_ || target_ != o.target_ || n_ != o.n_) return false;
  for (std::uint64_t j = 0; j < columns_.size(); ++j) {
    if (!sparse_equal(columns_[j], o.columns_[j])) return false;
  }
  return true;
}

template <class K>
bool LinearMap<K>::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

template <class K>
std::size_t LinearMap<K>::nonzeros() const {
  std::size_t total = 0;
  for (const auto& c : columns_) total += c.size();
  return total;
}

// ---------------------------------------------------------------- TensorRep

template <class K>
TensorRep<K>::TensorRep(Pyramid pyramid, std::vector<Scalar> m, RepKind kind)
    : pyramid_(std::move(pyramid)), m_(std::move(m)), kind_(kind) {
  if (kind_ == RepKind::Filtered && m_.size() != pyramid_.levels()) {
    throw std::invalid_argument("need one parameter m_i per pyramid column");
  }
  for (const Scalar& s : m_) m_field_.push_back(field_from_scalar<K>(s));
}

template <class K>
TensorRep<K> TensorRep<K>::plain(std::uint32_t n) {
  return TensorRep(Pyramid({n}), {}, RepKind::Plain);
}

template <class K>
Scalar TensorRep<K>::bubble_value(std::uint32_t k) const {
  if (k == 0) throw std::invalid_argument("bubble index must be positive");
  if (k == 1) return Scalar(static_cast<long>(n()));
  switch (kind_) {
    case RepKind::Plain: throw std::invalid_argument("dotted bubble has no value under the undotted functor");
    case RepKind::Graded: return Scalar();
    case RepKind::Filtered: break;
  }
  if (bubble_cache_.size() < k) bubble_cache_.resize(k);
  if (bubble_cache_[k - 1].is_zero()) {
    std::vector<Scalar> lam;
    for (auto h : pyramid_.heights()) lam.emplace_back(static_cast<long>(h));
    bubble_cache_[k - 1] = delta_explicit(m_, lam, k);
  }
  return bubble_cache_[k - 1];
}

template <class K>
K TensorRep<K>::coefficient(const Scalar& c) const {
  Scalar v = c.substitute([&](Symbol s) -> std::optional<Scalar> {
    if (s.kind() == SymbolKind::Delta) return bubble_value(s.index());
    if (s.kind() == SymbolKind::M && s.index() >= 1 && s.index() <= m_.size()) return m_[s.index() - 1];
    return std::nullopt;
  });
  return field_from_scalar<K>(v);
}

template <class K>
SparseVec<K> TensorRep<K>::apply_e(const Word& w, std::uint32_t p, const SparseVec<K>& v) const {
  if (w[p] != Orient::Up) throw std::invalid_argument("e acts on an up strand");
  SparseVec<K> out;
  const std::uint32_t n = this->n();
  for (const auto& [idx, c] : v) {
    Digits t = decode(idx, w.size(), n);
    if (pyramid_.row_start0(t.d[p])) continue;
    t.d[p] -= 1;
    sparse_add(out, encode(t, n), c);
  }
  return out;
}

namespace {

// Contribution of (p,q)_λ to v_t with coefficient c, accumulated in out.
template <class K>
void mod_transposition_term(const Pyramid& P, const Word& w, std::uint32_t p, std::uint32_t q, const Digits& t,
                            const K& c, SparseVec<K>& out) {
  const std::uint32_t n = P.n();
  const std::uint32_t cp = P.col0(t.d[p]);
  if (w[q] == Orient::Up) {
    const std::uint32_t cq = P.col0(t.d[q]);
    Digits s = t;
    std::swap(s.d[p], s.d[q]);
    if (p > q && cq >= cp) sparse_add(out, encode(s, n), c);
    if (p < q && cq < cp) sparse_add(out, encode(s, n), K(-c));
    return;
  }
  if (t.d[p] != t.d[q]) return;
  Digits s = t;
  for (std::uint32_t k = 0; k < n; ++k) {
    const std::uint32_t ck = P.col0(k);
    s.d[p] = k;
    s.d[q] = k;
    if (p > q && ck >= cp) sparse_add(out, encode(s, n), K(-c));
    if (p < q && ck < cp) sparse_add(out, encode(s, n), c);
  }
}

}  // namespace

template <class K>
SparseVec<K> TensorRep<K>::apply_mod_transposition(const Word& w, std::uint32_t p, std::uint32_t q,
                                                   const SparseVec<K>& v) const {
  if (w[p] != Orient::Up) throw std::invalid_argument("modified transposition needs an up strand at p");
  if (p == q || q >= w.size()) throw std::invalid_argument("bad transposition indices");
  SparseVec<K> out;
  for (const auto& [idx, c] : v) mod_transposition_term(pyramid_, w, p, q, decode(idx, w.size(), n()), c, out);
  return out;
}

template <class K>
SparseVec<K> TensorRep<K>::apply_dot_up(const Word& w, std::uint32_t p, const SparseVec<K>& v) const {
  if (kind_ == RepKind::Plain) throw std::invalid_argument("dots have no image under the undotted functor");
  const std::uint32_t n = this->n();
  SparseVec<K> out;
  for (const auto& [idx, c] : v) {
    Digits t = decode(idx, w.size(), n);
    const std::uint32_t ip = t.d[p];
    if (!pyramid_.row_start0(ip)) {
      Digits s = t;
      s.d[p] = ip - 1;
      sparse_add(out, encode(s, n), c);
    }
    if (kind_ == RepKind::Graded) continue;
    sparse_add(out, idx, K(c * m_field_[pyramid_.col0(ip)]));
    for (std::uint32_t q = 0; q < w.size(); ++q) {
      if (q != p) mod_transposition_term(pyramid_, w, p, q, t, c, out);
    }
  }
  return out;
}

template <class K>
SparseVec<K> TensorRep<K>::apply(const Word& w, Slice s, const SparseVec<K>& v) const {
  if (!apply_slice(w, s)) throw std::invalid_argument("slice does not apply to word " + w.to_string());
  const std::uint32_t n = this->n();
  const std::uint32_t o = s.offset;
  SparseVec<K> out;
  switch (s.gen) {
    case Gen::Cup:
    case Gen::CupRev:
      for (const auto& [idx, c] : v) {
        const Digits t = decode(idx, w.size(), n);
        for (std::uint32_t j = 0; j < n; ++j) sparse_add(out, encode(insert_pair(t, o, j), n), c);
      }
      return out;
    case Gen::Cap:
    case Gen::CapRev:
      for (const auto& [idx, c] : v) {
        const Digits t = decode(idx, w.size(), n);
        if (t.d[o] == t.d[o + 1]) sparse_add(out, encode(remove_pair(t, o), n), c);
      }
      return out;
    case Gen::CrossUU:
    case Gen::CrossDD:
    case Gen::CrossUD:
    case Gen::CrossDU:
      for (const auto& [idx, c] : v) {
        Digits t = decode(idx, w.size(), n);
        std::swap(t.d[o], t.d[o + 1]);
        sparse_add(out, encode(t, n), c);
      }
      return out;
    case Gen::DotUp:
      return apply_dot_up(w, o, v);
    case Gen::DotDown: {
      // x' = (d v)(v x v)(v c)
      const Word w1 = *apply_slice(w, Slice{Gen::Cup, o + 1});
      SparseVec<K> v1 = apply(w, Slice{Gen::Cup, o + 1}, v);
      v1 = apply_dot_up(w1, o + 1, v1);
      return apply(w1, Slice{Gen::Cap, o}, v1);
    }
  }
  return out;
}

template <class K>
SparseVec<K> TensorRep<K>::apply(const SliceWord& sw, SparseVec<K> v) const {
  Word w = sw.source();
  for (Slice s : sw.slices()) {
    v = apply(w, s, v);
    w = *apply_slice(w, s);
  }
  return v;
}

template <class K>
LinearMap<K> TensorRep<K>::matrix(const SliceWord& sw) const {
  LinearMap<K> out(sw.source(), sw.target(), n());
  for (std::uint64_t j = 0; j < out.source_dim(); ++j) {
    SparseVec<K> v;
    v.emplace(j, K(1));
    out.column(j) = apply(sw, std::move(v));
  }
  return out;
}

template <class K>
LinearMap<K> TensorRep<K>::matrix(const Morphism& f) const {
  LinearMap<K> out(f.source(), f.target(), n());
  for (const auto& [d, c] : f.terms()) {
    const K value = coefficient(c);
    if (field_is_zero(value)) continue;
    out = out + matrix(to_slices(d)).scaled(value);
  }
  return out;
}

// ---------------------------------------------------------------- wrappers

LinearMap<Rational> psi_matrix(const Morphism& g, std::uint32_t n) {
  return TensorRep<Rational>::plain(n).matrix(g);
}

template <class K>
LinearMap<K> psi_lambda_matrix(const SliceWord& w, const Pyramid& p, const std::vector<Scalar>& m) {
  return TensorRep<K>(p, m, RepKind::Filtered).matrix(w);
}

template <class K>
LinearMap<K> psi_lambda_matrix(const Morphism& g, const Pyramid& p, const std::vector<Scalar>& m) {
  return TensorRep<K>(p, m, RepKind::Filtered).matrix(g);
}

LinearMap<Rational> phi_lambda_matrix(const Morphism& g, const Pyramid& p) {
  return TensorRep<Rational>(p, {}, RepKind::Graded).matrix(g);
}

LinearMap<Rational> mod_transposition_matrix(const Word& a, std::uint32_t p, std::uint32_t q, const Pyramid& P) {
  if (p < 1 || q < 1 || p > a.size() || q > a.size() || p == q) {
    throw std::out_of_range("transposition indices out of range");
  }
  if (a[p - 1] != Orient::Up) throw std::invalid_argument("modified transposition needs a_p = up");
  TensorRep<Rational> rep(P, {}, RepKind::Graded);
  LinearMap<Rational> out(a, a, P.n());
  for (std::uint64_t j = 0; j < out.source_dim(); ++j) {
    SparseVec<Rational> v;
    v.emplace(j, Rational(1));
    out.column(j) = rep.apply_mod_transposition(a, p - 1, q - 1, v);
  }
  return out;
}

LinearMap<Rational> e_matrix(const Word& a, std::uint32_t p, const Pyramid& P) {
  TensorRep<Rational> rep(P, {}, RepKind::Graded);
  LinearMap<Rational> out(a, a, P.n());
  for (std::uint64_t j = 0; j < out.source_dim(); ++j) {
    SparseVec<Rational> v;
    v.emplace(j, Rational(1));
    out.column(j) = rep.apply_e(a, p - 1, v);
  }
  return out;
}

// ---------------------------------------------------------------- grading

std::int64_t entry_degree(const Pyramid& p, const Word& target, std::uint64_t row, const Word& source,
                          std::uint64_t col) {
  auto degree_of = [&](const Word& w, std::uint64_t idx) {
    const Digits t = decode(idx, w.size(), p.n());
    std::int64_t d = 0;
    for (std::uint32_t j = 0; j < w.size(); ++j) {
      const auto c = static_cast<std::int64_t>(p.col0(t.d[j]) + 1);
      d += w[j] == Orient::Up ? -c : c;
    }
    return d;
  };
  return degree_of(target, row) - degree_of(source, col);
}

template <class K>
LinearMap<K> homogeneous_part(const LinearMap<K>& m, const Pyramid& p, std::int64_t degree) {
  LinearMap<K> out(m.source(), m.target(), m.n());
  for (std::uint64_t j = 0; j < m.source_dim(); ++j) {
    for (const auto& [i, v] : m.column(j)) {
      if (entry_degree(p, m.target(), i, m.source(), j) == degree) out.column(j).emplace(i, v);
    }
  }
  return out;
}

// ---------------------------------------------------------------- rank

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t matrix_rank(std::vector<std::vector<Scalar>> rows) {
  // Fraction-free elimination; every entry stays a minor, so divisions are exact.
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  Scalar previous(1L);
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const Scalar p = rows[rank][c];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const Scalar a = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) {
        Scalar v = p * rows[r][k] - a * rows[rank][k];
        auto q = v.divide_exact(previous);
        if (!q) throw std::logic_error("fraction-free elimination: inexact division");
        rows[r][k] = std::move(*q);
      }
    }
    previous = p;
    ++rank;
  }
  return rank;
}

template <class K>
std::size_t stacked_rank(const std::vector<LinearMap<K>>& maps) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> column_of;
  for (const auto& m : maps) {
    for (std::uint64_t j = 0; j < m.source_dim(); ++j) {
      for (const auto& [i, v] : m.column(j)) column_of.emplace(std::make_pair(j, i), 0);
    }
  }
  std::size_t idx = 0;
  for (auto& [key, c] : column_of) c = idx++;
  std::vector<std::vector<K>> rows;
  for (const auto& m : maps) {
    std::vector<K> row(idx, K(0));
    for (std::uint64_t j = 0; j < m.source_dim(); ++j) {
      for (const auto& [i, v] : m.column(j)) row[column_of.at({j, i})] = v;
    }
    rows.push_back(std::move(row));
  }
  return matrix_rank(std::move(rows));
}

template void sparse_add<Rational>(SparseVec<Rational>&, std::uint64_t, const Rational&);
template void sparse_add<Scalar>(SparseVec<Scalar>&, std::uint64_t, const Scalar&);
template bool sparse_equal<Rational>(const SparseVec<Rational>&, const SparseVec<Rational>&);
template bool sparse_equal<Scalar>(const SparseVec<Scalar>&, const SparseVec<Scalar>&);
template class LinearMap<Rational>;
template class LinearMap<Scalar>;
template class TensorRep<Rational>;
template class TensorRep<Scalar>;
template LinearMap<Rational> psi_lambda_matrix<Rational>(const SliceWord&, const Pyramid&, const std::vector<Scalar>&);
template LinearMap<Scalar> psi_lambda_matrix<Scalar>(const SliceWord&, const Pyramid&, const std::vector<Scalar>&);
template LinearMap<Rational> psi_lambda_matrix<Rational>(const Morphism&, const Pyramid&, const std::vector<Scalar>&);
template LinearMap<Scalar> psi_lambda_matrix<Scalar>(const Morphism&, const Pyramid&, const std::vector<Scalar>&);
template std::size_t stacked_rank<Rational>(const std::vector<LinearMap<Rational>>&);
template std::size_t stacked_rank<Scalar>(const std::vector<LinearMap<Scalar>>&);
template LinearMap<Rational> homogeneous_part<Rational>(const LinearMap<Rational>&, const Pyramid&, std::int64_t);
template LinearMap<Scalar> homogeneous_part<Scalar>(const LinearMap<Scalar>&, const Pyramid&, std::int64_t);

}  // namespace ob
