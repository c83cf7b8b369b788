#include "ob/quotients.hpp"

#include <stdexcept>
#include <utility>

namespace ob {

namespace {

Scalar delta_var(std::uint32_t k) { return Scalar::variable(Symbol::delta(k)); }

SliceWord single(const Word& w, Gen g, std::uint32_t offset) {
  SliceWord sw(w);
  sw.push(g, offset);
  return sw;
}

// Crossings moving the strand at position p to the left edge, bottom first.
SliceWord leftward_shift(const Word& w, std::uint32_t p) {
  SliceWord sw(w);
  for (std::uint32_t o = p; o-- > 0;) {
    const Word& cur = sw.target();
    sw.push(crossing_for(cur[o], cur[o + 1]), o);
  }
  return sw;
}

// Inverse of leftward_shift(w, p), starting from its target.
SliceWord rightward_shift(const Word& shifted, std::uint32_t p) {
  SliceWord sw(shifted);
  for (std::uint32_t o = 0; o < p; ++o) {
    const Word& cur = sw.target();
    sw.push(crossing_for(cur[o], cur[o + 1]), o);
  }
  return sw;
}

Word prefix(const Word& w, std::size_t n) { return w.slice(0, n); }
Word suffix_from(const Word& w, std::size_t n) { return w.slice(n, w.size()); }

}  // namespace

// ---------------------------------------------------------------------------

CyclotomicData::CyclotomicData(UPoly f, std::optional<std::vector<Scalar>> deltas)
    : f_(std::move(f)), deltas_(std::move(deltas)) {
  if (f_.degree() < 1) throw std::invalid_argument("cyclotomic polynomial must have degree >= 1");
  if (!f_.is_monic()) throw std::invalid_argument("cyclotomic polynomial must be monic");
  if (deltas_ && deltas_->size() != level())
    throw std::invalid_argument("expected exactly " + std::to_string(level()) + " bubble values");
}

Scalar CyclotomicData::bubble(std::uint32_t k) const {
  if (k == 0) return Scalar(1L);
  const std::uint32_t l = level();
  while (cache_.size() < k) {
    const auto j = static_cast<std::uint32_t>(cache_.size()) + 1;
    if (j <= l) {
      cache_.push_back(deltas_ ? (*deltas_)[j - 1] : delta_var(j));
    } else {
      Scalar v;
      for (std::uint32_t i = 1; i <= l; ++i) v -= a(i) * cache_[j - i - 1];
      cache_.push_back(v);
    }
  }
  return cache_[k - 1];
}

SpecializationMap SpecializationMap::values(std::map<std::uint32_t, Scalar> v) {
  SpecializationMap s;
  s.values_ = std::move(v);
  return s;
}

SpecializationMap SpecializationMap::cyclotomic(const CyclotomicData& cd) {
  if (!cd.deltas()) throw std::invalid_argument("cyclotomic specialization needs bubble values");
  SpecializationMap s;
  s.recursion_ = cd;
  return s;
}

Scalar SpecializationMap::value(std::uint32_t k) const {
  if (recursion_) return recursion_->bubble(k);
  const auto it = values_.find(k);
  if (it == values_.end()) throw std::invalid_argument("no value given for D" + std::to_string(k));
  return it->second;
}

Morphism specialize(const Morphism& m, const SpecializationMap& s) {
  const auto sub = [&](Symbol sym) -> std::optional<Scalar> {
    if (sym.kind() != SymbolKind::Delta) return std::nullopt;
    return s.value(sym.index());
  };
  return m.map_coefficients([&](const Scalar& c) { return c.substitute(sub); });
}

// ---------------------------------------------------------------------------

CyclotomicReducer::CyclotomicReducer(const Engine& engine, CyclotomicData cd)
    : engine_(&engine), cd_(std::move(cd)) {
  if (engine.mode().is_graded())
    throw std::invalid_argument("cyclotomic reduction requires the filtered engine");
}

Morphism CyclotomicReducer::reduce_bubbles(const Morphism& m) const {
  const auto sub = [&](Symbol sym) -> std::optional<Scalar> {
    if (sym.kind() != SymbolKind::Delta) return std::nullopt;
    if (sym.index() <= cd_.level() && !cd_.deltas()) return std::nullopt;
    return cd_.bubble(sym.index());
  };
  return m.map_coefficients([&](const Scalar& c) { return c.substitute(sub); });
}

Morphism CyclotomicReducer::poly_at(const Word& w, std::uint32_t position, const UPoly& g) const {
  SliceCombination combo;
  for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
    if (g.coeffs()[j].is_zero()) continue;
    SliceWord sw(w);
    for (std::size_t e = 0; e < j; ++e) sw.push(Gen::DotUp, position);
    combo.emplace_back(g.coeffs()[j], std::move(sw));
  }
  if (combo.empty()) return Morphism(w, w);
  return engine_->normalize(combo);
}

const Morphism& CyclotomicReducer::commutator(const Word& w, std::uint32_t position) const {
  const auto key = std::make_pair(w, position);
  if (auto it = commutators_.find(key); it != commutators_.end()) return it->second;
  const SliceWord sigma = leftward_shift(w, position);
  const Morphism sig = engine_->normalize(sigma);
  const Morphism moved = engine_->compose(sig, poly_at(w, position, cd_.f()));
  const Morphism at_edge = engine_->compose(poly_at(sigma.target(), 0, cd_.f()), sig);
  const Morphism inverse = engine_->normalize(rightward_shift(sigma.target(), position));
  Morphism c = reduce_bubbles(engine_->compose(inverse, moved - at_edge));
  return commutators_.emplace(key, std::move(c)).first->second;
}

Morphism CyclotomicReducer::reduced_power(const Word& w, std::uint32_t position, std::uint32_t k) const {
  std::vector<Scalar> mono(k + 1);
  mono[k] = Scalar(1L);
  const auto [q, r] = UPoly(std::move(mono)).divmod_monic(cd_.f());
  Morphism out = poly_at(w, position, r);
  const bool q_zero = q.coeffs().empty() || (q.degree() == 0 && q.coeffs()[0].is_zero());
  if (!q_zero) out += engine_->compose(poly_at(w, position, q), commutator(w, position));
  return reduce_bubbles(out);
}

Morphism CyclotomicReducer::reduce_top(const NormalDiagram& d, std::uint32_t position, std::uint32_t dots) const {
  const std::uint32_t code = static_cast<std::uint32_t>(d.source().size()) + position;
  const Morphism rest = Morphism::from_diagram(d.with_dots(code, 0));
  return engine_->compose(reduced_power(d.target(), position, dots), rest);
}

Morphism CyclotomicReducer::reduce_bottom(const NormalDiagram& d, std::uint32_t position,
                                          std::uint32_t dots) const {
  const Word& a = d.source();
  const Morphism rest = Morphism::from_diagram(d.with_dots(position, 0));
  const SliceWord cup = single(a, Gen::Cup, position + 1);
  const Word& w = cup.target();
  const Morphism open = engine_->normalize(cup);
  const Morphism close = engine_->normalize(single(w, Gen::Cap, position));
  const Morphism power = engine_->compose(close, engine_->compose(reduced_power(w, position + 1, dots), open));
  return engine_->compose(rest, power);
}

Morphism CyclotomicReducer::reduce(const Morphism& m) const {
  const std::uint32_t l = cd_.level();
  Morphism out(m.source(), m.target());
  Morphism pending = reduce_bubbles(m);
  while (!pending.is_zero()) {
    Morphism next(m.source(), m.target());
    for (const auto& [d, c] : pending.terms()) {
      std::optional<std::uint32_t> heavy;
      for (std::uint32_t code : d.matching().outputs()) {
        if (d.dots(code) >= l) {
          heavy = code;
          break;
        }
      }
      if (!heavy) {
        out.add_term(d, c);
        continue;
      }
      const auto na = static_cast<std::uint32_t>(d.source().size());
      const std::uint32_t dots = d.dots(*heavy);
      Morphism rewritten = *heavy >= na ? reduce_top(d, *heavy - na, dots) : reduce_bottom(d, *heavy, dots);
      next += c * rewritten;
    }
    pending = reduce_bubbles(engine_->apply_policy(next));
  }
  return out;
}

Morphism cyclotomic_reduce(const Morphism& m, const CyclotomicData& cd, const Engine& engine) {
  return CyclotomicReducer(engine, cd).reduce(m);
}

// ---------------------------------------------------------------------------

Morphism transposition(const Word& a, std::uint32_t p, std::uint32_t q) {
  const std::size_t n = a.size();
  if (p < 1 || q < 1 || p > n || q > n || p == q)
    throw std::out_of_range("transposition indices must be distinct and within the word");
  const std::uint32_t i = p - 1;
  const std::uint32_t j = q - 1;
  std::vector<std::pair<Endpoint, Endpoint>> pairs;
  const auto bottom = [](std::uint32_t k) { return Endpoint{Side::Bottom, k}; };
  const auto top = [](std::uint32_t k) { return Endpoint{Side::Top, k}; };
  for (std::uint32_t k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    if (a[k] == Orient::Up) pairs.emplace_back(bottom(k), top(k));
    else pairs.emplace_back(top(k), bottom(k));
  }
  Scalar coef(1L);
  if (a[i] == a[j]) {
    if (a[i] == Orient::Up) {
      pairs.emplace_back(bottom(i), top(j));
      pairs.emplace_back(bottom(j), top(i));
    } else {
      pairs.emplace_back(top(i), bottom(j));
      pairs.emplace_back(top(j), bottom(i));
    }
  } else {
    const std::uint32_t up = a[i] == Orient::Up ? i : j;
    const std::uint32_t down = a[i] == Orient::Up ? j : i;
    pairs.emplace_back(bottom(up), bottom(down));
    pairs.emplace_back(top(down), top(up));
    coef = Scalar(-1L);
  }
  return Morphism::from_diagram(NormalDiagram(Matching::from_pairs(a, a, pairs)), coef);
}

Morphism jm_morphism(const Word& a, std::uint32_t p) {
  if (p < 1 || p > a.size()) throw std::out_of_range("Jucys-Murphy index out of range");
  Morphism out(a, a);
  for (std::uint32_t q = 1; q < p; ++q) out += transposition(a, p, q);
  return out;
}

// ---------------------------------------------------------------------------

LevelOneFunctor::LevelOneFunctor(const Engine& engine, Scalar root) : engine_(&engine), root_(std::move(root)) {}

Morphism LevelOneFunctor::map_slice(const Word& w, Slice s) const {
  if (s.gen == Gen::DotUp) {
    Morphism out = jm_morphism(w, s.offset + 1);
    out += root_ * Morphism::identity(w);
    return out;
  }
  if (s.gen == Gen::DotDown) {
    const SliceWord cup = single(w, Gen::Cup, s.offset + 1);
    const Word& wide = cup.target();
    const Morphism open = engine_->normalize(cup);
    const Morphism close = engine_->normalize(single(wide, Gen::Cap, s.offset));
    const Morphism dot = map_slice(wide, Slice{Gen::DotUp, s.offset + 1});
    return engine_->compose(close, engine_->compose(dot, open));
  }
  return engine_->normalize(single(w, s.gen, s.offset));
}

Morphism LevelOneFunctor::map(const SliceWord& w) const {
  Morphism acc = Morphism::identity(w.source());
  const std::vector<Word> levels = w.levels();
  for (std::size_t i = 0; i < w.size(); ++i) acc = engine_->compose(map_slice(levels[i], w.slices()[i]), acc);
  return acc;
}

Morphism LevelOneFunctor::map(const Morphism& m) const {
  const auto sub = [&](Symbol sym) -> std::optional<Scalar> {
    if (sym.kind() != SymbolKind::Delta) return std::nullopt;
    return root_.pow(sym.index() - 1) * delta_var(1);
  };
  Morphism out(m.source(), m.target());
  for (const auto& [d, c] : m.terms()) out += c.substitute(sub) * map(to_slices(d));
  return out;
}

// ---------------------------------------------------------------------------

SliceWord unit_slices(const Word& a) {
  SliceWord sw{Word{}};
  for (std::uint32_t i = 0; i < a.size(); ++i) sw.push(a[i] == Orient::Up ? Gen::Cup : Gen::CupRev, i);
  return sw;
}

SliceWord counit_slices(const Word& a) {
  SliceWord sw(a.dual() + a);
  const auto k = static_cast<std::uint32_t>(a.size());
  for (std::uint32_t i = 0; i < k; ++i) sw.push(a[i] == Orient::Up ? Gen::Cap : Gen::CapRev, k - 1 - i);
  return sw;
}

Morphism hom_transport_left(const Morphism& h, const Word& a, const Engine& engine) {
  const Word ad = a.dual();
  if (h.source().size() < ad.size() || prefix(h.source(), ad.size()) != ad)
    throw std::invalid_argument("source does not start with the dual of " + a.to_string());
  const Word b = suffix_from(h.source(), ad.size());
  const Morphism unit = engine.normalize(unit_slices(a));
  return engine.compose(engine.tensor(Morphism::identity(a), h), engine.tensor(unit, Morphism::identity(b)));
}

Morphism hom_transport_left_inverse(const Morphism& g, const Word& a, const Engine& engine) {
  if (g.target().size() < a.size() || prefix(g.target(), a.size()) != a)
    throw std::invalid_argument("target does not start with " + a.to_string());
  const Word c = suffix_from(g.target(), a.size());
  const Morphism counit = engine.normalize(counit_slices(a));
  return engine.compose(engine.tensor(counit, Morphism::identity(c)), engine.tensor(Morphism::identity(a.dual()), g));
}

Morphism hom_transport_right(const Morphism& h, const Word& a, const Engine& engine) {
  const Word ad = a.dual();
  const Word& t = h.target();
  if (t.size() < ad.size() || suffix_from(t, t.size() - ad.size()) != ad)
    throw std::invalid_argument("target does not end with the dual of " + a.to_string());
  const Word c = prefix(t, t.size() - ad.size());
  const Morphism counit = engine.normalize(counit_slices(a));
  return engine.compose(engine.tensor(Morphism::identity(c), counit), engine.tensor(h, Morphism::identity(a)));
}

Morphism hom_transport_right_inverse(const Morphism& g, const Word& a, const Engine& engine) {
  const Word& s = g.source();
  if (s.size() < a.size() || suffix_from(s, s.size() - a.size()) != a)
    throw std::invalid_argument("source does not end with " + a.to_string());
  const Word b = prefix(s, s.size() - a.size());
  const Morphism unit = engine.normalize(unit_slices(a));
  return engine.compose(engine.tensor(g, Morphism::identity(a.dual())), engine.tensor(Morphism::identity(b), unit));
}

PrimedGenerators primed_generators(const Engine& engine) {
  const Word up{Orient::Up};
  const Word down{Orient::Down};
  PrimedGenerators out;
  out.cup = engine.normalize(SliceWord(Word{}, {{Gen::Cup, 0}, {Gen::CrossUD, 0}}));
  out.cap = engine.normalize(SliceWord(Word{Orient::Up, Orient::Down}, {{Gen::CrossUD, 0}, {Gen::Cap, 0}}));
  out.cross = engine.normalize(SliceWord(Word{Orient::Down, Orient::Down},
                                         {{Gen::Cup, 2}, {Gen::Cup, 3}, {Gen::CrossUU, 2}, {Gen::Cap, 1}, {Gen::Cap, 0}}));
  out.dot = engine.normalize(SliceWord(down, {{Gen::Cup, 1}, {Gen::DotUp, 1}, {Gen::Cap, 0}}));
  return out;
}

Morphism compose_specialized_ob(const Morphism& f, const Morphism& g, const Scalar& delta) {
  if (f.source() != g.target()) throw std::invalid_argument("composition of incompatible morphisms");
  Morphism out(g.source(), f.target());
  for (const auto& [df, cf] : f.terms()) {
    if (df.degree() != 0) throw std::invalid_argument("dotted diagram in undotted composition");
    for (const auto& [dg, cg] : g.terms()) {
      if (dg.degree() != 0) throw std::invalid_argument("dotted diagram in undotted composition");
      const MatchingComposite mc = compose_matchings(df.matching(), dg.matching());
      out.add_term(NormalDiagram(mc.matching), cf * cg * delta.pow(mc.loops));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> StructureTable::index_of(const NormalDiagram& d, const Monomial& bubbles) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].diagram == d && basis[i].bubbles == bubbles) return i;
  return std::nullopt;
}

StructureTable walled_brauer_algebra(std::uint32_t r, std::uint32_t s, const AlgebraSpec& spec) {
  StructureTable table;
  table.kind = spec.kind;
  table.word = Word::repeat(Orient::Up, r) + Word::repeat(Orient::Down, s);
  const Word& w = table.word;

  BasisBounds bounds;
  switch (spec.kind) {
    case AlgebraKind::Ob:
      bounds.max_dots_per_strand = 0;
      break;
    case AlgebraKind::Affine:
      bounds = spec.bounds;
      break;
    case AlgebraKind::Cyclotomic:
      if (!spec.cyclotomic) throw std::invalid_argument("cyclotomic algebra needs a polynomial");
      bounds.max_dots_per_strand = spec.cyclotomic->level() - 1;
      break;
  }
  table.basis = enumerate_normal_basis(w, w, bounds);

  const std::size_t n = table.basis.size();
  table.products.assign(n, std::vector<Morphism>(n));

  const Engine engine(EngineMode::filtered());
  std::optional<CyclotomicReducer> reducer;
  if (spec.kind == AlgebraKind::Cyclotomic) reducer.emplace(engine, *spec.cyclotomic);

  std::vector<Morphism> elems;
  elems.reserve(n);
  for (const auto& b : table.basis) elems.push_back(b.morphism());

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Morphism p;
      if (spec.kind == AlgebraKind::Ob && spec.delta && !spec.use_engine) {
        p = compose_specialized_ob(elems[i], elems[j], *spec.delta);
      } else {
        p = engine.compose(elems[i], elems[j]);
        if (reducer) p = reducer->reduce(p);
        if (spec.kind == AlgebraKind::Ob && spec.delta)
          p = specialize(p, SpecializationMap::values({{1, *spec.delta}}));
      }
      table.products[i][j] = std::move(p);
    }
  }
  return table;
}

}  // namespace ob
