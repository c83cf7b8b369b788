#include "ob/rewrite.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "ob/reps.hpp"

namespace ob {

namespace {

std::uint32_t width_in(Gen g) { return static_cast<std::uint32_t>(gen_source(g).size()); }
std::uint32_t width_out(Gen g) { return static_cast<std::uint32_t>(gen_target(g).size()); }
bool is_cap(Gen g) { return g == Gen::Cap || g == Gen::CapRev; }
bool is_cup(Gen g) { return g == Gen::Cup || g == Gen::CupRev; }

Scalar delta(std::uint32_t k) { return Scalar::variable(Symbol::delta(k)); }

// Union-find over the segments (level, position) of a slice word.
class Tracer {
 public:
  explicit Tracer(const SliceWord& w) : levels_(w.levels()) {
    std::uint32_t total = 0;
    for (const Word& l : levels_) {
      base_.push_back(total);
      total += static_cast<std::uint32_t>(l.size());
    }
    parent_.resize(total);
    std::iota(parent_.begin(), parent_.end(), 0);
    const auto& slices = w.slices();
    for (std::uint32_t t = 0; t < slices.size(); ++t) {
      const Slice s = slices[t];
      const std::uint32_t wi = width_in(s.gen);
      const std::uint32_t wo = width_out(s.gen);
      const std::uint32_t o = s.offset;
      for (std::uint32_t p = 0; p < levels_[t].size(); ++p) {
        if (p < o) unite(node(t, p), node(t + 1, p));
        if (p >= o + wi) unite(node(t, p), node(t + 1, p + wo - wi));
      }
      if (is_cup(s.gen)) unite(node(t + 1, o), node(t + 1, o + 1));
      if (is_cap(s.gen)) unite(node(t, o), node(t, o + 1));
      if (is_crossing(s.gen)) {
        unite(node(t, o), node(t + 1, o + 1));
        unite(node(t, o + 1), node(t + 1, o));
      }
      if (is_dot(s.gen)) unite(node(t, o), node(t + 1, o));
    }
  }

  std::uint32_t node(std::size_t level, std::uint32_t pos) const { return base_[level] + pos; }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  const std::vector<Word>& levels() const { return levels_; }

  MatchingComposite matching() {
    const Word& a = levels_.front();
    const Word& b = levels_.back();
    const auto na = static_cast<std::uint32_t>(a.size());
    const std::size_t top = levels_.size() - 1;
    std::unordered_map<std::uint32_t, std::uint32_t> first_code;
    std::vector<std::uint32_t> partner(na + b.size());
    auto visit = [&](std::uint32_t code, std::uint32_t n) {
      auto [it, inserted] = first_code.try_emplace(find(n), code);
      if (!inserted) {
        partner[code] = it->second;
        partner[it->second] = code;
      }
    };
    for (std::uint32_t i = 0; i < na; ++i) visit(i, node(0, i));
    for (std::uint32_t j = 0; j < b.size(); ++j) visit(na + j, node(top, j));
    std::uint32_t loops = 0;
    std::vector<bool> seen(parent_.size(), false);
    for (std::uint32_t x = 0; x < parent_.size(); ++x) {
      const std::uint32_t r = find(x);
      if (!seen[r] && !first_code.contains(r)) ++loops;
      seen[r] = true;
    }
    return {Matching(a, b, std::move(partner)), loops};
  }

  // Lowest, then leftmost, downward segment lying on a closed loop.
  std::optional<std::pair<std::size_t, std::uint32_t>> loop_cut() {
    std::vector<bool> boundary(parent_.size(), false);
    for (std::uint32_t i = 0; i < levels_.front().size(); ++i) boundary[find(node(0, i))] = true;
    for (std::uint32_t j = 0; j < levels_.back().size(); ++j) boundary[find(node(levels_.size() - 1, j))] = true;
    for (std::size_t t = 0; t < levels_.size(); ++t) {
      for (std::uint32_t p = 0; p < levels_[t].size(); ++p) {
        if (levels_[t][p] == Orient::Down && !boundary[find(node(t, p))]) return std::make_pair(t, p);
      }
    }
    return std::nullopt;
  }

 private:
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::vector<Word> levels_;
  std::vector<std::uint32_t> base_;
  std::vector<std::uint32_t> parent_;
};

std::string cache_key(const SliceWord& w) {
  std::string key;
  key.reserve(w.source().size() + 1 + 3 * w.size());
  for (Orient o : w.source().letters()) key.push_back(o == Orient::Up ? 'u' : 'd');
  key.push_back('|');
  for (Slice s : w.slices()) {
    key.push_back(static_cast<char>('A' + static_cast<int>(s.gen)));
    key.push_back(static_cast<char>(s.offset & 0xFF));
    key.push_back(static_cast<char>((s.offset >> 8) & 0xFF));
  }
  return key;
}

std::vector<Scalar> poly_mul(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  std::vector<Scalar> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Drop the strand joining top 0 and bottom 0.
NormalDiagram remove_left_strand(const NormalDiagram& d) {
  const Matching& m = d.matching();
  const auto na = static_cast<std::uint32_t>(m.source().size());
  const auto nb = static_cast<std::uint32_t>(m.target().size());
  const Word a = m.source().slice(1, na);
  const Word b = m.target().slice(1, nb);
  auto renumber = [&](std::uint32_t code) { return code < na ? code - 1 : (na - 1) + (code - na - 1); };
  std::vector<std::uint32_t> partner(na + nb - 2);
  std::vector<std::uint32_t> dots(na + nb - 2);
  for (std::uint32_t code = 0; code < na + nb; ++code) {
    if (code == 0 || code == na) continue;
    partner[renumber(code)] = renumber(m.partner(code));
    dots[renumber(code)] = d.dots(code);
  }
  return NormalDiagram(Matching(a, b, std::move(partner)), std::move(dots));
}

}  // namespace

// ---------------------------------------------------------------- modes and rules

void EngineMode::validate() const {
  if (correction != 0 && correction != 1) throw std::invalid_argument("correction coefficient must be 0 or 1");
  if (policy == BubblePolicy::GradedDelta) {
    if (correction != 0) throw std::invalid_argument("graded bubble evaluation requires the graded exchange rules");
    if (!delta_values.contains(1)) throw std::invalid_argument("graded bubble evaluation needs a value for Δ1");
  }
}

std::string ExchangeRule::name() const {
  return "dot below " + std::string(gen_name(crossing)) + " side " + std::to_string(side + 1);
}

std::string FreeSlide::name() const { return "dot through " + std::string(gen_name(turn)); }

RuleSet::RuleSet(std::vector<ExchangeRule> exchanges, int correction)
    : exchanges_(std::move(exchanges)), correction_(correction) {
  if (exchanges_.size() != 8) throw std::invalid_argument("rule set needs 8 exchange rules");
}

int RuleSet::coefficient(Gen crossing, std::uint32_t side) const {
  for (const auto& r : exchanges_) {
    if (r.crossing == crossing && r.side == side) return r.coefficient;
  }
  throw std::invalid_argument("no exchange rule for " + std::string(gen_name(crossing)));
}

const std::vector<FreeSlide>& RuleSet::free_slides() {
  static const std::vector<FreeSlide> slides{{Gen::Cup}, {Gen::CupRev}, {Gen::Cap}, {Gen::CapRev}};
  return slides;
}

std::vector<Slice> RuleSet::smoothing(Gen crossing, std::uint32_t offset) {
  switch (crossing) {
    case Gen::CrossUU:
    case Gen::CrossDD: return {};
    case Gen::CrossUD: return {{Gen::CapRev, offset}, {Gen::CupRev, offset}};
    case Gen::CrossDU: return {{Gen::Cap, offset}, {Gen::Cup, offset}};
    default: throw std::invalid_argument("not a crossing");
  }
}

RuleSet RuleSet::with_coefficient(Gen crossing, std::uint32_t side, int coefficient) const {
  RuleSet out = *this;
  for (auto& r : out.exchanges_) {
    if (r.crossing == crossing && r.side == side) r.coefficient = coefficient;
  }
  return out;
}

RuleSet derive_slide_rules_unchecked(const EngineMode& mode) {
  mode.validate();
  const int c = mode.correction;
  // Indexed [crossing][bottom side]; the coefficient is the multiple of the
  // smoothing in "crossing ∘ dot_b = dot_{1-b} ∘ crossing + ρ_b smoothing".
  std::array<std::array<int, 2>, 4> rho{};
  // (↑x)∘s = s∘(x↑) + 1, and its conjugate by s.
  rho[0] = {-c, c};
  // (↓x')∘s' = s'∘(x'↓) − 1, and its conjugate by s'.
  rho[1] = {c, -c};
  // t' = (d↑↓)(↓s↓)(↓↑c): a dot entering from the right crosses s from its
  // left input; one entering from the left slides through d and crosses s
  // downwards from its left output.
  rho[3] = {-rho[0][1], rho[0][0]};
  // t inverts t', and t∘(c∘d)∘t = c'∘d'.
  rho[2] = {-rho[3][1], -rho[3][0]};
  const std::array<Gen, 4> gens{Gen::CrossUU, Gen::CrossDD, Gen::CrossUD, Gen::CrossDU};
  std::vector<ExchangeRule> rules;
  for (std::size_t g = 0; g < 4; ++g) {
    for (std::uint32_t side = 0; side < 2; ++side) rules.push_back({gens[g], side, rho[g][side]});
  }
  return RuleSet(std::move(rules), c);
}

namespace {

Gen dot_for(Orient o) { return o == Orient::Up ? Gen::DotUp : Gen::DotDown; }

template <class K>
bool rule_holds(const TensorRep<K>& rep, const SliceWord& lhs, const SliceWord& rhs, const SliceWord& extra,
                int coefficient) {
  const std::vector<std::pair<Word, Word>> ambients{{Word{}, Word{}}, {Word{Orient::Up}, Word{Orient::Down}},
                                                    {Word{Orient::Down}, Word{Orient::Up}}};
  for (const auto& [left, right] : ambients) {
    LinearMap<K> a = rep.matrix(lhs.widened(left, right));
    LinearMap<K> b = rep.matrix(rhs.widened(left, right));
    if (coefficient != 0) b = b + rep.matrix(extra.widened(left, right)).scaled(K(coefficient));
    if (!(a == b)) return false;
  }
  return true;
}

template <class K>
std::vector<RuleCheck> certify_with(const RuleSet& rules, const TensorRep<K>& rep) {
  std::vector<RuleCheck> out;
  for (const ExchangeRule& r : rules.exchanges()) {
    const Word src(gen_source(r.crossing));
    const Word tgt(gen_target(r.crossing));
    SliceWord lhs(src, {{dot_for(src[r.side]), r.side}, {r.crossing, 0}});
    SliceWord rhs(src, {{r.crossing, 0}, {dot_for(tgt[1 - r.side]), 1 - r.side}});
    SliceWord smooth(src, RuleSet::smoothing(r.crossing, 0));
    out.push_back({r.name(), rule_holds(rep, lhs, rhs, smooth, r.coefficient * rules.correction())});
  }
  for (const FreeSlide& f : RuleSet::free_slides()) {
    const Word src(gen_source(f.turn));
    SliceWord lhs(src);
    SliceWord rhs(src);
    switch (f.turn) {
      case Gen::Cap:  // d: ↓↑
        lhs = SliceWord(src, {{Gen::DotUp, 1}, {Gen::Cap, 0}});
        rhs = SliceWord(src, {{Gen::DotDown, 0}, {Gen::Cap, 0}});
        break;
      case Gen::CapRev:  // d': ↑↓
        lhs = SliceWord(src, {{Gen::DotUp, 0}, {Gen::CapRev, 0}});
        rhs = SliceWord(src, {{Gen::DotDown, 1}, {Gen::CapRev, 0}});
        break;
      case Gen::Cup:  // c: ↑↓
        lhs = SliceWord(src, {{Gen::Cup, 0}, {Gen::DotUp, 0}});
        rhs = SliceWord(src, {{Gen::Cup, 0}, {Gen::DotDown, 1}});
        break;
      default:  // c': ↓↑
        lhs = SliceWord(src, {{Gen::CupRev, 0}, {Gen::DotUp, 1}});
        rhs = SliceWord(src, {{Gen::CupRev, 0}, {Gen::DotDown, 0}});
        break;
    }
    out.push_back({f.name(), rule_holds(rep, lhs, rhs, SliceWord(src), 0)});
  }
  return out;
}

}  // namespace

std::vector<RuleCheck> certify_rules(const RuleSet& rules) {
  const Pyramid pyramid({2, 2});
  if (rules.correction() == 0) {
    return certify_with(rules, TensorRep<Rational>(pyramid, {}, RepKind::Graded));
  }
  return certify_with(rules, TensorRep<Scalar>(pyramid, symbolic_m(2), RepKind::Filtered));
}

RuleSet derive_slide_rules(const EngineMode& mode) {
  static std::mutex lock;
  static std::map<int, RuleSet> certified;
  std::lock_guard guard(lock);
  mode.validate();
  if (auto it = certified.find(mode.correction); it != certified.end()) return it->second;
  RuleSet rules = derive_slide_rules_unchecked(mode);
  for (const RuleCheck& check : certify_rules(rules)) {
    if (!check.passed) throw RuleCertificationError("rule failed representation check: " + check.name);
  }
  certified.emplace(mode.correction, rules);
  return rules;
}

MatchingComposite trace_undotted(const SliceWord& w) { return Tracer(w).matching(); }

// ---------------------------------------------------------------- engine

struct Engine::Impl {
  RuleSet rules;
  EngineMode mode;
  mutable std::unordered_map<std::string, Morphism> memo;
  mutable std::map<std::uint32_t, std::vector<Scalar>> past_up;

  Morphism norm(const SliceWord& w) const;
  std::optional<Morphism> bubble_fast_path(const SliceWord& w) const;
  Morphism cut_and_reclose(const SliceWord& w, std::size_t level, std::uint32_t pos) const;
  Morphism left_trace(const NormalDiagram& d, std::uint32_t extra_dots) const;
  Morphism move_dots(const SliceWord& w) const;
  std::vector<Scalar> bubble_slide(const Monomial& mu) const;
  const std::vector<Scalar>& bubble_past_up(std::uint32_t k) const;
};

Morphism Engine::Impl::norm(const SliceWord& w) const {
  const std::string key = cache_key(w);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Morphism out(w.source(), w.target());
  if (w.dot_count() == 0) {
    Tracer tr(w);
    const MatchingComposite mc = tr.matching();
    out.add_term(NormalDiagram(mc.matching), delta(1).pow(mc.loops));
  } else if (auto fast = bubble_fast_path(w)) {
    out = std::move(*fast);
  } else {
    Tracer tr(w);
    if (auto cut = tr.loop_cut()) {
      out = cut_and_reclose(w, cut->first, cut->second);
    } else {
      out = move_dots(w);
    }
  }
  memo.emplace(key, out);
  return out;
}

// A bubble opened by c at the left edge and closed by d' before anything else
// touches the two leftmost positions.
std::optional<Morphism> Engine::Impl::bubble_fast_path(const SliceWord& w) const {
  const auto& s = w.slices();
  if (s.empty() || s[0] != Slice{Gen::Cup, 0}) return std::nullopt;
  std::uint32_t dots = 0;
  SliceWord rest(w.source());
  std::size_t j = 1;
  for (; j < s.size(); ++j) {
    if (s[j].offset >= 2) {
      rest.push(s[j].gen, s[j].offset - 2);
    } else if (is_dot(s[j].gen)) {
      ++dots;
    } else {
      break;
    }
  }
  if (j == s.size() || s[j] != Slice{Gen::CapRev, 0}) return std::nullopt;
  for (++j; j < s.size(); ++j) rest.push(s[j]);
  Morphism out = norm(rest);
  out *= delta(dots + 1);
  return out;
}

// Cut the loop at a downward segment, route both ends to a new leftmost strand,
// normalize, and close that strand again around the left edge.
Morphism Engine::Impl::cut_and_reclose(const SliceWord& w, std::size_t level, std::uint32_t pos) const {
  const Word down{Orient::Down};
  SliceWord opened(down + w.source());
  const auto& s = w.slices();
  for (std::size_t k = 0; k < level; ++k) opened.push(s[k].gen, s[k].offset + 1);
  std::vector<Orient> cur = (down + w.levels()[level]).letters();
  auto cross = [&](std::uint32_t o) {
    opened.push(crossing_for(cur[o], cur[o + 1]), o);
    std::swap(cur[o], cur[o + 1]);
  };
  for (std::uint32_t o = 0; o <= pos; ++o) cross(o);
  for (std::uint32_t o = pos; o-- > 0;) cross(o);
  for (std::size_t k = level; k < s.size(); ++k) opened.push(s[k].gen, s[k].offset + 1);

  const Morphism inner = norm(opened);
  Morphism out(w.source(), w.target());
  for (const auto& [d, c] : inner.terms()) {
    for (const auto& [mu, rest] : c.collect(SymbolKind::Delta)) {
      const std::vector<Scalar> slide = bubble_slide(mu);
      for (std::uint32_t j = 0; j < slide.size(); ++j) {
        if (slide[j].is_zero()) continue;
        Morphism closed = left_trace(d, j);
        closed *= rest * slide[j];
        out += closed;
      }
    }
  }
  return out;
}

// Close the leftmost (downward) strand of d: ↓a → ↓b through an upward strand on
// the far left that carries `extra_dots` dots.
Morphism Engine::Impl::left_trace(const NormalDiagram& d, std::uint32_t extra_dots) const {
  const auto na = static_cast<std::uint32_t>(d.source().size());
  const Word a = d.source().slice(1, na);
  const Word b = d.target().slice(1, d.target().size());
  if (d.matching().partner(na) == 0) {
    Morphism out(a, b);
    out.add_term(remove_left_strand(d), delta(extra_dots + d.dots(0) + 1));
    return out;
  }
  SliceWord closure(a);
  closure.push(Gen::Cup, 0);
  for (std::uint32_t k = 0; k < extra_dots; ++k) closure.push(Gen::DotUp, 0);
  const SliceWord body = to_slices(d);
  for (Slice sl : body.slices()) closure.push(sl.gen, sl.offset + 1);
  closure.push(Gen::CapRev, 0);
  return norm(closure);
}

std::vector<Scalar> Engine::Impl::bubble_slide(const Monomial& mu) const {
  std::vector<Scalar> poly{Scalar(1L)};
  for (const auto& [code, exp] : mu.factors()) {
    const std::vector<Scalar>& s = bubble_past_up(Symbol::from_code(code).index());
    for (std::uint32_t e = 0; e < exp; ++e) poly = poly_mul(poly, s);
  }
  return poly;
}

const std::vector<Scalar>& Engine::Impl::bubble_past_up(std::uint32_t k) const {
  if (auto it = past_up.find(k); it != past_up.end()) return it->second;
  const Word up{Orient::Up};
  SliceWord w(up);
  w.push(Gen::Cup, 1);
  for (std::uint32_t j = 1; j < k; ++j) w.push(Gen::DotUp, 1);
  w.push(Gen::CapRev, 1);
  std::vector<Scalar> poly(1);
  const Morphism m = norm(w);
  for (const auto& [d, c] : m.terms()) {
    const std::uint32_t j = d.dots(1);
    if (poly.size() <= j) poly.resize(j + 1);
    poly[j] += c;
  }
  return past_up.emplace(k, std::move(poly)).first->second;
}

// Move every dot along its strand to the strand's output end, collecting the
// correction terms produced at crossings.
Morphism Engine::Impl::move_dots(const SliceWord& w) const {
  Morphism out(w.source(), w.target());
  std::vector<Slice> s = w.slices();
  const int corr = rules.correction();
  auto add_correction = [&](std::size_t at, Slice crossing, int coefficient) {
    if (coefficient == 0) return;
    std::vector<Slice> t(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(at));
    for (Slice x : RuleSet::smoothing(crossing.gen, crossing.offset)) t.push_back(x);
    t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(at) + 2, s.end());
    Morphism m = norm(SliceWord(w.source(), std::move(t)));
    m *= Scalar(static_cast<long>(coefficient));
    out += m;
  };

  const std::size_t step_limit = 1'000'000;
  for (std::size_t step = 0;; ++step) {
    if (step > step_limit) throw std::logic_error("dot transport did not terminate");
    std::size_t first_plain = s.size();
    std::size_t last_plain = 0;  // one past the last non-dot slice
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!is_dot(s[k].gen)) {
        first_plain = std::min(first_plain, k);
        last_plain = k + 1;
      }
    }
    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < s.size() && !pick; ++k) {
      if (s[k].gen == Gen::DotUp && k < last_plain) pick = k;
      if (s[k].gen == Gen::DotDown && k > first_plain && first_plain != s.size()) pick = k;
    }
    if (!pick) break;
    std::size_t k = *pick;
    const Slice dot = s[k];
    const std::uint32_t p = dot.offset;
    // Dots commute with dots: jump over the neighbouring dot block first.
    if (dot.gen == Gen::DotUp) {
      std::size_t j = k + 1;
      while (is_dot(s[j].gen)) ++j;
      std::rotate(s.begin() + static_cast<std::ptrdiff_t>(k), s.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                  s.begin() + static_cast<std::ptrdiff_t>(j));
      k = j - 1;
    } else {
      std::size_t j = k - 1;
      while (is_dot(s[j].gen)) --j;
      std::rotate(s.begin() + static_cast<std::ptrdiff_t>(j) + 1, s.begin() + static_cast<std::ptrdiff_t>(k),
                  s.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      k = j + 1;
    }

    if (dot.gen == Gen::DotUp) {
      const Slice above = s[k + 1];
      const std::uint32_t o = above.offset;
      const std::uint32_t wi = width_in(above.gen);
      if (p < o) {
        std::swap(s[k], s[k + 1]);
      } else if (p >= o + wi) {
        s[k] = above;
        s[k + 1] = Slice{dot.gen, p + width_out(above.gen) - wi};
      } else if (is_cap(above.gen)) {
        s[k] = Slice{Gen::DotDown, above.gen == Gen::Cap ? o : o + 1};
      } else {
        const std::uint32_t side = p - o;
        add_correction(k, above, corr * rules.coefficient(above.gen, side));
        s[k] = above;
        s[k + 1] = Slice{dot.gen, o + 1 - side};
      }
    } else {
      const Slice below = s[k - 1];
      const std::uint32_t o = below.offset;
      const std::uint32_t wo = width_out(below.gen);
      if (p < o) {
        std::swap(s[k - 1], s[k]);
      } else if (p >= o + wo) {
        s[k] = below;
        s[k - 1] = Slice{dot.gen, p - wo + width_in(below.gen)};
      } else if (is_cup(below.gen)) {
        s[k] = Slice{Gen::DotUp, below.gen == Gen::Cup ? o : o + 1};
      } else {
        const std::uint32_t side = p - o;
        add_correction(k - 1, below, -corr * rules.coefficient(below.gen, 1 - side));
        s[k] = below;
        s[k - 1] = Slice{dot.gen, o + 1 - side};
      }
    }
  }

  const Word& a = w.source();
  const auto na = static_cast<std::uint32_t>(a.size());
  SliceWord middle(a);
  std::vector<std::uint32_t> dots(na + w.target().size(), 0);
  for (Slice x : s) {
    if (x.gen == Gen::DotDown) {
      ++dots[x.offset];
    } else if (x.gen == Gen::DotUp) {
      ++dots[na + x.offset];
    } else {
      middle.push(x);
    }
  }
  const MatchingComposite mc = trace_undotted(middle);
  if (mc.loops != 0) throw std::logic_error("dot transport produced a closed loop");
  out.add_term(NormalDiagram(mc.matching, std::move(dots)), Scalar(1L));
  return out;
}

Engine::Engine(EngineMode mode) : Engine(derive_slide_rules(mode), mode) {}

Engine::Engine(RuleSet rules, EngineMode mode) : impl_(std::make_unique<Impl>()) {
  mode.validate();
  if (rules.correction() != mode.correction) throw std::invalid_argument("rule set does not match engine mode");
  impl_->rules = std::move(rules);
  impl_->mode = std::move(mode);
}

Engine Engine::unchecked(RuleSet rules, EngineMode mode) { return Engine(std::move(rules), std::move(mode)); }

Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;

const EngineMode& Engine::mode() const { return impl_->mode; }
const RuleSet& Engine::rules() const { return impl_->rules; }
std::size_t Engine::cache_size() const { return impl_->memo.size(); }

const std::vector<Scalar>& Engine::bubble_past_up(std::uint32_t k) const {
  if (k == 0) throw std::invalid_argument("bubble index must be positive");
  return impl_->bubble_past_up(k);
}

Morphism Engine::apply_policy(const Morphism& f) const {
  const EngineMode& m = impl_->mode;
  switch (m.policy) {
    case BubblePolicy::Polynomial: return f;
    case BubblePolicy::Specialized:
      return f.map_coefficients([&](const Scalar& c) {
        return c.substitute([&](Symbol s) -> std::optional<Scalar> {
          if (s.kind() != SymbolKind::Delta) return std::nullopt;
          auto it = m.delta_values.find(s.index());
          if (it == m.delta_values.end()) {
            throw std::invalid_argument("no specialization value for " + s.name());
          }
          return it->second;
        });
      });
    case BubblePolicy::GradedDelta:
      return f.map_coefficients([&](const Scalar& c) {
        return c.substitute([&](Symbol s) -> std::optional<Scalar> {
          if (s.kind() != SymbolKind::Delta) return std::nullopt;
          return s.index() == 1 ? m.delta_values.at(1) : Scalar();
        });
      });
  }
  return f;
}

Morphism Engine::normalize(const SliceWord& w) const { return apply_policy(impl_->norm(w)); }

Morphism Engine::normalize(const SliceCombination& ws) const {
  if (ws.empty()) throw std::invalid_argument("empty combination has no type");
  Morphism out(ws.front().second.source(), ws.front().second.target());
  for (const auto& [c, w] : ws) {
    if (w.source() != out.source() || w.target() != out.target()) {
      throw std::invalid_argument("slice words in a combination must share source and target");
    }
    Morphism m = impl_->norm(w);
    m *= c;
    out += m;
  }
  return apply_policy(out);
}

Morphism Engine::compose(const Morphism& f, const Morphism& g) const {
  if (f.source() != g.target()) {
    throw std::invalid_argument("cannot compose: " + f.source().to_string() + " vs " + g.target().to_string());
  }
  Morphism out(g.source(), f.target());
  for (const auto& [dg, cg] : g.terms()) {
    const SliceWord lower = to_slices(dg);
    for (const auto& [df, cf] : f.terms()) {
      Morphism m = impl_->norm(lower.then(to_slices(df)));
      m *= cf * cg;
      out += m;
    }
  }
  return apply_policy(out);
}

Morphism Engine::tensor(const Morphism& f, const Morphism& g) const {
  Morphism out(f.source() + g.source(), f.target() + g.target());
  const auto shift = static_cast<std::uint32_t>(f.source().size());
  for (const auto& [dg, cg] : g.terms()) {
    for (const auto& [mu, rest] : cg.collect(SymbolKind::Delta)) {
      SliceWord right = to_slices(dg).widened(f.source(), Word{});
      // g's bubbles sit at g's left edge, i.e. just right of f.
      const SliceWord bubbles = to_slices(NormalDiagram(Matching::identity(Word{})), mu);
      for (Slice s : bubbles.slices()) right.push(s.gen, s.offset + shift);
      for (const auto& [df, cf] : f.terms()) {
        SliceWord w = right.then(to_slices(df).widened(Word{}, g.target()));
        Morphism m = impl_->norm(w);
        m *= cf * rest;
        out += m;
      }
    }
  }
  return apply_policy(out);
}

bool Engine::equals(const Morphism& f, const Morphism& g) const {
  if (f.source() != g.source() || f.target() != g.target()) {
    throw std::invalid_argument("morphisms live in different hom spaces");
  }
  return apply_policy(f) == apply_policy(g);
}

// ---------------------------------------------------------------- filtration

namespace {

std::int64_t monomial_degree(const Monomial& mono) {
  std::int64_t d = 0;
  for (const auto& [code, exp] : mono.factors()) {
    const Symbol s = Symbol::from_code(code);
    if (s.kind() == SymbolKind::Delta) d += static_cast<std::int64_t>(s.index() - 1) * exp;
  }
  return d;
}

}  // namespace

std::optional<std::int64_t> filtered_degree(const Morphism& f) {
  std::optional<std::int64_t> best;
  for (const auto& [d, c] : f.terms()) {
    for (const auto& t : c.terms()) {
      const std::int64_t deg = d.degree() + monomial_degree(t.mono);
      if (!best || deg > *best) best = deg;
    }
  }
  return best;
}

Morphism associated_graded(const Morphism& f, std::int64_t degree) {
  Morphism out(f.source(), f.target());
  for (const auto& [d, c] : f.terms()) {
    std::vector<Scalar::Term> keep;
    for (const auto& t : c.terms()) {
      if (d.degree() + monomial_degree(t.mono) == degree) keep.push_back(t);
    }
    if (!keep.empty()) out.add_term(d, Scalar::from_terms(std::move(keep)));
  }
  return out;
}

}  // namespace ob
