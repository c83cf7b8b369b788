#include "ob/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ob {

// ---------------------------------------------------------------- Word

Word Word::parse(std::string_view text) {
  std::vector<Orient> letters;
  for (char ch : text) {
    switch (ch) {
      case '^': letters.push_back(Orient::Up); break;
      case 'v': letters.push_back(Orient::Down); break;
      case '0': break;
      case ' ': break;
      default: throw std::invalid_argument("bad word character '" + std::string(1, ch) + "'");
    }
  }
  if (text.find('0') != std::string_view::npos && !letters.empty()) {
    throw std::invalid_argument("'0' denotes the empty word and cannot be mixed with arrows");
  }
  return Word(std::move(letters));
}

Word Word::repeat(Orient o, std::size_t count) { return Word(std::vector<Orient>(count, o)); }

std::size_t Word::count(Orient o) const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), o));
}

Word Word::dual() const {
  std::vector<Orient> out(letters_.rbegin(), letters_.rend());
  for (auto& o : out) o = flip(o);
  return Word(std::move(out));
}

Word Word::flipped() const {
  std::vector<Orient> out = letters_;
  for (auto& o : out) o = flip(o);
  return Word(std::move(out));
}

Word Word::slice(std::size_t from, std::size_t to) const {
  return Word(std::vector<Orient>(letters_.begin() + static_cast<std::ptrdiff_t>(from),
                                  letters_.begin() + static_cast<std::ptrdiff_t>(to)));
}

Word Word::operator+(const Word& o) const {
  std::vector<Orient> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(out));
}

std::string Word::to_string() const {
  if (letters_.empty()) return "0";
  std::string s;
  for (Orient o : letters_) s += o == Orient::Up ? '^' : 'v';
  return s;
}

Word word_dual(const Word& a) { return a.dual(); }

std::string Endpoint::to_string() const {
  return (side == Side::Bottom ? "b" : "t") + std::to_string(position + 1);
}

// ---------------------------------------------------------------- Matching

Matching::Matching(Word source, Word target, std::vector<std::uint32_t> partner)
    : source_(std::move(source)), target_(std::move(target)), partner_(std::move(partner)) {
  const std::size_t n = source_.size() + target_.size();
  if (partner_.size() != n) throw std::invalid_argument("matching: wrong number of endpoints");
  for (std::uint32_t c = 0; c < n; ++c) {
    const std::uint32_t p = partner_[c];
    if (p >= n || p == c || partner_[p] != c) throw std::invalid_argument("matching: not a perfect matching");
    if (is_input(c) == is_input(p)) {
      throw std::invalid_argument("matching: strand must join an input to an output");
    }
  }
}

Matching Matching::identity(const Word& a) {
  const auto n = static_cast<std::uint32_t>(a.size());
  std::vector<std::uint32_t> partner(2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    partner[i] = n + i;
    partner[n + i] = i;
  }
  return Matching(a, a, std::move(partner));
}

Matching Matching::from_pairs(const Word& source, const Word& target,
                              const std::vector<std::pair<Endpoint, Endpoint>>& pairs) {
  Matching shape;
  shape.source_ = source;
  shape.target_ = target;
  std::vector<std::uint32_t> partner(source.size() + target.size(), UINT32_MAX);
  for (const auto& [x, y] : pairs) {
    const std::uint32_t cx = shape.code(x);
    const std::uint32_t cy = shape.code(y);
    partner[cx] = cy;
    partner[cy] = cx;
  }
  return Matching(source, target, std::move(partner));
}

std::uint32_t Matching::code(Endpoint e) const {
  const std::size_t limit = e.side == Side::Bottom ? source_.size() : target_.size();
  if (e.position >= limit) throw std::out_of_range("endpoint " + e.to_string() + " out of range");
  return e.side == Side::Bottom ? e.position : static_cast<std::uint32_t>(source_.size()) + e.position;
}

Endpoint Matching::endpoint(std::uint32_t code) const {
  const auto na = static_cast<std::uint32_t>(source_.size());
  return code < na ? Endpoint{Side::Bottom, code} : Endpoint{Side::Top, code - na};
}

Orient Matching::letter(std::uint32_t code) const {
  return code < source_.size() ? source_[code] : target_[code - source_.size()];
}

bool Matching::is_input(std::uint32_t code) const {
  const bool bottom = code < source_.size();
  return bottom == (letter(code) == Orient::Up);
}

std::vector<std::uint32_t> Matching::inputs() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < source_.size() + target_.size(); ++c) {
    if (is_input(c)) out.push_back(c);
  }
  return out;
}

std::vector<std::uint32_t> Matching::outputs() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < source_.size() + target_.size(); ++c) {
    if (!is_input(c)) out.push_back(c);
  }
  return out;
}

std::string Matching::to_string() const {
  std::string s;
  for (std::uint32_t c : inputs()) {
    if (!s.empty()) s += ' ';
    s += endpoint(c).to_string() + ">" + endpoint(partner_[c]).to_string();
  }
  return s;
}

std::vector<Matching> enumerate_matchings(const Word& a, const Word& b) {
  // Input/output sets depend only on the words, so read them off a dummy shape.
  const std::size_t n = a.size() + b.size();
  std::vector<std::uint32_t> ins;
  std::vector<std::uint32_t> outs;
  for (std::uint32_t c = 0; c < n; ++c) {
    const bool bottom = c < a.size();
    const Orient o = bottom ? a[c] : b[c - a.size()];
    (bottom == (o == Orient::Up) ? ins : outs).push_back(c);
  }
  std::vector<Matching> result;
  if (ins.size() != outs.size()) return result;
  std::vector<std::size_t> perm(ins.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::uint32_t> partner(n);
    for (std::size_t i = 0; i < ins.size(); ++i) {
      partner[ins[i]] = outs[perm[i]];
      partner[outs[perm[i]]] = ins[i];
    }
    result.emplace_back(a, b, std::move(partner));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

MatchingComposite compose_matchings(const Matching& upper, const Matching& lower) {
  if (lower.target() != upper.source()) {
    throw std::invalid_argument("compose_matchings: type mismatch " + lower.target().to_string() +
                                " vs " + upper.source().to_string());
  }
  const auto na = static_cast<std::uint32_t>(lower.source().size());
  const auto nb = static_cast<std::uint32_t>(lower.target().size());
  const auto nc = static_cast<std::uint32_t>(upper.target().size());
  // Global numbering: bottom a [0,na), middle b [na,na+nb), top c [na+nb, ...).
  auto lower_partner = [&](std::uint32_t g) { return lower.partner(g); };  // g < na+nb
  auto upper_partner = [&](std::uint32_t g) { return upper.partner(g - na) + na; };  // g >= na
  std::vector<bool> mid_seen(nb, false);
  std::vector<std::uint32_t> partner(na + nc, UINT32_MAX);
  auto to_result = [&](std::uint32_t g) { return g < na ? g : g - nb; };
  for (std::uint32_t g0 = 0; g0 < na + nb + nc; ++g0) {
    if (g0 >= na && g0 < na + nb) continue;
    if (partner[to_result(g0)] != UINT32_MAX) continue;
    std::uint32_t g = g0;
    bool use_lower = g0 < na;
    while (true) {
      g = use_lower ? lower_partner(g) : upper_partner(g);
      if (g < na || g >= na + nb) break;
      mid_seen[g - na] = true;
      use_lower = !use_lower;
    }
    partner[to_result(g0)] = to_result(g);
    partner[to_result(g)] = to_result(g0);
  }
  std::uint32_t loops = 0;
  for (std::uint32_t m = 0; m < nb; ++m) {
    if (mid_seen[m]) continue;
    ++loops;
    std::uint32_t g = na + m;
    bool use_lower = true;
    do {
      mid_seen[g - na] = true;
      g = use_lower ? lower_partner(g) : upper_partner(g);
      use_lower = !use_lower;
    } while (g != na + m);
  }
  return {Matching(lower.source(), upper.target(), std::move(partner)), loops};
}

// ---------------------------------------------------------------- NormalDiagram

NormalDiagram::NormalDiagram(Matching m)
    : matching_(std::move(m)), dots_(matching_.endpoint_count(), 0) {}

NormalDiagram::NormalDiagram(Matching m, std::vector<std::uint32_t> dots)
    : matching_(std::move(m)), dots_(std::move(dots)) {
  if (dots_.size() != matching_.endpoint_count()) throw std::invalid_argument("dot vector size mismatch");
  for (std::uint32_t c = 0; c < dots_.size(); ++c) {
    if (dots_[c] != 0 && matching_.is_input(c)) {
      throw std::invalid_argument("dots must sit on output endpoints");
    }
  }
}

std::uint32_t NormalDiagram::degree() const {
  return std::accumulate(dots_.begin(), dots_.end(), 0u);
}

NormalDiagram NormalDiagram::with_dots(std::uint32_t output_code, std::uint32_t count) const {
  std::vector<std::uint32_t> d = dots_;
  d.at(output_code) = count;
  return NormalDiagram(matching_, std::move(d));
}

std::string NormalDiagram::to_string() const {
  std::string s = "[" + matching_.to_string();
  std::string dots;
  for (std::uint32_t c = 0; c < dots_.size(); ++c) {
    if (dots_[c] == 0) continue;
    if (!dots.empty()) dots += ' ';
    dots += matching_.endpoint(c).to_string() + ":" + std::to_string(dots_[c]);
  }
  if (!dots.empty()) s += " | " + dots;
  return s + "]";
}

// ---------------------------------------------------------------- Morphism

Morphism Morphism::identity(const Word& a) {
  return from_diagram(NormalDiagram(Matching::identity(a)));
}

Morphism Morphism::from_diagram(const NormalDiagram& d, const Scalar& coef) {
  Morphism m(d.source(), d.target());
  m.add_term(d, coef);
  return m;
}

Scalar Morphism::coefficient(const NormalDiagram& d) const {
  auto it = terms_.find(d);
  return it == terms_.end() ? Scalar() : it->second;
}

void Morphism::check_type(const Word& s, const Word& t) const {
  if (s != source_ || t != target_) {
    throw std::invalid_argument("morphism type mismatch: " + source_.to_string() + "->" +
                                target_.to_string() + " vs " + s.to_string() + "->" + t.to_string());
  }
}

void Morphism::add_term(const NormalDiagram& d, const Scalar& coef) {
  check_type(d.source(), d.target());
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(d, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Morphism& Morphism::operator+=(const Morphism& o) {
  check_type(o.source_, o.target_);
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

Morphism& Morphism::operator-=(const Morphism& o) {
  check_type(o.source_, o.target_);
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

Morphism& Morphism::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

std::string Morphism::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [d, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")" + d.to_string();
  }
  return s;
}

// ---------------------------------------------------------------- generators

namespace {

struct GenInfo {
  std::string_view name;
  std::vector<Orient> source;
  std::vector<Orient> target;
};

const std::vector<GenInfo>& gen_table() {
  using O = Orient;
  static const std::vector<GenInfo> table = {
      {"c", {}, {O::Up, O::Down}},
      {"c'", {}, {O::Down, O::Up}},
      {"d", {O::Down, O::Up}, {}},
      {"d'", {O::Up, O::Down}, {}},
      {"s", {O::Up, O::Up}, {O::Up, O::Up}},
      {"s'", {O::Down, O::Down}, {O::Down, O::Down}},
      {"t", {O::Up, O::Down}, {O::Down, O::Up}},
      {"t'", {O::Down, O::Up}, {O::Up, O::Down}},
      {"x", {O::Up}, {O::Up}},
      {"x'", {O::Down}, {O::Down}},
  };
  return table;
}

}  // namespace

const std::vector<Orient>& gen_source(Gen g) { return gen_table()[static_cast<std::size_t>(g)].source; }
const std::vector<Orient>& gen_target(Gen g) { return gen_table()[static_cast<std::size_t>(g)].target; }
std::string_view gen_name(Gen g) { return gen_table()[static_cast<std::size_t>(g)].name; }

std::optional<Gen> gen_from_name(std::string_view name) {
  const auto& table = gen_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].name == name) return static_cast<Gen>(i);
  }
  return std::nullopt;
}

bool is_crossing(Gen g) {
  return g == Gen::CrossUU || g == Gen::CrossDD || g == Gen::CrossUD || g == Gen::CrossDU;
}

bool is_dot(Gen g) { return g == Gen::DotUp || g == Gen::DotDown; }

Gen crossing_for(Orient left, Orient right) {
  if (left == Orient::Up) return right == Orient::Up ? Gen::CrossUU : Gen::CrossUD;
  return right == Orient::Up ? Gen::CrossDU : Gen::CrossDD;
}

// ---------------------------------------------------------------- SliceWord

std::optional<Word> apply_slice(const Word& w, Slice s) {
  const auto& in = gen_source(s.gen);
  const auto& out = gen_target(s.gen);
  if (s.offset + in.size() > w.size()) return std::nullopt;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (w[s.offset + i] != in[i]) return std::nullopt;
  }
  std::vector<Orient> letters(w.letters().begin(), w.letters().begin() + s.offset);
  letters.insert(letters.end(), out.begin(), out.end());
  letters.insert(letters.end(), w.letters().begin() + static_cast<std::ptrdiff_t>(s.offset + in.size()),
                 w.letters().end());
  return Word(std::move(letters));
}

SliceWord::SliceWord(Word source, std::vector<Slice> slices) : source_(source), target_(std::move(source)) {
  for (Slice s : slices) push(s);
}

void SliceWord::push(Slice s) {
  auto next = apply_slice(target_, s);
  if (!next) {
    throw std::invalid_argument("slice " + std::string(gen_name(s.gen)) + "@" + std::to_string(s.offset + 1) +
                                " does not apply to " + target_.to_string());
  }
  target_ = std::move(*next);
  slices_.push_back(s);
}

SliceWord SliceWord::then(const SliceWord& upper) const {
  if (upper.source_ != target_) {
    throw std::invalid_argument("slice composition type mismatch: " + target_.to_string() + " vs " +
                                upper.source_.to_string());
  }
  SliceWord out = *this;
  out.slices_.insert(out.slices_.end(), upper.slices_.begin(), upper.slices_.end());
  out.target_ = upper.target_;
  return out;
}

SliceWord SliceWord::widened(const Word& left, const Word& right) const {
  SliceWord out(left + source_ + right);
  const auto shift = static_cast<std::uint32_t>(left.size());
  for (Slice s : slices_) out.push(Slice{s.gen, s.offset + shift});
  return out;
}

std::vector<Word> SliceWord::levels() const {
  std::vector<Word> out;
  out.reserve(slices_.size() + 1);
  out.push_back(source_);
  for (Slice s : slices_) out.push_back(*apply_slice(out.back(), s));
  return out;
}

std::size_t SliceWord::dot_count() const {
  return static_cast<std::size_t>(
      std::count_if(slices_.begin(), slices_.end(), [](Slice s) { return is_dot(s.gen); }));
}

std::string SliceWord::to_string() const {
  std::string s = source_.to_string() + ":";
  for (Slice sl : slices_) s += " " + std::string(gen_name(sl.gen)) + "@" + std::to_string(sl.offset + 1);
  return s;
}

std::vector<std::uint32_t> sorting_word(std::vector<std::uint32_t> order) {
  std::vector<std::uint32_t> swaps;
  while (true) {
    std::size_t k = 0;
    while (k + 1 < order.size() && order[k] < order[k + 1]) ++k;
    if (k + 1 >= order.size()) break;
    std::swap(order[k], order[k + 1]);
    swaps.push_back(static_cast<std::uint32_t>(k));
  }
  return swaps;
}

SliceWord to_slices(const NormalDiagram& d, const Monomial& bubbles) {
  const Matching& m = d.matching();
  const Word& a = m.source();
  const Word& b = m.target();
  const auto na = static_cast<std::uint32_t>(a.size());
  const auto nb = static_cast<std::uint32_t>(b.size());
  SliceWord w(a);

  for (const auto& [code, exp] : bubbles.factors()) {
    const Symbol sym = Symbol::from_code(code);
    if (sym.kind() != SymbolKind::Delta || sym.index() == 0) {
      throw std::invalid_argument("bubble monomial may only contain Δ_k, k >= 1");
    }
    for (std::uint32_t e = 0; e < exp; ++e) {
      w.push(Gen::Cup, 0);
      for (std::uint32_t k = 1; k < sym.index(); ++k) w.push(Gen::DotUp, 0);
      w.push(Gen::CapRev, 0);
    }
  }

  for (std::uint32_t p = 0; p < na; ++p) {
    if (a[p] == Orient::Down) {
      for (std::uint32_t k = 0; k < d.dots(p); ++k) w.push(Gen::DotDown, p);
    }
  }

  // Bottom points: through strands in the order of their top ends, then cap pairs.
  std::vector<std::uint32_t> through;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> caps;
  for (std::uint32_t p = 0; p < na; ++p) {
    const std::uint32_t q = m.partner(p);
    if (q >= na) {
      through.push_back(p);
    } else if (p < q) {
      caps.emplace_back(p, q);
    }
  }
  std::sort(through.begin(), through.end(),
            [&](std::uint32_t x, std::uint32_t y) { return m.partner(x) < m.partner(y); });
  std::vector<std::uint32_t> rank(na);
  std::uint32_t r = 0;
  for (std::uint32_t p : through) rank[p] = r++;
  for (auto [p, q] : caps) {
    rank[p] = r++;
    rank[q] = r++;
  }
  std::vector<std::uint32_t> cur(na);
  std::iota(cur.begin(), cur.end(), 0);
  {
    std::vector<std::uint32_t> ranks(na);
    for (std::uint32_t i = 0; i < na; ++i) ranks[i] = rank[cur[i]];
    for (std::uint32_t o : sorting_word(ranks)) {
      w.push(crossing_for(a[cur[o]], a[cur[o + 1]]), o);
      std::swap(cur[o], cur[o + 1]);
    }
  }
  const auto nt = static_cast<std::uint32_t>(through.size());
  for (std::size_t k = caps.size(); k-- > 0;) {
    const auto [p, q] = caps[k];
    w.push(a[p] == Orient::Down ? Gen::Cap : Gen::CapRev, nt + 2 * static_cast<std::uint32_t>(k));
  }

  std::vector<std::uint32_t> top;
  for (std::uint32_t p : through) top.push_back(m.partner(p) - na);
  for (std::uint32_t j = 0; j < nb; ++j) {
    const std::uint32_t q = m.partner(na + j);
    if (q >= na && q - na > j) {
      w.push(b[j] == Orient::Up ? Gen::Cup : Gen::CupRev, static_cast<std::uint32_t>(top.size()));
      top.push_back(j);
      top.push_back(q - na);
    }
  }
  for (std::uint32_t o : sorting_word(top)) {
    w.push(crossing_for(b[top[o]], b[top[o + 1]]), o);
    std::swap(top[o], top[o + 1]);
  }

  for (std::uint32_t j = 0; j < nb; ++j) {
    if (b[j] == Orient::Up) {
      for (std::uint32_t k = 0; k < d.dots(na + j); ++k) w.push(Gen::DotUp, j);
    }
  }
  return w;
}

// ---------------------------------------------------------------- basis

std::uint32_t BasisElement::degree() const {
  std::uint32_t deg = diagram.degree();
  for (const auto& [code, exp] : bubbles.factors()) deg += (Symbol::from_code(code).index() - 1) * exp;
  return deg;
}

Morphism BasisElement::morphism() const {
  return Morphism::from_diagram(diagram, Scalar::monomial(bubbles));
}

namespace {

void enumerate_dots(const std::vector<std::uint32_t>& outputs, std::size_t i, std::optional<std::uint32_t> per_strand,
                    std::optional<std::uint32_t> budget, std::vector<std::uint32_t>& dots,
                    std::vector<std::vector<std::uint32_t>>& out) {
  if (i == outputs.size()) {
    out.push_back(dots);
    return;
  }
  std::uint32_t limit = UINT32_MAX;
  if (per_strand) limit = std::min(limit, *per_strand);
  if (budget) limit = std::min(limit, *budget);
  for (std::uint32_t k = 0; k <= limit; ++k) {
    dots[outputs[i]] = k;
    enumerate_dots(outputs, i + 1, per_strand, budget ? std::optional<std::uint32_t>(*budget - k) : std::nullopt,
                   dots, out);
  }
  dots[outputs[i]] = 0;
}

// Multisets of bubble indices as exponent vectors over Δ_1..Δ_maxindex.
void enumerate_bubbles(std::uint32_t index, std::uint32_t max_index, std::uint32_t factors_left,
                       std::uint32_t degree_left, std::vector<std::uint32_t>& exps,
                       std::vector<std::vector<std::uint32_t>>& out) {
  if (index > max_index) {
    out.push_back(exps);
    return;
  }
  const std::uint32_t cost = index - 1;
  for (std::uint32_t e = 0; e <= factors_left && (cost == 0 || e * cost <= degree_left); ++e) {
    exps[index - 1] = e;
    enumerate_bubbles(index + 1, max_index, factors_left - e, degree_left - e * cost, exps, out);
  }
  exps[index - 1] = 0;
}

}  // namespace

std::vector<BasisElement> enumerate_normal_basis(const Word& a, const Word& b, const BasisBounds& bounds) {
  const std::size_t strands = (a.size() + b.size()) / 2;
  if (strands > 0 && !bounds.max_dots_per_strand && !bounds.max_total_degree) {
    throw std::invalid_argument("unbounded basis request: give max dots per strand or max total degree");
  }
  if (bounds.max_bubble_degree > 0 && !bounds.max_bubble_index && !bounds.max_total_degree) {
    throw std::invalid_argument("unbounded basis request: give max bubble index or max total degree");
  }
  const std::uint32_t total = bounds.max_total_degree.value_or(UINT32_MAX / 4);
  std::uint32_t max_index = 0;
  if (bounds.max_bubble_degree > 0) {
    max_index = bounds.max_bubble_index.value_or(total + 1);
    if (bounds.max_total_degree) max_index = std::min(max_index, total + 1);
  }

  std::vector<std::vector<std::uint32_t>> bubble_exps;
  {
    std::vector<std::uint32_t> exps(max_index, 0);
    enumerate_bubbles(1, max_index, bounds.max_bubble_degree, total, exps, bubble_exps);
    std::sort(bubble_exps.begin(), bubble_exps.end());
  }

  std::vector<BasisElement> result;
  for (const Matching& m : enumerate_matchings(a, b)) {
    std::vector<std::vector<std::uint32_t>> dot_vectors;
    std::vector<std::uint32_t> dots(m.endpoint_count(), 0);
    enumerate_dots(m.outputs(), 0, bounds.max_dots_per_strand, bounds.max_total_degree, dots, dot_vectors);
    std::sort(dot_vectors.begin(), dot_vectors.end());
    for (const auto& dv : dot_vectors) {
      NormalDiagram diagram(m, dv);
      for (const auto& exps : bubble_exps) {
        std::vector<Monomial::Factor> factors;
        for (std::uint32_t k = 0; k < exps.size(); ++k) {
          if (exps[k] > 0) factors.emplace_back(Symbol::delta(k + 1).code(), exps[k]);
        }
        BasisElement el{diagram, Monomial::from_factors(std::move(factors))};
        if (bounds.max_total_degree && el.degree() > *bounds.max_total_degree) continue;
        result.push_back(std::move(el));
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------- reversal

NormalDiagram reverse_orientation(const NormalDiagram& d) {
  if (d.degree() != 0) throw std::invalid_argument("orientation reversal is only defined on undotted diagrams");
  const Matching& m = d.matching();
  return NormalDiagram(Matching(m.source().flipped(), m.target().flipped(), m.partners()));
}

Morphism reverse_orientation(const Morphism& m) {
  Morphism out(m.source().flipped(), m.target().flipped());
  for (const auto& [d, c] : m.terms()) {
    for (const auto& t : c.terms()) {
      for (const auto& [code, exp] : t.mono.factors()) {
        const Symbol s = Symbol::from_code(code);
        if (s.kind() == SymbolKind::Delta && s.index() != 1) {
          throw std::invalid_argument("orientation reversal is only defined without dotted bubbles");
        }
      }
    }
    out.add_term(reverse_orientation(d), c);
  }
  return out;
}

}  // namespace ob
