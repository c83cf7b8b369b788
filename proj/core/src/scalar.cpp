#include "ob/scalar.hpp"

#include <algorithm>
#include <stdexcept>

namespace ob {

std::string Symbol::name() const {
  switch (kind()) {
    case SymbolKind::Delta: return "D" + std::to_string(index());
    case SymbolKind::M: return "m" + std::to_string(index());
    case SymbolKind::Lambda: return "l" + std::to_string(index());
    case SymbolKind::U: return "u";
  }
  return "?";
}

Monomial::Monomial(Symbol s, std::uint32_t exp) {
  if (exp > 0) {
    factors_.emplace_back(s.code(), exp);
    degree_ = exp;
  }
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [code, exp] : factors) {
    if (exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == code) {
      m.factors_.back().second += exp;
    } else {
      m.factors_.emplace_back(code, exp);
    }
    m.degree_ += exp;
  }
  return m;
}

std::uint32_t Monomial::exponent(Symbol s) const {
  for (const auto& [code, exp] : factors_) {
    if (code == s.code()) return exp;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  auto a = factors_.begin();
  for (const auto& [code, exp] : o.factors_) {
    while (a != factors_.end() && a->first < code) r.factors_.push_back(*a++);
    if (a == factors_.end() || a->first != code || a->second < exp) return std::nullopt;
    if (a->second > exp) r.factors_.emplace_back(code, a->second - exp);
    ++a;
  }
  while (a != factors_.end()) r.factors_.push_back(*a++);
  r.degree_ = degree_ - o.degree_;
  return r;
}

std::pair<Monomial, Monomial> Monomial::split(SymbolKind kind) const {
  Monomial in;
  Monomial out;
  for (const auto& f : factors_) {
    Monomial& target = Symbol::from_code(f.first).kind() == kind ? in : out;
    target.factors_.push_back(f);
    target.degree_ += f.second;
  }
  return {in, out};
}

std::strong_ordering Monomial::grlex(const Monomial& o) const {
  if (degree_ != o.degree_) return degree_ <=> o.degree_;
  const std::size_t n = std::min(factors_.size(), o.factors_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [ca, ea] = factors_[i];
    const auto& [cb, eb] = o.factors_[i];
    // A smaller code means an earlier variable carries a positive exponent
    // where the other monomial has none.
    if (ca != cb) return ca < cb ? std::strong_ordering::greater : std::strong_ordering::less;
    if (ea != eb) return ea <=> eb;
  }
  return factors_.size() <=> o.factors_.size();
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [code, exp] : factors_) {
    if (!s.empty()) s += '*';
    s += Symbol::from_code(code).name();
    if (exp > 1) s += '^' + std::to_string(exp);
  }
  return s.empty() ? "1" : s;
}

std::string rational_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.grlex(b) > 0; }
};

}  // namespace

Scalar::Scalar(long v) {
  if (v != 0) terms_.push_back({Monomial{}, Rational(v)});
}

Scalar::Scalar(const Integer& v) {
  if (v != 0) terms_.push_back({Monomial{}, Rational(v)});
}

Scalar::Scalar(const Rational& v) {
  Rational c(v);
  c.canonicalize();
  if (c != 0) terms_.push_back({Monomial{}, std::move(c)});
}

Scalar Scalar::variable(Symbol s) { return monomial(Monomial(s), 1); }

Scalar Scalar::monomial(const Monomial& m, const Rational& c) {
  Scalar r;
  Rational coef(c);
  coef.canonicalize();
  if (coef != 0) r.terms_.push_back({m, std::move(coef)});
  return r;
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
  Scalar r;
  r.terms_ = std::move(terms);
  r.canonicalize();
  return r;
}

void Scalar::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mono.grlex(b.mono) > 0; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono) {
      merged.back().coef += t.coef;
    } else {
      if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coef == 0) merged.pop_back();
  terms_ = std::move(merged);
}

bool Scalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

bool Scalar::is_integer() const {
  return is_constant() && constant_value().get_den() == 1;
}

Rational Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("scalar is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_[0].coef;
}

Rational Scalar::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

std::uint32_t Scalar::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

bool Scalar::has_kind(SymbolKind kind) const {
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) {
      if (Symbol::from_code(f.first).kind() == kind) return true;
    }
  }
  return false;
}

std::uint32_t Scalar::max_index(SymbolKind kind) const {
  std::uint32_t best = 0;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) {
      const Symbol s = Symbol::from_code(f.first);
      if (s.kind() == kind) best = std::max(best, s.index());
    }
  }
  return best;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

std::vector<Scalar::Term> merge_terms(const std::vector<Scalar::Term>& a,
                                      const std::vector<Scalar::Term>& b, bool negate_b) {
  std::vector<Scalar::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (i == a.end()) {
      c = std::strong_ordering::less;
    } else if (j == b.end()) {
      c = std::strong_ordering::greater;
    } else {
      c = i->mono.grlex(j->mono);
    }
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back(*j++);
      if (negate_b) out.back().coef = -out.back().coef;
    } else {
      Rational v = negate_b ? Rational(i->coef - j->coef) : Rational(i->coef + j->coef);
      if (v != 0) out.push_back({i->mono, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    r.terms_.push_back({a.terms_[0].mono * b.terms_[0].mono, a.terms_[0].coef * b.terms_[0].coef});
    return r;
  }
  std::map<Monomial, Rational, GrlexGreater> acc;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      auto [it, inserted] = acc.try_emplace(x.mono * y.mono, x.coef * y.coef);
      if (!inserted) it->second += x.coef * y.coef;
    }
  }
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  }
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::pow(std::uint32_t e) const {
  Scalar result(1L);
  Scalar base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return result;
}

bool Scalar::operator==(const Scalar& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coef != o.terms_[i].coef) return false;
  }
  return true;
}

std::optional<Scalar> Scalar::divide_exact(const Scalar& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero polynomial");
  Scalar rem = *this;
  std::vector<Term> quot;
  const Term& lead = o.terms_.front();
  while (!rem.is_zero()) {
    const Term& top = rem.terms_.front();
    auto q = top.mono.divide(lead.mono);
    if (!q) return std::nullopt;
    Term t{*q, top.coef / lead.coef};
    rem -= Scalar::monomial(t.mono, t.coef) * o;
    quot.push_back(std::move(t));
  }
  return Scalar::from_terms(std::move(quot));
}

Scalar Scalar::substitute(const std::function<std::optional<Scalar>(Symbol)>& f) const {
  Scalar out;
  std::map<std::uint32_t, std::optional<Scalar>> cache;
  for (const auto& t : terms_) {
    Scalar piece(t.coef);
    std::vector<Monomial::Factor> kept;
    for (const auto& [code, exp] : t.mono.factors()) {
      auto it = cache.find(code);
      if (it == cache.end()) it = cache.emplace(code, f(Symbol::from_code(code))).first;
      if (it->second) {
        piece *= it->second->pow(exp);
      } else {
        kept.emplace_back(code, exp);
      }
    }
    if (!kept.empty()) piece *= Scalar::monomial(Monomial::from_factors(std::move(kept)));
    out += piece;
  }
  return out;
}

std::map<Monomial, Scalar> Scalar::collect(SymbolKind kind) const {
  std::map<Monomial, std::vector<Term>> groups;
  for (const auto& t : terms_) {
    auto [in, out] = t.mono.split(kind);
    groups[in].push_back({out, t.coef});
  }
  std::map<Monomial, Scalar> result;
  for (auto& [m, ts] : groups) result.emplace(m, Scalar::from_terms(std::move(ts)));
  return result;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      s += rational_string(c);
    } else {
      if (c != 1) s += rational_string(c) + "*";
      s += t.mono.to_string();
    }
  }
  return s;
}

UPoly::UPoly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UPoly UPoly::from_scalar(const Scalar& s) {
  std::vector<std::vector<Scalar::Term>> by_power;
  for (const auto& t : s.terms()) {
    const std::uint32_t e = t.mono.exponent(Symbol::u());
    if (by_power.size() <= e) by_power.resize(e + 1);
    auto [upart, rest] = t.mono.split(SymbolKind::U);
    by_power[e].push_back({rest, t.coef});
  }
  std::vector<Scalar> coeffs;
  coeffs.reserve(by_power.size());
  for (auto& ts : by_power) coeffs.push_back(Scalar::from_terms(std::move(ts)));
  return UPoly(std::move(coeffs));
}

UPoly UPoly::linear_root(const Scalar& root) { return UPoly({-root, Scalar(1L)}); }

bool UPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == Scalar(1L); }

const Scalar& UPoly::coeff(std::size_t i) const {
  static const Scalar zero;
  return i < coeffs_.size() ? coeffs_[i] : zero;
}

Scalar UPoly::to_scalar() const {
  Scalar r;
  const Scalar u = Scalar::variable(Symbol::u());
  for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * u + coeffs_[i];
  return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (coeffs_.empty() || o.coeffs_.empty()) return UPoly();
  std::vector<Scalar> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> UPoly::divmod_monic(const UPoly& divisor) const {
  if (!divisor.is_monic()) throw std::invalid_argument("divisor must be monic");
  const int dl = divisor.degree();
  std::vector<Scalar> rem = coeffs_;
  const int n = static_cast<int>(rem.size()) - 1;
  std::vector<Scalar> quot(n >= dl ? static_cast<std::size_t>(n - dl + 1) : 0);
  for (int k = n; k >= dl; --k) {
    const Scalar q = rem[static_cast<std::size_t>(k)];
    if (q.is_zero()) continue;
    quot[static_cast<std::size_t>(k - dl)] = q;
    for (int i = 0; i <= dl; ++i) {
      rem[static_cast<std::size_t>(k - dl + i)] -= q * divisor.coeffs_[static_cast<std::size_t>(i)];
    }
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

}  // namespace ob
