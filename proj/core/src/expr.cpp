#include "ob/expr.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace ob {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t pos() const { return pos_; }
  char raw(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }
  void advance(std::size_t n) { pos_ += n; }
  std::string_view rest() const { return text_.substr(pos_); }

  Integer number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, at); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- morphisms

SliceCombination scalar_combination(const Scalar& s) { return {{s, SliceWord(Word{})}}; }

ParsedExpression make(Word source, Word target, SliceCombination terms) {
  return {std::move(source), std::move(target), std::move(terms)};
}

SliceWord tensor_words(const SliceWord& a, const SliceWord& b) {
  return a.widened(Word{}, b.source()).then(b.widened(a.target(), Word{}));
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : cur_(text) {}

  ParsedExpression parse() {
    ParsedExpression e = sum();
    if (!cur_.at_end()) cur_.fail("unexpected '" + std::string(1, cur_.peek()) + "'");
    return e;
  }

 private:
  ParsedExpression sum() {
    ParsedExpression acc = tensor();
    while (true) {
      const char op = cur_.peek();
      if (op != '+' && op != '-') return acc;
      const std::size_t at = cur_.pos();
      cur_.advance(1);
      ParsedExpression rhs = tensor();
      if (rhs.source != acc.source || rhs.target != acc.target)
        cur_.fail_at("cannot add " + type(acc) + " and " + type(rhs), at);
      for (auto& [c, w] : rhs.terms) acc.terms.emplace_back(op == '+' ? c : -c, std::move(w));
    }
  }

  ParsedExpression tensor() {
    ParsedExpression acc = compose();
    while (cur_.peek() == '*') {
      cur_.advance(1);
      ParsedExpression rhs = compose();
      SliceCombination out;
      for (const auto& [ca, wa] : acc.terms)
        for (const auto& [cb, wb] : rhs.terms) out.emplace_back(ca * cb, tensor_words(wa, wb));
      acc = make(acc.source + rhs.source, acc.target + rhs.target, std::move(out));
    }
    return acc;
  }

  ParsedExpression compose() {
    ParsedExpression acc = unary();
    while (cur_.peek() == '.') {
      const std::size_t at = cur_.pos();
      cur_.advance(1);
      ParsedExpression rhs = unary();
      if (rhs.target != acc.source)
        cur_.fail_at("cannot compose " + type(acc) + " after " + type(rhs), at);
      SliceCombination out;
      for (const auto& [ca, wa] : acc.terms)
        for (const auto& [cb, wb] : rhs.terms) out.emplace_back(ca * cb, wb.then(wa));
      acc = make(rhs.source, acc.target, std::move(out));
    }
    return acc;
  }

  ParsedExpression unary() {
    if (cur_.peek() == '-') {
      cur_.advance(1);
      ParsedExpression e = unary();
      for (auto& [c, w] : e.terms) c = -c;
      return e;
    }
    return atom();
  }

  ParsedExpression atom() {
    const char ch = cur_.peek();
    const std::size_t at = cur_.pos();
    if (ch == '(') {
      cur_.advance(1);
      ParsedExpression e = sum();
      cur_.expect(')');
      return e;
    }
    if (ch == '1' && cur_.raw(cur_.pos() + 1) == '[') return identity();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      Rational q(cur_.number());
      if (cur_.peek() == '/') {
        cur_.advance(1);
        const Integer den = cur_.number();
        if (den == 0) cur_.fail_at("zero denominator", at);
        q /= Rational(den);
      }
      return make(Word{}, Word{}, scalar_combination(Scalar(q)));
    }
    if (ch == 'D') {
      cur_.advance(1);
      const Integer k = cur_.number();
      if (k < 1 || !k.fits_uint_p()) cur_.fail_at("bubble index must be a positive integer", at);
      return make(Word{}, Word{}, scalar_combination(Scalar::variable(Symbol::delta(k.get_ui()))));
    }
    if (ch == '\0') cur_.fail("expected a morphism");
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::string name(1, ch);
      cur_.advance(1);
      if (cur_.raw(cur_.pos()) == '\'') {
        name += '\'';
        cur_.advance(1);
      }
      const auto g = gen_from_name(name);
      if (!g) cur_.fail_at("unknown generator '" + name + "'", at);
      const Word src(gen_source(*g));
      return make(src, Word(gen_target(*g)), {{Scalar(1L), SliceWord(src, {{*g, 0}})}});
    }
    cur_.fail("unexpected '" + std::string(1, ch) + "'");
  }

  ParsedExpression identity() {
    cur_.advance(1);
    cur_.expect('[');
    const std::size_t start = cur_.pos();
    const std::string_view rest = cur_.rest();
    const std::size_t close = rest.find(']');
    if (close == std::string_view::npos) cur_.fail("missing ']'");
    Word w;
    try {
      w = Word::parse(rest.substr(0, close));
    } catch (const std::invalid_argument& e) {
      cur_.fail_at(e.what(), start);
    }
    cur_.advance(close + 1);
    return make(w, w, {{Scalar(1L), SliceWord(w)}});
  }

  static std::string type(const ParsedExpression& e) {
    return e.source.to_string() + " -> " + e.target.to_string();
  }

  Cursor cur_;
};

// ---------------------------------------------------------------- scalars

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : cur_(text) {}

  Scalar parse() {
    if (cur_.at_end()) cur_.fail("empty expression");
    Scalar s = sum();
    if (!cur_.at_end()) cur_.fail("unexpected '" + std::string(1, cur_.peek()) + "'");
    return s;
  }

 private:
  Scalar sum() {
    Scalar acc;
    if (cur_.accept('-')) acc = -product();
    else {
      cur_.accept('+');
      acc = product();
    }
    while (true) {
      if (cur_.accept('+')) acc += product();
      else if (cur_.accept('-')) acc -= product();
      else return acc;
    }
  }

  Scalar product() {
    Scalar acc = power();
    while (true) {
      if (cur_.accept('*')) {
        acc = acc * power();
        continue;
      }
      if (cur_.peek() == '/') {
        const std::size_t at = cur_.pos();
        cur_.advance(1);
        const Scalar den = power();
        if (!den.is_constant() || den.is_zero()) cur_.fail_at("can only divide by a nonzero number", at);
        acc = acc * Scalar(Rational(1) / den.constant_value());
        continue;
      }
      // Implicit multiplication: "2u", "3m1".
      const char ch = cur_.peek();
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '(') {
        acc = acc * power();
        continue;
      }
      return acc;
    }
  }

  Scalar power() {
    Scalar base = atom();
    if (cur_.accept('^')) {
      const Integer e = cur_.number();
      if (!e.fits_uint_p()) cur_.fail("exponent too large");
      base = base.pow(static_cast<std::uint32_t>(e.get_ui()));
    }
    return base;
  }

  Scalar atom() {
    const char ch = cur_.peek();
    const std::size_t at = cur_.pos();
    if (ch == '(') {
      cur_.advance(1);
      Scalar s = sum();
      cur_.expect(')');
      return s;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return Scalar(Rational(cur_.number()));
    if (ch == 'u') {
      cur_.advance(1);
      return Scalar::variable(Symbol::u());
    }
    if (ch == 'D' || ch == 'm' || ch == 'l') {
      cur_.advance(1);
      const Integer k = cur_.number();
      if (k < 1 || !k.fits_uint_p()) cur_.fail_at("index must be a positive integer", at);
      const auto i = static_cast<std::uint32_t>(k.get_ui());
      return Scalar::variable(ch == 'D' ? Symbol::delta(i) : ch == 'm' ? Symbol::m(i) : Symbol::lambda(i));
    }
    if (ch == '\0') cur_.fail("unexpected end of input");
    cur_.fail("unexpected '" + std::string(1, ch) + "'");
  }

  Cursor cur_;
};

}  // namespace

ParsedExpression parse_expression(std::string_view text) {
  ExprParser p(text);
  return p.parse();
}

Morphism evaluate_expression(std::string_view text, const Engine& engine) {
  const ParsedExpression e = parse_expression(text);
  if (e.terms.empty()) return Morphism(e.source, e.target);
  return engine.normalize(e.terms);
}

Scalar parse_scalar(std::string_view text) { return ScalarParser(text).parse(); }

UPoly parse_monic(std::string_view text) {
  const Scalar s = parse_scalar(text);
  UPoly p = UPoly::from_scalar(s);
  if (p.degree() < 1 || !p.is_monic())
    throw std::invalid_argument("'" + std::string(text) + "' is not a monic polynomial in u of positive degree");
  return p;
}

}  // namespace ob
