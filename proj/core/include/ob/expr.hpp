// Plain-text morphism expressions and scalar/polynomial literals.
//
//   expr    := term (('+' | '-') term)*
//   term    := compose ('*' compose)*          tensor product, left to right
//   compose := unary ('.' unary)*              f . g means f after g
//   unary   := '-' unary | atom
//   atom    := generator | '1[' word ']' | 'D' k | number ['/' number] | '(' expr ')'
//
// Generators: c c' d d' s s' t t' x x'. Scalars and D<k> are endomorphisms of
// the empty word, so "2 * s" and "D2 * 1[^]" scale by tensoring.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ob/diagrams.hpp"
#include "ob/rewrite.hpp"
#include "ob/scalar.hpp"

namespace ob {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at column " + std::to_string(position + 1)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParsedExpression {
  Word source;
  Word target;
  SliceCombination terms;
};

ParsedExpression parse_expression(std::string_view text);
Morphism evaluate_expression(std::string_view text, const Engine& engine);

// Polynomial in u, m<i>, D<i>, l<i> with rational coefficients, e.g. "u^2-1",
// "3/2", "D2 - D1^2".
Scalar parse_scalar(std::string_view text);
// Monic polynomial in u.
UPoly parse_monic(std::string_view text);

}  // namespace ob
