#ifndef ORDLAB_PARSER_HPP
#define ORDLAB_PARSER_HPP

#include <stdexcept>
#include <string>

#include "ordlab/ordinal.hpp"

namespace ordlab {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Grammar:
//   expr   := term { "+" term }
//   term   := factor [ "*" NAT ]
//   factor := NAT | "w" | "w^" factor | "w^(" expr ")" | "e(" expr ")"
//           | "phi(" expr "," expr ")" | "(" expr ")"
// Whitespace is ignored.  Non-normal input is normalized, never rejected.
Ordinal parse(const std::string& text);

// Canonical printing; parse(print(x)) == x and the output is bit-exact for
// equal ordinals.  Minimal sugar: "w" for omega, "w^x" with parentheses only
// when the exponent is not itself a factor, "e(x)" for phi(1, x), "phi(a,b)"
// for higher levels.
std::string print(const Ordinal& x);

}  // namespace ordlab

#endif  // ORDLAB_PARSER_HPP
