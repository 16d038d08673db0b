#include "ordlab/parser.hpp"

#include <cctype>
#include <sstream>

namespace ordlab {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Ordinal run() {
    Ordinal v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return v;
  }

 private:
  Ordinal expr() {
    Ordinal v = term();
    while (peek() == '+') {
      ++pos_;
      v = add(v, term());
    }
    return v;
  }

  Ordinal term() {
    Ordinal v = factor();
    skip_ws();
    if (peek() == '*') {
      ++pos_;
      v = nat_mul(v, nat());
    }
    return v;
  }

  Ordinal factor() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected factor", pos_);
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Ordinal::nat(nat());
    if (c == '(') {
      ++pos_;
      Ordinal v = expr();
      expect(')');
      return v;
    }
    if (match_word("phi")) {
      expect('(');
      Ordinal a = expr();
      expect(',');
      Ordinal b = expr();
      expect(')');
      return Ordinal::phi(a, b);
    }
    if (match_word("e")) {
      expect('(');
      Ordinal b = expr();
      expect(')');
      return Ordinal::epsilon(b);
    }
    if (match_word("w")) {
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        if (peek() == '(') {
          ++pos_;
          Ordinal e = expr();
          expect(')');
          return Ordinal::omega_pow(e);
        }
        return Ordinal::omega_pow(factor());
      }
      return Ordinal::omega();
    }
    throw ParseError("expected factor", pos_);
  }

  std::uint64_t nat() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw ParseError("expected a natural number", pos_);
    }
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (UINT64_MAX - digit) / 10) throw ParseError("number too large", start);
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  // Matches an identifier-like keyword without consuming a longer word.
  bool match_word(const std::string& word) {
    skip_ws();
    if (text_.compare(pos_, word.size(), word) != 0) return false;
    std::size_t end = pos_ + word.size();
    if (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) return false;
    pos_ = end;
    return true;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void print_expr(std::ostream& os, const Ordinal& x);

// A principal (coefficient-1, non-finite) term in its minimal form.
void print_principal(std::ostream& os, const Ordinal::PrincipalPtr& p) {
  auto level_nat = as_nat(p->level);
  if (level_nat && *level_nat == 0) {
    if (auto n = as_nat(p->index); n && *n == 1) {
      os << 'w';
      return;
    }
    os << "w^";
    // The exponent is a factor exactly when it is finite or a single
    // coefficient-1 principal; otherwise parenthesize.
    const Ordinal& b = p->index;
    if (as_nat(b) || (b.term_count() == 1 && b.terms()[0].coeff == 1)) {
      print_expr(os, b);
    } else {
      os << '(';
      print_expr(os, b);
      os << ')';
    }
    return;
  }
  if (level_nat && *level_nat == 1) {
    os << "e(";
    print_expr(os, p->index);
    os << ')';
    return;
  }
  os << "phi(";
  print_expr(os, p->level);
  os << ',';
  print_expr(os, p->index);
  os << ')';
}

void print_expr(std::ostream& os, const Ordinal& x) {
  if (x.is_zero()) {
    os << '0';
    return;
  }
  bool first = true;
  for (const auto& t : x.terms()) {
    if (!first) os << '+';
    first = false;
    if (t.principal->level.is_zero() && t.principal->index.is_zero()) {
      os << t.coeff;  // finite part
      continue;
    }
    print_principal(os, t.principal);
    if (t.coeff > 1) os << '*' << t.coeff;
  }
}

}  // namespace

Ordinal parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Ordinal& x) {
  std::ostringstream os;
  print_expr(os, x);
  return os.str();
}

}  // namespace ordlab
