#include "abmod/parser.hpp"

#include <cctype>
#include <string>

#include "abmod/errors.hpp"

namespace abm {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen,
                 rparen, end };

struct Token {
  Tok kind;
  std::string text;  // ident name or number literal
  std::size_t pos;
};

[[noreturn]] void bad(std::size_t pos, const std::string& what) {
  fail(errc::syntax_error, what + " at position " + std::to_string(pos));
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])))
        ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      default: bad(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

// Recursive-descent evaluator over AbElement. Division is only allowed
// immediately between two integer literals (rational syntax "3/2");
// everything else must use inv(...).
class ElementParser {
public:
  ElementParser(std::vector<Token> toks, int prec, bool allow_a,
                bool series_var_only)
      : t_(std::move(toks)), prec_(prec), allow_a_(allow_a),
        series_only_(series_var_only) {}

  AbElement parse() {
    AbElement v = expr();
    expect(Tok::end, "trailing input");
    return v;
  }

  // Top-level product split for presentation recognition. Nothing when
  // the top level is additive.
  std::optional<std::vector<ParsedFactor>> top_factors() {
    if (top_level_is_sum()) return std::nullopt;
    std::vector<ParsedFactor> out;
    out.push_back(one_factor());
    while (true) {
      if (peek().kind == Tok::star) {
        ++i_;
        out.push_back(one_factor());
      } else if (starts_primary(peek().kind)) {
        out.push_back(one_factor());
      } else {
        break;
      }
    }
    expect(Tok::end, "trailing input");
    return out;
  }

private:
  bool top_level_is_sum() {
    int depth = 0;
    for (std::size_t j = 0; j < t_.size(); ++j) {
      if (t_[j].kind == Tok::lparen) ++depth;
      if (t_[j].kind == Tok::rparen) --depth;
      if (depth == 0 && (t_[j].kind == Tok::plus || t_[j].kind == Tok::minus))
        return true;
    }
    return false;
  }

  static bool starts_primary(Tok k) {
    return k == Tok::number || k == Tok::ident || k == Tok::lparen;
  }

  const Token& peek() const { return t_[i_]; }

  void expect(Tok k, const std::string& what) {
    if (t_[i_].kind != k) bad(t_[i_].pos, what);
    ++i_;
  }

  ParsedFactor one_factor() {
    ParsedFactor f;
    if (peek().kind == Tok::ident && peek().text == "inv") {
      std::size_t at = peek().pos;
      ++i_;
      expect(Tok::lparen, "expected ( after inv");
      AbElement arg = expr();
      expect(Tok::rparen, "unclosed inv(");
      if (peek().kind == Tok::caret) bad(peek().pos, "exponent on inv(...)");
      f.is_inverse = true;
      f.inv_argument = series_of(arg, at);
      f.value = AbElement::from_series(
          f.inv_argument.truncated(prec_).invert());
      return f;
    }
    f.value = factor();
    return f;
  }

  TruncatedSeries series_of(const AbElement& x, std::size_t pos) {
    if (x.a_degree() > 0) bad(pos, "inv argument must be a series in b");
    TruncatedSeries s = x.series_coeff(0);
    if (s.coeff(0).is_zero())
      fail(errc::not_a_unit,
           "inv argument has zero constant term at position " +
               std::to_string(pos));
    return s;
  }

  AbElement expr() {
    bool neg = false;
    if (peek().kind == Tok::minus) {
      neg = true;
      ++i_;
    } else if (peek().kind == Tok::plus) {
      ++i_;
    }
    AbElement acc = term();
    if (neg) acc = -acc;
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = peek().kind == Tok::minus;
      ++i_;
      AbElement rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  AbElement term() {
    AbElement acc = one_factor().value;
    while (true) {
      if (peek().kind == Tok::star) {
        ++i_;
        acc = acc * one_factor().value;
      } else if (starts_primary(peek().kind)) {
        acc = acc * one_factor().value;
      } else {
        return acc;
      }
    }
  }

  AbElement factor() {
    AbElement base = primary();
    if (peek().kind == Tok::caret) {
      ++i_;
      if (peek().kind != Tok::number) bad(peek().pos, "expected exponent");
      if (peek().text.size() > 3) bad(peek().pos, "exponent too large");
      long e = std::stol(peek().text);
      ++i_;
      AbElement acc = AbElement::one();
      for (long t = 0; t < e; ++t) acc = acc * base;
      return acc;
    }
    return base;
  }

  AbElement primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::number: {
        ++i_;
        Rational num = Rational::from_string(tok.text);
        // Rational literal "p/q": a slash directly between two integers.
        if (peek().kind == Tok::slash) {
          ++i_;
          if (peek().kind != Tok::number) bad(peek().pos, "expected denominator");
          Rational den = Rational::from_string(peek().text);
          ++i_;
          if (den.is_zero()) bad(tok.pos, "zero denominator");
          num /= den;
        }
        return AbElement::monomial(0, 0, Scalar(num));
      }
      case Tok::ident: {
        ++i_;
        if (tok.text == "a") {
          if (!allow_a_) bad(tok.pos, "a not allowed in a series");
          return AbElement::a();
        }
        if (tok.text == "b" || (series_only_ && tok.text == "z"))
          return AbElement::b();
        if (tok.text == "tau")
          return AbElement::monomial(0, 0, Scalar::tau());
        if (tok.text == "inv") {
          --i_;
          return one_factor().value;
        }
        bad(tok.pos, "unknown identifier '" + tok.text + "'");
      }
      case Tok::lparen: {
        ++i_;
        AbElement v = expr();
        expect(Tok::rparen, "unbalanced parenthesis");
        return v;
      }
      default:
        bad(tok.pos, "expected a value");
    }
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
  int prec_;
  bool allow_a_;
  bool series_only_;
};

}  // namespace

AbElement parse_ab_element(std::string_view text, int prec) {
  ElementParser p(tokenize(text), prec, true, false);
  return p.parse();
}

TruncatedSeries parse_series(std::string_view text, int prec) {
  ElementParser p(tokenize(text), prec, false, true);
  AbElement x = p.parse();
  return x.series_coeff(0).truncated(prec);
}

Scalar parse_scalar(std::string_view text) {
  // Reuse the element machinery; a and b are rejected, and a trailing
  // /(...) denominator (as Scalar::str emits for tau fractions) is
  // handled by splitting at the top-level slash.
  std::vector<Token> toks = tokenize(text);
  int depth = 0;
  std::size_t split = toks.size();
  for (std::size_t j = 0; j < toks.size(); ++j) {
    if (toks[j].kind == Tok::lparen) ++depth;
    if (toks[j].kind == Tok::rparen) --depth;
    if (depth == 0 && toks[j].kind == Tok::slash &&
        !(j > 0 && toks[j - 1].kind == Tok::number && j + 1 < toks.size() &&
          toks[j + 1].kind == Tok::number)) {
      split = j;
      break;
    }
  }
  auto eval = [](std::vector<Token> part) {
    part.push_back({Tok::end, "", 0});
    ElementParser p(std::move(part), 4, false, false);
    AbElement x = p.parse();
    for (const auto& [key, c] : x.terms())
      if (key.first > 0 || key.second > 0)
        fail(errc::syntax_error, "expected a scalar, found a or b");
    return x.coeff(0, 0);
  };
  if (split == toks.size()) {
    toks.pop_back();  // Tok::end, re-added by eval
    return eval(std::move(toks));
  }
  std::vector<Token> numt(toks.begin(), toks.begin() + split);
  std::vector<Token> dent(toks.begin() + split + 1, toks.end() - 1);
  Scalar num = eval(std::move(numt));
  Scalar den = eval(std::move(dent));
  if (den.is_zero()) fail(errc::syntax_error, "zero denominator in scalar");
  return num / den;
}

std::optional<std::vector<ParsedFactor>> parse_factors(std::string_view text,
                                                       int prec) {
  ElementParser p(tokenize(text), prec, true, false);
  return p.top_factors();
}

}  // namespace abm
