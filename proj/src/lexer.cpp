#include "lexer.hpp"

#include <cctype>
#include <limits>

namespace decat::exprlang::detail {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Number: return "number";
    case Tok::Ident: return "name";
    case Tok::EPlus: return "'E+'";
    case Tok::AStar: return "'A*'";
    case Tok::Plus: return "'+'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view src, Mode mode) {
  std::vector<Token> out;
  std::vector<std::size_t> open_parens;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t start, std::size_t end) {
    out.push_back(Token{kind, src.substr(start, end - start), {start, end}});
  };
  while (i < src.size()) {
    const char c = src[i];
    if (is_blank(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c)) {
      while (i < src.size() && is_digit(src[i])) ++i;
      std::uint64_t value = 0;
      for (std::size_t k = start; k < i; ++k) {
        const auto digit = static_cast<std::uint64_t>(src[k] - '0');
        if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
          throw ParseError(ParseErrorKind::BadNumber, {start, i}, "number is too large");
        value = value * 10 + digit;
      }
      push(Tok::Number, start, i);
      out.back().number = value;
      continue;
    }
    if (is_name_start(c)) {
      while (i < src.size() && is_name_char(src[i])) ++i;
      const std::string_view name = src.substr(start, i - start);
      if (mode == Mode::Operator && name == "A" && i < src.size() && src[i] == '*') {
        ++i;
        push(Tok::AStar, start, i);
        continue;
      }
      if (mode == Mode::Species && name == "E" && i < src.size() && src[i] == '+') {
        std::size_t k = i + 1;
        while (k < src.size() && is_blank(src[k])) ++k;
        if (k == src.size() || !is_name_char(src[k])) {
          ++i;
          push(Tok::EPlus, start, i);
          continue;
        }
      }
      push(Tok::Ident, start, i);
      continue;
    }
    ++i;
    switch (c) {
      case '+': push(Tok::Plus, start, i); break;
      case '*': push(Tok::Star, start, i); break;
      case '^': push(Tok::Caret, start, i); break;
      case '.': push(Tok::Dot, start, i); break;
      case ':': push(Tok::Colon, start, i); break;
      case '(':
        open_parens.push_back(start);
        push(Tok::LParen, start, i);
        break;
      case ')':
        if (open_parens.empty())
          throw ParseError(ParseErrorKind::UnbalancedParen, {start, i}, "unmatched ')'");
        open_parens.pop_back();
        push(Tok::RParen, start, i);
        break;
      default: {
        // Consume a whole UTF-8 sequence so the span stays on a boundary.
        while (i < src.size() && (static_cast<unsigned char>(src[i]) & 0xC0) == 0x80) ++i;
        throw ParseError(ParseErrorKind::UnexpectedToken, {start, i},
                         "unexpected character '" + std::string(src.substr(start, i - start)) + "'");
      }
    }
  }
  if (!open_parens.empty())
    throw ParseError(ParseErrorKind::UnbalancedParen, {open_parens.back(), open_parens.back() + 1},
                     "unclosed '('");
  if (out.empty()) throw ParseError(ParseErrorKind::EmptyInput, {0, src.size()}, "empty expression");
  out.push_back(Token{Tok::End, src.substr(src.size()), {src.size(), src.size()}});
  return out;
}

const Token& Cursor::expect(Tok kind, const char* what) {
  if (peek().kind != kind) unexpected(what);
  return next();
}

void Cursor::unexpected(const char* what) const {
  const Token& t = peek();
  const std::string found = t.kind == Tok::End ? "end of input" : "'" + std::string(t.text) + "'";
  throw ParseError(ParseErrorKind::UnexpectedToken, t.span,
                   std::string("expected ") + what + ", found " + found);
}

}  // namespace decat::exprlang::detail
