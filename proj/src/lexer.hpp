#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "decat/exprlang.hpp"

namespace decat::exprlang::detail {

enum class Tok { Number, Ident, EPlus, AStar, Plus, Star, Caret, LParen, RParen, Dot, Colon, End };

struct Token {
  Tok kind;
  std::string_view text;
  SourceSpan span;
  std::uint64_t number = 0;
};

enum class Mode { Species, Operator };

/// Splits `src` into tokens, always ending with Tok::End. Parentheses are
/// balance-checked here so that every UnbalancedParen error points at the
/// bracket itself.
std::vector<Token> tokenize(std::string_view src, Mode mode);

const char* describe(Tok kind);

/// Single-token-lookahead cursor over a token vector.
class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    next();
    return true;
  }
  const Token& expect(Tok kind, const char* what);
  [[noreturn]] void unexpected(const char* what) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline constexpr std::size_t kMaxNesting = 200;

/// Bounds recursion depth of the descent parsers.
class DepthGuard {
 public:
  DepthGuard(std::size_t& depth, SourceSpan where) : depth_(depth) {
    if (++depth_ > kMaxNesting)
      throw ParseError(ParseErrorKind::UnexpectedToken, where, "expression is nested too deeply");
  }
  ~DepthGuard() { --depth_; }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;

 private:
  std::size_t& depth_;
};

}  // namespace decat::exprlang::detail
