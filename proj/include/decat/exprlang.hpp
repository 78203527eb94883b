#pragma once

// Concrete syntax for species and operator expressions.
//
//   species := sum
//   sum     := prod { "+" prod }
//   prod    := pow { "*" pow | pow }
//   pow     := atom [ "^" nat ]
//   atom    := "0" | "1" | "X" | "E" | "E+" | "L" | "Par" | "B"
//            | "D" "(" species ")" | ident [ "(" species ")" ]
//            | "fix" ident "." species | "(" species ")"
//
//   operator := osum
//   osum     := oprod { "+" oprod }
//   oprod    := oatom { oatom | "*" oatom }
//   oatom    := "A*" | "A" | "Phi" | ":Phi^" nat ":" | "adj" "(" operator ")"
//             | nat | "(" operator ")"
//
// Lexical rules: "A*" is one token whenever '*' directly follows 'A'.
// "E+" is one token when '+' directly follows 'E' and the next non-blank
// character cannot begin a name or number; so "E+X" is E plus X while
// "E+*X", "E+^2" and "E+(X)" use the nonempty-set species.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "decat/species.hpp"

namespace decat::exprlang {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

enum class ParseErrorKind { UnexpectedToken, UnbalancedParen, UnknownName, BadNumber, EmptyInput };

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, const std::string& message)
      : std::runtime_error(message), kind(kind), span(span) {}
  ParseErrorKind kind;
  SourceSpan span;
};

/// Renders the message with a caret line under the offending span.
std::string format_error(const ParseError& error, std::string_view source);

inline constexpr std::uint32_t kMaxSpeciesExponent = 1024;

/// Parses a species expression. Names in `free_names` may appear unbound
/// (as Var nodes); any other unknown identifier is an UnknownName error.
species::SpeciesExpr parse_species(std::string_view src,
                                   const std::vector<std::string>& free_names = {});

/// Operator expression tree; evaluated to a WeylOp by fock::evaluate.
class OperatorExpr {
 public:
  enum class Kind { Annihilate, Create, Phi, WickPower, Adjoint, Scalar, Sum, Product };

  static OperatorExpr annihilate();
  static OperatorExpr create();
  static OperatorExpr phi();
  static OperatorExpr wick_power(std::uint64_t p);
  static OperatorExpr adjoint(OperatorExpr inner);
  static OperatorExpr scalar(std::uint64_t value);
  static OperatorExpr sum(OperatorExpr l, OperatorExpr r);
  static OperatorExpr product(OperatorExpr l, OperatorExpr r);

  Kind kind() const { return node_->kind; }
  /// Exponent for WickPower, value for Scalar.
  std::uint64_t value() const { return node_->value; }
  const OperatorExpr& lhs() const;
  const OperatorExpr& rhs() const;

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b);

 private:
  struct Node {
    Kind kind;
    std::uint64_t value = 0;
    std::vector<OperatorExpr> children;
  };
  explicit OperatorExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static OperatorExpr make(Kind kind, std::uint64_t value, std::vector<OperatorExpr> children);
  std::shared_ptr<const Node> node_;
};

OperatorExpr parse_operator(std::string_view src);

/// Concrete syntax accepted by parse_operator.
std::string to_string(const OperatorExpr& expr);

}  // namespace decat::exprlang
