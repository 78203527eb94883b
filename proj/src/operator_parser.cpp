#include "decat/exprlang.hpp"
#include "lexer.hpp"

namespace decat::exprlang {

using detail::Cursor;
using detail::Tok;
using detail::Token;

OperatorExpr OperatorExpr::make(Kind kind, std::uint64_t value, std::vector<OperatorExpr> children) {
  return OperatorExpr(std::make_shared<const Node>(Node{kind, value, std::move(children)}));
}

OperatorExpr OperatorExpr::annihilate() { return make(Kind::Annihilate, 0, {}); }
OperatorExpr OperatorExpr::create() { return make(Kind::Create, 0, {}); }
OperatorExpr OperatorExpr::phi() { return make(Kind::Phi, 0, {}); }
OperatorExpr OperatorExpr::wick_power(std::uint64_t p) { return make(Kind::WickPower, p, {}); }
OperatorExpr OperatorExpr::adjoint(OperatorExpr inner) {
  return make(Kind::Adjoint, 0, {std::move(inner)});
}
OperatorExpr OperatorExpr::scalar(std::uint64_t value) { return make(Kind::Scalar, value, {}); }
OperatorExpr OperatorExpr::sum(OperatorExpr l, OperatorExpr r) {
  return make(Kind::Sum, 0, {std::move(l), std::move(r)});
}
OperatorExpr OperatorExpr::product(OperatorExpr l, OperatorExpr r) {
  return make(Kind::Product, 0, {std::move(l), std::move(r)});
}

const OperatorExpr& OperatorExpr::lhs() const {
  if (node_->children.empty()) throw std::logic_error("operator node has no children");
  return node_->children[0];
}

const OperatorExpr& OperatorExpr::rhs() const {
  if (node_->children.size() < 2) throw std::logic_error("operator node has no second child");
  return node_->children[1];
}

bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->value == b.node_->value &&
         a.node_->children == b.node_->children;
}

namespace {

class OperatorParser {
 public:
  explicit OperatorParser(std::string_view src)
      : cursor_(detail::tokenize(src, detail::Mode::Operator)) {}

  OperatorExpr parse() {
    OperatorExpr e = osum();
    if (cursor_.peek().kind != Tok::End) cursor_.unexpected("an operator or end of input");
    return e;
  }

 private:
  bool starts_atom() const {
    switch (cursor_.peek().kind) {
      case Tok::AStar:
      case Tok::Ident:
      case Tok::Colon:
      case Tok::Number:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  OperatorExpr osum() {
    detail::DepthGuard guard(depth_, cursor_.peek().span);
    OperatorExpr e = oprod();
    while (cursor_.accept(Tok::Plus)) e = OperatorExpr::sum(e, oprod());
    return e;
  }

  OperatorExpr oprod() {
    OperatorExpr e = oatom();
    for (;;) {
      if (cursor_.accept(Tok::Star) || starts_atom())
        e = OperatorExpr::product(e, oatom());
      else
        return e;
    }
  }

  OperatorExpr bracketed() {
    cursor_.expect(Tok::LParen, "'('");
    OperatorExpr e = osum();
    cursor_.expect(Tok::RParen, "')'");
    return e;
  }

  OperatorExpr oatom() {
    const Token& t = cursor_.peek();
    switch (t.kind) {
      case Tok::AStar:
        cursor_.next();
        return OperatorExpr::create();
      case Tok::Number:
        cursor_.next();
        return OperatorExpr::scalar(t.number);
      case Tok::LParen:
        return bracketed();
      case Tok::Colon: {
        cursor_.next();
        if (cursor_.peek().kind != Tok::Ident || cursor_.peek().text != "Phi")
          cursor_.unexpected("'Phi' in a Wick power");
        cursor_.next();
        cursor_.expect(Tok::Caret, "'^' in a Wick power");
        const Token& p = cursor_.expect(Tok::Number, "the Wick power exponent");
        cursor_.expect(Tok::Colon, "closing ':' of the Wick power");
        return OperatorExpr::wick_power(p.number);
      }
      case Tok::Ident:
        break;
      default:
        cursor_.unexpected("an operator");
    }
    const Token name = cursor_.next();
    if (name.text == "A") return OperatorExpr::annihilate();
    if (name.text == "Phi") return OperatorExpr::phi();
    if (name.text == "adj") return OperatorExpr::adjoint(bracketed());
    throw ParseError(ParseErrorKind::UnknownName, name.span,
                     "unknown operator '" + std::string(name.text) + "'");
  }

  Cursor cursor_;
  std::size_t depth_ = 0;
};

// Levels: 0 sum operand (right side), 1 product operand (right side).
void print(const OperatorExpr& e, int level, std::string& out) {
  using K = OperatorExpr::Kind;
  switch (e.kind()) {
    case K::Annihilate: out += "A"; return;
    case K::Create: out += "A*"; return;
    case K::Phi: out += "Phi"; return;
    case K::WickPower: out += ":Phi^" + std::to_string(e.value()) + ":"; return;
    case K::Scalar: out += std::to_string(e.value()); return;
    case K::Adjoint:
      out += "adj(";
      print(e.lhs(), -1, out);
      out += ")";
      return;
    case K::Sum:
      if (level >= 0) out += '(';
      print(e.lhs(), -1, out);
      out += " + ";
      print(e.rhs(), 0, out);
      if (level >= 0) out += ')';
      return;
    case K::Product:
      if (level >= 1) out += '(';
      print(e.lhs(), 0, out);
      out += ' ';
      print(e.rhs(), 1, out);
      if (level >= 1) out += ')';
      return;
  }
}

}  // namespace

OperatorExpr parse_operator(std::string_view src) { return OperatorParser(src).parse(); }

std::string to_string(const OperatorExpr& expr) {
  std::string out;
  print(expr, -1, out);
  return out;
}

}  // namespace decat::exprlang
