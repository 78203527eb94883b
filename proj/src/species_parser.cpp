#include <algorithm>

#include "decat/exprlang.hpp"
#include "lexer.hpp"

namespace decat::exprlang {

using detail::Cursor;
using detail::Tok;
using detail::Token;
using species::SpeciesExpr;

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnexpectedToken: return "UnexpectedToken";
    case ParseErrorKind::UnbalancedParen: return "UnbalancedParen";
    case ParseErrorKind::UnknownName: return "UnknownName";
    case ParseErrorKind::BadNumber: return "BadNumber";
    case ParseErrorKind::EmptyInput: return "EmptyInput";
  }
  return "ParseError";
}

std::string format_error(const ParseError& error, std::string_view source) {
  std::string out = std::string(to_string(error.kind)) + " at " + std::to_string(error.span.start) +
                    ".." + std::to_string(error.span.end) + ": " + error.what() + "\n";
  // Only echo single-line printable sources; the span is exact either way.
  const bool printable = std::all_of(source.begin(), source.end(), [](char c) {
    return c >= 0x20 && c < 0x7f;
  });
  if (printable && error.span.end <= source.size()) {
    out += "  " + std::string(source) + "\n  ";
    out += std::string(error.span.start, ' ');
    out += std::string(std::max<std::size_t>(1, error.span.end - error.span.start), '^');
    out += '\n';
  }
  return out;
}

namespace {

bool reserved(std::string_view name) {
  return name == "X" || name == "E" || name == "L" || name == "Par" || name == "B" || name == "D" ||
         name == "fix";
}

class SpeciesParser {
 public:
  SpeciesParser(std::string_view src, const std::vector<std::string>& free_names)
      : cursor_(detail::tokenize(src, detail::Mode::Species)),
        scope_(free_names.begin(), free_names.end()) {}

  SpeciesExpr parse() {
    SpeciesExpr e = sum();
    if (cursor_.peek().kind != Tok::End) cursor_.unexpected("'+', '*' or end of input");
    return e;
  }

 private:
  bool starts_atom() const {
    switch (cursor_.peek().kind) {
      case Tok::Number:
      case Tok::Ident:
      case Tok::EPlus:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  SpeciesExpr sum() {
    detail::DepthGuard guard(depth_, cursor_.peek().span);
    SpeciesExpr e = prod();
    while (cursor_.accept(Tok::Plus)) e = SpeciesExpr::sum(e, prod());
    return e;
  }

  SpeciesExpr prod() {
    SpeciesExpr e = pow();
    for (;;) {
      if (cursor_.accept(Tok::Star))
        e = SpeciesExpr::product(e, pow());
      else if (starts_atom())
        e = SpeciesExpr::product(e, pow());
      else
        return e;
    }
  }

  SpeciesExpr pow() {
    SpeciesExpr base = atom();
    if (!cursor_.accept(Tok::Caret)) return base;
    const Token& n = cursor_.expect(Tok::Number, "an exponent");
    if (n.number > kMaxSpeciesExponent)
      throw ParseError(ParseErrorKind::BadNumber, n.span,
                       "exponent exceeds " + std::to_string(kMaxSpeciesExponent));
    return SpeciesExpr::power(base, static_cast<std::uint32_t>(n.number));
  }

  SpeciesExpr bracketed() {
    cursor_.expect(Tok::LParen, "'('");
    SpeciesExpr e = sum();
    cursor_.expect(Tok::RParen, "')'");
    return e;
  }

  SpeciesExpr maybe_applied(SpeciesExpr outer) {
    if (cursor_.peek().kind != Tok::LParen) return outer;
    return SpeciesExpr::compose(std::move(outer), bracketed());
  }

  SpeciesExpr atom() {
    const Token& t = cursor_.peek();
    switch (t.kind) {
      case Tok::Number: {
        cursor_.next();
        if (t.text == "0") return SpeciesExpr::zero();
        if (t.text == "1") return SpeciesExpr::one();
        throw ParseError(ParseErrorKind::BadNumber, t.span,
                         "only 0 and 1 are species constants, found '" + std::string(t.text) + "'");
      }
      case Tok::EPlus:
        cursor_.next();
        return maybe_applied(SpeciesExpr::nonempty_sets());
      case Tok::LParen:
        return bracketed();
      case Tok::Ident:
        break;
      default:
        cursor_.unexpected("a species");
    }
    const Token name = cursor_.next();
    if (name.text == "X") return maybe_applied(SpeciesExpr::singleton());
    if (name.text == "E") return maybe_applied(SpeciesExpr::sets());
    if (name.text == "L") return maybe_applied(SpeciesExpr::linear_orders());
    if (name.text == "Par") return maybe_applied(SpeciesExpr::partitions());
    if (name.text == "B") return maybe_applied(SpeciesExpr::binary_trees());
    if (name.text == "D") return SpeciesExpr::derivative(bracketed());
    if (name.text == "fix") {
      const Token& var = cursor_.expect(Tok::Ident, "a variable name after 'fix'");
      if (reserved(var.text))
        throw ParseError(ParseErrorKind::UnexpectedToken, var.span,
                         "'" + std::string(var.text) + "' is reserved and cannot be bound");
      cursor_.expect(Tok::Dot, "'.' after the fix variable");
      scope_.emplace_back(var.text);
      SpeciesExpr body = sum();
      scope_.pop_back();
      return SpeciesExpr::fix(std::string(var.text), std::move(body));
    }
    if (std::find(scope_.begin(), scope_.end(), name.text) == scope_.end())
      throw ParseError(ParseErrorKind::UnknownName, name.span,
                       "unknown species '" + std::string(name.text) + "'");
    return maybe_applied(SpeciesExpr::var(std::string(name.text)));
  }

  Cursor cursor_;
  std::vector<std::string> scope_;
  std::size_t depth_ = 0;
};

}  // namespace

SpeciesExpr parse_species(std::string_view src, const std::vector<std::string>& free_names) {
  return SpeciesParser(src, free_names).parse();
}

}  // namespace decat::exprlang
