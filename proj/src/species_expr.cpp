#include <optional>
#include <stdexcept>
#include <utility>

#include "decat/species.hpp"

namespace decat::species {

struct SpeciesExpr::Node {
  Kind kind;
  std::string name;
  std::uint32_t exponent = 0;
  std::optional<SpeciesExpr> lhs, rhs;
};

SpeciesExpr::SpeciesExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

SpeciesExpr SpeciesExpr::make(Kind kind, std::string name, std::uint32_t exponent,
                              std::optional<SpeciesExpr> lhs, std::optional<SpeciesExpr> rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->name = std::move(name);
  n->exponent = exponent;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return SpeciesExpr(std::move(n));
}

SpeciesExpr SpeciesExpr::zero() { return make(Kind::Zero); }
SpeciesExpr SpeciesExpr::one() { return make(Kind::One); }
SpeciesExpr SpeciesExpr::singleton() { return make(Kind::Singleton); }
SpeciesExpr SpeciesExpr::sets() { return make(Kind::Sets); }
SpeciesExpr SpeciesExpr::nonempty_sets() { return make(Kind::NonemptySets); }
SpeciesExpr SpeciesExpr::linear_orders() { return make(Kind::LinearOrders); }
SpeciesExpr SpeciesExpr::partitions() { return make(Kind::Partitions); }
SpeciesExpr SpeciesExpr::binary_trees() { return make(Kind::BinaryTrees); }
SpeciesExpr SpeciesExpr::var(std::string name) { return make(Kind::Var, std::move(name)); }

SpeciesExpr SpeciesExpr::sum(SpeciesExpr l, SpeciesExpr r) {
  return make(Kind::Sum, {}, 0, std::move(l), std::move(r));
}

SpeciesExpr SpeciesExpr::product(SpeciesExpr l, SpeciesExpr r) {
  return make(Kind::Product, {}, 0, std::move(l), std::move(r));
}

SpeciesExpr SpeciesExpr::compose(SpeciesExpr outer, SpeciesExpr inner) {
  return make(Kind::Compose, {}, 0, std::move(outer), std::move(inner));
}

SpeciesExpr SpeciesExpr::derivative(SpeciesExpr inner) {
  return make(Kind::Derivative, {}, 0, std::move(inner));
}

SpeciesExpr SpeciesExpr::power(SpeciesExpr base, std::uint32_t exponent) {
  return make(Kind::Power, {}, exponent, std::move(base));
}

SpeciesExpr SpeciesExpr::fix(std::string var, SpeciesExpr body) {
  return make(Kind::Fix, std::move(var), 0, std::move(body));
}

Kind SpeciesExpr::kind() const { return node_->kind; }
const std::string& SpeciesExpr::name() const { return node_->name; }
std::uint32_t SpeciesExpr::exponent() const { return node_->exponent; }

const SpeciesExpr& SpeciesExpr::lhs() const {
  if (!node_->lhs) throw std::logic_error("species node has no first child");
  return *node_->lhs;
}

const SpeciesExpr& SpeciesExpr::rhs() const {
  if (!node_->rhs) throw std::logic_error("species node has no second child");
  return *node_->rhs;
}

bool operator==(const SpeciesExpr& a, const SpeciesExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.exponent == y.exponent && x.lhs == y.lhs &&
         x.rhs == y.rhs;
}

bool is_atom(Kind k) {
  switch (k) {
    case Kind::Zero:
    case Kind::One:
    case Kind::Singleton:
    case Kind::Sets:
    case Kind::NonemptySets:
    case Kind::LinearOrders:
    case Kind::Partitions:
    case Kind::BinaryTrees:
      return true;
    default:
      return false;
  }
}

const char* atom_name(Kind k) {
  switch (k) {
    case Kind::Zero: return "0";
    case Kind::One: return "1";
    case Kind::Singleton: return "X";
    case Kind::Sets: return "E";
    case Kind::NonemptySets: return "E+";
    case Kind::LinearOrders: return "L";
    case Kind::Partitions: return "Par";
    case Kind::BinaryTrees: return "B";
    default: throw std::invalid_argument("not an atom");
  }
}

namespace {

// Context levels: -1 open (top level or inside brackets), 0 sum operand,
// 1 product operand, 2 power base.
void print(const SpeciesExpr& e, int level, std::string& out) {
  auto wrapped = [&](bool parens, auto&& body) {
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  };
  switch (e.kind()) {
    case Kind::Var:
      out += e.name();
      return;
    case Kind::Sum:
      wrapped(level > 0, [&] {
        print(e.lhs(), 0, out);
        out += " + ";
        print(e.rhs(), 1, out);
      });
      return;
    case Kind::Product:
      wrapped(level > 1, [&] {
        print(e.lhs(), 1, out);
        out += '*';
        print(e.rhs(), 2, out);
      });
      return;
    case Kind::Power:
      wrapped(level > 2, [&] {
        print(e.lhs(), 3, out);
        out += '^';
        out += std::to_string(e.exponent());
      });
      return;
    case Kind::Compose: {
      const Kind outer = e.lhs().kind();
      if (outer == Kind::Zero || outer == Kind::One || (!is_atom(outer) && outer != Kind::Var))
        throw std::invalid_argument("composition with a non-name outer species has no concrete syntax");
      print(e.lhs(), 3, out);
      out += '(';
      print(e.rhs(), -1, out);
      out += ')';
      return;
    }
    case Kind::Derivative:
      out += "D(";
      print(e.lhs(), -1, out);
      out += ')';
      return;
    case Kind::Fix:
      wrapped(level >= 0, [&] {
        out += "fix " + e.name() + ". ";
        print(e.lhs(), -1, out);
      });
      return;
    default:
      out += atom_name(e.kind());
      return;
  }
}

}  // namespace

std::string to_string(const SpeciesExpr& expr) {
  std::string out;
  print(expr, -1, out);
  return out;
}

}  // namespace decat::species
