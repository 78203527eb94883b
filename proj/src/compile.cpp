#include "decat/species.hpp"

namespace decat::species {

namespace {

series::CountSeq power(const series::CountSeq& base, std::uint32_t k) {
  series::CountSeq result = series::one();
  series::CountSeq square = base;
  while (k > 0) {
    if (k & 1u) result = result * square;
    k >>= 1;
    if (k > 0) square = square * square;
  }
  return result;
}

}  // namespace

series::CountSeq compile(const SpeciesExpr& expr, const Environment& env,
                         const CompileOptions& options) {
  switch (expr.kind()) {
    case Kind::Zero: return series::zero();
    case Kind::One: return series::one();
    case Kind::Singleton: return series::singleton();
    case Kind::Sets: return series::sets();
    case Kind::NonemptySets: return series::nonempty_sets();
    case Kind::LinearOrders: return series::linear_orders();
    case Kind::Partitions:
      return compile(SpeciesExpr::compose(SpeciesExpr::sets(), SpeciesExpr::nonempty_sets()), env,
                     options);
    case Kind::BinaryTrees:
      // B = 1 + X·B²
      return series::fixpoint(
          [](const series::CountSeq& b) { return series::one() + series::singleton() * (b * b); },
          options.max_order);
    case Kind::Var: {
      auto it = env.find(expr.name());
      if (it == env.end()) throw UnboundVariable(expr.name());
      return it->second;
    }
    case Kind::Sum:
      return compile(expr.lhs(), env, options) + compile(expr.rhs(), env, options);
    case Kind::Product:
      return compile(expr.lhs(), env, options) * compile(expr.rhs(), env, options);
    case Kind::Compose:
      return series::compose(compile(expr.lhs(), env, options), compile(expr.rhs(), env, options));
    case Kind::Derivative:
      return series::derive(compile(expr.lhs(), env, options));
    case Kind::Power:
      return power(compile(expr.lhs(), env, options), expr.exponent());
    case Kind::Fix: {
      SpeciesExpr body = expr.lhs();
      std::string var = expr.name();
      return series::fixpoint(
          [body, var, env, options](const series::CountSeq& f) {
            Environment inner = env;
            inner.insert_or_assign(var, f);
            return compile(body, inner, options);
          },
          options.max_order);
    }
  }
  throw std::logic_error("unhandled species kind");
}

}  // namespace decat::species
