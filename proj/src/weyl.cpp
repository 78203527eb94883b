#include <algorithm>
#include <stdexcept>

#include "decat/fock.hpp"

namespace decat::fock {

WeylOp::WeylOp(Terms terms) : terms_(std::move(terms)) {
  for (auto& [m, c] : terms_) c.canonicalize();
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

WeylOp WeylOp::monomial(std::uint32_t creators, std::uint32_t annihilators, Rational c) {
  return WeylOp(Terms{{Monomial{creators, annihilators}, std::move(c)}});
}

Rational WeylOp::coefficient(std::uint32_t creators, std::uint32_t annihilators) const {
  auto it = terms_.find(Monomial{creators, annihilators});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t WeylOp::max_annihilators() const {
  std::uint32_t best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.annihilators);
  return best;
}

std::uint32_t WeylOp::max_creators() const {
  std::uint32_t best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.creators);
  return best;
}

WeylOp weyl_basic(Basic which) {
  switch (which) {
    case Basic::A: return WeylOp::monomial(0, 1);
    case Basic::Astar: return WeylOp::monomial(1, 0);
    case Basic::Phi: return WeylOp::monomial(0, 1) + WeylOp::monomial(1, 0);
    case Basic::Identity: return WeylOp::monomial(0, 0);
  }
  throw std::logic_error("unhandled basic operator");
}

WeylOp add(const WeylOp& a, const WeylOp& b) {
  WeylOp::Terms terms = a.terms();
  for (const auto& [m, c] : b.terms()) terms[m] += c;
  return WeylOp(std::move(terms));
}

WeylOp scale(const WeylOp& a, const Rational& c) {
  WeylOp::Terms terms;
  for (const auto& [m, coeff] : a.terms()) terms[m] = coeff * c;
  return WeylOp(std::move(terms));
}

WeylOp multiply(const WeylOp& a, const WeylOp& b) {
  WeylOp::Terms terms;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      // Contract i annihilators of the left factor with i creators of the right.
      const std::uint32_t top = std::min(ma.annihilators, mb.creators);
      for (std::uint32_t i = 0; i <= top; ++i) {
        const Integer ways = binomial(ma.annihilators, i) * binomial(mb.creators, i) * factorial(i);
        terms[Monomial{ma.creators + mb.creators - i, ma.annihilators + mb.annihilators - i}] +=
            ca * cb * ways;
      }
    }
  }
  return WeylOp(std::move(terms));
}

WeylOp adjoint(const WeylOp& a) {
  WeylOp::Terms terms;
  for (const auto& [m, c] : a.terms()) terms[Monomial{m.annihilators, m.creators}] = c;
  return WeylOp(std::move(terms));
}

WeylOp wick_power(std::uint32_t p) {
  if (p > kMaxWickPower)
    throw std::invalid_argument("Wick powers are supported up to " + std::to_string(kMaxWickPower));
  WeylOp::Terms terms;
  for (std::uint32_t j = 0; j <= p; ++j) terms[Monomial{j, p - j}] = binomial(p, j);
  return WeylOp(std::move(terms));
}

namespace {

std::string factor(const char* symbol, std::uint32_t power) {
  std::string out = symbol;
  if (power > 1) out += "^" + std::to_string(power);
  return out;
}

}  // namespace

std::string to_string(const WeylOp& op) {
  if (op.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : op.terms()) {
    std::string word;
    if (m.creators > 0) word += factor("A*", m.creators);
    if (m.annihilators > 0) {
      if (!word.empty()) word += ' ';
      word += factor("A", m.annihilators);
    }
    const Rational magnitude = abs(c);
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    if (word.empty())
      out += decat::to_string(magnitude);
    else if (magnitude == 1)
      out += word;
    else
      out += decat::to_string(magnitude) + " " + word;
    first = false;
  }
  return out;
}

WeylOp evaluate(const exprlang::OperatorExpr& expr) {
  using K = exprlang::OperatorExpr::Kind;
  switch (expr.kind()) {
    case K::Annihilate: return weyl_basic(Basic::A);
    case K::Create: return weyl_basic(Basic::Astar);
    case K::Phi: return weyl_basic(Basic::Phi);
    case K::WickPower:
      if (expr.value() > kMaxWickPower)
        throw std::invalid_argument("Wick powers are supported up to " +
                                    std::to_string(kMaxWickPower));
      return wick_power(static_cast<std::uint32_t>(expr.value()));
    case K::Adjoint: return adjoint(evaluate(expr.lhs()));
    case K::Scalar:
      return WeylOp::monomial(0, 0, Rational(Integer(std::to_string(expr.value()))));
    case K::Sum: return evaluate(expr.lhs()) + evaluate(expr.rhs());
    case K::Product: return evaluate(expr.lhs()) * evaluate(expr.rhs());
  }
  throw std::logic_error("unhandled operator kind");
}

namespace {

Rational apply_term(const WeylOp& op, const series::CountSeq& f, std::size_t m) {
  Rational g = 0;
  for (const auto& [mono, c] : op.terms()) {
    if (m < mono.creators) continue;
    const std::size_t source = m - mono.creators + mono.annihilators;
    const Rational fs = f.term(source);
    if (fs == 0) continue;
    g += c * falling_factorial(m, mono.creators) * fs;
  }
  return g;
}

}  // namespace

series::CountSeq apply(const WeylOp& op, const series::CountSeq& f) {
  bool integral = f.integral();
  for (const auto& [m, c] : op.terms()) integral = integral && is_integral(c);

  std::optional<std::size_t> support;
  if (auto s = f.support_bound()) {
    std::size_t bound = 0;
    for (const auto& [m, c] : op.terms())
      if (*s > m.annihilators) bound = std::max<std::size_t>(bound, *s + m.creators - m.annihilators);
    support = bound;
  }
  return series::CountSeq([op, f](std::size_t m, auto) { return apply_term(op, f, m); }, integral,
                          support);
}

std::vector<Rational> apply_signed(const WeylOp& op, const series::CountSeq& f, std::size_t count) {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) out.push_back(apply_term(op, f, m));
  return out;
}

KernelMatrix::KernelMatrix(std::size_t size) : size_(size), entries_(size * size) {}

KernelMatrix KernelMatrix::identity(std::size_t size) {
  KernelMatrix k(size);
  for (std::size_t i = 0; i < size; ++i) k(i, i) = 1;
  return k;
}

KernelMatrix operator*(const KernelMatrix& a, const KernelMatrix& b) {
  if (a.size_ != b.size_) throw std::invalid_argument("kernel sizes differ");
  KernelMatrix out(a.size_);
  for (std::size_t i = 0; i < a.size_; ++i)
    for (std::size_t k = 0; k < a.size_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < a.size_; ++j)
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

KernelMatrix operator-(const KernelMatrix& a, const KernelMatrix& b) {
  if (a.size_ != b.size_) throw std::invalid_argument("kernel sizes differ");
  KernelMatrix out(a.size_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i) out.entries_[i] = a.entries_[i] - b.entries_[i];
  return out;
}

KernelMatrix kernel_matrix(const WeylOp& op, std::size_t size) {
  if (size > kMaxKernelSize)
    throw std::invalid_argument("kernel truncation is capped at " + std::to_string(kMaxKernelSize));
  KernelMatrix k(size);
  for (std::size_t m = 0; m < size; ++m)
    for (const auto& [mono, c] : op.terms()) {
      if (m < mono.creators) continue;
      const std::size_t n = m - mono.creators + mono.annihilators;
      if (n < size) k(m, n) += c * falling_factorial(m, mono.creators);
    }
  return k;
}

Rational matrix_element(const WeylOp& op, std::size_t m, std::size_t n) {
  // apply(op, x^n).term(m) where x^n has counting sequence n!·δ.
  Rational total = 0;
  for (const auto& [mono, c] : op.terms()) {
    if (m < mono.creators || n < mono.annihilators) continue;
    if (m - mono.creators != n - mono.annihilators) continue;
    total += c * falling_factorial(m, mono.creators) * factorial(n);
  }
  return total;
}

series::EvalResult inner_product(const series::CountSeq& f, const series::CountSeq& g,
                                 std::size_t max_terms, const Rational& tol) {
  std::optional<std::size_t> support;
  if (f.support_bound() && g.support_bound())
    support = std::min(*f.support_bound(), *g.support_bound());
  else if (f.support_bound())
    support = f.support_bound();
  else
    support = g.support_bound();

  Integer n_factorial = 1;
  auto summand = [&](std::size_t n) {
    if (n > 0) n_factorial *= static_cast<unsigned long>(n);
    return Rational(f.term(n) * g.term(n) / n_factorial);
  };
  return series::accumulate(summand, support, max_terms, tol);
}

}  // namespace decat::fock
