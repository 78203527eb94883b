#pragma once

// Decategorified Fock space. Operators are kept in normal-ordered Weyl form
// Σ c[j,l] a*^j a^l; a acts on counting sequences as F ↦ (F_{n+1}) and a* as
// F ↦ (n·F_{n-1}).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decat/errors.hpp"
#include "decat/exprlang.hpp"
#include "decat/rational.hpp"
#include "decat/series.hpp"

namespace decat::fock {

/// (creation power j, annihilation power l).
struct Monomial {
  std::uint32_t creators;
  std::uint32_t annihilators;
  auto operator<=>(const Monomial&) const = default;
};

class WeylOp {
 public:
  using Terms = std::map<Monomial, Rational>;

  WeylOp() = default;
  /// Zero coefficients are dropped.
  explicit WeylOp(Terms terms);

  static WeylOp monomial(std::uint32_t creators, std::uint32_t annihilators, Rational c = 1);

  const Terms& terms() const { return terms_; }
  Rational coefficient(std::uint32_t creators, std::uint32_t annihilators) const;
  bool is_zero() const { return terms_.empty(); }

  /// Largest annihilation power, i.e. how far the operator reads ahead.
  std::uint32_t max_annihilators() const;
  std::uint32_t max_creators() const;

  friend bool operator==(const WeylOp&, const WeylOp&) = default;

 private:
  Terms terms_;
};

enum class Basic { A, Astar, Phi, Identity };

WeylOp weyl_basic(Basic which);

WeylOp add(const WeylOp& a, const WeylOp& b);
WeylOp scale(const WeylOp& a, const Rational& c);

/// Product with normal ordering by the Wick contraction rule
/// (a*^j1 a^l1)(a*^j2 a^l2) = Σ_i C(l1,i) C(j2,i) i! a*^(j1+j2-i) a^(l1+l2-i).
WeylOp multiply(const WeylOp& a, const WeylOp& b);

/// (j,l):c ↦ (l,j):c.
WeylOp adjoint(const WeylOp& a);

inline constexpr std::uint32_t kMaxWickPower = 12;

/// :Φ^p: = Σ_j C(p,j) a*^j a^(p-j). Throws std::invalid_argument for p > 12.
WeylOp wick_power(std::uint32_t p);

inline WeylOp operator+(const WeylOp& a, const WeylOp& b) { return add(a, b); }
inline WeylOp operator*(const WeylOp& a, const WeylOp& b) { return multiply(a, b); }

/// Display form, e.g. "A^3 + 3 A* A^2 + 3 A*^2 A + A*^3"; "0" when empty.
std::string to_string(const WeylOp& op);

/// Evaluates a parsed operator expression.
WeylOp evaluate(const exprlang::OperatorExpr& expr);

/// Action on a counting sequence: a*^j a^l sends f to g_m = m!/(m-j)! f_{m-j+l}.
/// A negative result term surfaces as NegativeCoefficient from term().
series::CountSeq apply(const WeylOp& op, const series::CountSeq& f);

/// Signed escape hatch: the first `count` terms of the action, with no
/// nonnegativity requirement.
std::vector<Rational> apply_signed(const WeylOp& op, const series::CountSeq& f, std::size_t count);

inline constexpr std::size_t kMaxKernelSize = 256;

/// Square truncation K(m,n), 0 <= m,n < N, with (apply(o,f))_m = Σ_n K(m,n) f_n.
class KernelMatrix {
 public:
  explicit KernelMatrix(std::size_t size);
  static KernelMatrix identity(std::size_t size);

  std::size_t size() const { return size_; }
  const Rational& operator()(std::size_t m, std::size_t n) const { return entries_[m * size_ + n]; }
  Rational& operator()(std::size_t m, std::size_t n) { return entries_[m * size_ + n]; }

  friend KernelMatrix operator*(const KernelMatrix& a, const KernelMatrix& b);
  friend KernelMatrix operator-(const KernelMatrix& a, const KernelMatrix& b);
  friend bool operator==(const KernelMatrix&, const KernelMatrix&) = default;

 private:
  std::size_t size_;
  std::vector<Rational> entries_;
};

/// Throws std::invalid_argument for size > 256.
KernelMatrix kernel_matrix(const WeylOp& op, std::size_t size);

/// ⟨x^m, O x^n⟩ under the Fock inner product.
Rational matrix_element(const WeylOp& op, std::size_t m, std::size_t n);

/// Partial sums of ⟨f, g⟩ = Σ f_n g_n / n! under the series::accumulate protocol.
series::EvalResult inner_product(const series::CountSeq& f, const series::CountSeq& g,
                                 std::size_t max_terms, const Rational& tol);

// ---------------------------------------------------------------------------
// Feynman diagrams.

inline constexpr std::size_t kMaxLegs = 16;

struct MatchingProblem {
  std::vector<std::uint32_t> valences;  // internal vertices
  std::uint32_t out_legs = 0;           // labeled set S
  std::uint32_t in_legs = 0;            // labeled set T

  std::size_t total_legs() const;
};

/// Product :Φ^p1: ... :Φ^pk: over the valences.
WeylOp wick_product(const std::vector<std::uint32_t>& valences);

/// matrix_element(wick_product(valences), m, n). Throws TooLarge past 16 legs.
Rational feynman_algebraic(const MatchingProblem& problem);

struct HalfEdge {
  enum class Side { Vertex, Out, In };
  Side side;
  std::uint32_t index;  // vertex number, or leg label, 1-based
  std::uint32_t leg;    // leg of the vertex, 1-based; 0 for external legs
  auto operator<=>(const HalfEdge&) const = default;
};

std::string to_string(const HalfEdge& h);

using Diagram = std::vector<std::pair<HalfEdge, HalfEdge>>;

struct DiagramCount {
  std::uint64_t count = 0;
  std::vector<Diagram> diagrams;  // empty unless requested
};

/// Exhaustive enumeration of admissible perfect matchings: no pair inside a
/// single vertex, no S–S pair, no T–T pair. Throws TooLarge past 16 legs.
DiagramCount feynman_oracle(const MatchingProblem& problem, bool collect_diagrams = true);

}  // namespace decat::fock
