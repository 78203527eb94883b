#pragma once

// Lazy exponential generating functions over exact rationals.
//
// A CountSeq stores the counting sequence F_n (the number, or groupoid
// cardinality, of structures on an n-element set), not the EGF coefficient
// F_n/n!. Terms are produced on demand, in index order, and memoized.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "decat/errors.hpp"
#include "decat/rational.hpp"

namespace decat::series {

inline constexpr std::size_t kDefaultOrder = 64;

class CountSeq {
 public:
  /// Computes term(n). Called exactly once per index, in increasing order,
  /// with `previous` holding term(0..n-1). Must be deterministic.
  using Producer = std::function<Rational(std::size_t n, std::span<const Rational> previous)>;

  /// `support`, when given, promises term(n) = 0 for every n >= *support.
  CountSeq(Producer producer, bool integral, std::optional<std::size_t> support = std::nullopt);

  /// Throws NegativeCoefficient if the producer yields a negative value and
  /// std::logic_error if an integral sequence yields a fraction.
  Rational term(std::size_t n) const;

  /// EGF coefficient term(n)/n!.
  Rational egf(std::size_t n) const;

  std::vector<Rational> prefix(std::size_t count) const;

  bool integral() const;
  std::optional<std::size_t> support_bound() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

CountSeq zero();
CountSeq one();
CountSeq singleton();
CountSeq sets();
CountSeq nonempty_sets();
CountSeq linear_orders();

/// Finite-support sequence with the given leading terms.
CountSeq from_terms(std::vector<Rational> terms);

/// Keeps term(n) for n < count and zeroes the rest.
CountSeq truncate(const CountSeq& f, std::size_t count);

CountSeq add(const CountSeq& f, const CountSeq& g);
CountSeq multiply(const CountSeq& f, const CountSeq& g);

/// Counting sequence of F∘G. Throws NonzeroConstantTerm when g.term(0) != 0.
CountSeq compose(const CountSeq& f, const CountSeq& g);

/// term(n) = f.term(n+1): structures on S + 1.
CountSeq derive(const CountSeq& f);

/// term(n) = n·f.term(n-1): a marked element plus an F-structure on the rest.
CountSeq point(const CountSeq& f);

inline CountSeq operator+(const CountSeq& f, const CountSeq& g) { return add(f, g); }
inline CountSeq operator*(const CountSeq& f, const CountSeq& g) { return multiply(f, g); }

/// Least solution of F = body(F) by Kleene iteration from F = 0, one
/// coefficient at a time. Throws NotGuarded (lazily, from term()) when a
/// coefficient is not determined by the lower ones, and TruncationExceeded
/// for n >= max_order.
CountSeq fixpoint(std::function<CountSeq(const CountSeq&)> body,
                  std::size_t max_order = kDefaultOrder);

class EvalPoint {
 public:
  /// Throws std::invalid_argument for negative x.
  explicit EvalPoint(Rational x);
  const Rational& x() const { return x_; }

 private:
  Rational x_;
};

enum class EvalStatus { converged, diverged, undecided };

const char* to_string(EvalStatus status);

struct EvalResult {
  Rational value;
  std::size_t terms_used = 0;
  EvalStatus status = EvalStatus::undecided;
  std::optional<Rational> tail_bound;
};

inline constexpr std::size_t kRatioWindow = 5;
inline constexpr std::size_t kMinTerms = 8;

/// Sums summand(0), summand(1), ... under the ratio-test protocol shared by
/// evaluate() and the Fock inner product:
///  - known finite support within max_terms: exact sum, converged, tail 0;
///  - last kRatioWindow ratios of successive nonzero summands all < 1:
///    converged, tail bound s·r/(1-r); stops early once the bound is < tol;
///  - last kRatioWindow+1 nonzero summands nondecreasing and above the
///    first nonzero one: diverged;
///  - otherwise undecided.
/// `summand` is called with n = 0, 1, 2, ... in order.
EvalResult accumulate(const std::function<Rational(std::size_t)>& summand,
                      std::optional<std::size_t> support, std::size_t max_terms,
                      const Rational& tol);

/// Partial sum of Σ term(n)·x^n/n!.
EvalResult evaluate(const CountSeq& f, const EvalPoint& at, std::size_t max_terms,
                    const Rational& tol);

/// (1 - sqrt(1 - 4x)) / 2x with sqrt(-r) = +i·sqrt(r). Throws ZeroArgument at 0.
std::complex<double> catalan_closed_form(const Rational& at);

}  // namespace decat::series
