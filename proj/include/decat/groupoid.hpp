#pragma once

// Finite group actions, weak quotients, and groupoid/homotopy cardinality.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "decat/errors.hpp"
#include "decat/rational.hpp"

namespace decat::groupoid {

/// Permutation of {0..n-1} in image form: p[i] is the image of i.
using Permutation = std::vector<std::uint32_t>;

inline constexpr std::size_t kMaxGroupOrder = 1'000'000;

/// A group acting on {1..n} (stored zero-based), given by generators.
class PermAction {
 public:
  /// Throws std::invalid_argument if a generator is not a bijection on the set.
  PermAction(std::size_t set_size, std::vector<Permutation> generators);

  std::size_t set_size() const { return set_size_; }
  const std::vector<Permutation>& generators() const { return generators_; }

 private:
  std::size_t set_size_;
  std::vector<Permutation> generators_;
};

/// Composition (a ∘ b)(i) = a[b[i]].
Permutation compose(const Permutation& a, const Permutation& b);
Permutation identity(std::size_t n);

/// Every element of the generated group in lexicographic order of image
/// words. Throws GroupTooLarge past `cap` elements.
std::vector<Permutation> group_closure(const PermAction& action,
                                       std::size_t cap = kMaxGroupOrder);

struct Orbit {
  std::vector<std::size_t> elements;  // 1-based, sorted
  std::uint64_t stabilizer_order;
};

struct WeakQuotientResult {
  std::vector<Orbit> orbits;  // ordered by least element
  std::uint64_t group_order;
  Rational cardinality;
};

/// The action groupoid S//G with its orbit/stabilizer decomposition.
WeakQuotientResult weak_quotient(const PermAction& action);

struct GroupoidClass {
  std::string label;
  std::uint64_t aut_order;  // >= 1
  std::uint64_t multiplicity;
};

/// Σ multiplicity / aut_order. Throws std::invalid_argument for aut_order 0.
Rational groupoid_cardinality(const std::vector<GroupoidClass>& classes);

/// Per component, the orders |π1|, |π2|, ..., |πk| (higher groups trivial).
using HomotopyOrders = std::vector<std::vector<std::uint64_t>>;

/// Σ over components of |π1|^-1 |π2| |π3|^-1 ...
Rational homotopy_cardinality(const HomotopyOrders& components);

/// |BG| = 1/|G|.
Rational bg_cardinality(std::uint64_t group_order);

/// Parses disjoint-cycle notation such as "(1 4)(2 5)(3 6)" over {1..n}.
/// Fixed points may be omitted; the empty string is the identity.
Permutation parse_cycles(std::string_view text, std::size_t n);

/// Parses a generator list: cycle groups separated by ';' or ','.
/// "(1 2)(3 4); (1 3)" gives two generators. Empty text gives none.
std::vector<Permutation> parse_generators(std::string_view text, std::size_t n);

class BadCycle : public std::runtime_error {
 public:
  BadCycle(std::string message, std::size_t start, std::size_t end)
      : std::runtime_error(std::move(message)), start(start), end(end) {}
  std::size_t start, end;  // byte offsets into the cycle text
};

}  // namespace decat::groupoid
