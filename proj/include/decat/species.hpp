#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "decat/errors.hpp"
#include "decat/series.hpp"

namespace decat::species {

enum class Kind {
  Zero,
  One,
  Singleton,
  Sets,
  NonemptySets,
  LinearOrders,
  Partitions,
  BinaryTrees,
  Var,
  Sum,
  Product,
  Compose,
  Derivative,
  Power,
  Fix,
};

/// Immutable species expression. Copies share structure.
class SpeciesExpr {
 public:
  static SpeciesExpr zero();
  static SpeciesExpr one();
  static SpeciesExpr singleton();
  static SpeciesExpr sets();
  static SpeciesExpr nonempty_sets();
  static SpeciesExpr linear_orders();
  static SpeciesExpr partitions();
  static SpeciesExpr binary_trees();
  static SpeciesExpr var(std::string name);
  static SpeciesExpr sum(SpeciesExpr l, SpeciesExpr r);
  static SpeciesExpr product(SpeciesExpr l, SpeciesExpr r);
  static SpeciesExpr compose(SpeciesExpr outer, SpeciesExpr inner);
  static SpeciesExpr derivative(SpeciesExpr inner);
  static SpeciesExpr power(SpeciesExpr base, std::uint32_t exponent);
  static SpeciesExpr fix(std::string var, SpeciesExpr body);

  Kind kind() const;
  /// Variable name for Var and Fix; empty otherwise.
  const std::string& name() const;
  std::uint32_t exponent() const;
  /// First child: l, outer, inner (Derivative), base, body (Fix).
  const SpeciesExpr& lhs() const;
  /// Second child: r, inner (Compose).
  const SpeciesExpr& rhs() const;

  friend bool operator==(const SpeciesExpr& a, const SpeciesExpr& b);

 private:
  struct Node;
  explicit SpeciesExpr(std::shared_ptr<const Node> node);
  static SpeciesExpr make(Kind kind, std::string name = {}, std::uint32_t exponent = 0,
                          std::optional<SpeciesExpr> lhs = std::nullopt,
                          std::optional<SpeciesExpr> rhs = std::nullopt);
  std::shared_ptr<const Node> node_;
};

bool is_atom(Kind k);

/// Concrete-syntax name of an atom ("0", "1", "X", "E", "E+", "L", "Par", "B").
const char* atom_name(Kind k);

/// Concrete syntax accepted by exprlang::parse_species. Throws
/// std::invalid_argument for a composition whose outer species is not a
/// name, which the grammar cannot express.
std::string to_string(const SpeciesExpr& expr);

using Environment = std::map<std::string, series::CountSeq, std::less<>>;

struct CompileOptions {
  std::size_t max_order = series::kDefaultOrder;
};

class UnboundVariable : public DomainError {
 public:
  explicit UnboundVariable(const std::string& name)
      : DomainError("unbound species variable '" + name + "'") {}
};

/// Counting sequence of `expr` by structural recursion. Free variables are
/// looked up in `env`. Compositions are checked eagerly.
series::CountSeq compile(const SpeciesExpr& expr, const Environment& env = {},
                         const CompileOptions& options = {});

// ---------------------------------------------------------------------------
// Labeled structures and the enumeration oracle.

/// Binary rooted tree on a label set. Null children are empty trees.
struct TreeNode {
  int root;
  std::shared_ptr<const TreeNode> left, right;
};
using Tree = std::shared_ptr<const TreeNode>;

struct LabeledStructure;

struct EmptyWitness {};          // One, Singleton, Sets, NonemptySets
struct OrderWitness {            // LinearOrders
  std::vector<int> order;
};
struct BlocksWitness {           // Partitions: blocks sorted by minimum
  std::vector<std::vector<int>> blocks;
};
struct TreeWitness {             // BinaryTrees: nested (root, left, right)
  Tree tree;
};
struct SumWitness {
  bool right;  // false: left summand
  std::shared_ptr<const LabeledStructure> inner;
};
struct ProductWitness {
  std::vector<int> left_labels, right_labels;
  std::shared_ptr<const LabeledStructure> left, right;
};

using Witness = std::variant<EmptyWitness, OrderWitness, BlocksWitness, TreeWitness, SumWitness,
                             ProductWitness>;

struct LabeledStructure {
  std::string tag;            // printed expression
  std::vector<int> labels;    // underlying set, sorted
  Witness witness;
};

inline constexpr std::size_t kMaxEnumerationSize = 9;
inline constexpr std::size_t kStructureBudget = 4'000'000;

/// True for expressions built from enumerable atoms with Sum, Product and Power.
bool is_enumerable(const SpeciesExpr& expr);

/// Exhaustive, duplicate-free list of structures on {1..n}. Throws TooLarge
/// for n > 9 or when more than kStructureBudget structures would be listed,
/// and std::invalid_argument for non-enumerable expressions.
std::vector<LabeledStructure> enumerate_structures(const SpeciesExpr& expr, std::size_t n);

/// Same traversal as enumerate_structures but only counts.
std::uint64_t count_structures(const SpeciesExpr& expr, std::size_t n);

/// Checks the witness against its tag and label set.
bool validate(const SpeciesExpr& expr, const LabeledStructure& s);

/// Deterministic text form, e.g. "{1,3}{2}" or "(2 (1 . .) .)".
std::string witness_string(const LabeledStructure& s);

/// Every set partition of {1..n}, blocks sorted by minimum.
std::vector<std::vector<std::vector<int>>> set_partitions(std::size_t n);

struct OracleRow {
  std::size_t n;
  Rational engine;
  std::uint64_t enumerated;
};

struct OracleReport {
  std::vector<OracleRow> rows;
};

class OracleMismatch : public DomainError {
 public:
  OracleMismatch(OracleReport report, std::size_t n);
  OracleReport report;
  std::size_t first_mismatch;
};

/// Compares compile(expr).term(n) with count_structures(expr, n) for n <= n_max.
OracleReport oracle_check(const SpeciesExpr& expr, std::size_t n_max);

}  // namespace decat::species
