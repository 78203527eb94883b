#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "decat/species.hpp"

namespace decat::species {

namespace {

using Labels = std::vector<int>;
using Emit = std::function<void(LabeledStructure)>;

struct Budget {
  std::size_t remaining;
  void spend() {
    if (remaining == 0) throw TooLarge("enumeration exceeds the structure budget");
    --remaining;
  }
};

// Splits `labels` into (chosen, rest) by the bits of `mask`.
std::pair<Labels, Labels> split(const Labels& labels, std::uint32_t mask) {
  Labels in, out;
  for (std::size_t i = 0; i < labels.size(); ++i) ((mask >> i) & 1u ? in : out).push_back(labels[i]);
  return {std::move(in), std::move(out)};
}

void visit_trees(const Labels& labels, const std::function<void(Tree)>& emit) {
  if (labels.empty()) {
    emit(nullptr);
    return;
  }
  for (std::size_t r = 0; r < labels.size(); ++r) {
    Labels rest = labels;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
    const std::uint32_t subsets = 1u << rest.size();
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      auto [left_labels, right_labels] = split(rest, mask);
      std::vector<Tree> lefts;
      visit_trees(left_labels, [&](Tree t) { lefts.push_back(std::move(t)); });
      visit_trees(right_labels, [&](Tree right) {
        for (const auto& left : lefts)
          emit(std::make_shared<const TreeNode>(TreeNode{labels[r], left, right}));
      });
    }
  }
}

void visit_partitions(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& emit) {
  // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      emit(rgs);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    emit(rgs);
    return;
  }
  rec(rec, 1, 1);
}

void visit(const SpeciesExpr& expr, const Labels& labels, const Emit& emit) {
  const std::string tag = to_string(expr);
  auto make = [&](Witness w) { return LabeledStructure{tag, labels, std::move(w)}; };
  switch (expr.kind()) {
    case Kind::Zero:
      return;
    case Kind::One:
      if (labels.empty()) emit(make(EmptyWitness{}));
      return;
    case Kind::Singleton:
      if (labels.size() == 1) emit(make(EmptyWitness{}));
      return;
    case Kind::Sets:
      emit(make(EmptyWitness{}));
      return;
    case Kind::NonemptySets:
      if (!labels.empty()) emit(make(EmptyWitness{}));
      return;
    case Kind::LinearOrders: {
      Labels order = labels;
      do emit(make(OrderWitness{order}));
      while (std::next_permutation(order.begin(), order.end()));
      return;
    }
    case Kind::Partitions:
      visit_partitions(labels.size(), [&](const std::vector<std::size_t>& rgs) {
        std::vector<std::vector<int>> blocks;
        for (std::size_t i = 0; i < rgs.size(); ++i) {
          if (rgs[i] == blocks.size()) blocks.emplace_back();
          blocks[rgs[i]].push_back(labels[i]);
        }
        emit(make(BlocksWitness{std::move(blocks)}));
      });
      return;
    case Kind::BinaryTrees:
      visit_trees(labels, [&](Tree t) { emit(make(TreeWitness{std::move(t)})); });
      return;
    case Kind::Sum:
      visit(expr.lhs(), labels, [&](LabeledStructure s) {
        emit(make(SumWitness{false, std::make_shared<const LabeledStructure>(std::move(s))}));
      });
      visit(expr.rhs(), labels, [&](LabeledStructure s) {
        emit(make(SumWitness{true, std::make_shared<const LabeledStructure>(std::move(s))}));
      });
      return;
    case Kind::Product: {
      const std::uint32_t subsets = 1u << labels.size();
      for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        auto [left_labels, right_labels] = split(labels, mask);
        std::vector<std::shared_ptr<const LabeledStructure>> lefts;
        visit(expr.lhs(), left_labels, [&](LabeledStructure s) {
          lefts.push_back(std::make_shared<const LabeledStructure>(std::move(s)));
        });
        if (lefts.empty()) continue;
        visit(expr.rhs(), right_labels, [&](LabeledStructure s) {
          auto right = std::make_shared<const LabeledStructure>(std::move(s));
          for (const auto& left : lefts)
            emit(make(ProductWitness{left_labels, right_labels, left, right}));
        });
      }
      return;
    }
    case Kind::Power: {
      if (expr.exponent() == 0) {
        if (labels.empty()) emit(make(EmptyWitness{}));
        return;
      }
      if (expr.exponent() == 1) {
        visit(expr.lhs(), labels, emit);
        return;
      }
      const SpeciesExpr expanded = SpeciesExpr::product(
          expr.lhs(), SpeciesExpr::power(expr.lhs(), expr.exponent() - 1));
      visit(expanded, labels, [&](LabeledStructure s) {
        s.tag = tag;
        emit(std::move(s));
      });
      return;
    }
    default:
      throw std::invalid_argument("species '" + tag + "' is not enumerable");
  }
}

Labels first_n(std::size_t n) {
  Labels labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return labels;
}

void check_request(const SpeciesExpr& expr, std::size_t n) {
  if (n > kMaxEnumerationSize)
    throw TooLarge("enumeration is capped at n <= " + std::to_string(kMaxEnumerationSize));
  if (!is_enumerable(expr))
    throw std::invalid_argument("species '" + to_string(expr) + "' is not enumerable");
}

void collect_tree_labels(const Tree& t, Labels& out) {
  if (!t) return;
  out.push_back(t->root);
  collect_tree_labels(t->left, out);
  collect_tree_labels(t->right, out);
}

void tree_string(const Tree& t, std::string& out) {
  if (!t) {
    out += '.';
    return;
  }
  out += '(' + std::to_string(t->root) + ' ';
  tree_string(t->left, out);
  out += ' ';
  tree_string(t->right, out);
  out += ')';
}

std::string join(const Labels& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(labels[i]);
  }
  return out;
}

}  // namespace

bool is_enumerable(const SpeciesExpr& expr) {
  switch (expr.kind()) {
    case Kind::Sum:
    case Kind::Product:
      return is_enumerable(expr.lhs()) && is_enumerable(expr.rhs());
    case Kind::Power:
      return is_enumerable(expr.lhs());
    default:
      return is_atom(expr.kind());
  }
}

std::vector<LabeledStructure> enumerate_structures(const SpeciesExpr& expr, std::size_t n) {
  check_request(expr, n);
  Budget budget{kStructureBudget};
  std::vector<LabeledStructure> out;
  visit(expr, first_n(n), [&](LabeledStructure s) {
    budget.spend();
    out.push_back(std::move(s));
  });
  return out;
}

std::uint64_t count_structures(const SpeciesExpr& expr, std::size_t n) {
  check_request(expr, n);
  Budget budget{kStructureBudget};
  std::uint64_t count = 0;
  visit(expr, first_n(n), [&](const LabeledStructure&) {
    budget.spend();
    ++count;
  });
  return count;
}

bool validate(const SpeciesExpr& expr, const LabeledStructure& s) {
  const Labels& labels = s.labels;
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    return false;
  auto is_empty_witness = std::holds_alternative<EmptyWitness>(s.witness);
  switch (expr.kind()) {
    case Kind::Zero:
      return false;
    case Kind::One:
      return is_empty_witness && labels.empty();
    case Kind::Singleton:
      return is_empty_witness && labels.size() == 1;
    case Kind::Sets:
      return is_empty_witness;
    case Kind::NonemptySets:
      return is_empty_witness && !labels.empty();
    case Kind::LinearOrders: {
      auto* w = std::get_if<OrderWitness>(&s.witness);
      if (!w) return false;
      Labels sorted = w->order;
      std::sort(sorted.begin(), sorted.end());
      return sorted == labels;
    }
    case Kind::Partitions: {
      auto* w = std::get_if<BlocksWitness>(&s.witness);
      if (!w) return false;
      Labels seen;
      int previous_min = 0;
      for (const auto& block : w->blocks) {
        if (block.empty() || !std::is_sorted(block.begin(), block.end())) return false;
        if (!seen.empty() && block.front() <= previous_min) return false;
        previous_min = block.front();
        seen.insert(seen.end(), block.begin(), block.end());
      }
      std::sort(seen.begin(), seen.end());
      return seen == labels;
    }
    case Kind::BinaryTrees: {
      auto* w = std::get_if<TreeWitness>(&s.witness);
      if (!w) return false;
      Labels seen;
      collect_tree_labels(w->tree, seen);
      std::sort(seen.begin(), seen.end());
      return seen == labels;
    }
    case Kind::Sum: {
      auto* w = std::get_if<SumWitness>(&s.witness);
      if (!w || !w->inner || w->inner->labels != labels) return false;
      return validate(w->right ? expr.rhs() : expr.lhs(), *w->inner);
    }
    case Kind::Product: {
      auto* w = std::get_if<ProductWitness>(&s.witness);
      if (!w || !w->left || !w->right) return false;
      if (w->left->labels != w->left_labels || w->right->labels != w->right_labels) return false;
      Labels merged;
      std::merge(w->left_labels.begin(), w->left_labels.end(), w->right_labels.begin(),
                 w->right_labels.end(), std::back_inserter(merged));
      if (merged != labels) return false;
      return validate(expr.lhs(), *w->left) && validate(expr.rhs(), *w->right);
    }
    case Kind::Power:
      if (expr.exponent() == 0) return is_empty_witness && labels.empty();
      if (expr.exponent() == 1) return validate(expr.lhs(), s);
      return validate(SpeciesExpr::product(expr.lhs(),
                                           SpeciesExpr::power(expr.lhs(), expr.exponent() - 1)),
                      s);
    default:
      return false;
  }
}

std::string witness_string(const LabeledStructure& s) {
  return std::visit(
      [&](const auto& w) -> std::string {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, EmptyWitness>) {
          return "{" + join(s.labels) + "}";
        } else if constexpr (std::is_same_v<W, OrderWitness>) {
          return "[" + join(w.order) + "]";
        } else if constexpr (std::is_same_v<W, BlocksWitness>) {
          std::string out;
          for (const auto& block : w.blocks) out += "{" + join(block) + "}";
          return out.empty() ? "{}" : out;
        } else if constexpr (std::is_same_v<W, TreeWitness>) {
          std::string out;
          tree_string(w.tree, out);
          return out;
        } else if constexpr (std::is_same_v<W, SumWitness>) {
          return (w.right ? "inr:" : "inl:") + witness_string(*w.inner);
        } else {
          return "<" + witness_string(*w.left) + " | " + witness_string(*w.right) + ">";
        }
      },
      s.witness);
}

std::vector<std::vector<std::vector<int>>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<int>>> out;
  visit_partitions(n, [&](const std::vector<std::size_t>& rgs) {
    std::vector<std::vector<int>> blocks;
    for (std::size_t i = 0; i < rgs.size(); ++i) {
      if (rgs[i] == blocks.size()) blocks.emplace_back();
      blocks[rgs[i]].push_back(static_cast<int>(i) + 1);
    }
    out.push_back(std::move(blocks));
  });
  return out;
}

OracleMismatch::OracleMismatch(OracleReport r, std::size_t n)
    : DomainError("engine and enumeration disagree at n = " + std::to_string(n) + ": " +
                  decat::to_string(r.rows.back().engine) + " vs " +
                  std::to_string(r.rows.back().enumerated)),
      report(std::move(r)),
      first_mismatch(n) {}

OracleReport oracle_check(const SpeciesExpr& expr, std::size_t n_max) {
  check_request(expr, n_max);
  const series::CountSeq seq = compile(expr);
  OracleReport report;
  for (std::size_t n = 0; n <= n_max; ++n) {
    OracleRow row{n, seq.term(n), count_structures(expr, n)};
    const bool agree = row.engine == Rational(Integer(std::to_string(row.enumerated)));
    report.rows.push_back(std::move(row));
    if (!agree) throw OracleMismatch(std::move(report), n);
  }
  return report;
}

}  // namespace decat::species
