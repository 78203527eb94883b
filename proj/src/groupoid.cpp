#include "decat/groupoid.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace decat::groupoid {

PermAction::PermAction(std::size_t set_size, std::vector<Permutation> generators)
    : set_size_(set_size), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.size() != set_size_)
      throw std::invalid_argument("generator size does not match the set size");
    std::vector<bool> hit(set_size_, false);
    for (auto image : g) {
      if (image >= set_size_ || hit[image])
        throw std::invalid_argument("generator is not a bijection");
      hit[image] = true;
    }
  }
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation identity(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

std::vector<Permutation> group_closure(const PermAction& action, std::size_t cap) {
  std::set<Permutation> seen{identity(action.set_size())};
  std::vector<Permutation> frontier{identity(action.set_size())};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& p : frontier) {
      for (const auto& g : action.generators()) {
        Permutation q = compose(g, p);
        if (seen.insert(q).second) {
          if (seen.size() > cap) throw GroupTooLarge(cap);
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

WeakQuotientResult weak_quotient(const PermAction& action) {
  const std::size_t n = action.set_size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& g : action.generators())
    for (std::size_t i = 0; i < n; ++i) {
      auto a = find_root(parent, i), b = find_root(parent, g[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[find_root(parent, i)].push_back(i + 1);

  WeakQuotientResult result;
  result.group_order = group_closure(action).size();
  for (auto& [root, elements] : by_root) {
    const std::uint64_t stabilizer = result.group_order / elements.size();
    result.cardinality += Rational(1, static_cast<unsigned long>(stabilizer));
    result.orbits.push_back(Orbit{std::move(elements), stabilizer});
  }
  return result;
}

Rational groupoid_cardinality(const std::vector<GroupoidClass>& classes) {
  Rational total = 0;
  for (const auto& c : classes) {
    if (c.aut_order == 0) throw std::invalid_argument("automorphism group order must be positive");
    Rational term(Integer(std::to_string(c.multiplicity)), Integer(std::to_string(c.aut_order)));
    term.canonicalize();
    total += term;
  }
  return total;
}

Rational homotopy_cardinality(const HomotopyOrders& components) {
  Rational total = 0;
  for (const auto& orders : components) {
    Rational product = 1;
    for (std::size_t k = 0; k < orders.size(); ++k) {
      if (orders[k] == 0) throw std::invalid_argument("homotopy group orders must be positive");
      const Integer order(std::to_string(orders[k]));
      // orders[k] is |π_{k+1}|: odd homotopy degrees divide.
      if (k % 2 == 0)
        product /= order;
      else
        product *= order;
    }
    total += product;
  }
  return total;
}

Rational bg_cardinality(std::uint64_t group_order) {
  return homotopy_cardinality({{group_order}});
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

Permutation parse_cycles(std::string_view text, std::size_t n) {
  Permutation p = identity(n);
  std::vector<bool> used(n, false);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && is_space(text[i])) ++i;
  };
  for (skip(); i < text.size(); skip()) {
    if (text[i] != '(') throw BadCycle("expected '(' to start a cycle", i, i + 1);
    const std::size_t open = i++;
    std::vector<std::uint32_t> cycle;
    for (skip(); i < text.size() && text[i] != ')'; skip()) {
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw BadCycle("expected a point of the set", start, start + 1);
      if (i - start > 9) throw BadCycle("point out of range", start, i);
      const std::size_t value = std::stoul(std::string(text.substr(start, i - start)));
      if (value < 1 || value > n)
        throw BadCycle("point " + std::to_string(value) + " is outside 1.." + std::to_string(n),
                       start, i);
      if (used[value - 1])
        throw BadCycle("point " + std::to_string(value) + " appears twice", start, i);
      used[value - 1] = true;
      cycle.push_back(static_cast<std::uint32_t>(value - 1));
    }
    if (i >= text.size()) throw BadCycle("unterminated cycle", open, text.size());
    ++i;  // ')'
    for (std::size_t k = 0; k < cycle.size(); ++k) p[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return p;
}

std::vector<Permutation> parse_generators(std::string_view text, std::size_t n) {
  std::vector<Permutation> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";,", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    const bool blank = std::all_of(piece.begin(), piece.end(), is_space);
    if (!blank) {
      try {
        out.push_back(parse_cycles(piece, n));
      } catch (const BadCycle& e) {
        throw BadCycle(e.what(), e.start + start, e.end + start);
      }
    } else if (end < text.size()) {
      throw BadCycle("empty generator", start, end + 1);
    }
    start = end + 1;
  }
  return out;
}

}  // namespace decat::groupoid
