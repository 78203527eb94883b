#include <numeric>

#include "decat/fock.hpp"

namespace decat::fock {

std::size_t MatchingProblem::total_legs() const {
  return std::accumulate(valences.begin(), valences.end(), std::size_t{0}) + out_legs + in_legs;
}

namespace {

void check_size(const MatchingProblem& problem) {
  if (problem.total_legs() > kMaxLegs)
    throw TooLarge("matching problems are capped at " + std::to_string(kMaxLegs) + " legs");
}

bool admissible(const HalfEdge& a, const HalfEdge& b) {
  using S = HalfEdge::Side;
  if (a.side == S::Vertex && b.side == S::Vertex) return a.index != b.index;
  if (a.side == S::Out && b.side == S::Out) return false;
  if (a.side == S::In && b.side == S::In) return false;
  return true;
}

}  // namespace

WeylOp wick_product(const std::vector<std::uint32_t>& valences) {
  WeylOp product = weyl_basic(Basic::Identity);
  for (auto p : valences) product = product * wick_power(p);
  return product;
}

Rational feynman_algebraic(const MatchingProblem& problem) {
  check_size(problem);
  return matrix_element(wick_product(problem.valences), problem.out_legs, problem.in_legs);
}

std::string to_string(const HalfEdge& h) {
  switch (h.side) {
    case HalfEdge::Side::Vertex: return "v" + std::to_string(h.index) + "." + std::to_string(h.leg);
    case HalfEdge::Side::Out: return "s" + std::to_string(h.index);
    case HalfEdge::Side::In: return "t" + std::to_string(h.index);
  }
  return "?";
}

DiagramCount feynman_oracle(const MatchingProblem& problem, bool collect_diagrams) {
  check_size(problem);
  std::vector<HalfEdge> edges;
  for (std::uint32_t v = 0; v < problem.valences.size(); ++v)
    for (std::uint32_t leg = 1; leg <= problem.valences[v]; ++leg)
      edges.push_back({HalfEdge::Side::Vertex, v + 1, leg});
  for (std::uint32_t s = 1; s <= problem.out_legs; ++s) edges.push_back({HalfEdge::Side::Out, s, 0});
  for (std::uint32_t t = 1; t <= problem.in_legs; ++t) edges.push_back({HalfEdge::Side::In, t, 0});

  DiagramCount result;
  if (edges.size() % 2 != 0) return result;

  std::vector<bool> used(edges.size(), false);
  Diagram current;
  auto match = [&](auto&& self) -> void {
    std::size_t i = 0;
    while (i < edges.size() && used[i]) ++i;
    if (i == edges.size()) {
      ++result.count;
      if (collect_diagrams) result.diagrams.push_back(current);
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (used[j] || !admissible(edges[i], edges[j])) continue;
      used[j] = true;
      current.emplace_back(edges[i], edges[j]);
      self(self);
      current.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  match(match);
  return result;
}

}  // namespace decat::fock
