#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "decat/groupoid.hpp"
#include "oracles.hpp"

using namespace decat;
using namespace decat::groupoid;

namespace {

// Random permutation of {0..n-1} built from a few random transpositions and
// cycles, so the generated groups stay small often enough.
Permutation random_perm(oracle::Rng& rng, std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0u);
  const std::size_t len = 2 + oracle::pick(rng, std::min<std::size_t>(n - 1, 4));
  std::vector<std::uint32_t> points(n);
  std::iota(points.begin(), points.end(), 0u);
  std::shuffle(points.begin(), points.end(), rng);
  for (std::size_t i = 0; i < len; ++i) p[points[i]] = points[(i + 1) % len];
  return p;
}

}  // namespace

TEST_CASE("closure examples") {
  CHECK(group_closure(PermAction(2, {parse_cycles("(1 2)", 2)})).size() == 2);
  CHECK(group_closure(PermAction(3, parse_generators("(1 2 3); (1 2)", 3))).size() == 6);
  CHECK(group_closure(PermAction(4, {})).size() == 1);
}

TEST_CASE("closure is sorted and closed under composition") {
  const auto g = group_closure(PermAction(4, parse_generators("(1 2 3 4); (1 3)", 4)));
  CHECK(g.size() == 8);
  CHECK(std::is_sorted(g.begin(), g.end()));
  const std::set<Permutation> elements(g.begin(), g.end());
  for (const auto& a : g)
    for (const auto& b : g) CHECK(elements.count(compose(a, b)) == 1);
}

TEST_CASE("closure enforces its cap") {
  const PermAction s5(5, parse_generators("(1 2); (1 2 3 4 5)", 5));
  CHECK(group_closure(s5).size() == 120);
  CHECK_THROWS_AS(group_closure(s5, 100), GroupTooLarge);
}

TEST_CASE("free action folding six points") {
  const auto q = weak_quotient(PermAction(6, {parse_cycles("(1 4)(2 5)(3 6)", 6)}));
  CHECK(q.group_order == 2);
  CHECK(q.orbits.size() == 3);
  for (const auto& o : q.orbits) CHECK(o.stabilizer_order == 1);
  CHECK(q.cardinality == 3);
}

TEST_CASE("reflection of five points has half a point") {
  const auto q = weak_quotient(PermAction(5, {parse_cycles("(1 5)(2 4)", 5)}));
  REQUIRE(q.orbits.size() == 3);
  CHECK(q.orbits[0].elements == std::vector<std::size_t>{1, 5});
  CHECK(q.orbits[1].elements == std::vector<std::size_t>{2, 4});
  CHECK(q.orbits[2].elements == std::vector<std::size_t>{3});
  CHECK(q.orbits[0].stabilizer_order == 1);
  CHECK(q.orbits[1].stabilizer_order == 1);
  CHECK(q.orbits[2].stabilizer_order == 2);
  CHECK(q.cardinality == Rational(5, 2));
}

TEST_CASE("trivial group quotient") {
  for (std::size_t n = 0; n <= 6; ++n)
    CHECK(weak_quotient(PermAction(n, {})).cardinality == Rational(n));
}

TEST_CASE("randomized actions satisfy |S//G| = |S|/|G|") {
  oracle::Rng rng(1234567);
  int accepted = 0;
  while (accepted < 100) {
    const std::size_t n = 2 + oracle::pick(rng, 11);
    std::vector<Permutation> gens;
    const std::size_t count = 1 + oracle::pick(rng, 2);
    for (std::size_t k = 0; k < count; ++k) gens.push_back(random_perm(rng, n));
    const PermAction action(n, gens);
    std::vector<Permutation> group;
    try {
      group = group_closure(action, 120);
    } catch (const GroupTooLarge&) {
      continue;
    }
    ++accepted;
    const auto q = weak_quotient(action);
    CHECK(q.group_order == group.size());
    CHECK(q.cardinality == Rational(n) / Rational(group.size()));

    // Orbits from the group elements directly.
    std::vector<std::set<std::size_t>> expected;
    std::vector<bool> placed(n, false);
    for (std::size_t x = 0; x < n; ++x) {
      if (placed[x]) continue;
      std::set<std::size_t> orbit;
      for (const auto& g : group) orbit.insert(g[x] + 1);
      for (auto y : orbit) placed[y - 1] = true;
      expected.push_back(orbit);
    }
    REQUIRE(q.orbits.size() == expected.size());
    std::size_t covered = 0;
    Rational sum = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const auto& o = q.orbits[i];
      CHECK(std::set<std::size_t>(o.elements.begin(), o.elements.end()) == expected[i]);
      const auto x = o.elements.front() - 1;
      const auto stabilizer = std::count_if(group.begin(), group.end(),
                                            [&](const Permutation& g) { return g[x] == x; });
      CHECK(o.stabilizer_order == static_cast<std::uint64_t>(stabilizer));
      CHECK(o.stabilizer_order * o.elements.size() == q.group_order);
      covered += o.elements.size();
      sum += Rational(1) / Rational(o.stabilizer_order);
    }
    CHECK(covered == n);
    CHECK(sum == q.cardinality);
  }
}

TEST_CASE("free actions have trivial stabilizers") {
  const auto q = weak_quotient(PermAction(6, parse_generators("(1 2 3)(4 5 6)", 6)));
  for (const auto& o : q.orbits) CHECK(o.stabilizer_order == 1);
  CHECK(q.cardinality == 2);
  const auto r = weak_quotient(PermAction(4, parse_generators("(1 2)", 4)));
  CHECK_FALSE(std::all_of(r.orbits.begin(), r.orbits.end(),
                          [](const Orbit& o) { return o.stabilizer_order == 1; }));
  CHECK(r.cardinality == 2);
}

TEST_CASE("groupoid of finite sets approaches e") {
  std::vector<GroupoidClass> classes;
  for (std::uint64_t n = 0; n <= 20; ++n)
    classes.push_back({std::to_string(n), Integer(oracle::fact(n)).get_ui(), 1});
  const Rational c = groupoid_cardinality(classes);
  CHECK(abs(c - oracle::e_40()) < Rational(1, Integer("1000000000000000000")));
}

TEST_CASE("explicit groupoid cardinality") {
  CHECK(groupoid_cardinality({{"x", 1, 1}}) == 1);
  CHECK(groupoid_cardinality({{"a", 1, 1}, {"b", 1, 1}, {"c", 1, 1}}) == 3);
  CHECK(groupoid_cardinality({{"x", 6, 2}, {"y", 4, 1}}) == Rational(7, 12));
  CHECK_THROWS_AS(groupoid_cardinality({{"x", 0, 1}}), std::invalid_argument);
}

TEST_CASE("homotopy cardinality examples") {
  CHECK(homotopy_cardinality({{2}}) == Rational(1, 2));
  CHECK(homotopy_cardinality({{}}) == 1);
  CHECK(homotopy_cardinality({{6, 2}}) == Rational(1, 3));
  CHECK(homotopy_cardinality({{2}, {3}}) == Rational(5, 6));
  CHECK(homotopy_cardinality({{2, 3, 5}}) == Rational(3, 10));
  CHECK(homotopy_cardinality({}) == 0);
  CHECK_THROWS_AS(homotopy_cardinality({{0}}), std::invalid_argument);
}

TEST_CASE("classifying space cardinality") {
  CHECK(bg_cardinality(2) == Rational(1, 2));
  CHECK(bg_cardinality(1) == 1);
  CHECK(bg_cardinality(120) == Rational(1, 120));
  for (std::uint64_t o = 1; o <= 60; ++o) CHECK(bg_cardinality(o) == homotopy_cardinality({{o}}));
}

TEST_CASE("homotopy cardinality is multiplicative") {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t len_f = oracle::pick(rng, 5), len_b = oracle::pick(rng, 5);
    std::vector<std::uint64_t> f, b;
    for (std::size_t k = 0; k < len_f; ++k) f.push_back(1 + oracle::pick(rng, 12));
    for (std::size_t k = 0; k < len_b; ++k) b.push_back(1 + oracle::pick(rng, 12));
    std::vector<std::uint64_t> x(std::max(len_f, len_b), 1);
    for (std::size_t k = 0; k < len_f; ++k) x[k] *= f[k];
    for (std::size_t k = 0; k < len_b; ++k) x[k] *= b[k];
    // Alternating product computed here from scratch.
    auto alt = [](const std::vector<std::uint64_t>& orders) {
      Rational r = 1;
      for (std::size_t k = 0; k < orders.size(); ++k)
        r *= k % 2 == 0 ? Rational(1, orders[k]) : Rational(orders[k]);
      return r;
    };
    CHECK(homotopy_cardinality({x}) == homotopy_cardinality({f}) * homotopy_cardinality({b}));
    CHECK(homotopy_cardinality({x}) == alt(f) * alt(b));
  }
}

TEST_CASE("cycle notation") {
  CHECK(parse_cycles("", 3) == Permutation{0, 1, 2});
  CHECK(parse_cycles("(1 2 3)", 3) == Permutation{1, 2, 0});
  CHECK(parse_cycles("  (1 3) ( 2 ) ", 4) == Permutation{2, 1, 0, 3});
  CHECK(parse_generators("", 3).empty());
  CHECK(parse_generators("(1 2), (2 3)", 3).size() == 2);
}

TEST_CASE("cycle notation errors carry spans") {
  auto span_of = [](std::string_view text, std::size_t n) {
    try {
      parse_generators(text, n);
    } catch (const BadCycle& e) {
      CHECK(e.start <= e.end);
      CHECK(e.end <= text.size());
      return std::pair<std::size_t, std::size_t>{e.start, e.end};
    }
    FAIL("no error for " << text);
    return std::pair<std::size_t, std::size_t>{0, 0};
  };
  CHECK(span_of("(1 7)", 5) == std::pair<std::size_t, std::size_t>{3, 4});
  CHECK(span_of("(1 2)(2 3)", 3).first == 6);
  CHECK(span_of("(1 2", 3).first == 0);
  CHECK(span_of("1 2", 3).first == 0);
  CHECK(span_of("(1 2); ;(1 3)", 3).first >= 5);
  CHECK(span_of("(1 x)", 3).first == 3);
  CHECK_THROWS_AS(PermAction(3, {Permutation{0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(PermAction(3, {Permutation{0, 1}}), std::invalid_argument);
}
