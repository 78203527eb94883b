#include <doctest.h>

#include <cmath>
#include <thread>

#include "decat/series.hpp"
#include "oracles.hpp"

using namespace decat;
using namespace decat::series;

namespace {

CountSeq catalan_trees(std::size_t order = kDefaultOrder) {
  return fixpoint([](const CountSeq& f) { return one() + singleton() * f * f; }, order);
}

CountSeq partitions() { return compose(sets(), nonempty_sets()); }

std::vector<CountSeq> generators() {
  return {zero(), one(), singleton(), sets(), nonempty_sets(), linear_orders(), partitions(),
          catalan_trees(), sets() * singleton(), from_terms({Rational(1, 2), 0, Rational(3)})};
}

}  // namespace

TEST_CASE("sum of sets with sets is constant two") {
  const auto f = sets() + sets();
  for (std::size_t n = 0; n < 12; ++n) CHECK(f.term(n) == 2);
}

TEST_CASE("one plus singleton has disjoint support") {
  const auto f = one() + singleton();
  CHECK(f.prefix(4) == std::vector<Rational>{1, 1, 0, 0});
}

TEST_CASE("linear orders plus partitions on three points") {
  const Rational expected = Rational(oracle::fact(3)) + Rational(oracle::bell(3));
  CHECK((linear_orders() + partitions()).term(3) == expected);
  CHECK(expected == 11);
}

TEST_CASE("one is a multiplicative unit") {
  for (const auto& f : generators())
    for (std::size_t n = 0; n < 12; ++n) CHECK((one() * f).term(n) == f.term(n));
}

TEST_CASE("two labelled singletons on a two-set") {
  CHECK((singleton() * singleton()).term(2) == 2);
}

TEST_CASE("sets times sets counts two-colourings") {
  const auto f = sets() * sets();
  for (unsigned n = 0; n <= 8; ++n) CHECK(f.term(n) == Rational(oracle::two_colourings(n)));
}

TEST_CASE("composing sets with nonempty sets gives Bell numbers") {
  const auto f = partitions();
  CHECK(f.prefix(6) == std::vector<Rational>{1, 1, 2, 5, 15, 52});
  for (unsigned n = 0; n <= 9; ++n) CHECK(f.term(n) == Rational(oracle::bell(n)));
}

TEST_CASE("composition agrees with the partition sum") {
  const std::vector<std::pair<const char*, CountSeq>> basis{
      {"E", sets()}, {"E+", nonempty_sets()}, {"X", singleton()}, {"L", linear_orders()}};
  for (const auto& [outer_name, outer] : basis) {
    for (const auto& [inner_name, inner] : basis) {
      CAPTURE(outer_name);
      CAPTURE(inner_name);
      if (inner.term(0) != 0) {
        CHECK_THROWS_AS(compose(outer, inner), NonzeroConstantTerm);
        continue;
      }
      const auto composed = compose(outer, inner);
      const auto f = outer.prefix(8), g = inner.prefix(8);
      for (unsigned n = 0; n <= 7; ++n) CHECK(composed.term(n) == oracle::partition_sum(f, g, n));
    }
  }
}

TEST_CASE("composing with the singleton is the identity") {
  for (const auto& f : generators()) {
    const auto g = compose(f, singleton());
    for (std::size_t n = 0; n < 10; ++n) CHECK(g.term(n) == f.term(n));
  }
}

TEST_CASE("composing a constant gives a constant") {
  const auto f = compose(one(), nonempty_sets());
  CHECK(f.prefix(6) == std::vector<Rational>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("composition of nested series matches the partition sum") {
  const auto inner = compose(nonempty_sets(), singleton() * sets());
  const auto outer = catalan_trees();
  const auto composed = compose(outer, inner);
  const auto f = outer.prefix(8), g = inner.prefix(8);
  for (unsigned n = 0; n <= 7; ++n) CHECK(composed.term(n) == oracle::partition_sum(f, g, n));
}

TEST_CASE("derivative examples") {
  const auto de = derive(sets());
  for (std::size_t n = 0; n < 10; ++n) CHECK(de.term(n) == 1);
  CHECK(derive(singleton()).prefix(3) == std::vector<Rational>{1, 0, 0});
  CHECK(derive(catalan_trees()).term(0) == 1);
}

TEST_CASE("pointing examples") {
  CHECK(point(one()).prefix(4) == singleton().prefix(4));
  const auto pe = point(sets());
  for (std::size_t n = 0; n < 10; ++n) CHECK(pe.term(n) == Rational(n));
}

TEST_CASE("derive and point commute up to the identity") {
  for (const auto& f : generators()) {
    const auto dp = derive(point(f));
    const auto pd = point(derive(f));
    for (std::size_t n = 0; n <= 16; ++n) CHECK(dp.term(n) - pd.term(n) == f.term(n));
  }
}

TEST_CASE("Leibniz rule") {
  const auto gens = generators();
  for (const auto& f : gens)
    for (const auto& g : gens) {
      const auto lhs = derive(f * g);
      const auto rhs = derive(f) * g + f * derive(g);
      for (std::size_t n = 0; n <= 16; ++n) CHECK(lhs.term(n) == rhs.term(n));
    }
}

TEST_CASE("rig laws at truncation 32") {
  const auto gens = generators();
  oracle::Rng rng(20240601);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& f = gens[oracle::pick(rng, gens.size())];
    const auto& g = gens[oracle::pick(rng, gens.size())];
    const auto& h = gens[oracle::pick(rng, gens.size())];
    for (std::size_t n = 0; n < 32; ++n) {
      CHECK((f + g).term(n) == (g + f).term(n));
      CHECK(((f + g) + h).term(n) == (f + (g + h)).term(n));
      CHECK((f * g).term(n) == (g * f).term(n));
      CHECK(((f * g) * h).term(n) == (f * (g * h)).term(n));
      CHECK((f * (g + h)).term(n) == (f * g + f * h).term(n));
      CHECK((zero() + f).term(n) == f.term(n));
      CHECK((one() * f).term(n) == f.term(n));
      CHECK((zero() * f).term(n) == 0);
    }
  }
}

TEST_CASE("fixpoint of the binary tree equation") {
  const auto b = catalan_trees();
  CHECK(b.prefix(6) == std::vector<Rational>{1, 1, 4, 30, 336, 5040});
  const auto c = oracle::catalan(12);
  for (unsigned n = 0; n < 12; ++n) {
    CHECK(b.egf(n) == Rational(c[n]));
    CHECK(b.term(n) == Rational(oracle::fact(2 * n) / oracle::fact(n + 1)));
  }
}

TEST_CASE("fixpoint reproduces the Catalan recurrence") {
  const auto b = catalan_trees();
  for (std::size_t n = 0; n <= 12; ++n) {
    Rational convolution = 0;
    for (std::size_t k = 0; k <= n; ++k) convolution += b.egf(k) * b.egf(n - k);
    // term(n+1)/(n+1)! is the next Catalan number.
    CHECK(b.term(n + 1) / Rational(factorial(n + 1)) == convolution);
  }
}

TEST_CASE("fixpoint of nonempty linear orders") {
  const auto f = fixpoint([](const CountSeq& g) { return singleton() + singleton() * g; });
  CHECK(f.term(0) == 0);
  for (unsigned n = 1; n <= 7; ++n) CHECK(f.term(n) == Rational(oracle::fact(n)));
}

TEST_CASE("fixpoint through a composition") {
  // Rooted trees whose children form a set: T = X·E(T).
  const auto t = fixpoint([](const CountSeq& g) { return singleton() * compose(sets(), g); });
  // n^(n-1) labelled rooted trees.
  for (unsigned n = 1; n <= 8; ++n) {
    Integer p = 1;
    for (unsigned k = 1; k < n; ++k) p *= n;
    CHECK(t.term(n) == Rational(p));
  }
}

TEST_CASE("unguarded fixpoint is rejected") {
  const auto f = fixpoint([](const CountSeq& g) { return g; });
  CHECK_THROWS_AS(f.term(0), NotGuarded);
  const auto h = fixpoint([](const CountSeq& g) { return one() + g * g; });
  CHECK_THROWS_AS(h.term(0), NotGuarded);
  const auto k = fixpoint([](const CountSeq& g) { return singleton() + derive(g); });
  CHECK_THROWS_AS(k.prefix(4), NotGuarded);
}

TEST_CASE("fixpoint respects its truncation order") {
  const auto b = catalan_trees(8);
  CHECK(b.term(7) == Rational(oracle::fact(14) / oracle::fact(8)));
  CHECK_THROWS_AS(b.term(8), TruncationExceeded);
}

TEST_CASE("terms are memoized and deterministic") {
  int calls = 0;
  CountSeq f([&calls](std::size_t n, auto) {
    ++calls;
    return Rational(n * n);
  }, true);
  CHECK(f.term(5) == 25);
  const int after_first = calls;
  CHECK(f.term(5) == 25);
  CHECK(f.term(3) == 9);
  CHECK(calls == after_first);
}

TEST_CASE("integral flag propagates") {
  CHECK(partitions().integral());
  CHECK((catalan_trees() * linear_orders()).integral());
  CHECK_FALSE(from_terms({Rational(1, 2)}).integral());
  CHECK_FALSE((sets() + from_terms({Rational(1, 3)})).integral());
}

TEST_CASE("negative terms are rejected") {
  CountSeq f([](std::size_t n, auto) { return Rational(n == 2 ? -1 : 1); }, true);
  CHECK(f.term(1) == 1);
  CHECK_THROWS_AS(f.term(2), NegativeCoefficient);
}

TEST_CASE("concurrent readers see identical terms") {
  const auto b = catalan_trees();
  std::vector<std::vector<Rational>> seen(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t)
    threads.emplace_back([&, t] { seen[t] = b.prefix(40); });
  for (auto& th : threads) th.join();
  for (const auto& s : seen) CHECK(s == seen.front());
}

TEST_CASE("eval of sets at one approaches e") {
  const auto r = evaluate(sets(), EvalPoint(1), 30, Rational(1, 1000000000));
  CHECK(r.status == EvalStatus::converged);
  CHECK(r.terms_used <= 30);
  CHECK(abs(r.value - oracle::e_40()) < Rational(1, 1000000000));
  REQUIRE(r.tail_bound);
  CHECK(*r.tail_bound >= 0);
  // The stated bound really bounds the discarded tail.
  CHECK(oracle::e_40() - r.value <= *r.tail_bound);
  // Value is exactly the partial sum.
  Rational partial = 0;
  for (unsigned n = 0; n < r.terms_used; ++n) partial += Rational(1) / Rational(oracle::fact(n));
  CHECK(r.value == partial);
}

TEST_CASE("eval of partitions at one approaches e^(e-1)") {
  const auto r = evaluate(partitions(), EvalPoint(1), 40, Rational(1, 1000000000));
  CHECK(r.status == EvalStatus::converged);
  CHECK(std::abs(to_double(r.value) - std::exp(std::exp(1.0) - 1.0)) < 1e-9);
}

TEST_CASE("eval of binary trees at one diverges") {
  const auto r = evaluate(catalan_trees(), EvalPoint(1), 60, Rational(1, 1000000000));
  CHECK(r.status == EvalStatus::diverged);
  CHECK_FALSE(r.tail_bound);
}

TEST_CASE("eval of linear orders inside and outside the radius") {
  CHECK(evaluate(linear_orders(), EvalPoint(Rational(1, 2)), 64, Rational(1, 1000000000)).status ==
        EvalStatus::converged);
  CHECK(evaluate(linear_orders(), EvalPoint(2), 64, Rational(1, 1000000000)).status ==
        EvalStatus::diverged);
}

TEST_CASE("eval of a polynomial is exact") {
  const auto p = from_terms({1, 1, 2, 0, 24});
  const Rational x(3, 2);
  const auto r = evaluate(p, EvalPoint(x), 8, Rational(1, 1000000000));
  CHECK(r.status == EvalStatus::converged);
  REQUIRE(r.tail_bound);
  CHECK(*r.tail_bound == 0);
  CHECK(r.value == 1 + x + x * x + x * x * x * x);

  const auto cube = singleton() * singleton() * singleton();
  const auto rc = evaluate(cube, EvalPoint(2), 8, Rational(1, 1000000000));
  CHECK(rc.status == EvalStatus::converged);
  CHECK(rc.value == 8);
}

TEST_CASE("eval does not claim convergence beyond its horizon") {
  const auto p = from_terms([] {
    std::vector<Rational> t(101, 0);
    t[100] = 1;
    return t;
  }());
  const auto r = evaluate(p, EvalPoint(1), 64, Rational(1, 1000000000));
  CHECK(r.status == EvalStatus::undecided);
  CHECK(r.value == 0);
}

TEST_CASE("eval rejects bad arguments") {
  CHECK_THROWS_AS(EvalPoint(Rational(-1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(sets(), EvalPoint(1), 7, Rational(1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(sets(), EvalPoint(1), 30, Rational(0)), std::invalid_argument);
}

TEST_CASE("closed form for binary trees") {
  const auto z = catalan_closed_form(1);
  CHECK(std::abs(z.real() - 0.5) < 1e-9);
  CHECK(std::abs(z.imag() + std::sqrt(3.0) / 2) < 1e-9);
  CHECK(std::abs(catalan_closed_form(Rational(1, 4)) - std::complex<double>(2.0, 0.0)) < 1e-12);
  const auto eighth = catalan_closed_form(Rational(1, 8));
  const auto series = evaluate(catalan_trees(), EvalPoint(Rational(1, 8)), 64, Rational(1, 100000000));
  CHECK(series.status == EvalStatus::converged);
  CHECK(eighth.imag() == 0.0);
  CHECK(std::abs(eighth.real() - to_double(series.value)) < 1e-6);
  CHECK_THROWS_AS(catalan_closed_form(0), ZeroArgument);
}

TEST_CASE("truncate keeps a prefix") {
  const auto t = truncate(sets(), 3);
  CHECK(t.prefix(5) == std::vector<Rational>{1, 1, 1, 0, 0});
  REQUIRE(t.support_bound());
  CHECK(*t.support_bound() == 3);
}
