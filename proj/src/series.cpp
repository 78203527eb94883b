#include "decat/series.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "decat/errors.hpp"

namespace decat::series {

struct CountSeq::State {
  Producer producer;
  bool integral;
  std::optional<std::size_t> support;
  std::recursive_mutex mutex;
  std::vector<Rational> memo;
};

CountSeq::CountSeq(Producer producer, bool integral, std::optional<std::size_t> support)
    : state_(std::make_shared<State>()) {
  state_->producer = std::move(producer);
  state_->integral = integral;
  state_->support = support;
}

Rational CountSeq::term(std::size_t n) const {
  std::lock_guard lock(state_->mutex);
  auto& memo = state_->memo;
  while (memo.size() <= n) {
    const std::size_t k = memo.size();
    Rational v = (state_->support && k >= *state_->support)
                     ? Rational(0)
                     : state_->producer(k, std::span<const Rational>(memo));
    v.canonicalize();
    if (v < 0) throw NegativeCoefficient(k);
    if (state_->integral && !is_integral(v))
      throw std::logic_error("integral sequence produced fractional term " + decat::to_string(v));
    memo.push_back(std::move(v));
  }
  return memo[n];
}

Rational CountSeq::egf(std::size_t n) const { return Rational(term(n) / factorial(n)); }

std::vector<Rational> CountSeq::prefix(std::size_t count) const {
  std::vector<Rational> out;
  out.reserve(count);
  if (count > 0) term(count - 1);
  for (std::size_t n = 0; n < count; ++n) out.push_back(term(n));
  return out;
}

bool CountSeq::integral() const { return state_->integral; }

std::optional<std::size_t> CountSeq::support_bound() const { return state_->support; }

CountSeq zero() {
  return CountSeq([](std::size_t, auto) { return Rational(0); }, true, 0);
}

CountSeq one() {
  return CountSeq([](std::size_t n, auto) { return Rational(n == 0 ? 1 : 0); }, true, 1);
}

CountSeq singleton() {
  return CountSeq([](std::size_t n, auto) { return Rational(n == 1 ? 1 : 0); }, true, 2);
}

CountSeq sets() {
  return CountSeq([](std::size_t, auto) { return Rational(1); }, true);
}

CountSeq nonempty_sets() {
  return CountSeq([](std::size_t n, auto) { return Rational(n == 0 ? 0 : 1); }, true);
}

CountSeq linear_orders() {
  return CountSeq(
      [](std::size_t n, std::span<const Rational> prev) {
        return n == 0 ? Rational(1) : Rational(prev[n - 1] * static_cast<unsigned long>(n));
      },
      true);
}

CountSeq from_terms(std::vector<Rational> terms) {
  std::size_t support = terms.size();
  while (support > 0 && terms[support - 1] == 0) --support;
  bool integral = std::all_of(terms.begin(), terms.end(), is_integral);
  auto shared = std::make_shared<const std::vector<Rational>>(std::move(terms));
  return CountSeq([shared](std::size_t n, auto) { return (*shared)[n]; }, integral, support);
}

CountSeq truncate(const CountSeq& f, std::size_t count) {
  std::size_t support = f.support_bound() ? std::min(*f.support_bound(), count) : count;
  return CountSeq([f](std::size_t n, auto) { return f.term(n); }, f.integral(), support);
}

namespace {

std::optional<std::size_t> max_support(const CountSeq& f, const CountSeq& g) {
  if (f.support_bound() && g.support_bound())
    return std::max(*f.support_bound(), *g.support_bound());
  return std::nullopt;
}

std::optional<std::size_t> product_support(const CountSeq& f, const CountSeq& g) {
  auto sf = f.support_bound(), sg = g.support_bound();
  if ((sf && *sf == 0) || (sg && *sg == 0)) return 0;
  if (sf && sg) return *sf + *sg - 1;
  return std::nullopt;
}

}  // namespace

CountSeq add(const CountSeq& f, const CountSeq& g) {
  return CountSeq([f, g](std::size_t n, auto) { return Rational(f.term(n) + g.term(n)); },
                  f.integral() && g.integral(), max_support(f, g));
}

CountSeq multiply(const CountSeq& f, const CountSeq& g) {
  return CountSeq(
      [f, g](std::size_t n, auto) {
        Rational sum = 0;
        Integer choose = 1;  // C(n, m)
        for (std::size_t m = 0; m <= n; ++m) {
          if (m > 0) {
            choose *= static_cast<unsigned long>(n - m + 1);
            choose /= static_cast<unsigned long>(m);
          }
          const Rational fm = f.term(m);
          if (fm == 0) continue;
          const Rational gr = g.term(n - m);
          if (gr == 0) continue;
          sum += choose * fm * gr;
        }
        return sum;
      },
      f.integral() && g.integral(), product_support(f, g));
}

namespace {

// Truncated substitution on EGF coefficients: [x^n] Σ_k (f_k/k!) G(x)^k,
// with the table of powers G^k grown one degree per call.
struct ComposeState {
  std::vector<Rational> inner_egf;               // [x^n] G
  std::vector<std::vector<Rational>> powers;     // powers[k][n] = [x^n] G^k
};

}  // namespace

CountSeq compose(const CountSeq& f, const CountSeq& g) {
  if (g.term(0) != 0) throw NonzeroConstantTerm();

  std::optional<std::size_t> support;
  if (auto sf = f.support_bound(), sg = g.support_bound(); sf && sg)
    support = *sf == 0 ? 0 : (*sf - 1) * (*sg == 0 ? 0 : *sg - 1) + 1;

  auto state = std::make_shared<ComposeState>();
  return CountSeq(
      [f, g, state](std::size_t n, auto) {
        auto& egf = state->inner_egf;
        auto& powers = state->powers;
        egf.push_back(g.egf(n));
        if (n == 0) {
          powers.push_back({Rational(1)});
        } else {
          powers[0].push_back(0);
          for (std::size_t k = 1; k < n; ++k) {
            Rational c = 0;
            for (std::size_t m = 1; m + k - 1 <= n; ++m) c += egf[m] * powers[k - 1][n - m];
            powers[k].push_back(std::move(c));
          }
          // Row k = n starts here; G^n has no terms below degree n.
          std::vector<Rational> row(n, Rational(0));
          row.push_back(Rational(egf[1] * powers[n - 1][n - 1]));
          powers.push_back(std::move(row));
        }
        Rational h = 0;
        for (std::size_t k = 0; k <= n; ++k) {
          if (powers[k][n] == 0) continue;
          const Rational fk = f.term(k);
          if (fk == 0) continue;
          h += fk / factorial(k) * powers[k][n];
        }
        return Rational(h * factorial(n));
      },
      f.integral() && g.integral(), support);
}

CountSeq derive(const CountSeq& f) {
  std::optional<std::size_t> support;
  if (auto s = f.support_bound()) support = *s == 0 ? 0 : *s - 1;
  return CountSeq([f](std::size_t n, auto) { return f.term(n + 1); }, f.integral(), support);
}

CountSeq point(const CountSeq& f) {
  std::optional<std::size_t> support;
  if (auto s = f.support_bound()) support = *s == 0 ? 0 : *s + 1;
  return CountSeq(
      [f](std::size_t n, auto) {
        return n == 0 ? Rational(0) : Rational(f.term(n - 1) * static_cast<unsigned long>(n));
      },
      f.integral(), support);
}

namespace {

// Known terms below n, `at_n` at n and `tail` everywhere above.
CountSeq candidate(std::vector<Rational> known, const Rational& at_n, const Rational& tail) {
  const std::size_t n = known.size();
  bool integral = is_integral(at_n) && is_integral(tail) &&
                  std::all_of(known.begin(), known.end(), is_integral);
  std::optional<std::size_t> support;
  if (tail == 0) support = at_n == 0 ? n : n + 1;
  auto shared = std::make_shared<const std::vector<Rational>>(std::move(known));
  return CountSeq(
      [shared, at_n, tail, n](std::size_t k, auto) {
        if (k < n) return (*shared)[k];
        return k == n ? at_n : tail;
      },
      integral, support);
}

}  // namespace

CountSeq fixpoint(std::function<CountSeq(const CountSeq&)> body, std::size_t max_order) {
  const bool integral = body(zero()).integral();
  return CountSeq(
      [body = std::move(body), max_order](std::size_t n, std::span<const Rational> previous) {
        if (n >= max_order) throw TruncationExceeded(n, max_order);
        std::vector<Rational> known(previous.begin(), previous.end());

        // Kleene iteration on coefficient n, lower coefficients frozen.
        Rational value = 0;
        bool stable = false;
        for (std::size_t iter = 0; iter <= n + 2 && !stable; ++iter) {
          Rational next = body(candidate(known, value, 0)).term(n);
          stable = next == value;
          value = std::move(next);
        }
        if (!stable) throw NotGuarded(n);

        // The stabilized value must not depend on coefficients n, n+1, ...
        // Raising them can only raise a nonnegative expression that uses them.
        Rational perturbed;
        try {
          perturbed = body(candidate(known, value + 1, 1)).term(n);
        } catch (const NonzeroConstantTerm&) {
          if (n != 0) throw;
          // A composition pins the constant term to zero; perturb the rest.
          perturbed = body(candidate(known, value, 1)).term(n);
        }
        if (perturbed != value) throw NotGuarded(n);
        return value;
      },
      integral);
}

EvalPoint::EvalPoint(Rational x) : x_(std::move(x)) {
  if (x_ < 0) throw std::invalid_argument("evaluation point must be nonnegative");
}

const char* to_string(EvalStatus status) {
  switch (status) {
    case EvalStatus::converged: return "converged";
    case EvalStatus::diverged: return "diverged";
    case EvalStatus::undecided: return "undecided";
  }
  return "undecided";
}

EvalResult accumulate(const std::function<Rational(std::size_t)>& summand,
                      std::optional<std::size_t> support, std::size_t max_terms,
                      const Rational& tol) {
  if (max_terms < kMinTerms)
    throw std::invalid_argument("max_terms must be at least " + std::to_string(kMinTerms));
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");

  EvalResult result;
  if (support && *support <= max_terms) {
    for (std::size_t n = 0; n < *support; ++n) result.value += summand(n);
    result.terms_used = *support;
    result.status = EvalStatus::converged;
    result.tail_bound = Rational(0);
    return result;
  }

  std::deque<Rational> recent;  // last kRatioWindow+1 nonzero |summands|
  std::deque<Rational> ratios;  // last kRatioWindow ratios between them
  std::optional<Rational> first_nonzero;

  auto geometric_tail = [&]() -> std::optional<Rational> {
    if (ratios.size() < kRatioWindow) return std::nullopt;
    Rational r_max = *std::max_element(ratios.begin(), ratios.end());
    if (r_max >= 1) return std::nullopt;
    return Rational(recent.back() * r_max / (1 - r_max));
  };

  for (std::size_t n = 0; n < max_terms; ++n) {
    Rational s = summand(n);
    result.value += s;
    result.terms_used = n + 1;
    if (s == 0) continue;
    Rational magnitude = abs(s);
    if (!first_nonzero) first_nonzero = magnitude;
    if (!recent.empty()) {
      ratios.push_back(magnitude / recent.back());
      if (ratios.size() > kRatioWindow) ratios.pop_front();
    }
    recent.push_back(std::move(magnitude));
    if (recent.size() > kRatioWindow + 1) recent.pop_front();

    if (result.terms_used >= kMinTerms) {
      if (auto tail = geometric_tail(); tail && *tail < tol) {
        result.status = EvalStatus::converged;
        result.tail_bound = std::move(*tail);
        return result;
      }
    }
  }

  if (auto tail = geometric_tail()) {
    result.status = EvalStatus::converged;
    result.tail_bound = std::move(*tail);
  } else if (recent.size() == kRatioWindow + 1 &&
             std::is_sorted(recent.begin(), recent.end()) && recent.back() > *first_nonzero) {
    result.status = EvalStatus::diverged;
  } else {
    result.status = EvalStatus::undecided;
  }
  return result;
}

EvalResult evaluate(const CountSeq& f, const EvalPoint& at, std::size_t max_terms,
                    const Rational& tol) {
  Rational power = 1;  // x^n / n!
  auto summand = [&](std::size_t n) {
    if (n > 0) power = power * at.x() / static_cast<unsigned long>(n);
    return Rational(f.term(n) * power);
  };
  return accumulate(summand, f.support_bound(), max_terms, tol);
}

std::complex<double> catalan_closed_form(const Rational& at) {
  if (at == 0) throw ZeroArgument();
  const double x = to_double(at);
  const double d = 1.0 - 4.0 * x;
  const std::complex<double> root =
      d >= 0 ? std::complex<double>(std::sqrt(d), 0.0) : std::complex<double>(0.0, std::sqrt(-d));
  return (1.0 - root) / (2.0 * x);
}

}  // namespace decat::series
