#include "decat/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace decat {

Integer factorial(std::uint64_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Integer r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= static_cast<unsigned long>(n - i);
  return r;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int digits) {
  if (q == 0) return "0";
  // Enough binary precision for `digits` decimal digits plus guard bits.
  mpf_class f(0, static_cast<mp_bitcnt_t>(digits * 4 + 64));
  f = q;
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  for (;;) {
    int len = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    if (len < 0) throw std::runtime_error("decimal formatting failed");
    if (static_cast<std::size_t>(len) < buf.size()) break;
    buf.resize(static_cast<std::size_t>(len) + 1);
  }
  return std::string(buf.data());
}

double to_double(const Rational& q) { return q.get_d(); }

namespace {

Integer parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_digits(s.substr(0, slash), text);
    Integer den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    result = Rational(num, den);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      Integer mag = parse_digits(exp_part, text);
      if (mag > 10000) throw std::invalid_argument("exponent out of range: '" + std::string(text) + "'");
      exponent = mag.get_si() * (exp_negative ? -1 : 1);
      s = s.substr(0, e);
    }
    std::string_view int_part = s, frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
    Integer mantissa = parse_digits(std::string(int_part.empty() ? "0" : int_part) +
                                        std::string(frac_part.empty() ? "" : frac_part),
                                    text);
    exponent -= static_cast<long>(frac_part.size());
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    result = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

}  // namespace decat
