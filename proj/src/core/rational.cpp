#include "pgn/core/rational.hpp"

#include <cctype>
#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace pgn {

namespace {

Rational parse_decimal(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::string digits;
  long long scale = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --scale;
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("not a number: " + std::string(s));
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::string ex(s.substr(i));
    if (ex.empty()) throw std::invalid_argument("bad exponent: " + std::string(s));
    std::size_t used = 0;
    long long e = 0;
    try {
      e = std::stoll(ex, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent: " + std::string(s));
    }
    if (used != ex.size() || e > 4000 || e < -4000)
      throw std::invalid_argument("bad exponent: " + std::string(s));
    scale += e;
    i = s.size();
  }
  if (i != s.size()) throw std::invalid_argument("trailing characters: " + std::string(s));
  mpz_class num(digits.empty() ? "0" : digits, 10);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r;
  if (scale >= 0)
    r = Rational(num * p10);
  else
    r = Rational(num, p10);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s);
  Rational p = parse_decimal(trim(s.substr(0, slash)));
  Rational q = parse_decimal(trim(s.substr(slash + 1)));
  if (q == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational r = p / q;
  r.canonicalize();
  return r;
}

Rational frac(long p, long q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  Rational r = x;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rational(x);
}

// Round to nearest: a 55-56 bit quotient with a sticky bit, converted
// through uint64 (which rounds correctly), then scaled.
double to_double(const Rational& x) {
  Rational r = x;
  r.canonicalize();
  if (r == 0) return 0.0;
  mpz_class a = abs(r.get_num()), b = r.get_den();
  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
  long s = 55 - e;
  if (s > 0)
    a <<= static_cast<mp_bitcnt_t>(s);
  else
    b <<= static_cast<mp_bitcnt_t>(-s);
  mpz_class q, rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (rem != 0) q |= 1;
  auto bits = static_cast<std::uint64_t>(mpz_get_ui(q.get_mpz_t()));
  double d = std::ldexp(static_cast<double>(bits), static_cast<int>(-s));
  return r < 0 ? -d : d;
}

bool is_double_exact(const Rational& r) {
  double d = mpq_get_d(r.get_mpq_t());
  if (!std::isfinite(d)) return false;
  return Rational(d) == r;
}

Rational floor_rational(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

Rational ceil_rational(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rational(q);
}

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace pgn
