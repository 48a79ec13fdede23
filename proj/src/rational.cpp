#include "artgallery/rational.hpp"

#include <cctype>
#include <cmath>

namespace artgallery {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t first = 0;
  while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  s = s.substr(first);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos)
      throw std::invalid_argument("malformed rational literal: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("malformed rational literal: " + s);
    Integer num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
      throw std::invalid_argument("malformed rational literal: " + s);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  Rational r;
  if (r.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

Rational pow(const Rational& base, unsigned long exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

Rational pow2(long exp) {
  Rational out(1);
  if (exp >= 0)
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(exp));
  else
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-exp));
  return out;
}

long floor_log2(const Rational& value) {
  if (sgn(value) <= 0) throw std::invalid_argument("floor_log2 of non-positive value");
  // Start from the difference of bit lengths, then correct by at most one.
  long ell = static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(value.get_den_mpz_t(), 2));
  while (pow2(ell) > value) --ell;
  while (pow2(ell + 1) <= value) ++ell;
  return ell;
}

Integer floor(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

double approx(const Rational& r) {
  const double n = mpz_get_d(r.get_num_mpz_t());
  const double d = mpz_get_d(r.get_den_mpz_t());
  if (!std::isfinite(n) || !std::isfinite(d)) return std::nan("");
  return n / d;
}

double ln(const Rational& r) {
  if (sgn(r) <= 0) throw std::invalid_argument("ln of non-positive value");
  long exp_num = 0;
  long exp_den = 0;
  const double num = mpz_get_d_2exp(&exp_num, r.get_num_mpz_t());
  const double den = mpz_get_d_2exp(&exp_den, r.get_den_mpz_t());
  return std::log(num) - std::log(den) + static_cast<double>(exp_num - exp_den) * std::log(2.0);
}

}  // namespace artgallery
