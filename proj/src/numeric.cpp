#include "dhl/core/numeric.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace dhl {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw DomainError("empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
      throw DomainError("bad rational literal: " + text);
    Rational r(mpz_class(num), mpz_class(den));
    if (r.get_den() == 0) throw DomainError("zero denominator: " + text);
    r.canonicalize();
    return r;
  }

  // Decimal (optionally exponent) literal, converted by its printed digits.
  std::string mantissa = s;
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = s.substr(0, epos);
    std::string es = s.substr(epos + 1);
    if (!is_integer_literal(es)) throw DomainError("bad exponent: " + text);
    exponent = std::strtol(es.c_str(), nullptr, 10);
  }
  bool neg = false;
  size_t i = 0;
  if (!mantissa.empty() && (mantissa[0] == '+' || mantissa[0] == '-')) {
    neg = mantissa[0] == '-';
    i = 1;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '.') {
      if (seen_dot) throw DomainError("bad rational literal: " + text);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw DomainError("bad rational literal: " + text);
    }
  }
  if (!seen_digit) throw DomainError("bad rational literal: " + text);

  mpz_class num(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  long net = exponent - frac_digits;
  mpz_class den = 1;
  if (net >= 0) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(net));
    num *= scale;
  } else {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(-net));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string BigFloat::to_string(int sig_digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() > 0 ? "inf" : "-inf";
  char* s = nullptr;
  // mpfr_asprintf with %.*Rg gives shortest-faithful within the digit budget.
  mpfr_asprintf(&s, "%.*Rg", sig_digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace dhl
