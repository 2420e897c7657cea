#include "bcrate/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace bcrate {

namespace {

bool is_integer_text(std::string_view text, bool allow_sign) {
  if (text.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

BigInt pow_big(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_text(num, true) || !is_integer_text(den, false)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt p(std::string(num[0] == '+' ? num.substr(1) : num));
  BigInt q{std::string(den)};
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational out(p, q);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int places) {
  BigInt scale = pow_big(BigInt(10), static_cast<unsigned long>(places));
  Rational scaled = abs(value) * scale;
  BigInt rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string digits = rounded.get_str();
  if (static_cast<int>(digits.size()) <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = (sgn(value) < 0 ? "-" : "") + digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return out;
}

Rational make_rational(long num, long den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

BigInt common_denominator(const std::vector<Rational>& values) {
  BigInt out = 1;
  for (const auto& v : values) {
    mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), v.get_den().get_mpz_t());
  }
  return out;
}

Rational inverse_power_of_two(int exponent) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
  return Rational(BigInt(1), den);
}

Enclosure enclose_power(long base, long num, long den, long scale) {
  if (base < 1 || den <= 0 || num < 0) throw std::invalid_argument("enclose_power: bad arguments");
  // Find the largest a with (a/scale)^den <= base^num, i.e. a^den <= base^num * scale^den.
  const BigInt target = pow_big(BigInt(base), static_cast<unsigned long>(num)) *
                        pow_big(BigInt(scale), static_cast<unsigned long>(den));
  const double guess = std::pow(static_cast<double>(base), static_cast<double>(num) / static_cast<double>(den)) *
                       static_cast<double>(scale);
  BigInt a(std::floor(guess));
  if (a < 0) a = 0;
  while (pow_big(a, static_cast<unsigned long>(den)) > target) --a;
  while (pow_big(a + 1, static_cast<unsigned long>(den)) <= target) ++a;
  Enclosure out;
  out.lower = Rational(a, BigInt(scale));
  out.lower.canonicalize();
  const bool exact = pow_big(a, static_cast<unsigned long>(den)) == target;
  out.upper = exact ? out.lower : Rational(a + 1, BigInt(scale));
  out.upper.canonicalize();
  return out;
}

Enclosure enclose_log2(const Rational& value, long scale) {
  if (value < 1) throw std::invalid_argument("enclose_log2: value must be >= 1");
  // Largest a with 2^(a/scale) <= value, i.e. 2^a * den^scale <= num^scale.
  const BigInt lhs_den = pow_big(value.get_den(), static_cast<unsigned long>(scale));
  const BigInt rhs = pow_big(value.get_num(), static_cast<unsigned long>(scale));
  auto fits = [&](long a) {
    BigInt two;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(a));
    return two * lhs_den <= rhs;
  };
  long a = static_cast<long>(std::floor(std::log2(value.get_d()) * static_cast<double>(scale)));
  if (a < 0) a = 0;
  while (a > 0 && !fits(a)) --a;
  while (fits(a + 1)) ++a;
  Enclosure out;
  out.lower = make_rational(a, scale);
  BigInt two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(a));
  out.upper = (two * lhs_den == rhs) ? out.lower : make_rational(a + 1, scale);
  return out;
}

}  // namespace bcrate
