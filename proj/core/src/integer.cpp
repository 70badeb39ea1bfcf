#include "gmprof/integer.hpp"

#include <limits>
#include <stdexcept>

namespace gmprof {

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const Integer& n) { return n.str(); }

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  // The two-argument constructor rejects negative denominators.
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

Integer floor_mod(const Integer& a, const Integer& n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r;
}

std::int64_t floor_mod(const Integer& a, std::int64_t n) {
  Integer r = a % n;
  if (r < 0) r += n;
  return r.convert_to<std::int64_t>();
}

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

Integer symmetric_mod(const Integer& a, const Integer& n) {
  Integer r = floor_mod(a, n);
  if (2 * r > n) r -= n;
  return r;
}

Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t n) {
  if (n == 1) return 0;
  // extended Euclid on (a mod n, n)
  std::int64_t old_r = floor_mod(a, n), r = n;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  return floor_mod(static_cast<std::int64_t>(old_s % n), n);
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return floor_mod(Integer(a) * b, n);
}

std::optional<std::int64_t> to_int64(const Integer& a) {
  if (a > std::numeric_limits<std::int64_t>::max() ||
      a < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return a.convert_to<std::int64_t>();
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Integer d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace gmprof
