#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace gmprof {

using Integer = boost::multiprecision::cpp_int;

// Always reduced, with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "num/den" rendering; zero prints as "0/1".
std::string to_string(const Rational& r);
std::string to_string(const Integer& n);

Rational make_rational(const Integer& num, const Integer& den);

/// Representative of a mod n in [0, n). n must be positive.
Integer floor_mod(const Integer& a, const Integer& n);
std::int64_t floor_mod(const Integer& a, std::int64_t n);
std::int64_t floor_mod(std::int64_t a, std::int64_t n);

/// Least absolute residue of a mod n, in (-n/2, n/2].
Integer symmetric_mod(const Integer& a, const Integer& n);

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// Inverse of a modulo n (n >= 1), or nullopt when gcd(a, n) != 1.
std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t n);

/// a * b mod n in [0, n), without overflow.
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n);

std::optional<std::int64_t> to_int64(const Integer& a);

bool is_prime(const Integer& n);

}  // namespace gmprof
