#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace taut2 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Bad input: unsupported lambda, missing cache, malformed arguments.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant that should hold by construction was violated. Signals a bug
// or corrupted data, never a user mistake.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Integer ipow(const Integer& base, unsigned exp);
Integer ipow(std::int64_t base, unsigned exp);

bool is_prime(std::int64_t n);

// "n" or "n/d" in lowest terms.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

}  // namespace taut2
