#pragma once

#include <gmpxx.h>

#include <string>

namespace bvc {

// All protocol, geometry, and matrix arithmetic is exact. Rational is
// arbitrary-precision and always kept in canonical form (gcd 1, positive
// denominator); BigInt backs combinatorial counts that overflow machine words.
using Rational = mpq_class;
using BigInt = mpz_class;

// C(n, k); zero when k > n.
BigInt binomial(unsigned long n, unsigned long k);

// q^e for e >= 0.
Rational pow_rational(const Rational& q, unsigned long e);

Rational abs_rational(const Rational& q);

// Accepts integers ("-3"), fractions ("5/4", "-7/2"), and decimal literals
// ("0.25", "-1.5"); fractions are canonicalized. Throws std::invalid_argument
// on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

// Canonical form: "n" when the denominator is 1, otherwise "n/d". Reparses to
// the same value.
std::string format_rational(const Rational& q);

}  // namespace bvc
