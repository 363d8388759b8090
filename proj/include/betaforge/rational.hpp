#pragma once

#include <gmpxx.h>

#include <string>

#include "betaforge/errors.hpp"

namespace betaforge {

// All arithmetic in the library is exact. GMP supplies the integer and rational
// types; floating point appears only in human-facing display helpers.
using BigInt = mpz_class;
using BigRational = mpq_class;

// num/den in lowest terms with positive denominator.
BigRational make_rational(const BigInt& num, const BigInt& den);

// Accepts "7", "-7", "7/3", "-7/3". Whitespace is not tolerated.
BigRational parse_rational(const std::string& text);
BigInt parse_integer(const std::string& text);

// "num" or "num/den"; always lowest terms, denominator positive.
std::string format_rational(const BigRational& q);

int sign_of(const BigRational& q);
int sign_of(const BigInt& z);

BigRational rational_pow(const BigRational& base, long exp);
BigInt int_pow(const BigInt& base, unsigned long exp);

// floor(sqrt(z)); z must be nonnegative.
BigInt isqrt(const BigInt& z);

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);

double to_double(const BigRational& q);

} // namespace betaforge
