#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace elastica {

// Exact rational scalar. All symbolic identities in the library are asserted
// with these, never with floating tolerances.
using Rational = mpq_class;
using Integer = mpz_class;

// Canonical string form: "p" for integers, "p/q" otherwise (q > 0, gcd(p,q)=1).
std::string rat_to_string(const Rational& r);

// Accepts "p", "p/q", optional leading sign. Throws std::invalid_argument on
// malformed input or zero denominator. Result is canonicalized.
Rational rat_from_string(const std::string& s);

double rat_to_double(const Rational& r);

// Exact square root if r is a perfect rational square (r >= 0), else nullopt.
std::optional<Rational> rat_exact_sqrt(const Rational& r);

// Best rational approximation of x with denominator <= max_den
// (continued-fraction convergents/semiconvergents).
Rational rat_round(double x, unsigned long max_den);

// Small dense exact matrices (row-major).
using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix rat_identity(int n);
Rational rat_det(RatMatrix a);                       // Gaussian elimination, exact
std::optional<RatMatrix> rat_inverse(RatMatrix a);   // nullopt when singular
RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b);

}  // namespace elastica
