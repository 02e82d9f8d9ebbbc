#pragma once

#include <span>
#include <vector>

#include "walkforge/field.hpp"

namespace walkforge::poly {

/// Dense polynomial, little-endian coefficients, no trailing zeros.
/// The zero polynomial is the empty vector.
using Poly = std::vector<Fe>;

void normalize(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial
bool is_zero(const Poly& a);

Poly add(const PrimeField& f, const Poly& a, const Poly& b);
Poly sub(const PrimeField& f, const Poly& a, const Poly& b);
Poly mul(const PrimeField& f, const Poly& a, const Poly& b);
Poly scale(const PrimeField& f, const Poly& a, Fe c);
Poly make_monic(const PrimeField& f, const Poly& a);

/// (quotient, remainder) with b != 0.
std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b);

/// True when a divides b exactly (remainder zero). The zero polynomial is
/// divisible by everything nonzero.
bool divides(const PrimeField& f, const Poly& a, const Poly& b);

Poly gcd(const PrimeField& f, Poly a, Poly b);  // monic

/// x^r + c_{r-1} x^{r-1} + ... + c_0 from companion coefficients c_0..c_{r-1}.
Poly from_companion_coeffs(const PrimeField& f, std::span<const Fe> c);

bool equal(const Poly& a, const Poly& b);

}  // namespace walkforge::poly
