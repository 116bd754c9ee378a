// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jh {

using Int = mpz_class;
using Rat = mpq_class;

/* Value of a quadratic character: -1, 0 or +1. */
enum class CharSymbol : int { minus = -1, zero = 0, plus = 1 };

inline int to_int(CharSymbol c) { return static_cast<int>(c); }

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Least non-negative residue; n > 0.
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
bool is_prime(std::int64_t n);
std::int64_t ipow(std::int64_t base, unsigned e);
// Floor of the square root for n >= 0.
std::int64_t isqrt(std::int64_t n);
bool is_square(std::int64_t n);

// Legendre symbol (a/p) for an odd prime p.
CharSymbol kronecker(std::int64_t a, std::int64_t p);
// Kronecker symbol (D/n) for any integer D and n >= 1.
int kronecker_symbol(std::int64_t D, std::int64_t n);

// a * result == 1 (mod n), result in [0, n).
std::int64_t inv_mod(std::int64_t a, std::int64_t n);

// Bernoulli numbers with B_1 = -1/2.
Rat bernoulli(unsigned n);
Rat bernoulli_poly(unsigned n, const Rat& x);
// B_{r,chi} for chi the Kronecker character of the fundamental discriminant D0.
// For D0 = 1 the defining sum is taken verbatim: B_r(1), which is bernoulli(r)
// except B_{1,1} = +1/2.
Rat gen_bernoulli(unsigned r, std::int64_t D0);

bool is_fundamental(std::int64_t D);
// delta = D0 * f^2 with D0 fundamental and f > 0.
std::pair<std::int64_t, std::int64_t> fundamental_split(std::int64_t delta);

int moebius(std::int64_t n);
Int sigma(unsigned k, std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

Rat rat_pow(std::int64_t base, int e);
Rat rat_pow(const Rat& base, int e);

// "num/den" with den omitted when 1.
std::string to_string(const Rat& x);
Rat parse_rat(const std::string& s);

// Right nullspace of an exact matrix (rows of equal length ncols).
using RatMatrixRows = std::vector<std::vector<Rat>>;
std::vector<std::vector<Rat>> rational_nullspace(const RatMatrixRows& M, std::size_t ncols);
std::size_t rational_rank(const RatMatrixRows& M, std::size_t ncols);

}  // namespace jh
