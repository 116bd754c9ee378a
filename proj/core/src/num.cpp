// SPDX-License-Identifier: MIT
#include "jh/num.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace jh {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return std::abs(a / gcd(a, b) * b);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t ipow(std::int64_t base, unsigned e) {
    std::int64_t r = 1;
    while (e--) r *= base;
    return r;
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw MathError("isqrt of negative");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(std::int64_t n) {
    if (n < 0) return false;
    std::int64_t r = isqrt(n);
    return r * r == n;
}

CharSymbol kronecker(std::int64_t a, std::int64_t p) {
    if (p <= 2 || !is_prime(p)) throw MathError("kronecker: modulus must be an odd prime");
    std::int64_t x = mod(a, p);
    if (x == 0) return CharSymbol::zero;
    // Euler's criterion by square-and-multiply.
    std::int64_t e = (p - 1) / 2, r = 1, b = x;
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % p);
        b = static_cast<std::int64_t>((__int128)b * b % p);
        e >>= 1;
    }
    return r == 1 ? CharSymbol::plus : CharSymbol::minus;
}

int kronecker_symbol(std::int64_t D, std::int64_t n) {
    if (n < 1) throw MathError("kronecker_symbol: n must be positive");
    int result = 1;
    std::int64_t m = n;
    while (m % 2 == 0) {
        m /= 2;
        std::int64_t d8 = mod(D, 8);
        if (d8 % 2 == 0) return 0;
        if (d8 == 3 || d8 == 5) result = -result;
    }
    for (std::int64_t q = 3; q * q <= m; q += 2) {
        while (m % q == 0) {
            m /= q;
            result *= to_int(kronecker(D, q));
        }
    }
    if (m > 1) result *= to_int(kronecker(D, m));
    return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
    if (n < 1) throw MathError("inv_mod: modulus must be positive");
    std::int64_t old_r = mod(a, n), r = n, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1 && n != 1) throw MathError("inv_mod: not invertible");
    return mod(old_s, n);
}

namespace {

std::mutex bern_mu;
std::vector<Rat> bern_cache{Rat(1)};

Int binom(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

Rat bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(bern_mu);
    while (bern_cache.size() <= n) {
        unsigned s = static_cast<unsigned>(bern_cache.size());
        // sum_{j<=s} C(s+1, j) B_j = 0
        Rat acc = 0;
        for (unsigned j = 0; j < s; ++j) acc += Rat(binom(s + 1, j)) * bern_cache[j];
        Rat b = -acc / Rat(s + 1);
        b.canonicalize();
        bern_cache.push_back(b);
    }
    return bern_cache[n];
}

Rat bernoulli_poly(unsigned n, const Rat& x) {
    Rat acc = 0, xp = 1;
    // B_n(x) = sum_j C(n,j) B_{n-j} x^j
    for (unsigned j = 0; j <= n; ++j) {
        acc += Rat(binom(n, j)) * bernoulli(n - j) * xp;
        xp *= x;
    }
    acc.canonicalize();
    return acc;
}

bool is_fundamental(std::int64_t D) {
    if (D == 1) return true;
    if (D == 0) return false;
    auto squarefree = [](std::int64_t x) {
        x = std::abs(x);
        for (std::int64_t q = 2; q * q <= x; ++q)
            if (x % (q * q) == 0) return false;
        return true;
    };
    if (mod(D, 4) == 1) return squarefree(D);
    if (mod(D, 4) == 0) {
        std::int64_t e = D / 4;
        std::int64_t r = mod(e, 4);
        return (r == 2 || r == 3) && squarefree(e);
    }
    return false;
}

std::pair<std::int64_t, std::int64_t> fundamental_split(std::int64_t delta) {
    if (delta == 0) throw MathError("fundamental_split: zero discriminant");
    if (mod(delta, 4) != 0 && mod(delta, 4) != 1)
        throw MathError("fundamental_split: not a discriminant");
    std::int64_t s = delta < 0 ? -1 : 1, rest = std::abs(delta), sq = 1;
    for (std::int64_t q = 2; q * q <= rest; ++q) {
        while (rest % (q * q) == 0) {
            rest /= q * q;
            sq *= q;
        }
    }
    std::int64_t core = s * rest;
    std::int64_t D0 = mod(core, 4) == 1 ? core : 4 * core;
    std::int64_t f = mod(core, 4) == 1 ? sq : sq / 2;
    if (D0 * f * f != delta || !is_fundamental(D0))
        throw MathError("fundamental_split: inconsistent factorization");
    return {D0, f};
}

Rat gen_bernoulli(unsigned r, std::int64_t D0) {
    if (!is_fundamental(D0)) throw MathError("gen_bernoulli: D0 not fundamental");
    std::int64_t F = std::abs(D0);
    Rat acc = 0;
    for (std::int64_t a = 1; a <= F; ++a) {
        int c = kronecker_symbol(D0, a);
        if (c == 0) continue;
        acc += c * bernoulli_poly(r, Rat(a) / F);
    }
    acc *= rat_pow(F, static_cast<int>(r) - 1);
    acc.canonicalize();
    return acc;
}

int moebius(std::int64_t n) {
    if (n < 1) throw MathError("moebius: n must be positive");
    int result = 1;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            n /= q;
            if (n % q == 0) return 0;
            result = -result;
        }
    }
    if (n > 1) result = -result;
    return result;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    n = std::abs(n);
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Int sigma(unsigned k, std::int64_t n) {
    Int acc = 0;
    for (std::int64_t d : divisors(n)) {
        Int t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), k);
        acc += t;
    }
    return acc;
}

Rat rat_pow(std::int64_t base, int e) { return rat_pow(Rat(static_cast<long>(base)), e); }

Rat rat_pow(const Rat& base, int e) {
    if (e < 0) {
        if (base == 0) throw MathError("rat_pow: zero to negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat r = 1, b = base;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1) r *= b;
        b *= b;
        u >>= 1;
    }
    return r;
}

std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw MathError("parse_rat: bad rational '" + s + "'");
    if (r.get_den() == 0) throw MathError("parse_rat: zero denominator");
    r.canonicalize();
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrixRows& A, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < A.size(); ++col) {
        // Pivot on the entry of smallest bit size to limit growth.
        std::size_t best = A.size();
        std::size_t best_bits = 0;
        for (std::size_t i = row; i < A.size(); ++i) {
            if (A[i][col] == 0) continue;
            std::size_t bits = mpz_sizeinbase(A[i][col].get_num_mpz_t(), 2) +
                               mpz_sizeinbase(A[i][col].get_den_mpz_t(), 2);
            if (best == A.size() || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best == A.size()) continue;
        std::swap(A[row], A[best]);
        Rat inv = Rat(1) / A[row][col];
        for (std::size_t j = col; j < ncols; ++j) A[row][j] *= inv;
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (std::size_t j = col; j < ncols; ++j)
                if (A[row][j] != 0) A[i][j] -= f * A[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<Rat>> rational_nullspace(const RatMatrixRows& M, std::size_t ncols) {
    RatMatrixRows A = M;
    for (auto& r : A)
        if (r.size() != ncols) throw MathError("rational_nullspace: ragged matrix");
    auto pivots = rref(A, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(ncols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -A[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rational_rank(const RatMatrixRows& M, std::size_t ncols) {
    RatMatrixRows A = M;
    return rref(A, ncols).size();
}

}  // namespace jh
