// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jh/cyclotomic.hpp"
#include "jh/num.hpp"

#include <random>
#include <set>

using namespace jh;
using i64 = std::int64_t;

namespace {

int legendre_by_squares(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == a) return 1;
    return -1;
}

// B_{n,chi} from the generating function sum_a chi(a) t e^{at} / (e^{ft} - 1),
// by exact power-series division; shares nothing with bernoulli_poly.
Rat bernoulli_by_series(unsigned n, const std::vector<int>& chi) {
    const i64 f = static_cast<i64>(chi.size());
    std::vector<Rat> fact(n + 2, Rat(1));
    for (unsigned j = 1; j < n + 2; ++j) fact[j] = fact[j - 1] * j;
    // G(t) = (e^{ft} - 1) / t and H(t) = sum_a chi(a) e^{at}.
    std::vector<Rat> G(n + 1), H(n + 1), F(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        G[j] = Rat(rat_pow(Rat(f), int(j) + 1)) / fact[j + 1];
        Rat s = 0;
        for (i64 a = 1; a <= f; ++a) s += chi[a - 1] * rat_pow(Rat(a), int(j));
        H[j] = s / fact[j];
    }
    for (unsigned j = 0; j <= n; ++j) {
        Rat s = H[j];
        for (unsigned i = 0; i < j; ++i) s -= F[i] * G[j - i];
        F[j] = s / G[0];
    }
    return F[n] * fact[n];
}

}  // namespace

TEST_SUITE("numkernel") {

TEST_CASE("kronecker examples") {
    CHECK(kronecker(1, 3) == CharSymbol::plus);
    CHECK(kronecker(3, 3) == CharSymbol::zero);
    CHECK(kronecker(2, 3) == CharSymbol::minus);
}

TEST_CASE("kronecker agrees with square tables for p < 100") {
    for (i64 p = 3; p < 100; ++p) {
        if (!is_prime(p)) continue;
        for (i64 a = -2 * p; a <= 2 * p; ++a) {
            REQUIRE(to_int(kronecker(a, p)) == legendre_by_squares(a, p));
            CHECK(kronecker(a, p) == kronecker(mod(a, p), p));
        }
        for (i64 a = 1; a < p; ++a)
            for (i64 b = 1; b < p; ++b)
                CHECK(to_int(kronecker(a * b, p)) == to_int(kronecker(a, p)) * to_int(kronecker(b, p)));
    }
}

TEST_CASE("inv_mod") {
    CHECK(inv_mod(3, 2) == 1);
    CHECK(inv_mod(3, 4) == 3);
    CHECK(inv_mod(5, 4) == 1);
    for (i64 n = 2; n < 60; ++n)
        for (i64 a = -n; a < 2 * n; ++a)
            if (gcd(a, n) == 1) CHECK(mod(inv_mod(a, n) * a, n) == 1);
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rat(-1) / 2);
    CHECK(bernoulli(2) == Rat(1) / 6);
    for (unsigned n = 3; n < 40; n += 2) CHECK(bernoulli(n) == 0);
    // Power sums: sum_{a<N} a^n = (B_{n+1}(N) - B_{n+1}) / (n+1).
    for (unsigned n = 1; n < 12; ++n)
        for (i64 N = 1; N < 8; ++N) {
            Rat s = 0;
            for (i64 a = 0; a < N; ++a) s += rat_pow(Rat(a), int(n));
            CHECK(s == (bernoulli_poly(n + 1, Rat(N)) - bernoulli(n + 1)) / (n + 1));
        }
}

TEST_CASE("generalized bernoulli against the generating function") {
    const std::vector<int> chi3{1, -1, 0}, chi4{1, 0, -1, 0};
    CHECK(gen_bernoulli(3, -3) == bernoulli_by_series(3, chi3));
    CHECK(gen_bernoulli(3, -4) == bernoulli_by_series(3, chi4));
    for (i64 D0 : {-3, -4, 5, -7, -8, 8, 12, -15}) {
        REQUIRE(is_fundamental(D0));
        const i64 f = D0 < 0 ? -D0 : D0;
        std::vector<int> chi;
        for (i64 a = 1; a <= f; ++a) chi.push_back(kronecker_symbol(D0, a));
        for (unsigned r = 1; r <= 7; ++r) CHECK(gen_bernoulli(r, D0) == bernoulli_by_series(r, chi));
    }
}

TEST_CASE("generalized bernoulli for the trivial character") {
    CHECK(gen_bernoulli(1, 1) == Rat(1) / 2);
    for (unsigned r = 2; r < 12; ++r) CHECK(gen_bernoulli(r, 1) == bernoulli(r));
    CHECK(gen_bernoulli(4, 1) == bernoulli_by_series(4, {1}));
}

TEST_CASE("fundamental_split") {
    CHECK(fundamental_split(-3) == std::pair<i64, i64>{-3, 1});
    CHECK(fundamental_split(-4) == std::pair<i64, i64>{-4, 1});
    CHECK(fundamental_split(-12) == std::pair<i64, i64>{-3, 2});
    for (i64 d = -400; d <= 400; ++d) {
        if (d == 0 || mod(d, 4) > 1) continue;
        auto [D0, f] = fundamental_split(d);
        CHECK(D0 * f * f == d);
        CHECK(is_fundamental(D0));
    }
}

TEST_CASE("rational nullspace") {
    CHECK(rational_nullspace({{0, 0}, {0, 0}}, 2).size() == 2);
    CHECK(rational_nullspace({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3).empty());
    auto ns = rational_nullspace({{1, 1}}, 2);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0][0] == -ns[0][1]);
    CHECK(ns[0][0] != 0);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + trial % 5, cols = 2 + trial % 6;
        RatMatrixRows M(rows, std::vector<Rat>(cols));
        for (auto& row : M)
            for (auto& x : row) x = Rat(d(rng)) / (1 + trial % 3);
        auto basis = rational_nullspace(M, cols);
        CHECK(basis.size() + rational_rank(M, cols) == cols);
        for (const auto& v : basis)
            for (const auto& row : M) {
                Rat s = 0;
                for (std::size_t j = 0; j < cols; ++j) s += row[j] * v[j];
                CHECK(s == 0);
            }
    }
}

TEST_CASE("cyclotomic sums") {
    CHECK((CycScalar::root(2, 1) + CycScalar(2, 1)).is_zero());
    CycScalar s(9), t(9);
    for (i64 a = 0; a < 9; ++a) {
        s += CycScalar::root(9, a);
        t += CycScalar::root(9, 3 * a);
    }
    CHECK(s.is_zero());
    CHECK(t.is_zero());
    for (i64 n : {1, 4, 9, 12})
        for (i64 a = -13; a < 13; ++a) CHECK(root_sum(n, a) == (mod(a, n) == 0 ? n : 0));
}

TEST_CASE("cyclotomic ring laws") {
    const i64 n = 12;
    for (i64 a = 0; a < n; ++a)
        for (i64 b = 0; b < n; ++b) CHECK(CycScalar::root(n, a) * CycScalar::root(n, b) == CycScalar::root(n, a + b));
    CycScalar x = CycScalar::root(n, 1) * Rat(3) + CycScalar(n, Rat(1) / 2);
    CycScalar y = CycScalar::root(n, 5) - CycScalar::root(n, 7) * Rat(2);
    CycScalar z = CycScalar::root(n, 11) + CycScalar(n, -4);
    CHECK(x * y == y * x);
    CHECK((x + y) * z == x * z + y * z);
    CHECK((x * y) * z == x * (y * z));
    CHECK((CycScalar(n, Rat(2) / 3) * CycScalar(n, Rat(9) / 4)).rational_value() == Rat(3) / 2);
    // e(1/4) + e(3/4) = 0 and e(1/3) + e(2/3) = -1 are rational.
    CHECK((CycScalar::root(n, 3) + CycScalar::root(n, 9)).is_zero());
    CHECK((CycScalar::root(n, 4) + CycScalar::root(n, 8)).rational_value() == -1);
    CHECK(!CycScalar::root(n, 1).is_rational());
}

}  // TEST_SUITE
