// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jh/constructors.hpp"
#include "jh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace jh;
using i64 = std::int64_t;

namespace {

// Every x in the box |x_i| <= sqrt(2 maxnorm (G^-1)_ii) with x.x <= 2 maxnorm.
std::vector<IVec> box_scan(const Lattice& L, i64 maxnorm) {
    const int n = L.rank();
    RatMat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = L.gram[i][j];
    RatMat Gi = G.inverse();
    IVec bound(n);
    for (int i = 0; i < n; ++i) bound[i] = static_cast<i64>(std::floor(std::sqrt(2.0 * maxnorm * Gi(i, i).get_d())));
    std::vector<IVec> out;
    IVec x(n);
    for (int i = 0; i < n; ++i) x[i] = -bound[i];
    for (;;) {
        if (L.norm(x) <= 2 * maxnorm) out.push_back(x);
        int i = n - 1;
        while (i >= 0 && x[i] == bound[i]) x[i] = -bound[i], --i;
        if (i < 0) break;
        ++x[i];
    }
    return out;
}

Lattice d4d4() {
    const IMat d4 = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    IMat g(8, IVec(8, 0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = g[i + 4][j + 4] = d4[i][j];
    IVec v(8, 0);
    v[0] = 1;
    return {g, v};
}

}  // namespace

TEST_SUITE("constructors") {

TEST_CASE("short vector enumeration") {
    const Lattice E8 = e8_lattice(2);
    CHECK(enumerate_short_vectors(E8, 0) == std::vector<IVec>{IVec(8, 0)});
    auto roots = enumerate_short_vectors(E8, 1);
    CHECK(roots.size() == 241);
    CHECK(std::is_sorted(roots.begin(), roots.end()));
    auto box = box_scan(E8, 1);
    std::sort(box.begin(), box.end());
    CHECK(box == roots);
    std::set<IVec> s(roots.begin(), roots.end());
    for (const auto& x : roots) {
        IVec y = x;
        for (auto& c : y) c = -c;
        CHECK(s.count(y) == 1);
    }
}

TEST_CASE("non-unimodular input: enumeration works, theta_table refuses") {
    const Lattice L = d4d4();
    CHECK_FALSE(is_unimodular(L));
    auto vs = enumerate_short_vectors(L, 1);
    auto box = box_scan(L, 1);
    std::sort(box.begin(), box.end());
    CHECK(vs == box);
    CHECK(vs.size() == 49);
    CHECK_THROWS(theta_table(L, 1, 8));
    Lattice odd = e8_lattice(2);
    odd.gram[0][0] = 3;
    CHECK_THROWS(validate_lattice(odd));
}

TEST_CASE("degree-1 theta coefficients of E8") {
    const Lattice E8 = e8_lattice(2);
    CoeffTable t = theta_table(E8, 1, 40);
    CHECK(t.weight() == 4);
    CHECK(t.index() == 1);
    CHECK(t.lookup(InvKey1{0, 0}).value == 1);
    i64 orth = 0, one = 0;
    for (const auto& x : enumerate_short_vectors(E8, 1)) {
        if (E8.norm(x) != 2) continue;
        orth += E8.dot(x, E8.v) == 0;
        one += E8.dot(x, E8.v) == 1;
    }
    CHECK(t.lookup(inv_key(RawKey1{1, 0}, 1)).value == orth);
    CHECK(t.lookup(inv_key(RawKey1{1, 1}, 1)).value == one);
    CHECK(orth == 126);
    CHECK(one == 56);
}

TEST_CASE("marked counts partition the representation numbers") {
    // Theta of E8 is E4, so r(n) = 240 sigma_3(n).
    ThetaSource src(e8_lattice(2));
    for (i64 n = 1; n <= 50; ++n) {
        Int total = 0;
        const i64 rmax = isqrt(4 * n);  // r^2 <= 4mn
        for (i64 r = -rmax; r <= rmax; ++r) total += src.count1(RawKey1{n, r});
        CHECK(total == 240 * sigma(3, n));
    }
}

TEST_CASE("degree-2 theta tables are swap symmetric and well defined") {
    for (int vn : {2, 4}) {
        CoeffTable t = theta_table(e8_lattice(vn), 2, 24).materialize();
        CHECK(swap_table(t) == t);
        auto eager = theta_table_eager(e8_lattice(vn), 12);
        REQUIRE(std::holds_alternative<CoeffTable>(eager));
        CHECK(std::get<CoeffTable>(eager) == t.restrict_bound(12));
    }
}

TEST_CASE("degree-2 raw counts against pair enumeration") {
    const Lattice L = e8_lattice(4);
    ThetaSource src(L);
    const auto vs = enumerate_short_vectors(L, 2);
    std::map<RawKey2, i64> brute;
    for (const auto& a : vs)
        for (const auto& b : vs) {
            RawKey2 k{L.norm(a) / 2, L.dot(a, b), L.norm(b) / 2, L.dot(a, L.v), L.dot(b, L.v)};
            ++brute[k];
        }
    for (const auto& [k, c] : brute) CHECK(src.count2(k) == c);
}

TEST_CASE("cohen H values") {
    CHECK(cohen_H(3, 0) == -bernoulli(6) / 6);
    CHECK(cohen_H(3, 0) == Rat(-1) / 252);
    CHECK(cohen_H(3, 4) == Rat(-1) / 2);
    CHECK(cohen_H(3, 3) == -gen_bernoulli(3, -3) / 3);
    CHECK(cohen_H(3, 3) == Rat(-2) / 9);
    CHECK(cohen_H(3, 1) == 0);  // -1 is not a discriminant
}

TEST_CASE("hurwitz class numbers") {
    CHECK(hurwitz_brute(0) == Rat(-1) / 12);
    CHECK(hurwitz_brute(3) == Rat(1) / 3);
    CHECK(hurwitz_brute(4) == Rat(1) / 2);
    CHECK(hurwitz_brute(5) == 0);
    for (i64 N = 0; N <= 200; ++N)
        if (mod(-N, 4) <= 1) CHECK(cohen_H(1, N) == hurwitz_brute(N));
}

TEST_CASE("eisenstein1 against theta") {
    CoeffTable e = eisenstein1(4, 100);
    CHECK(e.lookup(InvKey1{0, 0}).value == 1);
    CHECK(e.lookup(InvKey1{-4, 0}).value == 126);
    CHECK(e.lookup(InvKey1{-3, 1}).value == 56);
    CoeffTable th = theta_table(e8_lattice(2), 1, 100);
    for (const auto& K : supported_keys1(1, 100)) CHECK(e.lookup(K).value == th.lookup(K).value);
    CHECK_THROWS(eisenstein1(5, 40));
    CHECK_THROWS(eisenstein1(2, 40));
}

}  // TEST_SUITE
