// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jh/constructors.hpp"
#include "jh/forms.hpp"
#include "jh/io.hpp"

#include <random>
#include <set>

using namespace jh;
using i64 = std::int64_t;

namespace {

// All principal minors of 2 * [[n11, n12/2, r1/2], [n12/2, n22, r2/2], [r1/2, r2/2, m]].
bool psd_by_minors(const RawKey2& k, i64 m) {
    const i64 a[3][3] = {{2 * k.n11, k.n12, k.r1}, {k.n12, 2 * k.n22, k.r2}, {k.r1, k.r2, 2 * m}};
    for (int i = 0; i < 3; ++i)
        if (a[i][i] < 0) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (a[i][i] * a[j][j] - a[i][j] * a[j][i] < 0) return false;
    i64 det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
              a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    return det >= 0;
}

i64 count_vectors(const std::vector<IVec>& vs, const Lattice& L, i64 n, i64 r) {
    i64 c = 0;
    for (const auto& x : vs)
        if (L.norm(x) == 2 * n && L.dot(x, L.v) == r) ++c;
    return c;
}

}  // namespace

TEST_SUITE("formspace") {

TEST_CASE("invariants2 examples") {
    CHECK(invariants2({1, 0, 1, 0, 0}, 1) == Invariants{-4, -4, 0});
    CHECK(invariants2({1, 1, 1, 1, 1}, 1) == Invariants{-3, -3, -1});
    for (i64 m : {1, 2, 5}) CHECK(invariants2({0, 0, 0, 0, 0}, m) == Invariants{0, 0, 0});
}

TEST_CASE("invariants2 is inverted by the reconstruction formulas") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<i64> n(0, 30), s(-20, 20);
    for (int i = 0; i < 1000; ++i) {
        const i64 m = 1 + i % 3;
        RawKey2 k{n(rng), s(rng), n(rng), s(rng), s(rng)};
        auto [D1, D2, D] = invariants2(k, m);
        CHECK((k.r1 * k.r1 - D1) % (4 * m) == 0);
        CHECK((k.r1 * k.r1 - D1) / (4 * m) == k.n11);
        CHECK((k.r2 * k.r2 - D2) / (4 * m) == k.n22);
        CHECK((k.r1 * k.r2 - D) % (2 * m) == 0);
        CHECK((k.r1 * k.r2 - D) / (2 * m) == k.n12);
    }
}

TEST_CASE("support_test examples") {
    CHECK(support_test(InvKey2{-3, -3, -1, 1, 1}, 1));
    CHECK_FALSE(support_test(InvKey2{-4, -4, -5, 0, 0}, 1));
    CHECK_FALSE(support_test(InvKey2{4, -4, 0, 0, 0}, 1));
}

TEST_CASE("support_test matches positive semidefiniteness on random keys") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<i64> n(0, 12), s(-12, 12);
    int psd = 0;
    for (int i = 0; i < 1000; ++i) {
        const i64 m = 1 + i % 4;
        RawKey2 k{n(rng), s(rng), n(rng), s(rng), s(rng)};
        bool expect = psd_by_minors(k, m);
        psd += expect;
        CHECK(support_test(inv_key(k, m), m) == expect);
        CHECK(raw_psd(k, m) == expect);
    }
    // Both outcomes must be represented for the check to mean anything.
    CHECK(psd > 50);
    CHECK(psd < 950);
}

TEST_CASE("three-valued lookup") {
    CoeffTable t(2, 4, 1, 20);
    CHECK(t.lookup(InvKey2{4, -4, 0, 0, 0}).kind == Presence::known_zero);
    CHECK(t.lookup(InvKey2{-3, -3, -1, 1, 1}).kind == Presence::known_zero);
    CHECK(t.lookup(InvKey2{-24, -3, 0, 0, 1}).kind == Presence::unknown);
    t.set(InvKey2{-3, -3, -1, 1, 1}, 5);
    auto l = t.lookup(InvKey2{-3, -3, -1, 1, 1});
    CHECK(l.kind == Presence::value);
    CHECK(l.value == 5);
    CHECK_THROWS(t.set(InvKey2{-24, -3, 0, 0, 1}, 1));
}

TEST_CASE("ingest_raw") {
    auto one = ingest_raw({{RawKey2{1, 0, 1, 0, 0}, Rat(7)}}, 4, 1, 8);
    REQUIRE(std::holds_alternative<CoeffTable>(one));
    const auto& t = std::get<CoeffTable>(one);
    CHECK(t.entries2().size() == 1);
    CHECK(t.lookup(InvKey2{-4, -4, 0, 0, 0}).value == 7);

    // (2,2,2,2,2) is the translate of (1,0,1,0,0) by z -> z + tau; both give (-4,-4,0; 0,0).
    auto bad = ingest_raw({{RawKey2{1, 0, 1, 0, 0}, Rat(1)}, {RawKey2{2, 2, 2, 2, 2}, Rat(2)}}, 4, 1, 8);
    REQUIRE(std::holds_alternative<WellDefinednessViolation>(bad));
    const auto& v = std::get<WellDefinednessViolation>(bad);
    CHECK(v.key == InvKey2{-4, -4, 0, 0, 0});
    std::set<RawKey2> named{v.first, v.second};
    CHECK(named == std::set<RawKey2>{RawKey2{1, 0, 1, 0, 0}, RawKey2{2, 2, 2, 2, 2}});
    CHECK(v.first_value != v.second_value);
}

TEST_CASE("theta_decompose components") {
    CHECK(theta_decompose(CoeffTable(2, 4, 1, 8)).size() == 4);
    auto z = theta_decompose(CoeffTable(2, 4, 2, 8));
    CHECK(z.size() == 16);
    for (const auto& [r, c] : z) CHECK(c.entries2().empty());

    for (int vn : {2, 4}) {
        CoeffTable t = theta_table(e8_lattice(vn), 2, 12).materialize();
        const i64 m = t.index();
        auto comps = theta_decompose(t);
        std::size_t total = 0;
        for (const auto& [r, c] : comps) {
            total += c.entries2().size();
            for (const auto& [K, v] : c.entries2()) CHECK(std::pair{K.r1, K.r2} == r);
        }
        CHECK(total == t.entries2().size());
        // Every raw coefficient inside the region is reproduced.
        for (const auto& [raw, c] : theta_raw2(e8_lattice(vn), 2)) {
            InvKey2 K = inv_key(raw, m);
            if (!t.in_region(K)) continue;
            auto l = recombine_raw(comps, raw, m);
            CHECK(l.known());
            CHECK(l.value == c);
        }
    }
}

TEST_CASE("restrict_diagonal") {
    CHECK(restrict_diagonal(CoeffTable(2, 4, 1, 12)).empty());
    CoeffTable one(2, 4, 1, 12);
    one.set(InvKey2{0, 0, 0, 0, 0}, 1);
    auto d = restrict_diagonal(one);
    REQUIRE(d.size() == 1);
    CHECK(d.begin()->first == DiagKey{{0, 0}, {0, 0}});
    CHECK(d.begin()->second == 1);
}

TEST_CASE("restriction of a theta series factors into degree-1 counts") {
    const Lattice L = e8_lattice(2);
    CoeffTable t = theta_table(L, 2, 12);
    const auto vs = enumerate_short_vectors(L, 4);
    auto d = restrict_diagonal(t);
    std::size_t checked = 0;
    for (const auto& K : supported_keys1(1, 12)) {
        for (const auto& K2 : supported_keys1(1, 12)) {
            const i64 r1 = K.r > 1 ? K.r - 2 : K.r, r2 = K2.r > 1 ? K2.r - 2 : K2.r;
            RawKey1 a{(r1 * r1 - K.disc) / 4, r1}, b{(r2 * r2 - K2.disc) / 4, r2};
            i64 expect = count_vectors(vs, L, a.n, a.r) * count_vectors(vs, L, b.n, b.r);
            auto it = d.find(DiagKey{a, b});
            CHECK((it == d.end() ? Rat(0) : it->second) == expect);
            ++checked;
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("constructed tables are known inside their bound") {
    for (const CoeffTable& t : {theta_table(e8_lattice(2), 2, 16), theta_table(e8_lattice(4), 2, 16)})
        for (const auto& K : supported_keys2(t.index(), t.bound())) CHECK(t.lookup(K).known());
    CoeffTable e = eisenstein1(4, 50);
    for (const auto& K : supported_keys1(1, 50)) CHECK(e.lookup(K).known());
}

TEST_CASE("json round trip is byte exact") {
    CoeffTable t = theta_table(e8_lattice(4), 2, 20).materialize();
    std::string s = dump_table(t);
    CoeffTable u = load_table(s);
    CHECK(u == t);
    CHECK(dump_table(u) == s);
    CoeffTable e = eisenstein1(6, 40);
    CHECK(dump_table(load_table(dump_table(e))) == dump_table(e));
}

}  // TEST_SUITE
