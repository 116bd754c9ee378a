// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jh/closed_forms.hpp"
#include "jh/constructors.hpp"
#include "jh/duality.hpp"
#include "jh/harness.hpp"
#include "jh/operators.hpp"

#include <random>

using namespace jh;
using i64 = std::int64_t;

namespace {

CoeffTable delta_table(i64 B) {
    CoeffTable t(2, 4, 1, B);
    t.set(InvKey2{-4, -3, 0, 0, 1}, 1);
    return t;
}

// Random integers on every supported key; no symmetry at all.
CoeffTable random_table(int k, i64 m, i64 B, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-5, 5);
    CoeffTable t(2, k, m, B);
    for (const auto& K : supported_keys2(m, B)) t.set(K, d(rng));
    return t;
}

std::size_t region_mismatches(const CoeffTable& a, const CoeffTable& b, std::size_t& keys) {
    std::size_t bad = 0;
    for (const auto& K : supported_keys2(a.index(), std::min(a.bound(), b.bound())))
        ++keys, bad += a.lookup(K).value != b.lookup(K).value;
    return bad;
}

}  // namespace

TEST_SUITE("duality") {

TEST_CASE("defect examples") {
    CoeffTable zero(2, 4, 1, 100);
    for (const auto& K : supported_keys2(1, 4)) {
        auto d = defect(zero, 5, K);
        REQUIRE(d.has_value());
        CHECK(d->defect == 0);
    }
    // chi_{-4}(5) = 1 (-4 = 1 mod 5 is a square), chi_{-3}(5) = -1 (2 is not).
    auto d = defect(delta_table(100), 5, InvKey2{-4, -3, 0, 0, 1});
    REQUIRE(d.has_value());
    CHECK(d->defect == 2 * 25);
    CHECK_FALSE(defect(delta_table(20), 5, InvKey2{-4, -3, 0, 0, 1}).has_value());
    CHECK_THROWS(defect(zero, 2, InvKey2{-4, -3, 0, 0, 1}));
}

TEST_CASE("defect vanishes on diagonal keys of swap-symmetric tables") {
    CoeffTable t = theta_table(e8_lattice(2), 2, 90);
    std::size_t diag = 0;
    for (const auto& K : supported_keys2(1, 10)) {
        if (K.D1 != K.D2 || K.r1 != K.r2) continue;
        auto d = defect(t, 3, K);
        if (!d) continue;
        ++diag;
        CHECK(d->defect == 0);
    }
    CHECK(diag > 3);
}

TEST_CASE("defect is linear, integral on theta input and swap covariant") {
    const i64 p = 3, B = 54;
    CoeffTable s = theta_table(e8_lattice(2), 2, B).materialize(), r = random_table(4, 1, B, 5);
    CoeffTable comb = add(scale(s, 2), r, -3);
    std::size_t determined = 0;
    for (const auto& K : supported_keys2(1, B / (p * p))) {
        auto ds = defect(s, p, K), dr = defect(r, p, K), dc = defect(comb, p, K);
        auto dw = defect(swap_table(r), p, swap_key(K));
        if (!ds || !dr || !dc || !dw) continue;
        ++determined;
        CHECK(dc->defect == 2 * ds->defect - 3 * dr->defect);
        CHECK(ds->defect.get_den() == 1);
        CHECK(dw->defect == -dr->defect);
    }
    CHECK(determined > 10);
}

TEST_CASE("membership") {
    CHECK(membership(CoeffTable(2, 4, 1, 100), 5).status == MembershipStatus::member);
    auto m = membership(delta_table(100), 5);
    CHECK(m.status == MembershipStatus::non_member);
    REQUIRE(m.witness.has_value());
    CHECK(*m.witness == InvKey2{-4, -3, 0, 0, 1});
    CHECK(membership(delta_table(20), 5).status == MembershipStatus::inconclusive);
    // Invariant under rescaling.
    auto ms = membership(scale(delta_table(100), -3), 5);
    CHECK(ms.status == MembershipStatus::non_member);
    CHECK(ms.witness == m.witness);
}

TEST_CASE("closed forms against the coset-sum oracle") {
    CoeffTable zero(2, 4, 1, 100);
    CHECK(closed_up(zero, 3).materialize().entries2().empty());
    CHECK(closed_down(zero, 3).materialize().entries2().empty());
    for (auto [L, B] : {std::pair{e8_lattice(2), i64(144)}, {e8_lattice(4), i64(144)}, {e8e8_lattice(2), i64(72)}}) {
        CoeffTable t = theta_table(L, 2, B);
        std::size_t keys = 0;
        CHECK(region_mismatches(op_up(t, 3), closed_up(t, 3), keys) == 0);
        CHECK(region_mismatches(op_down(t, 3), closed_down(t, 3), keys) == 0);
        CHECK(keys > 20);
    }
    // p^2 does not divide D1 = -4: the contraction term reads nothing.
    auto f = shape_features(delta_table(100), closed_form_shape("up", 5), 5, InvKey2{-4, -3, 0, 0, 1});
    CHECK(f[0] == 0);
}

TEST_CASE("closed package transforms") {
    const i64 p = 3;
    CoeffTable t = theta_table(e8_lattice(2), 2, 40);
    CoeffTable m10 = closed_package(t, "M10", p);
    for (const auto& K : supported_keys2(1, m10.bound())) CHECK(m10.lookup(K).value == 81 * t.lookup(K).value);
    for (std::string id : {"M3", "M5", "M6", "M11"}) {
        std::size_t keys = 0;
        CHECK(region_mismatches(op_package2(t, *parse_package_id(id), p), closed_package(t, id, p), keys) == 0);
        CHECK(keys > 20);
    }
    CHECK_THROWS(closed_package(t, "M2", p));
    ClosedFormSpec bogus{"bogus", {ShapeTerm{"x", {RatMat::identity(2)}, Weight::one, 0, 0}}};
    CHECK_THROWS_AS(pinned_alphas(bogus), SlashError);
}

TEST_CASE("solved duality spaces") {
    DualitySpace S = solve_duality_space_classes(4, 1, 3, 40);
    CHECK(S.basis.size() > 0);
    CHECK(S.basis.size() <= S.classes->size());
    std::size_t conclusive = 0;
    for (std::size_t i = 0; i < S.basis.size(); i += 7) {
        CoeffTable b = S.table(i).materialize();
        auto mem = membership(b, 3);
        CHECK(mem.status != MembershipStatus::non_member);
        conclusive += mem.status == MembershipStatus::member;
        CHECK(membership(swap_table(b), 3).status != MembershipStatus::non_member);
    }
    CHECK(conclusive > 0);
}

TEST_CASE("duality relation harness") {
    CHECK(theorem1_harness(CoeffTable(2, 4, 1, 100), 5).passed());
    // A delta coefficient breaks the relation; both sides must see it at the witness.
    HarnessReport r = theorem1_harness(delta_table(100), 5);
    CHECK(r.passed());
    REQUIRE(r.witness.has_value());
    CoeffTable u = add(op_up(delta_table(100), 5), op_down(delta_table(100), 5), -1);
    CHECK(u.lookup(*r.witness).value != 0);
    CHECK(defect(delta_table(100), 5, *r.witness)->defect != 0);
    CHECK(u.lookup(*r.witness).value == pinned_rho() * defect(delta_table(100), 5, *r.witness)->defect);

    DualitySpace S = solve_duality_space_classes(4, 1, 5, 100);
    CHECK(theorem1_space(S).passed());
}

TEST_CASE("package preservation harness at small scale") {
    HarnessReport r = theorem2_harness(5, 3, 4, 1, 100);
    CHECK(r.passed());
    CHECK(r.matched_keys > 0);
    CHECK_THROWS(theorem2_harness(5, 5, 4, 1, 100));
}

}  // TEST_SUITE
