// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jh/cosets.hpp"
#include "jh/group.hpp"
#include "jh/numeric.hpp"

#include <random>

using namespace jh;
using i64 = std::int64_t;

namespace {

RatMat rows2(Rat a, Rat b, Rat c, Rat d) { return RatMat{{a, b}, {c, d}}; }

bool block_upper(const RatMat& g) {
    const std::size_t n = g.rows() / 2;
    return g.block(n, 0, n, n).is_zero();
}

bool pairwise_distinct_cosets(const std::vector<JacobiElement>& es) {
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
            if ((es[i] * es[j].inverse()).is_integral()) return false;
    return true;
}

}  // namespace

TEST_SUITE("heckealg") {

TEST_CASE("embeddings") {
    CHECK(embed_up(JacobiElement::identity(1)) == JacobiElement::identity(2));
    CHECK(embed_down(JacobiElement::identity(1)) == JacobiElement::identity(2));
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        JacobiElement a = random_integral_element(1, rng), b = random_integral_element(1, rng);
        CHECK(project_up(embed_up(a)) == a);
        CHECK(embed_up(a) * embed_down(b) == embed_down(b) * embed_up(a));
        CHECK(embed_up(a * b) == embed_up(a) * embed_up(b));
        CHECK(embed_up(a).is_valid());
    }
}

TEST_CASE("hat embedding") {
    CHECK(hat(JacobiElement::identity(1)) == RatMat::identity(4));
    CHECK(hat(JacobiElement::identity(2)) == RatMat::identity(6));
    // Pure Heisenberg elements lift to unipotent symplectic matrices.
    RatMat l{{Rat(1), Rat(-2)}}, m{{Rat(3), Rat(1) / 2}};
    RatMat h = hat(JacobiElement::heisenberg(l, m, Rat(5)));
    CHECK(is_symplectic(h));
    RatMat N = h;
    for (std::size_t i = 0; i < 6; ++i) N(i, i) -= 1;
    CHECK((N * N * N * N * N * N).is_zero());
    std::mt19937_64 rng(22);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + i % 2;
        JacobiElement a = random_integral_element(n, rng), b = random_integral_element(n, rng);
        CHECK(is_symplectic(hat(a)));
        CHECK(hat(a * b) == hat(a) * hat(b));
    }
}

TEST_CASE("sharp involution") {
    JacobiElement g = JacobiElement::symplectic(rows2(2, 1, 1, 1));
    CHECK(sharp(g).g == rows2(1, 1, 1, 2));
    RatMat one{{Rat(1)}}, zero{{Rat(0)}}, minus{{Rat(-1)}};
    CHECK(sharp(JacobiElement::heisenberg(one, zero)) == JacobiElement::heisenberg(minus, zero));
    CHECK(sharp(JacobiElement::heisenberg(zero, one, Rat(3))) == JacobiElement::heisenberg(zero, one, Rat(3)));
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        JacobiElement a = random_integral_element(1, rng), b = random_integral_element(1, rng);
        CHECK(sharp(sharp(a)) == a);
        CHECK(sharp(a * b) == sharp(b) * sharp(a));
    }
}

TEST_CASE("package catalog") {
    auto n1 = package(PackageId::N1, 3);
    REQUIRE(n1.elements.size() == 1);
    CHECK(n1.elements[0] == rows2(3, 0, 0, Rat(1) / 3));
    CHECK(package(PackageId::M6, 3).elements.size() == 6);
    CHECK(package(PackageId::N1, 3).elements.size() + package(PackageId::N2, 3).elements.size() +
              package(PackageId::N3, 3).elements.size() ==
          12);
    for (auto id : all_package_ids()) {
        auto pk = package(id, 3);
        for (const auto& g : pk.elements) {
            CHECK(is_symplectic(g));
            CHECK(block_upper(g));
        }
        CHECK_FALSE(left_cosets_overlap(pk.elements));
        // M12 follows its printed parameter ranges; see the catalog note.
        if (id != PackageId::M12) CHECK(static_cast<i64>(pk.elements.size()) == pk.expected_size);
    }
    CHECK(package(PackageId::M12, 3).elements.size() == 3 * 3 * 9 * 2);
    CHECK_THROWS(package(PackageId::M1, 4));
    CHECK_FALSE(parse_package_id("M13").has_value());
}

TEST_CASE("heisenberg sets") {
    CHECK(heisenberg_set(1, 2).size() == 4);
    CHECK(heisenberg_set(2, 3).size() == 81);
    CHECK(heisenberg_set(2, 1).size() == 1);
    CHECK(heisenberg_set(1, 1)[0] == JacobiElement::identity(1));
}

TEST_CASE("determinant cosets") {
    auto one = det_cosets(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == RatMat::identity(2));
    CHECK(det_cosets(2).size() == 6);
    CHECK(det_cosets(3).size() == 12);
    for (i64 l : {2, 3, 5, 6}) {
        // Brute Hermite enumeration: a d = l^2, 0 <= b < d.
        std::size_t all = 0, kept = 0;
        for (i64 a = 1; a <= l * l; ++a) {
            if ((l * l) % a) continue;
            const i64 d = l * l / a;
            for (i64 b = 0; b < d; ++b) {
                ++all;
                kept += is_square(gcd(gcd(a, b), d));
            }
        }
        CHECK(det_hnf_all(l).size() == all);
        CHECK(det_cosets(l).size() == kept);
        // Distinct modulo SL2(Z) on the left.
        auto cs = det_cosets(l);
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) CHECK_FALSE((cs[i] * cs[j].inverse()).is_integral());
    }
}

TEST_CASE("symplectic generators") {
    CHECK(generator_S(1, 3) == RatMat::identity(4));
    CHECK(generator_S(2, 3) == RatMat::diag({Rat(1) / 3, Rat(1) / 3, 3, 3}));
    CHECK(generator_S(3, 5) == RatMat::diag({Rat(1) / 5, 1, 5, 1}));
}

TEST_CASE("double coset of diag(p, 1/p)") {
    for (i64 p : {2, 3, 5}) {
        auto X = double_coset_X(p);
        // Primitive Hermite forms of det p^2, each with p Heisenberg classes.
        std::size_t primitive = 0;
        for (const auto& M : det_hnf_all(p))
            primitive += gcd(gcd(M(0, 0).get_num().get_si(), M(0, 1).get_num().get_si()), M(1, 1).get_num().get_si()) == 1;
        CHECK(X.size() == primitive * p);
        if (p < 5) CHECK(pairwise_distinct_cosets(X));
        // sharp of the diagonal representative lies in one of the listed cosets.
        JacobiElement d = JacobiElement::symplectic(rows2(p, 0, 0, Rat(1) / p));
        JacobiElement s = sharp(d);
        int hits = 0;
        for (const auto& x : X) hits += (s * x.inverse()).is_integral();
        CHECK(hits == 1);
    }
}

}  // TEST_SUITE
