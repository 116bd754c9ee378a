// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "jh/constructors.hpp"
#include "jh/cosets.hpp"
#include "jh/formal.hpp"
#include "jh/numeric.hpp"
#include "jh/operators.hpp"

#include <random>

using namespace jh;
using i64 = std::int64_t;

namespace {

std::size_t mismatches(const CoeffTable& a, const CoeffTable& b, std::size_t& keys) {
    const i64 B = std::min(a.bound(), b.bound());
    std::size_t bad = 0;
    if (a.degree() == 1) {
        for (const auto& K : supported_keys1(a.index(), B)) ++keys, bad += a.lookup(K).value != b.lookup(K).value;
    } else {
        for (const auto& K : supported_keys2(a.index(), B)) ++keys, bad += a.lookup(K).value != b.lookup(K).value;
    }
    return bad;
}

std::vector<RatMat> scaled_det_cosets(i64 p) {
    std::vector<RatMat> out;
    for (const auto& M : det_cosets(p)) out.push_back(scaled_gl2(M, p));
    return out;
}

int code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const SlashError& e) {
        if (e.code() == "NonIntegralResidue") return 1;
        if (e.code() == "NonParabolic") return 2;
        if (e.code() == "NotProportional") return 3;
        if (e.code() == "NearSingular") return 4;
        return 5;
    }
    return 0;
}

}  // namespace

TEST_SUITE("slashengine") {

TEST_CASE("slash_term on single terms") {
    Exponent e = exponent_of(RawKey2{3, 1, 2, 1, -1}, 1);
    SlashedTerm id = slash_term(JacobiElement::identity(2), e, 4);
    CHECK(id.e == e);
    CHECK(id.multiplier.rational_value() == 1);

    JacobiElement g = embed_up(JacobiElement::symplectic(RatMat{{Rat(1) / 2, Rat(1) / 2}, {0, 2}}));
    SlashedTerm st = slash_term(g, exponent_of(RawKey2{4, 2, 1, 2, 1}, 1), 4);
    CHECK(st.e == exponent_of(RawKey2{1, 1, 1, 1, 1}, 1));
    CHECK(st.multiplier.rational_value() == Rat(1) / 16);

    JacobiElement lower = JacobiElement::symplectic(RatMat{{1, 0}, {1, 1}});
    CHECK(code_of([&] { slash_term(lower, exponent_of(RawKey1{1, 1}, 1), 4); }) == 2);
}

TEST_CASE("integral Heisenberg translations shift exponents quadratically") {
    for (i64 m : {1, 2}) {
        for (i64 lam = -2; lam <= 2; ++lam)
            for (i64 mu = -2; mu <= 2; ++mu)
                for (auto [n, r] : {std::pair<i64, i64>{1, 1}, {2, 0}, {3, -2}, {0, 0}}) {
                    JacobiElement h = JacobiElement::heisenberg(RatMat{{Rat(lam)}}, RatMat{{Rat(mu)}});
                    SlashedTerm st = slash_term(h, exponent_of(RawKey1{n, r}, m), 4);
                    CHECK(st.e == exponent_of(RawKey1{n + r * lam + m * lam * lam, r + 2 * m * lam}, m));
                    CHECK(st.multiplier.rational_value() == 1);
                }
        // Degree 2: N -> N + (R^t lam + lam^t R)/2 + m lam^t lam, R -> R + 2 m lam.
        JacobiElement h = JacobiElement::heisenberg(RatMat{{Rat(1), Rat(-1)}}, RatMat{{Rat(2), Rat(1)}});
        const i64 n11 = 2, n12 = 1, n22 = 3, r1 = 1, r2 = 2, l1 = 1, l2 = -1;
        RawKey2 out{n11 + r1 * l1 + m * l1 * l1, n12 + r1 * l2 + r2 * l1 + 2 * m * l1 * l2, n22 + r2 * l2 + m * l2 * l2,
                    r1 + 2 * m * l1, r2 + 2 * m * l2};
        CHECK(slash_term(h, exponent_of(RawKey2{n11, n12, n22, r1, r2}, m), 4).e == exponent_of(out, m));
    }
}

TEST_CASE("coset sums: trivial cases") {
    CoeffTable t = theta_table(e8_lattice(2), 2, 40).materialize();
    CHECK(SlashSum(2, {JacobiElement::identity(2)}).apply(t) == t);
    CoeffTable z2(2, 4, 1, 40), z1(1, 4, 1, 40);
    CHECK(op_up(z2, 3).entries2().empty());
    CHECK(op_down(z2, 3).entries2().empty());
    CHECK(op_TJ1(z1, 2).entries1().empty());
    FormalSeries empty;
    empty.window = 4;
    CHECK(apply_formal(empty, {JacobiElement::identity(2)}, 1).terms.empty());
}

TEST_CASE("an incomplete package leaves a non-integral exponent") {
    CoeffTable e = eisenstein1(4, 200);
    FormalSeries s = to_series(e, 40);
    JacobiElement partial = JacobiElement::symplectic(RatMat{{Rat(1) / 3, 0}, {0, 3}});
    CHECK(code_of([&] { apply_formal(s, {partial}, 1); }) == 1);
}

TEST_CASE("formal coset sum agrees with the pull-back oracle in degree 1") {
    CoeffTable t = eisenstein1(4, 820);
    FormalSeries s = to_series(t, 200);
    for (i64 p : {2, 3}) {
        auto el = package_elements(scaled_det_cosets(p), heisenberg_set(1, p), Embed::none);
        CoeffTable f = to_table(apply_formal(s, el, 1));
        std::size_t keys = 0;
        CHECK(mismatches(f, op_TJ1(t, p), keys) == 0);
        CHECK(keys > 8);
    }
}

TEST_CASE("formal coset sum agrees with the pull-back oracle in degree 2") {
    CoeffTable t = theta_table(e8_lattice(2), 2, 120);
    for (Embed emb : {Embed::up, Embed::down}) {
        auto el = package_elements(scaled_det_cosets(2), heisenberg_set(1, 2), emb);
        FormalSeries s = targeted_series(t, el, 2);
        CoeffTable f = to_table(apply_formal(s, el, 1));
        std::size_t keys = 0;
        CHECK(mismatches(f, emb == Embed::up ? op_up(t, 2) : op_down(t, 2), keys) == 0);
        CHECK(keys > 30);
    }
}

TEST_CASE("up and down are exchanged by the factor swap") {
    for (int vn : {2, 4}) {
        CoeffTable t = theta_table(e8_lattice(vn), 2, 72);
        CoeffTable up = op_up(t, 3), down = op_down(t, 3);
        std::size_t keys = 0;
        CHECK(mismatches(swap_table(up.materialize()), down, keys) == 0);
        CHECK(keys > 30);
    }
}

TEST_CASE("worker count does not change the output") {
    CoeffTable t = theta_table(e8_lattice(4), 2, 72);
    set_slash_jobs(1);
    CoeffTable a = op_up(t, 3);
    set_slash_jobs(3);
    CoeffTable b = op_up(t, 3);
    set_slash_jobs(1);
    CHECK(a == b);
}

TEST_CASE("eigenvalues") {
    CoeffTable t = theta_table(e8_lattice(2), 1, 60);
    CHECK(eigenvalue_of(t, scale(t, 3)) == 3);
    CHECK(eigenvalue_of(t, CoeffTable(1, 4, 1, 60)) == 0);
    CoeffTable d = t;
    d.set(InvKey1{-7, 1}, t.lookup(InvKey1{-7, 1}).value + 1);
    CHECK(code_of([&] { eigenvalue_of(t, d); }) == 3);

    // E_{4,1} is an eigenform; the eigenvalue does not depend on the truncation.
    for (i64 p : {2, 3}) {
        Rat a = eigenvalue_of(eisenstein1(4, 40), op_TJ1(eisenstein1(4, 40), p));
        Rat b = eigenvalue_of(eisenstein1(4, 80), op_TJ1(eisenstein1(4, 80), p));
        CHECK(a == b);
        CHECK(a != 0);
    }
}

TEST_CASE("X(p) is p^(3-k) T(p) on degree 1") {
    for (int k : {4, 6}) {
        CoeffTable t = eisenstein1(k, 300);
        for (i64 p : {2, 3}) CHECK(eigenvalue_of(op_TJ1(t, p), op_X(t, p)) == rat_pow(Rat(p), 3 - k));
    }
}

TEST_CASE("degree-2 packages with simple actions") {
    const i64 p = 3;
    CoeffTable t = theta_table(e8_lattice(2), 2, 40);
    CoeffTable m10 = op_package2(t, PackageId::M10, p);
    std::size_t keys = 0;
    CHECK(mismatches(m10, scale(t.restrict_bound(m10.bound()).materialize(), ipow(p, 4)), keys) == 0);

    // M3 = diag(p, p, 1/p, 1/p) rescales exponents by p^2: the output at K only sees
    // t(K / p^2), so it is supported on p^2-divisible keys and is not a multiple of t.
    CoeffTable m3 = op_package2(t, PackageId::M3, p);
    std::optional<Rat> c;
    std::size_t divisible = 0;
    for (const auto& K : supported_keys2(1, m3.bound())) {
        Rat out = m3.lookup(K).value;
        if (K.D1 % (p * p) || K.D2 % (p * p) || K.D % (p * p)) {
            CHECK(out == 0);
            continue;
        }
        ++divisible;
        Rat in = t.lookup(InvKey2{K.D1 / (p * p), K.D2 / (p * p), K.D / (p * p), K.r1, K.r2}).value;
        if (!c && in != 0) c = out / in;
        CHECK(out == (c ? *c : Rat(0)) * in);
    }
    CHECK(divisible > 3);
    REQUIRE(c.has_value());
    CHECK(code_of([&] { eigenvalue_of(t, m3); }) == 3);
}

TEST_CASE("M1 reads the table at p^2 K") {
    const i64 p = 3;
    CoeffTable t = theta_table(e8_lattice(2), 2, 81);
    CoeffTable m1 = op_package2(t, PackageId::M1, p);
    std::optional<Rat> c;
    std::size_t keys = 0;
    for (const auto& K : supported_keys2(1, m1.bound())) {
        ++keys;
        Rat in = t.lookup(InvKey2{p * p * K.D1, p * p * K.D2, p * p * K.D, K.r1, K.r2}).value;
        Rat out = m1.lookup(K).value;
        if (!c && in != 0) c = out / in;
        CHECK(out == (c ? *c : Rat(0)) * in);
    }
    CHECK(keys > 3);
}

TEST_CASE("numeric slash basics") {
    std::mt19937_64 rng(31);
    NumericFn f = [](const EvalPoint& x) { return std::exp(x.T(0, 0)) + x.Z(0); };
    for (int i = 0; i < 10; ++i) {
        EvalPoint x = random_point(1, rng);
        CHECK(x.valid());
        CHECK(relative_error(slash_numeric(f, JacobiElement::identity(1), x, 4, 1), f(x)) < 1e-15);
    }
    EvalPoint bad;
    bad.T = Eigen::MatrixXcd::Constant(1, 1, cplx(-1, 0));
    bad.Z = Eigen::RowVectorXcd::Zero(1);
    JacobiElement g = JacobiElement::symplectic(RatMat{{1, 0}, {1, 1}});
    CHECK(code_of([&] { slash_numeric(f, g, bad, 4, 1); }) == 4);
}

TEST_CASE("psi values") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 10; ++i) {
        EvalPoint x = random_point(2, rng);
        const cplx s = x.T(0, 0) + 2.0 * x.T(0, 1) + x.T(1, 1);
        CHECK(std::abs(psi_eval(x, 0, 0) - cplx(1)) < 1e-15);
        CHECK(relative_error(psi_eval(x, 5, 0), std::pow(s, 5)) < 1e-13);
    }
    // Recomputed in extended precision at a fixed point.
    EvalPoint x;
    x.T = Eigen::MatrixXcd(2, 2);
    x.T << cplx(0.1, 1.3), cplx(-0.2, 0.25), cplx(-0.2, 0.25), cplx(0.35, 1.1);
    x.Z = Eigen::RowVectorXcd(2);
    x.Z << cplx(0.3, 0.1), cplx(-0.15, -0.05);
    using cl = std::complex<long double>;
    const long double two_pi = 2 * 3.141592653589793238462643383279502884L;
    cl s = cl(0.1L, 1.3L) + 2.0L * cl(-0.2L, 0.25L) + cl(0.35L, 1.1L), z = cl(0.3L, 0.1L) + cl(-0.15L, -0.05L);
    cl ref = std::pow(s, 4) * std::exp(cl(0, two_pi) * (2.0L * z * z / s));
    cplx got = psi_eval(x, 4, 2);
    CHECK(std::abs(cl(got.real(), got.imag()) - ref) / std::abs(ref) < 1e-9L);
}

TEST_CASE("cocycle and psi duality") {
    for (auto [k, m] : {std::pair<int, i64>{4, 1}, {4, 2}, {8, 1}}) {
        CHECK(check_cocycle(100, k, m, 41).passed(kNumericTolerance));
        CHECK(check_psi_duality(100, k, m, 42).passed(kNumericTolerance));
    }
}

TEST_CASE("psi duality needs the involution") {
    // Negative control: gamma^down in place of (gamma#)^down must fail somewhere.
    std::mt19937_64 rng(43);
    NumericFn psi_inv = [](const EvalPoint& x) { return 1.0 / psi_eval(x, 4, 1); };
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        JacobiElement g = random_integral_element(1, rng);
        EvalPoint x = random_point(2, rng);
        worst = std::max(worst, relative_error(slash_numeric(psi_inv, embed_up(g), x, 4, 1),
                                               slash_numeric(psi_inv, embed_down(g), x, 4, 1)));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("formal and numeric slash agree") {
    FormalSeries s2 = to_series(theta_table(e8_lattice(2), 2, 60), 2);
    CHECK(check_formal_numeric(s2, 30, 51).passed(kNumericTolerance));
    FormalSeries s1 = to_series(eisenstein1(4, 120), 20);
    CHECK(check_formal_numeric(s1, 50, 52).passed(kNumericTolerance));
}

}  // TEST_SUITE
