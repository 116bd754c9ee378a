// SPDX-License-Identifier: MIT
#include "jh/numeric.hpp"

#include "jh/operators.hpp"

#include <cmath>
#include <numbers>

namespace jh {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

cplx e_of(cplx z) { return std::exp(cplx(0, kTwoPi) * z); }

double to_double(const Rat& r) { return r.get_d(); }

cplx to_complex(const CycScalar& c) {
    cplx v = 0;
    const auto& co = c.coeffs();
    for (std::size_t i = 0; i < co.size(); ++i)
        if (co[i] != 0) v += to_double(co[i]) * std::polar(1.0, kTwoPi * double(i) / double(c.order()));
    return v;
}

cplx heis_factor(const JacobiElement& g, const EvalPoint& x, i64 m) {
    Eigen::RowVectorXcd lam = to_complex(g.lam), mu = to_complex(g.mu);
    cplx q = (lam * x.T * lam.transpose())(0, 0) + 2.0 * (lam * x.Z.transpose())(0, 0) + to_double(g.kappa) +
             (mu * lam.transpose())(0, 0);
    return e_of(-double(m) * q);
}

Eigen::MatrixXcd j_matrix(const JacobiElement& g, const Eigen::MatrixXcd& T) {
    return to_complex(g.C()) * T + to_complex(g.D());
}

void check_condition(const Eigen::MatrixXcd& J) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
    const auto& s = svd.singularValues();
    double lo = s(s.size() - 1);
    if (lo == 0 || s(0) / lo > kMaxCondition) throw SlashError("NearSingular", "J(g, T) is near-singular");
}

cplx evaluate_term(const Exponent& e, const EvalPoint& x) {
    const std::size_t n = e.s.size();
    cplx arg = to_double(e.a[0]) * x.T(0, 0);
    if (n == 2) arg += to_double(e.a[1]) * x.T(0, 1) + to_double(e.a[2]) * x.T(1, 1);
    for (std::size_t i = 0; i < n; ++i) arg += to_double(e.s[i]) * x.Z(i);
    return e_of(arg);
}

RatMat identity_block(std::size_t n) { return RatMat::identity(n); }

RatMat symplectic_from_blocks(const RatMat& A, const RatMat& B, const RatMat& C, const RatMat& D) {
    const std::size_t n = A.rows();
    RatMat g(2 * n, 2 * n);
    g.set_block(0, 0, A);
    g.set_block(0, n, B);
    g.set_block(n, 0, C);
    g.set_block(n, n, D);
    return g;
}

i64 draw(std::mt19937_64& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

RatMat random_unimodular(std::size_t n, std::mt19937_64& rng) {
    RatMat U = RatMat::identity(n);
    if (n == 1) {
        U(0, 0) = draw(rng, 0, 1) ? 1 : -1;
        return U;
    }
    switch (draw(rng, 0, 2)) {
        case 0: U(0, 1) = draw(rng, -2, 2); break;
        case 1: U(1, 0) = draw(rng, -2, 2); break;
        default: U = RatMat{{0, 1}, {1, 0}}; break;
    }
    return U;
}

RatMat random_symmetric(std::size_t n, std::mt19937_64& rng) {
    RatMat S(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) S(i, j) = S(j, i) = draw(rng, -2, 2);
    return S;
}

JacobiElement random_heisenberg(std::size_t n, std::mt19937_64& rng) {
    RatMat lam(1, n), mu(1, n);
    for (std::size_t i = 0; i < n; ++i) {
        lam(0, i) = draw(rng, -2, 2);
        mu(0, i) = draw(rng, -2, 2);
    }
    return JacobiElement::heisenberg(lam, mu, Rat(draw(rng, -2, 2)));
}

RatMat random_generator(std::size_t n, std::mt19937_64& rng, bool parabolic) {
    const RatMat I = identity_block(n), O(n, n);
    switch (draw(rng, 0, parabolic ? 1 : 2)) {
        case 0: return symplectic_from_blocks(I, random_symmetric(n, rng), O, I);
        case 1: {
            RatMat U = random_unimodular(n, rng);
            return symplectic_from_blocks(U, O, O, U.inverse().transpose());
        }
        default: return symplectic_from_blocks(O, I, Rat(-1) * I, O);
    }
}

JacobiElement random_element(std::size_t n, std::mt19937_64& rng, bool parabolic) {
    RatMat g = RatMat::identity(2 * n);
    for (int i = 0; i < 3; ++i) g = g * random_generator(n, rng, parabolic);
    return JacobiElement::symplectic(g) * random_heisenberg(n, rng);
}

template <class F>
NumericCheck run_check(std::string name, std::size_t samples, F&& one) {
    NumericCheck c;
    c.name = std::move(name);
    for (std::size_t i = 0; i < samples; ++i) {
        c.max_error = std::max(c.max_error, one());
        ++c.samples;
    }
    return c;
}

}  // namespace

bool EvalPoint::valid() const {
    Eigen::MatrixXd Y = T.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((Y + Y.transpose()) / 2);
    return es.eigenvalues().minCoeff() > 0 && omega0.imag() > 0 && Z.size() == T.rows();
}

Eigen::MatrixXcd to_complex(const RatMat& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

EvalPoint act(const JacobiElement& g, const EvalPoint& x) {
    Eigen::MatrixXcd J = j_matrix(g, x.T);
    check_condition(J);
    Eigen::MatrixXcd Jinv = J.inverse();
    EvalPoint y;
    y.T = (to_complex(g.A()) * x.T + to_complex(g.B())) * Jinv;
    y.T = (y.T + y.T.transpose()) / 2.0;
    y.Z = (x.Z + to_complex(g.lam) * x.T + to_complex(g.mu)) * Jinv;
    y.omega0 = x.omega0;
    return y;
}

cplx cocycle(const JacobiElement& g, const EvalPoint& x, int k, i64 m) {
    EvalPoint hx = x;
    hx.Z = x.Z + to_complex(g.lam) * x.T + to_complex(g.mu);
    Eigen::MatrixXcd J = j_matrix(g, x.T);
    check_condition(J);
    Eigen::MatrixXcd Jinv = J.inverse();
    cplx quad = (hx.Z * Jinv * to_complex(g.C()) * hx.Z.transpose())(0, 0);
    return std::pow(J.determinant(), k) * e_of(double(m) * quad) * heis_factor(g, x, m);
}

cplx slash_numeric(const NumericFn& f, const JacobiElement& g, const EvalPoint& x, int k, i64 m) {
    return f(act(g, x)) / cocycle(g, x, k, m);
}

cplx psi_eval(const EvalPoint& x, int k, i64 m) {
    if (x.degree() != 2) throw MathError("psi_eval: degree-2 point expected");
    cplx s = x.T(0, 0) + 2.0 * x.T(0, 1) + x.T(1, 1);
    if (std::abs(s) == 0) throw MathError("psi_eval: pole at tau + 2u + zeta = 0");
    cplx z = x.Z(0) + x.Z(1);
    return std::pow(s, k) * e_of(double(m) * z * z / s);
}

cplx evaluate(const FormalSeries& s, const EvalPoint& x) {
    cplx v = 0;
    for (const auto& [e, c] : s.terms) v += to_complex(c) * evaluate_term(e, x);
    return v;
}

EvalPoint random_point(std::size_t degree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-0.5, 0.5), diag(1.0, 2.0), off(-0.3, 0.3), zim(-0.2, 0.2);
    EvalPoint x;
    x.T = Eigen::MatrixXcd(degree, degree);
    for (std::size_t i = 0; i < degree; ++i)
        for (std::size_t j = i; j < degree; ++j) {
            cplx v(re(rng), i == j ? diag(rng) : off(rng));
            x.T(i, j) = x.T(j, i) = v;
        }
    x.Z = Eigen::RowVectorXcd(degree);
    for (std::size_t i = 0; i < degree; ++i) x.Z(i) = cplx(re(rng), zim(rng));
    x.omega0 = cplx(re(rng), diag(rng));
    return x;
}

JacobiElement random_integral_element(std::size_t degree, std::mt19937_64& rng) {
    return random_element(degree, rng, false);
}

JacobiElement random_parabolic_element(std::size_t degree, std::mt19937_64& rng) {
    return random_element(degree, rng, true);
}

double relative_error(cplx a, cplx b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0 ? 0 : std::abs(a - b) / scale;
}

NumericCheck check_cocycle(std::size_t samples, int k, i64 m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return run_check("cocycle", samples, [&] {
        JacobiElement g1 = random_integral_element(2, rng), g2 = random_integral_element(2, rng);
        EvalPoint x = random_point(2, rng);
        EvalPoint y = act(g2, x), lhs = act(g1 * g2, x), rhs = act(g1, y);
        double err = relative_error(cocycle(g1 * g2, x, k, m), cocycle(g1, y, k, m) * cocycle(g2, x, k, m));
        err = std::max(err, (lhs.T - rhs.T).norm() / lhs.T.norm());
        err = std::max(err, (lhs.Z - rhs.Z).norm() / std::max(lhs.Z.norm(), 1.0));
        return err;
    });
}

NumericCheck check_psi_duality(std::size_t samples, int k, i64 m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    NumericFn psi_inv = [k, m](const EvalPoint& x) { return 1.0 / psi_eval(x, k, m); };
    return run_check("psi_duality", samples, [&] {
        JacobiElement g = random_integral_element(1, rng);
        EvalPoint x = random_point(2, rng);
        return relative_error(slash_numeric(psi_inv, embed_up(g), x, k, m),
                              slash_numeric(psi_inv, embed_down(sharp(g)), x, k, m));
    });
}

NumericCheck check_formal_numeric(const FormalSeries& s, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    NumericFn f = [&s](const EvalPoint& x) { return evaluate(s, x); };
    return run_check("formal_numeric", samples, [&] {
        JacobiElement g = random_parabolic_element(s.degree, rng);
        EvalPoint x = random_point(s.degree, rng);
        cplx formal = 0;
        for (const auto& [e, c] : s.terms) {
            SlashedTerm st = slash_term(g, e, s.weight);
            formal += to_complex(st.multiplier) * to_complex(c) * evaluate_term(st.e, x);
        }
        return relative_error(formal, slash_numeric(f, g, x, s.weight, s.index));
    });
}

}  // namespace jh
