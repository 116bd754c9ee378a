// SPDX-License-Identifier: MIT
#pragma once

#include "jh/formal.hpp"
#include "jh/group.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <random>

namespace jh {

using cplx = std::complex<double>;

// (T, Z, omega0) with Im T positive definite and Im omega0 > 0.
struct EvalPoint {
    Eigen::MatrixXcd T;
    Eigen::RowVectorXcd Z;
    cplx omega0{0, 1};

    std::size_t degree() const { return static_cast<std::size_t>(T.rows()); }
    bool valid() const;
};

using NumericFn = std::function<cplx(const EvalPoint&)>;

// Condition number of J(g, T) above which the slash is refused.
inline constexpr double kMaxCondition = 1e12;

Eigen::MatrixXcd to_complex(const RatMat& m);

// gamma o (T, Z) = (g o T, (Z + lam T + mu) J(g, T)^-1).
EvalPoint act(const JacobiElement& g, const EvalPoint& x);
// J_{k,m}(g, h o x) J_{k,m}(h, x), with det(J(g, T))^k in the symplectic factor.
cplx cocycle(const JacobiElement& g, const EvalPoint& x, int k, i64 m);
// J_{k,m}(gamma, x)^-1 f(gamma o x); throws SlashError("NearSingular") past kMaxCondition.
cplx slash_numeric(const NumericFn& f, const JacobiElement& g, const EvalPoint& x, int k, i64 m);

// (tau + 2u + zeta)^k e(m (z1 + z2)^2 / (tau + 2u + zeta)) on degree 2.
cplx psi_eval(const EvalPoint& x, int k, i64 m);

// sum c e(tr(N T) + R Z^t); the omega0 part is the hat-lift and is dropped.
cplx evaluate(const FormalSeries& s, const EvalPoint& x);

// Real parts in [-1/2, 1/2], Im T = Y with diagonal in [1, 2] and |off-diagonal| <= 0.3,
// Im Z small against Y.
EvalPoint random_point(std::size_t degree, std::mt19937_64& rng);
// A short word in integral generators: translations, unimodular rotations, the
// inversion and integral Heisenberg triples.
JacobiElement random_integral_element(std::size_t degree, std::mt19937_64& rng);
// As above with zero lower-left block.
JacobiElement random_parabolic_element(std::size_t degree, std::mt19937_64& rng);

double relative_error(cplx a, cplx b);

struct NumericCheck {
    std::string name;
    std::size_t samples = 0;
    double max_error = 0;
    bool passed(double tol) const { return samples > 0 && max_error < tol; }
};

inline constexpr double kNumericTolerance = 1e-9;

// J(g1 g2, x) = J(g1, g2 o x) J(g2, x) and (g1 g2) o x = g1 o (g2 o x) on degree 2.
NumericCheck check_cocycle(std::size_t samples, int k, i64 m, std::uint64_t seed);
// psi^-1 | gamma^up = psi^-1 | (gamma#)^down for integral degree-1 gamma.
NumericCheck check_psi_duality(std::size_t samples, int k, i64 m, std::uint64_t seed);
// Evaluating the formal slash of s equals slash_numeric of the evaluated s.
NumericCheck check_formal_numeric(const FormalSeries& s, std::size_t samples, std::uint64_t seed);

}  // namespace jh
