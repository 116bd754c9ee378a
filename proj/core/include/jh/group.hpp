// SPDX-License-Identifier: MIT
#pragma once

#include "jh/linalg.hpp"

namespace jh {

// (g, h) with g in Sp_n(Q) and h = (lam, mu, kappa); acts as g o (h o x).
// Product: (g1, h1)(g2, h2) = (g1 g2, h1.g2 + h2) where (lam, mu).g is the row
// vector (lam, mu) g and + is the Heisenberg law
// (l1, m1, k1) + (l2, m2, k2) = (l1 + l2, m1 + m2, k1 + k2 + l1 m2^t - m1 l2^t).
struct JacobiElement {
    RatMat g;    // 2n x 2n
    RatMat lam;  // 1 x n
    RatMat mu;   // 1 x n
    Rat kappa = 0;

    static JacobiElement identity(std::size_t n);
    static JacobiElement symplectic(const RatMat& g);
    static JacobiElement heisenberg(const RatMat& lam, const RatMat& mu, const Rat& kappa = 0);

    std::size_t degree() const { return g.rows() / 2; }
    RatMat A() const { return g.block(0, 0, degree(), degree()); }
    RatMat B() const { return g.block(0, degree(), degree(), degree()); }
    RatMat C() const { return g.block(degree(), 0, degree(), degree()); }
    RatMat D() const { return g.block(degree(), degree(), degree(), degree()); }

    JacobiElement operator*(const JacobiElement& o) const;
    JacobiElement inverse() const;
    bool operator==(const JacobiElement& o) const;

    bool is_integral() const;
    bool is_valid() const { return is_symplectic(g); }
    bool parabolic() const { return C().is_zero(); }
};

// (lam, mu, kappa) + (lam', mu', kappa') in the Heisenberg group.
void heisenberg_add(const RatMat& l1, const RatMat& m1, const Rat& k1, const RatMat& l2, const RatMat& m2,
                    const Rat& k2, RatMat& l, RatMat& m, Rat& k);

// Symplectic matrix of size 2n+2 realising the element; multiplicative.
RatMat hat(const JacobiElement& e);

// gamma x identity and identity x gamma in degree 2n.
JacobiElement embed_up(const JacobiElement& e);
JacobiElement embed_down(const JacobiElement& e);
// First factor of an element of the image of embed_up.
JacobiElement project_up(const JacobiElement& e);

// Degree-1 involution: [[a,b],[c,d]] -> [[d,b],[c,a]], (lam,0,0) -> (-lam,0,0),
// (0,mu,kappa) fixed; an anti-automorphism.
JacobiElement sharp(const JacobiElement& e);

}  // namespace jh
