// SPDX-License-Identifier: MIT
#include "jh/group.hpp"

namespace jh {

JacobiElement JacobiElement::identity(std::size_t n) {
    return {RatMat::identity(2 * n), RatMat(1, n), RatMat(1, n), 0};
}

JacobiElement JacobiElement::symplectic(const RatMat& g) {
    std::size_t n = g.rows() / 2;
    return {g, RatMat(1, n), RatMat(1, n), 0};
}

JacobiElement JacobiElement::heisenberg(const RatMat& lam, const RatMat& mu, const Rat& kappa) {
    return {RatMat::identity(2 * lam.cols()), lam, mu, kappa};
}

void heisenberg_add(const RatMat& l1, const RatMat& m1, const Rat& k1, const RatMat& l2, const RatMat& m2,
                    const Rat& k2, RatMat& l, RatMat& m, Rat& k) {
    Rat twist = (l1 * m2.transpose())(0, 0) - (m1 * l2.transpose())(0, 0);
    l = l1 + l2;
    m = m1 + m2;
    k = k1 + k2 + twist;
}

namespace {

// (lam, mu) g as a row vector of length 2n.
void act_right(const RatMat& lam, const RatMat& mu, const RatMat& g, RatMat& l, RatMat& m) {
    std::size_t n = lam.cols();
    RatMat row(1, 2 * n);
    row.set_block(0, 0, lam);
    row.set_block(0, n, mu);
    RatMat r = row * g;
    l = r.block(0, 0, 1, n);
    m = r.block(0, n, 1, n);
}

}  // namespace

JacobiElement JacobiElement::operator*(const JacobiElement& o) const {
    JacobiElement out;
    out.g = g * o.g;
    RatMat l, m;
    act_right(lam, mu, o.g, l, m);
    heisenberg_add(l, m, kappa, o.lam, o.mu, o.kappa, out.lam, out.mu, out.kappa);
    return out;
}

JacobiElement JacobiElement::inverse() const {
    // (g, h)^-1 = (g^-1, (-h).g^-1)
    JacobiElement out;
    out.g = g.inverse();
    act_right(Rat(-1) * lam, Rat(-1) * mu, out.g, out.lam, out.mu);
    out.kappa = -kappa;
    return out;
}

bool JacobiElement::operator==(const JacobiElement& o) const {
    return g == o.g && lam == o.lam && mu == o.mu && kappa == o.kappa;
}

bool JacobiElement::is_integral() const {
    return g.is_integral() && lam.is_integral() && mu.is_integral() && kappa.get_den() == 1;
}

RatMat hat(const JacobiElement& e) {
    std::size_t n = e.degree();
    RatMat A = e.A(), B = e.B(), C = e.C(), D = e.D();
    RatMat mup = A * e.mu.transpose() - B * e.lam.transpose();  // n x 1
    RatMat lamp = D * e.lam.transpose() - C * e.mu.transpose();
    RatMat h(2 * n + 2, 2 * n + 2);
    h.set_block(0, 0, A);
    h.set_block(0, n + 1, B);
    h.set_block(0, 2 * n + 1, mup);
    h.set_block(n, 0, e.lam);
    h(n, n) = 1;
    h.set_block(n, n + 1, e.mu);
    h(n, 2 * n + 1) = e.kappa;
    h.set_block(n + 1, 0, C);
    h.set_block(n + 1, n + 1, D);
    h.set_block(n + 1, 2 * n + 1, Rat(-1) * lamp);
    h(2 * n + 1, 2 * n + 1) = 1;
    return h;
}

namespace {

JacobiElement embed(const JacobiElement& e, bool up) {
    std::size_t n = e.degree();
    std::size_t off = up ? 0 : n;
    JacobiElement out = JacobiElement::identity(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.g(off + i, off + j) = e.g(i, j);
            out.g(off + i, 2 * n + off + j) = e.g(i, n + j);
            out.g(2 * n + off + i, off + j) = e.g(n + i, j);
            out.g(2 * n + off + i, 2 * n + off + j) = e.g(n + i, n + j);
        }
        out.lam(0, off + i) = e.lam(0, i);
        out.mu(0, off + i) = e.mu(0, i);
    }
    out.kappa = e.kappa;
    return out;
}

}  // namespace

JacobiElement embed_up(const JacobiElement& e) { return embed(e, true); }
JacobiElement embed_down(const JacobiElement& e) { return embed(e, false); }

JacobiElement project_up(const JacobiElement& e) {
    std::size_t n = e.degree() / 2;
    JacobiElement out = JacobiElement::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.g(i, j) = e.g(i, j);
            out.g(i, n + j) = e.g(i, 2 * n + j);
            out.g(n + i, j) = e.g(2 * n + i, j);
            out.g(n + i, n + j) = e.g(2 * n + i, 2 * n + j);
        }
        out.lam(0, i) = e.lam(0, i);
        out.mu(0, i) = e.mu(0, i);
    }
    out.kappa = e.kappa;
    return out;
}

JacobiElement sharp(const JacobiElement& e) {
    if (e.degree() != 1) throw MathError("sharp: degree-1 element expected");
    // g# = w g^t w; h# = (-lam, mu, kappa); (g h)# = h# g# = (g#, h#.g#)
    RatMat w{{0, 1}, {1, 0}};
    JacobiElement gs = JacobiElement::symplectic(w * e.g.transpose() * w);
    JacobiElement hs = JacobiElement::heisenberg(Rat(-1) * e.lam, e.mu, e.kappa);
    return hs * gs;
}

}  // namespace jh
