// SPDX-License-Identifier: MIT
#include "jh/linalg.hpp"

#include <sstream>

namespace jh {

RatMat::RatMat(std::initializer_list<std::initializer_list<Rat>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (const auto& row : rows) {
        if (row.size() != c_) throw MathError("RatMat: ragged initializer");
        for (const auto& x : row) a_.push_back(x);
    }
}

RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMat RatMat::diag(const std::vector<Rat>& d) {
    RatMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

RatMat RatMat::transpose() const {
    RatMat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMat RatMat::inverse() const {
    if (r_ != c_) throw MathError("inverse of non-square matrix");
    std::size_t n = r_;
    RatMat a = *this, inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw MathError("singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        Rat s = Rat(1) / a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) *= s;
            inv(col, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rat f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Rat RatMat::det() const {
    if (r_ != c_) throw MathError("det of non-square matrix");
    std::size_t n = r_;
    RatMat a = *this;
    Rat d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            d = -d;
        }
        d *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return d;
}

RatMat RatMat::block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    RatMat b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void RatMat::set_block(std::size_t i0, std::size_t j0, const RatMat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

bool RatMat::is_integral() const {
    for (const auto& x : a_)
        if (x.get_den() != 1) return false;
    return true;
}

bool RatMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool RatMat::is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Int RatMat::denominator() const {
    Int l = 1;
    for (const auto& x : a_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
    if (a.c_ != b.r_) throw MathError("matrix product shape mismatch");
    RatMat c(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
        for (std::size_t k = 0; k < a.c_; ++k) {
            const Rat& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.c_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

RatMat operator+(const RatMat& a, const RatMat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw MathError("matrix sum shape mismatch");
    RatMat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
}

RatMat operator-(const RatMat& a, const RatMat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw MathError("matrix difference shape mismatch");
    RatMat c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
}

RatMat operator*(const Rat& s, const RatMat& a) {
    RatMat c = a;
    for (auto& x : c.a_) x *= s;
    return c;
}

std::string RatMat::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << to_string((*this)(i, j));
        os << "]";
    }
    os << "]";
    return os.str();
}

RatMat symplectic_form(std::size_t n) {
    RatMat J(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        J(i, n + i) = 1;
        J(n + i, i) = -1;
    }
    return J;
}

bool is_symplectic(const RatMat& g) {
    if (g.rows() != g.cols() || g.rows() % 2) return false;
    RatMat J = symplectic_form(g.rows() / 2);
    return g.transpose() * J * g == J;
}

}  // namespace jh
