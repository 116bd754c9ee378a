// SPDX-License-Identifier: MIT
#pragma once

#include "jh/num.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace jh {

// Small dense rational matrix, row-major.
class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rat(0)) {}
    RatMat(std::initializer_list<std::initializer_list<Rat>> rows);

    static RatMat identity(std::size_t n);
    static RatMat diag(const std::vector<Rat>& d);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    RatMat transpose() const;
    RatMat inverse() const;  // throws MathError if singular
    Rat det() const;
    RatMat block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t i0, std::size_t j0, const RatMat& b);

    bool is_integral() const;
    bool is_zero() const;
    bool is_symmetric() const;
    // Least common denominator of all entries.
    Int denominator() const;

    friend RatMat operator*(const RatMat& a, const RatMat& b);
    friend RatMat operator+(const RatMat& a, const RatMat& b);
    friend RatMat operator-(const RatMat& a, const RatMat& b);
    friend RatMat operator*(const Rat& s, const RatMat& a);
    bool operator==(const RatMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const RatMat& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

// Standard alternating form [[0, I], [-I, 0]] of size 2n.
RatMat symplectic_form(std::size_t n);
bool is_symplectic(const RatMat& g);

}  // namespace jh
