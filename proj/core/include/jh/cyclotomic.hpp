// SPDX-License-Identifier: MIT
#pragma once

#include "jh/num.hpp"

#include <memory>
#include <vector>

namespace jh {

// Q(zeta_n) with zeta_n = e(1/n): Phi_n and the reductions of zeta^a, 0 <= a < n.
class CyclotomicField {
public:
    static std::shared_ptr<const CyclotomicField> get(std::int64_t n);

    std::int64_t order() const { return n_; }
    std::size_t degree() const { return phi_.size() - 1; }
    const std::vector<Int>& modulus() const { return phi_; }  // monic, low degree first
    const std::vector<Rat>& power(std::int64_t a) const { return powers_[mod(a, n_)]; }

    explicit CyclotomicField(std::int64_t n);

private:
    std::int64_t n_;
    std::vector<Int> phi_;
    std::vector<std::vector<Rat>> powers_;
};

class CycScalar {
public:
    explicit CycScalar(std::int64_t order = 1);
    CycScalar(std::int64_t order, const Rat& r);

    static CycScalar root(std::int64_t order, std::int64_t a);  // e(a/order)

    std::int64_t order() const { return field_->order(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // throws unless is_rational()

    CycScalar& operator+=(const CycScalar& o);
    CycScalar& operator-=(const CycScalar& o);
    CycScalar& operator*=(const CycScalar& o);
    CycScalar& operator*=(const Rat& r);
    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
    friend CycScalar operator*(CycScalar a, const Rat& r) { return a *= r; }
    bool operator==(const CycScalar& o) const;

    // Add r * e(a/order).
    void add_root(std::int64_t a, const Rat& r);

private:
    void check_same(const CycScalar& o) const;

    std::shared_ptr<const CyclotomicField> field_;
    std::vector<Rat> c_;
};

// Canonical reduced representative; coefficients in lowest terms.
CycScalar cyc_normalize(const CycScalar& x);

// Sum over j mod n of e(j*a/n): n if n | a, else 0.
std::int64_t root_sum(std::int64_t n, std::int64_t a);

// Group-ring accumulator: weights per exponent mod n, reduced on demand.
class PhaseAccumulator {
public:
    explicit PhaseAccumulator(std::int64_t order) : w_(static_cast<std::size_t>(order), Rat(0)), n_(order) {}
    void add(std::int64_t a, const Rat& r) { w_[static_cast<std::size_t>(mod(a, n_))] += r; }
    CycScalar value() const;
    std::int64_t order() const { return n_; }

private:
    std::vector<Rat> w_;
    std::int64_t n_;
};

}  // namespace jh
