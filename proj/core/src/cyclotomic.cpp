// SPDX-License-Identifier: MIT
#include "jh/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace jh {

namespace {

std::mutex field_mu;
std::map<std::int64_t, std::shared_ptr<const CyclotomicField>> field_cache;

// Exact division of monic integer polynomials, low degree first.
std::vector<Int> poly_div(std::vector<Int> num, const std::vector<Int>& den) {
    std::size_t dn = den.size() - 1;
    std::vector<Int> q(num.size() - dn, Int(0));
    for (std::size_t i = num.size(); i-- > dn;) {
        Int c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    for (std::size_t j = 0; j < dn; ++j)
        if (num[j] != 0) throw MathError("cyclotomic: inexact division");
    return q;
}

std::vector<Int> cyclotomic_poly(std::int64_t n) {
    std::vector<Int> p(static_cast<std::size_t>(n) + 1, Int(0));
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t d : divisors(n))
        if (d < n) p = poly_div(p, CyclotomicField::get(d)->modulus());
    return p;
}

}  // namespace

std::shared_ptr<const CyclotomicField> CyclotomicField::get(std::int64_t n) {
    if (n < 1) throw MathError("cyclotomic order must be positive");
    {
        std::lock_guard<std::mutex> lock(field_mu);
        auto it = field_cache.find(n);
        if (it != field_cache.end()) return it->second;
    }
    auto f = std::make_shared<const CyclotomicField>(n);
    std::lock_guard<std::mutex> lock(field_mu);
    return field_cache.emplace(n, f).first->second;
}

CyclotomicField::CyclotomicField(std::int64_t n) : n_(n), phi_(cyclotomic_poly(n)) {
    std::size_t deg = phi_.size() - 1;
    powers_.reserve(static_cast<std::size_t>(n));
    std::vector<Rat> cur(deg, Rat(0));
    if (deg > 0) cur[0] = 1;
    for (std::int64_t a = 0; a < n; ++a) {
        powers_.push_back(cur);
        if (deg == 0) continue;
        // multiply by x, reduce by the monic modulus
        Rat top = cur[deg - 1];
        for (std::size_t j = deg - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::size_t j = 0; j < deg; ++j) cur[j] -= top * Rat(phi_[j]);
    }
}

CycScalar::CycScalar(std::int64_t order)
    : field_(CyclotomicField::get(order)), c_(field_->degree(), Rat(0)) {}

CycScalar::CycScalar(std::int64_t order, const Rat& r) : CycScalar(order) {
    if (!c_.empty()) c_[0] = r;
}

CycScalar CycScalar::root(std::int64_t order, std::int64_t a) {
    CycScalar z(order);
    z.c_ = z.field_->power(a);
    return z;
}

bool CycScalar::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycScalar::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycScalar::rational_value() const {
    if (!is_rational()) throw MathError("cyclotomic value is not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

void CycScalar::check_same(const CycScalar& o) const {
    if (order() != o.order()) throw MathError("cyclotomic order mismatch");
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycScalar& CycScalar::operator*=(const Rat& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
    check_same(o);
    std::size_t d = c_.size();
    std::vector<Rat> prod(d == 0 ? 0 : 2 * d - 1, Rat(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    std::vector<Rat> out(d, Rat(0));
    for (std::size_t e = 0; e < prod.size(); ++e) {
        if (prod[e] == 0) continue;
        const auto& pw = field_->power(static_cast<std::int64_t>(e));
        for (std::size_t j = 0; j < d; ++j)
            if (pw[j] != 0) out[j] += prod[e] * pw[j];
    }
    c_ = std::move(out);
    return *this;
}

bool CycScalar::operator==(const CycScalar& o) const {
    return order() == o.order() && c_ == o.c_;
}

void CycScalar::add_root(std::int64_t a, const Rat& r) {
    const auto& pw = field_->power(a);
    for (std::size_t j = 0; j < c_.size(); ++j)
        if (pw[j] != 0) c_[j] += r * pw[j];
}

CycScalar cyc_normalize(const CycScalar& x) {
    CycScalar y = x;
    y *= Rat(1);
    return y;
}

std::int64_t root_sum(std::int64_t n, std::int64_t a) { return mod(a, n) == 0 ? n : 0; }

CycScalar PhaseAccumulator::value() const {
    CycScalar out(n_);
    for (std::int64_t a = 0; a < n_; ++a)
        if (w_[static_cast<std::size_t>(a)] != 0) out.add_root(a, w_[static_cast<std::size_t>(a)]);
    return out;
}

}  // namespace jh
