// SPDX-License-Identifier: MIT
#pragma once

#include "jh/num.hpp"

#include <json.hpp>

#include <functional>
#include <vector>

namespace jh {

using IVec = std::vector<std::int64_t>;
using IMat = std::vector<IVec>;

// Even integral lattice Z^n with Gram matrix `gram` and a marked vector `v`.
struct Lattice {
    IMat gram;
    IVec v;

    int rank() const { return static_cast<int>(gram.size()); }
    std::int64_t dot(const IVec& x, const IVec& y) const;
    std::int64_t norm(const IVec& x) const { return dot(x, x); }
    std::int64_t index() const { return norm(v) / 2; }
    std::int64_t determinant() const;
};

// Positive definite, even, symmetric; v nonzero. Throws MathError otherwise.
void validate_lattice(const Lattice& L);
bool is_unimodular(const Lattice& L);

// Marked vector of norm 2 (a root) or 4 (sum of two orthogonal roots).
Lattice e8_lattice(int v_norm = 2);
Lattice e8e8_lattice(int v_norm = 2);
Lattice lattice_from_json(const nlohmann::json& j);

// All x with x.x/2 <= maxnorm, lexicographic order.
std::vector<IVec> enumerate_short_vectors(const Lattice& L, std::int64_t maxnorm);
// The same vectors streamed in enumeration order, without storing them.
void for_each_short_vector(const Lattice& L, std::int64_t maxnorm, const std::function<void(const IVec&)>& f);

// Weyl group order of the reflection group of a simply-laced root system
// given by all of its roots.
Int weyl_order(const Lattice& L, const std::vector<IVec>& roots);

// Orbits of the stabilizer W_v of the marked vector in the Weyl group of the
// norm-2 vectors. Requires the roots orthogonal to v to span v's complement.
class MarkedOrbits {
public:
    explicit MarkedOrbits(const Lattice& L);

    bool available() const { return available_; }
    const Lattice& lattice() const { return L_; }
    const Int& group_order() const { return wv_order_; }

    struct Rep {
        IVec x;
        std::int64_t norm;
        Int orbit;
    };
    // Dominant representatives with x.v = r and x.x <= 2*maxn, one per W_v-orbit.
    std::vector<Rep> dominant(std::int64_t r, std::int64_t maxn) const;

private:
    Lattice L_;
    bool available_ = false;
    std::vector<IVec> rv_;       // roots orthogonal to v
    std::vector<IVec> simple_;   // simple system of rv_
    Int wv_order_ = 1;
    // y = M x with rows (v, simple roots) of M = F G; Qy = M^-T G M^-1.
    std::vector<std::vector<long double>> qy_;
    std::vector<std::vector<Rat>> minv_;
};

}  // namespace jh
