// SPDX-License-Identifier: MIT
#pragma once

#include "jh/forms.hpp"
#include "jh/lattice.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>

namespace jh {

// Representation counts of a lattice with a marked vector, evaluated on demand.
// Degree 2 counts pairs (x1, x2) by summing W_v-orbits of the larger-norm
// vector against an explicit list for the smaller-norm one.
class ThetaSource final : public CoeffSource {
public:
    explicit ThetaSource(const Lattice& L);

    Rat value(const InvKey2& key) const override;
    Rat value(const InvKey1& key) const override;
    std::string describe() const override;

    // Raw counts, independent of the invariant collapse.
    Int count2(const RawKey2& raw) const;
    Int count1(const RawKey1& raw) const;

    const Lattice& lattice() const { return L_; }

private:
    using Hist = std::map<i64, Int>;
    // Vectors of one (norm, marked product) class, rank coordinates per row.
    struct Packed {
        std::vector<std::int16_t> data;
        std::size_t size() const;
        std::size_t rank = 0;
    };
    const Packed& small_list(i64 n, i64 r) const;
    const Hist& histogram(i64 nb, i64 rb, i64 ns, i64 rs) const;

    Lattice L_;
    std::shared_ptr<MarkedOrbits> orbits_;
    mutable std::mutex mu_;
    mutable i64 listed_upto_ = -1;
    mutable std::map<std::pair<i64, i64>, Packed> lists_;
    mutable std::map<std::pair<i64, i64>, std::vector<MarkedOrbits::Rep>> dominant_;  // (r, maxn)
    mutable std::map<std::array<i64, 4>, std::unique_ptr<Hist>> hists_;
};

// Weight rank/2, index v.v/2. Degree 2 tables are lazy (coefficients counted on lookup).
CoeffTable theta_table(const Lattice& L, int degree, i64 B);

// All positive semidefinite raw keys with n11, n22 <= nmax, zero-filled, from
// explicit pair enumeration.
std::map<RawKey2, Rat> theta_raw2(const Lattice& L, i64 nmax);
std::map<RawKey1, Rat> theta_raw1(const Lattice& L, i64 nmax);
// Largest n of a reduced representative of a key with |D| <= B.
i64 reduced_norm_bound(i64 m, i64 B);
// Degree-2 table through explicit enumeration and ingest_raw.
IngestResult theta_table_eager(const Lattice& L, i64 B);

Rat cohen_H(unsigned r, i64 N);
Rat hurwitz_brute(i64 N);
// Index 1, normalised to 1 at (0, 0).
CoeffTable eisenstein1(int k, i64 B);

}  // namespace jh
