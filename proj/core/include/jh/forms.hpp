// SPDX-License-Identifier: MIT
#pragma once

#include "jh/num.hpp"

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace jh {

using i64 = std::int64_t;

// Term e(n11 tau + n12 u + n22 zeta + r1 z1 + r2 z2).
struct RawKey2 {
    i64 n11 = 0, n12 = 0, n22 = 0, r1 = 0, r2 = 0;
    auto operator<=>(const RawKey2&) const = default;
};

// Term e(n tau + r z).
struct RawKey1 {
    i64 n = 0, r = 0;
    auto operator<=>(const RawKey1&) const = default;
};

// Ordered by (D1, D2, D, r1, r2); residues in [0, 2m).
struct InvKey2 {
    i64 D1 = 0, D2 = 0, D = 0, r1 = 0, r2 = 0;
    auto operator<=>(const InvKey2&) const = default;
};

struct InvKey1 {
    i64 disc = 0, r = 0;
    auto operator<=>(const InvKey1&) const = default;
};

struct InvKey2Hash {
    std::size_t operator()(const InvKey2& k) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (i64 x : {k.D1, k.D2, k.D, k.r1, k.r2}) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

struct Invariants {
    i64 D1, D2, D;
    bool operator==(const Invariants&) const = default;
};

Invariants invariants2(const RawKey2& key, i64 m);
InvKey2 inv_key(const RawKey2& key, i64 m);
InvKey1 inv_key(const RawKey1& key, i64 m);
// The raw key with r_i equal to the stored residue.
RawKey2 representative(const InvKey2& key, i64 m);
RawKey1 representative(const InvKey1& key, i64 m);

bool support_test(const InvKey2& key, i64 m);
bool support_test(const InvKey1& key, i64 m);
// Positive semidefiniteness of [[n11, n12/2, r1/2], [n12/2, n22, r2/2], [r1/2, r2/2, m]].
bool raw_psd(const RawKey2& key, i64 m);

InvKey2 swap_key(const InvKey2& key);

// All supported keys with max(|D1|, |D2|) <= B, ascending.
std::vector<InvKey2> supported_keys2(i64 m, i64 B);
std::vector<InvKey1> supported_keys1(i64 m, i64 B);

enum class Presence { value, known_zero, unknown };

struct Lookup {
    Presence kind = Presence::known_zero;
    Rat value = 0;
    bool known() const { return kind != Presence::unknown; }
};

// Lazily evaluated coefficients of a genuine form; must be thread-safe.
class CoeffSource {
public:
    virtual ~CoeffSource() = default;
    virtual Rat value(const InvKey2& key) const;
    virtual Rat value(const InvKey1& key) const;
    virtual std::string describe() const = 0;
};

class CoeffTable {
public:
    CoeffTable() = default;
    CoeffTable(int degree, int weight, i64 index, i64 bound);

    int degree() const { return degree_; }
    int weight() const { return weight_; }
    i64 index() const { return index_; }
    i64 bound() const { return bound_; }
    bool lazy() const { return source_ != nullptr; }
    void set_source(std::shared_ptr<const CoeffSource> s) { source_ = std::move(s); }
    const std::shared_ptr<const CoeffSource>& source() const { return source_; }

    bool in_region(const InvKey2& key) const;
    bool in_region(const InvKey1& key) const;

    Lookup lookup(const InvKey2& key) const;
    Lookup lookup(const InvKey1& key) const;

    // Zero values erase; keys must be supported and inside the region.
    void set(const InvKey2& key, const Rat& v);
    void set(const InvKey1& key, const Rat& v);

    // Stored entries; for lazy tables only those already materialized.
    const std::map<InvKey2, Rat>& entries2() const { return e2_; }
    const std::map<InvKey1, Rat>& entries1() const { return e1_; }

    // Explicit table holding every nonzero coefficient of the region.
    CoeffTable materialize() const;
    // Same coefficients restricted to a smaller bound.
    CoeffTable restrict_bound(i64 B) const;

    bool operator==(const CoeffTable& o) const;

private:
    int degree_ = 2, weight_ = 0;
    i64 index_ = 1, bound_ = 0;
    std::map<InvKey2, Rat> e2_;
    std::map<InvKey1, Rat> e1_;
    std::shared_ptr<const CoeffSource> source_;
};

CoeffTable scale(const CoeffTable& t, const Rat& s);
CoeffTable add(const CoeffTable& a, const CoeffTable& b, const Rat& sb = 1);
// Keywise (C(D2,D1,D;r2,r1)).
CoeffTable swap_table(const CoeffTable& t);

struct WellDefinednessViolation {
    RawKey2 first, second;
    Rat first_value, second_value;
    InvKey2 key;
    std::string message() const;
};

using IngestResult = std::variant<CoeffTable, WellDefinednessViolation>;

// Collapses raw coefficients onto invariant keys inside max(|D1|,|D2|) <= B.
IngestResult ingest_raw(const std::map<RawKey2, Rat>& raw, int k, i64 m, i64 B);
CoeffTable ingest_raw1(const std::map<RawKey1, Rat>& raw, int k, i64 m, i64 B);

std::map<std::pair<i64, i64>, CoeffTable> theta_decompose(const CoeffTable& t);
// Raw coefficient reassembled from residue components.
Lookup recombine_raw(const std::map<std::pair<i64, i64>, CoeffTable>& comps, const RawKey2& raw, i64 m);

struct DiagKey {
    RawKey1 first, second;
    auto operator<=>(const DiagKey&) const = default;
};

// Coefficients of the pullback to u = 0, one reduced representative |r| <= m per class.
std::map<DiagKey, Rat> restrict_diagonal(const CoeffTable& t);

// Orbit of a key under U in GL2(Z): Q -> U^t Q U, (r1, r2) -> (r1, r2) U mod 2m.
// A weight-k form satisfies C(key) = sign * C(rep); forced_zero marks orbits on
// which a sign-reversing stabilizer kills the coefficient (odd k only).
struct GL2Class {
    InvKey2 rep;
    int sign = 1;
    bool forced_zero = false;
};
// rep is Gauss-reduced: 0 <= -2D <= -D1 <= -D2, residues minimal over the stabilizer.
GL2Class gl2_class(const InvKey2& key, i64 m, int k);

}  // namespace jh
