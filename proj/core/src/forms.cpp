// SPDX-License-Identifier: MIT
#include "jh/forms.hpp"

#include <algorithm>
#include <sstream>

namespace jh {

Invariants invariants2(const RawKey2& k, i64 m) {
    return {k.r1 * k.r1 - 4 * m * k.n11, k.r2 * k.r2 - 4 * m * k.n22, k.r1 * k.r2 - 2 * m * k.n12};
}

InvKey2 inv_key(const RawKey2& k, i64 m) {
    auto d = invariants2(k, m);
    return {d.D1, d.D2, d.D, mod(k.r1, 2 * m), mod(k.r2, 2 * m)};
}

InvKey1 inv_key(const RawKey1& k, i64 m) { return {k.r * k.r - 4 * m * k.n, mod(k.r, 2 * m)}; }

RawKey2 representative(const InvKey2& k, i64 m) {
    if (mod(k.r1 * k.r1 - k.D1, 4 * m) || mod(k.r2 * k.r2 - k.D2, 4 * m) || mod(k.r1 * k.r2 - k.D, 2 * m))
        throw MathError("representative: key violates the residue congruences");
    return {(k.r1 * k.r1 - k.D1) / (4 * m), (k.r1 * k.r2 - k.D) / (2 * m), (k.r2 * k.r2 - k.D2) / (4 * m), k.r1,
            k.r2};
}

RawKey1 representative(const InvKey1& k, i64 m) {
    if (mod(k.r * k.r - k.disc, 4 * m)) throw MathError("representative: key violates the residue congruence");
    return {(k.r * k.r - k.disc) / (4 * m), k.r};
}

bool support_test(const InvKey2& k, i64 m) {
    if (k.r1 < 0 || k.r1 >= 2 * m || k.r2 < 0 || k.r2 >= 2 * m) return false;
    if (k.D1 > 0 || k.D2 > 0) return false;
    if (k.D * k.D > k.D1 * k.D2) return false;
    return mod(k.D1 - k.r1 * k.r1, 4 * m) == 0 && mod(k.D2 - k.r2 * k.r2, 4 * m) == 0 &&
           mod(k.D - k.r1 * k.r2, 2 * m) == 0;
}

bool support_test(const InvKey1& k, i64 m) {
    if (k.r < 0 || k.r >= 2 * m || k.disc > 0) return false;
    return mod(k.disc - k.r * k.r, 4 * m) == 0;
}

bool raw_psd(const RawKey2& k, i64 m) {
    // 4 times the matrix has integer entries; test all principal minors.
    i64 a = 4 * k.n11, b = 2 * k.n12, c = 2 * k.r1, d = 4 * k.n22, e = 2 * k.r2, f = 4 * m;
    __int128 det3 = (__int128)a * (d * f - e * e) - (__int128)b * (b * f - e * c) + (__int128)c * (b * e - d * c);
    return a >= 0 && d >= 0 && f >= 0 && a * d - b * b >= 0 && a * f - c * c >= 0 && d * f - e * e >= 0 &&
           det3 >= 0;
}

InvKey2 swap_key(const InvKey2& k) { return {k.D2, k.D1, k.D, k.r2, k.r1}; }

std::vector<InvKey2> supported_keys2(i64 m, i64 B) {
    std::vector<InvKey2> out;
    for (i64 D1 = -B; D1 <= 0; ++D1)
        for (i64 D2 = -B; D2 <= 0; ++D2) {
            i64 lim = isqrt(D1 * D2);
            for (i64 r1 = 0; r1 < 2 * m; ++r1) {
                if (mod(D1 - r1 * r1, 4 * m)) continue;
                for (i64 r2 = 0; r2 < 2 * m; ++r2) {
                    if (mod(D2 - r2 * r2, 4 * m)) continue;
                    i64 start = -lim + mod(r1 * r2 + lim, 2 * m);
                    for (i64 D = start; D <= lim; D += 2 * m) out.push_back({D1, D2, D, r1, r2});
                }
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<InvKey1> supported_keys1(i64 m, i64 B) {
    std::vector<InvKey1> out;
    for (i64 D = -B; D <= 0; ++D)
        for (i64 r = 0; r < 2 * m; ++r)
            if (mod(D - r * r, 4 * m) == 0) out.push_back({D, r});
    return out;
}

Rat CoeffSource::value(const InvKey2&) const { throw MathError("coefficient source has no degree-2 data"); }
Rat CoeffSource::value(const InvKey1&) const { throw MathError("coefficient source has no degree-1 data"); }

CoeffTable::CoeffTable(int degree, int weight, i64 index, i64 bound)
    : degree_(degree), weight_(weight), index_(index), bound_(bound) {
    if (degree != 1 && degree != 2) throw MathError("table degree must be 1 or 2");
    if (index < 1) throw MathError("table index must be positive");
    if (bound < 0) throw MathError("table bound must be non-negative");
}

bool CoeffTable::in_region(const InvKey2& k) const { return -k.D1 <= bound_ && -k.D2 <= bound_; }
bool CoeffTable::in_region(const InvKey1& k) const { return -k.disc <= bound_; }

Lookup CoeffTable::lookup(const InvKey2& k) const {
    if (degree_ != 2) throw MathError("degree-2 lookup on a degree-1 table");
    if (!support_test(k, index_)) return {Presence::known_zero, 0};
    if (!in_region(k)) return {Presence::unknown, 0};
    auto it = e2_.find(k);
    if (it != e2_.end()) return {Presence::value, it->second};
    if (source_) {
        Rat v = source_->value(k);
        if (v != 0) return {Presence::value, v};
    }
    return {Presence::known_zero, 0};
}

Lookup CoeffTable::lookup(const InvKey1& k) const {
    if (degree_ != 1) throw MathError("degree-1 lookup on a degree-2 table");
    if (!support_test(k, index_)) return {Presence::known_zero, 0};
    if (!in_region(k)) return {Presence::unknown, 0};
    auto it = e1_.find(k);
    if (it != e1_.end()) return {Presence::value, it->second};
    if (source_) {
        Rat v = source_->value(k);
        if (v != 0) return {Presence::value, v};
    }
    return {Presence::known_zero, 0};
}

void CoeffTable::set(const InvKey2& k, const Rat& v) {
    if (degree_ != 2) throw MathError("degree-2 key in a degree-1 table");
    if (!support_test(k, index_) || !in_region(k)) throw MathError("set: key unsupported or outside the region");
    if (v == 0)
        e2_.erase(k);
    else
        e2_[k] = v;
}

void CoeffTable::set(const InvKey1& k, const Rat& v) {
    if (degree_ != 1) throw MathError("degree-1 key in a degree-2 table");
    if (!support_test(k, index_) || !in_region(k)) throw MathError("set: key unsupported or outside the region");
    if (v == 0)
        e1_.erase(k);
    else
        e1_[k] = v;
}

CoeffTable CoeffTable::materialize() const {
    CoeffTable out(degree_, weight_, index_, bound_);
    if (!source_) {
        out.e1_ = e1_;
        out.e2_ = e2_;
        return out;
    }
    if (degree_ == 2) {
        for (const auto& k : supported_keys2(index_, bound_)) {
            auto l = lookup(k);
            if (l.kind == Presence::value) out.e2_.emplace(k, l.value);
        }
    } else {
        for (const auto& k : supported_keys1(index_, bound_)) {
            auto l = lookup(k);
            if (l.kind == Presence::value) out.e1_.emplace(k, l.value);
        }
    }
    return out;
}

CoeffTable CoeffTable::restrict_bound(i64 B) const {
    if (B > bound_) throw MathError("restrict_bound: cannot enlarge the validity region");
    CoeffTable out(degree_, weight_, index_, B);
    out.source_ = source_;
    for (const auto& [k, v] : e2_)
        if (out.in_region(k)) out.e2_.emplace(k, v);
    for (const auto& [k, v] : e1_)
        if (out.in_region(k)) out.e1_.emplace(k, v);
    return out;
}

bool CoeffTable::operator==(const CoeffTable& o) const {
    if (degree_ != o.degree_ || weight_ != o.weight_ || index_ != o.index_ || bound_ != o.bound_) return false;
    if (!source_ && !o.source_) return e1_ == o.e1_ && e2_ == o.e2_;
    auto a = materialize(), b = o.materialize();
    return a.e1_ == b.e1_ && a.e2_ == b.e2_;
}

CoeffTable scale(const CoeffTable& t0, const Rat& s) {
    CoeffTable t = t0.materialize();
    CoeffTable out(t.degree(), t.weight(), t.index(), t.bound());
    for (const auto& [k, v] : t.entries2()) out.set(k, v * s);
    for (const auto& [k, v] : t.entries1()) out.set(k, v * s);
    return out;
}

CoeffTable add(const CoeffTable& a0, const CoeffTable& b0, const Rat& sb) {
    if (a0.degree() != b0.degree() || a0.index() != b0.index())
        throw MathError("add: tables of different degree or index");
    i64 B = std::min(a0.bound(), b0.bound());
    CoeffTable a = a0.restrict_bound(B).materialize(), b = b0.restrict_bound(B).materialize();
    CoeffTable out = a;
    for (const auto& [k, v] : b.entries2()) out.set(k, out.lookup(k).value + sb * v);
    for (const auto& [k, v] : b.entries1()) out.set(k, out.lookup(k).value + sb * v);
    return out;
}

CoeffTable swap_table(const CoeffTable& t0) {
    if (t0.degree() != 2) throw MathError("swap_table: degree-2 table expected");
    CoeffTable t = t0.materialize();
    CoeffTable out(2, t.weight(), t.index(), t.bound());
    for (const auto& [k, v] : t.entries2()) out.set(swap_key(k), v);
    return out;
}

namespace {

std::string raw_str(const RawKey2& k) {
    std::ostringstream os;
    os << "(n11=" << k.n11 << ", n12=" << k.n12 << ", n22=" << k.n22 << ", r1=" << k.r1 << ", r2=" << k.r2 << ")";
    return os.str();
}

}  // namespace

std::string WellDefinednessViolation::message() const {
    std::ostringstream os;
    os << "raw keys " << raw_str(first) << " and " << raw_str(second) << " share invariants (" << key.D1 << ", "
       << key.D2 << ", " << key.D << "; " << key.r1 << ", " << key.r2 << ") but carry " << to_string(first_value)
       << " and " << to_string(second_value);
    return os.str();
}

IngestResult ingest_raw(const std::map<RawKey2, Rat>& raw, int k, i64 m, i64 B) {
    CoeffTable t(2, k, m, B);
    std::map<InvKey2, std::pair<RawKey2, Rat>> seen;
    for (const auto& [rk, v] : raw) {
        InvKey2 key = inv_key(rk, m);
        auto [it, fresh] = seen.emplace(key, std::make_pair(rk, v));
        if (!fresh && it->second.second != v)
            return WellDefinednessViolation{it->second.first, rk, it->second.second, v, key};
    }
    for (const auto& [key, rv] : seen)
        if (support_test(key, m) && t.in_region(key) && rv.second != 0) t.set(key, rv.second);
    return t;
}

CoeffTable ingest_raw1(const std::map<RawKey1, Rat>& raw, int k, i64 m, i64 B) {
    CoeffTable t(1, k, m, B);
    std::map<InvKey1, std::pair<RawKey1, Rat>> seen;
    for (const auto& [rk, v] : raw) {
        InvKey1 key = inv_key(rk, m);
        auto [it, fresh] = seen.emplace(key, std::make_pair(rk, v));
        if (!fresh && it->second.second != v)
            throw MathError("degree-1 raw coefficients depend on more than the invariants");
    }
    for (const auto& [key, rv] : seen)
        if (support_test(key, m) && t.in_region(key) && rv.second != 0) t.set(key, rv.second);
    return t;
}

std::map<std::pair<i64, i64>, CoeffTable> theta_decompose(const CoeffTable& t0) {
    if (t0.degree() != 2) throw MathError("theta_decompose: degree-2 table expected");
    CoeffTable t = t0.materialize();
    i64 m = t.index();
    std::map<std::pair<i64, i64>, CoeffTable> out;
    for (i64 a = 0; a < 2 * m; ++a)
        for (i64 b = 0; b < 2 * m; ++b) out.emplace(std::make_pair(a, b), CoeffTable(2, t.weight(), m, t.bound()));
    for (const auto& [k, v] : t.entries2()) out.at({k.r1, k.r2}).set(k, v);
    return out;
}

Lookup recombine_raw(const std::map<std::pair<i64, i64>, CoeffTable>& comps, const RawKey2& raw, i64 m) {
    InvKey2 key = inv_key(raw, m);
    return comps.at({key.r1, key.r2}).lookup(key);
}

std::map<DiagKey, Rat> restrict_diagonal(const CoeffTable& t) {
    if (t.degree() != 2) throw MathError("restrict_diagonal: degree-2 table expected");
    i64 m = t.index(), B = t.bound();
    std::map<DiagKey, Rat> out;
    std::vector<RawKey1> reps;
    for (const auto& k : supported_keys1(m, B)) {
        // reduced representative r in (-m, m]
        i64 r = k.r > m ? k.r - 2 * m : k.r;
        reps.push_back({(r * r - k.disc) / (4 * m), r});
    }
    for (const auto& a : reps)
        for (const auto& b : reps) {
            i64 lim = isqrt(4 * a.n * b.n);
            Rat acc = 0;
            for (i64 n12 = -lim; n12 <= lim; ++n12) {
                RawKey2 raw{a.n, n12, b.n, a.r, b.r};
                auto l = t.lookup(inv_key(raw, m));
                if (!l.known()) throw MathError("restrict_diagonal: lookup outside the region");
                acc += l.value;
            }
            if (acc != 0) out.emplace(DiagKey{a, b}, acc);
        }
    return out;
}

}  // namespace jh

namespace jh {

namespace {

// Positive semidefinite form a x^2 + 2b xy + c y^2 = -Q with residues and det(U) parity.
struct Reducer {
    i64 a, b, c, r1, r2, n;
    int det = 1;

    void apply(i64 v11, i64 v12, i64 v21, i64 v22) {
        i64 na = a * v11 * v11 + 2 * b * v11 * v21 + c * v21 * v21;
        i64 nb = a * v11 * v12 + b * (v11 * v22 + v12 * v21) + c * v21 * v22;
        i64 nc = a * v12 * v12 + 2 * b * v12 * v22 + c * v22 * v22;
        i64 s1 = mod(r1 * v11 + r2 * v21, n), s2 = mod(r1 * v12 + r2 * v22, n);
        a = na, b = nb, c = nc, r1 = s1, r2 = s2;
        if (v11 * v22 - v12 * v21 < 0) det = -det;
    }

    void reduce() {
        for (;;) {
            if (a > c) apply(0, 1, 1, 0);
            if (a == 0 || 2 * std::abs(b) <= a) break;
            // nearest integer to b / a
            i64 t = b >= 0 ? (2 * b + a) / (2 * a) : -((-2 * b + a) / (2 * a));
            apply(1, -t, 0, 1);
        }
        if (b < 0) apply(1, 0, 0, -1);
    }
};

struct Mat2 {
    i64 v11, v12, v21, v22;
};

std::vector<Mat2> stabilizer_generators(i64 a, i64 b, i64 c) {
    if (a == 0 && c == 0) return {{0, 1, 1, 0}, {1, 1, 0, 1}, {-1, 0, 0, 1}};
    if (a == 0) return {{1, 1, 0, 1}, {-1, 0, 0, 1}, {1, 0, 0, -1}};
    std::vector<Mat2> out;
    for (i64 v11 = -1; v11 <= 1; ++v11)
        for (i64 v12 = -1; v12 <= 1; ++v12)
            for (i64 v21 = -1; v21 <= 1; ++v21)
                for (i64 v22 = -1; v22 <= 1; ++v22) {
                    i64 d = v11 * v22 - v12 * v21;
                    if (d != 1 && d != -1) continue;
                    Reducer t{a, b, c, 0, 0, 1};
                    t.apply(v11, v12, v21, v22);
                    if (t.a == a && t.b == b && t.c == c) out.push_back({v11, v12, v21, v22});
                }
    return out;
}

}  // namespace

GL2Class gl2_class(const InvKey2& key, i64 m, int k) {
    Reducer red{-key.D1, -key.D, -key.D2, key.r1, key.r2, 2 * m};
    red.reduce();
    const bool odd = k % 2 != 0;
    // Residue orbit under the stabilizer, with the sign reached at each point.
    auto gens = stabilizer_generators(red.a, red.b, red.c);
    std::map<std::pair<i64, i64>, int> seen{{{red.r1, red.r2}, 1}};
    std::vector<std::pair<i64, i64>> stack{{red.r1, red.r2}};
    bool forced = false;
    while (!stack.empty()) {
        auto [s1, s2] = stack.back();
        stack.pop_back();
        int sg = seen[{s1, s2}];
        for (const auto& g : gens) {
            i64 t1 = mod(s1 * g.v11 + s2 * g.v21, 2 * m), t2 = mod(s1 * g.v12 + s2 * g.v22, 2 * m);
            int ts = (odd && g.v11 * g.v22 - g.v12 * g.v21 < 0) ? -sg : sg;
            auto [it, fresh] = seen.emplace(std::make_pair(t1, t2), ts);
            if (fresh)
                stack.push_back({t1, t2});
            else if (it->second != ts)
                forced = true;
        }
    }
    auto best = seen.begin();  // smallest residue pair
    GL2Class out;
    out.rep = {-red.a, -red.c, -red.b, best->first.first, best->first.second};
    out.sign = (odd && red.det < 0) ? -best->second : best->second;
    out.forced_zero = forced;
    return out;
}

}  // namespace jh
