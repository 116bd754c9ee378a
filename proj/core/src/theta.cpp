// SPDX-License-Identifier: MIT
#include "jh/constructors.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace jh {

ThetaSource::ThetaSource(const Lattice& L) : L_(L) {
    validate_lattice(L_);
    orbits_ = std::make_shared<MarkedOrbits>(L_);
}

std::string ThetaSource::describe() const {
    std::ostringstream os;
    os << "theta series of a rank-" << L_.rank() << " lattice, marked vector of norm " << L_.norm(L_.v);
    return os.str();
}

std::size_t ThetaSource::Packed::size() const { return rank ? data.size() / rank : 0; }

// Lists grow by norm; coordinates are stored as int16, which bounds the reachable norm.
const ThetaSource::Packed& ThetaSource::small_list(i64 n, i64 r) const {
    static const Packed empty;
    std::lock_guard<std::mutex> lock(mu_);
    if (n > listed_upto_) {
        const std::size_t rank = L_.gram.size();
        for_each_short_vector(L_, n, [&](const IVec& x) {
            i64 nx = L_.norm(x) / 2;
            if (nx <= listed_upto_) return;
            Packed& pk = lists_[{nx, L_.dot(x, L_.v)}];
            pk.rank = rank;
            for (i64 c : x) {
                if (c < INT16_MIN || c > INT16_MAX) throw MathError("theta: coordinate exceeds the packed range");
                pk.data.push_back(static_cast<std::int16_t>(c));
            }
        });
        listed_upto_ = n;
    }
    auto it = lists_.find({n, r});
    return it == lists_.end() ? empty : it->second;
}

const ThetaSource::Hist& ThetaSource::histogram(i64 nb, i64 rb, i64 ns, i64 rs) const {
    std::array<i64, 4> key{nb, rb, ns, rs};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = hists_.find(key);
        if (it != hists_.end()) return *it->second;
    }
    std::vector<MarkedOrbits::Rep> reps;
    if (orbits_->available()) {
        std::pair<i64, i64> dk{rb, nb};
        std::unique_lock<std::mutex> lock(mu_);
        auto it = dominant_.find(dk);
        if (it == dominant_.end()) {
            lock.unlock();
            auto all = orbits_->dominant(rb, nb);
            std::vector<MarkedOrbits::Rep> exact;
            for (auto& rep : all)
                if (rep.norm == 2 * nb) exact.push_back(std::move(rep));
            lock.lock();
            it = dominant_.emplace(dk, std::move(exact)).first;
        }
        reps = it->second;
    } else {
        const Packed& xs = small_list(nb, rb);
        for (std::size_t a = 0; a < xs.size(); ++a)
            reps.push_back({IVec(xs.data.begin() + a * xs.rank, xs.data.begin() + (a + 1) * xs.rank), 2 * nb, Int(1)});
    }
    const auto& ys = small_list(ns, rs);
    auto h = std::make_unique<Hist>();
    std::size_t n = L_.gram.size();
    // |x.y| <= sqrt(x.x y.y) = 2 sqrt(nb ns)
    i64 lim = isqrt(4 * nb * ns) + 1;
    std::vector<i64> bins(static_cast<std::size_t>(2 * lim + 1));
    for (const auto& rep : reps) {
        IVec gx(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gx[i] += L_.gram[i][j] * rep.x[j];
        std::fill(bins.begin(), bins.end(), 0);
        for (std::size_t b = 0; b < ys.size(); ++b) {
            const std::int16_t* y = ys.data.data() + b * n;
            i64 d = 0;
            for (std::size_t i = 0; i < n; ++i) d += gx[i] * y[i];
            ++bins[static_cast<std::size_t>(d + lim)];
        }
        for (std::size_t d = 0; d < bins.size(); ++d)
            if (bins[d]) (*h)[static_cast<i64>(d) - lim] += rep.orbit * Int(static_cast<long>(bins[d]));
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, fresh] = hists_.emplace(key, std::move(h));
    return *it->second;
}

Int ThetaSource::count2(const RawKey2& raw) const {
    if (raw.n11 < 0 || raw.n22 < 0) return 0;
    const Hist* h;
    if (raw.n11 >= raw.n22)
        h = &histogram(raw.n11, raw.r1, raw.n22, raw.r2);
    else
        h = &histogram(raw.n22, raw.r2, raw.n11, raw.r1);
    auto it = h->find(raw.n12);
    return it == h->end() ? Int(0) : it->second;
}

Int ThetaSource::count1(const RawKey1& raw) const {
    if (raw.n < 0) return 0;
    if (!orbits_->available()) return Int(static_cast<long>(small_list(raw.n, raw.r).size()));
    Int total = 0;
    for (const auto& rep : orbits_->dominant(raw.r, raw.n))
        if (rep.norm == 2 * raw.n) total += rep.orbit;
    return total;
}

// Counts are GL2(Z)-invariant; the reduced representative minimizes the shorter norm.
Rat ThetaSource::value(const InvKey2& key) const {
    GL2Class c = gl2_class(key, L_.index(), static_cast<int>(L_.rank() / 2));
    if (c.forced_zero) return 0;
    return c.sign * Rat(count2(representative(c.rep, L_.index())));
}

Rat ThetaSource::value(const InvKey1& key) const {
    return Rat(count1(representative(key, L_.index())));
}

namespace {

void check_theta_input(const Lattice& L, i64 B) {
    validate_lattice(L);
    if (L.rank() % 8) throw MathError("theta_table: rank must be divisible by 8");
    if (!is_unimodular(L)) throw MathError("theta_table: Gram matrix must be unimodular");
    if (B < 4 * L.index()) throw MathError("theta_table: bound must be at least 4m");
}

}  // namespace

CoeffTable theta_table(const Lattice& L, int degree, i64 B) {
    check_theta_input(L, B);
    i64 m = L.index();
    int k = L.rank() / 2;
    auto src = std::make_shared<ThetaSource>(L);
    if (degree == 2) {
        CoeffTable t(2, k, m, B);
        t.set_source(src);
        return t;
    }
    if (degree != 1) throw MathError("theta_table: degree must be 1 or 2");
    CoeffTable t(1, k, m, B);
    for (const auto& key : supported_keys1(m, B)) {
        Rat c = src->value(key);
        if (c != 0) t.set(key, c);
    }
    return t;
}

i64 reduced_norm_bound(i64 m, i64 B) { return (m * m + B) / (4 * m); }

std::map<RawKey2, Rat> theta_raw2(const Lattice& L, i64 nmax) {
    i64 m = L.index();
    auto vs = enumerate_short_vectors(L, nmax);
    std::map<RawKey2, Rat> raw;
    // zero-fill every semidefinite raw key in the box
    for (i64 n11 = 0; n11 <= nmax; ++n11)
        for (i64 n22 = 0; n22 <= nmax; ++n22) {
            i64 l1 = isqrt(4 * m * n11), l2 = isqrt(4 * m * n22), l12 = isqrt(4 * n11 * n22);
            for (i64 r1 = -l1; r1 <= l1; ++r1)
                for (i64 r2 = -l2; r2 <= l2; ++r2)
                    for (i64 n12 = -l12; n12 <= l12; ++n12) {
                        RawKey2 k{n11, n12, n22, r1, r2};
                        if (raw_psd(k, m)) raw.emplace(k, Rat(0));
                    }
        }
    std::size_t n = L.gram.size();
    // group by (x.x/2, x.v); pair counts binned by x1.x2 in [-2 nmax, 2 nmax]
    std::map<std::pair<i64, i64>, std::vector<IVec>> groups;
    for (const auto& x : vs) groups[{L.norm(x) / 2, L.dot(x, L.v)}].push_back(x);
    std::map<RawKey2, i64> counts;
    std::vector<i64> bins(static_cast<std::size_t>(4 * nmax + 1));
    for (const auto& [ka, xa] : groups)
        for (const auto& [kb, xb] : groups) {
            std::fill(bins.begin(), bins.end(), 0);
            for (const auto& x : xa) {
                IVec g(n, 0);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) g[i] += L.gram[i][j] * x[j];
                for (const auto& y : xb) {
                    i64 d = 0;
                    for (std::size_t i = 0; i < n; ++i) d += g[i] * y[i];
                    ++bins[static_cast<std::size_t>(d + 2 * nmax)];
                }
            }
            for (std::size_t d = 0; d < bins.size(); ++d)
                if (bins[d])
                    counts[RawKey2{ka.first, static_cast<i64>(d) - 2 * nmax, kb.first, ka.second, kb.second}] = bins[d];
        }
    for (const auto& [k, c] : counts) raw[k] = Rat(static_cast<long>(c));
    return raw;
}

std::map<RawKey1, Rat> theta_raw1(const Lattice& L, i64 nmax) {
    i64 m = L.index();
    std::map<RawKey1, Rat> raw;
    for (i64 n = 0; n <= nmax; ++n) {
        i64 l = isqrt(4 * m * n);
        for (i64 r = -l; r <= l; ++r) raw.emplace(RawKey1{n, r}, Rat(0));
    }
    for (const auto& x : enumerate_short_vectors(L, nmax)) raw[RawKey1{L.norm(x) / 2, L.dot(x, L.v)}] += 1;
    return raw;
}

IngestResult theta_table_eager(const Lattice& L, i64 B) {
    check_theta_input(L, B);
    i64 m = L.index();
    return ingest_raw(theta_raw2(L, reduced_norm_bound(m, B)), L.rank() / 2, m, B);
}

}  // namespace jh
