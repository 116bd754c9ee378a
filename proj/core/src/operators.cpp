// SPDX-License-Identifier: MIT
#include "jh/operators.hpp"

#include "jh/cyclotomic.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>

namespace jh {

namespace {

constexpr std::size_t kMaxH = 3;  // size of N^ for degree 2
using SMat = std::array<i64, kMaxH * kMaxH>;

i64 to_i64(const Rat& x) {
    if (x.get_den() != 1 || !x.get_num().fits_slong_p()) throw MathError("integer entry expected");
    return x.get_num().get_si();
}

struct InvKey1Hash {
    std::size_t operator()(const InvKey1& k) const noexcept {
        return std::hash<i64>()(k.disc) * 31u + std::hash<i64>()(k.r);
    }
};

}  // namespace

// Elements sharing (A^, det A) share the preimage of every output term and differ
// only in the phase e(tr(N^ X)), X = B^ A^t = V / ord.
struct SlashSum::Impl {
    struct Member {
        std::vector<i64> v;  // upper triangle of V, row-major, reduced mod ord
        i64 mult = 0;
    };
    struct Group {
        SMat u{};  // d * A^-1, integral
        i64 d = 1;
        Rat det;
        std::vector<Member> members;
        std::map<std::vector<i64>, i64> pending;
    };
    std::size_t h = 0;
    i64 ord = 1;
    Rat shrink = 0;  // max over elements of |A^-1 e_i|_1^2
    std::vector<Group> groups;
    std::map<std::pair<std::vector<Rat>, Rat>, std::size_t> index;

    void add(const JacobiElement& e, std::size_t degree);
    void finish();
};

void SlashSum::Impl::add(const JacobiElement& e, std::size_t degree) {
    if (e.degree() != degree) throw MathError("SlashSum: element degree mismatch");
    if (!e.parabolic()) throw SlashError("NonParabolic", "lower-left block must vanish");
    if (!e.lam.is_integral() || !e.mu.is_integral()) throw MathError("SlashSum: Heisenberg part must be integral");
    RatMat H = hat(e);
    RatMat Ah = H.block(0, 0, h, h), Bh = H.block(0, h, h, h);
    RatMat X = Bh * Ah.transpose();
    if (!X.is_symmetric()) throw MathError("SlashSum: element is not symplectic");
    RatMat U = Ah.inverse();
    for (std::size_t i = 0; i < degree; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < degree; ++j) s += abs(U(j, i));
        s *= s;
        if (s > shrink) shrink = s;
    }
    std::vector<Rat> ukey;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) ukey.push_back(U(i, j));
    Rat det = Ah.det();
    auto [it, fresh] = index.try_emplace({ukey, det}, groups.size());
    if (fresh) {
        Group g;
        g.d = to_i64(Rat(U.denominator()));
        for (std::size_t i = 0; i < h * h; ++i) g.u[i] = to_i64(ukey[i] * g.d);
        g.det = det;
        groups.push_back(std::move(g));
    }
    // Phases depend on X mod 1 only; stored scaled by the running common denominator.
    i64 next = lcm(ord, to_i64(Rat(X.denominator())));
    if (next != ord) {
        i64 f = next / ord;
        for (auto& g : groups) {
            std::map<std::vector<i64>, i64> scaled;
            for (auto& [v, c] : g.pending) {
                auto w = v;
                for (auto& x : w) x *= f;
                scaled[w] += c;
            }
            g.pending = std::move(scaled);
        }
        ord = next;
    }
    std::vector<i64> v;
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) v.push_back(mod(to_i64(X(i, j) * ord), ord));
    ++groups[it->second].pending[v];
}

void SlashSum::Impl::finish() {
    for (auto& g : groups) {
        for (auto& [v, c] : g.pending) g.members.push_back({v, c});
        g.pending.clear();
    }
    index.clear();
}

SlashSum::SlashSum(std::size_t degree, const std::vector<JacobiElement>& elements)
    : degree_(degree), size_(elements.size()), impl_(std::make_unique<Impl>()) {
    if (degree != 1 && degree != 2) throw MathError("SlashSum: degree must be 1 or 2");
    impl_->h = degree + 1;
    for (const auto& e : elements) impl_->add(e, degree);
    impl_->finish();
}

SlashSum SlashSum::product(std::size_t degree, const std::vector<RatMat>& symplectic,
                           const std::vector<JacobiElement>& heis, Embed embed) {
    SlashSum s(degree, {});
    s.size_ = symplectic.size() * heis.size();
    for (const auto& g : symplectic) {
        JacobiElement gs = JacobiElement::symplectic(g);
        for (const auto& hh : heis) {
            JacobiElement e = gs * hh;
            if (embed == Embed::up)
                e = embed_up(e);
            else if (embed == Embed::down)
                e = embed_down(e);
            s.impl_->add(e, degree);
        }
    }
    s.impl_->finish();
    return s;
}

SlashSum::~SlashSum() = default;
SlashSum::SlashSum(SlashSum&&) noexcept = default;
SlashSum& SlashSum::operator=(SlashSum&&) noexcept = default;

std::int64_t SlashSum::phase_order() const { return impl_->ord; }

i64 SlashSum::output_bound(i64 B) const {
    if (impl_->shrink <= 1) return B;
    Rat q = Rat(B) / impl_->shrink;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

namespace {
std::atomic<std::size_t> g_slash_jobs{1};
}  // namespace

void set_slash_jobs(std::size_t jobs) { g_slash_jobs = std::max<std::size_t>(1, jobs); }
std::size_t slash_jobs() { return g_slash_jobs; }

CoeffTable SlashSum::apply(const CoeffTable& t, const Rat& prefactor) const {
    if (static_cast<std::size_t>(t.degree()) != degree_) throw MathError("SlashSum: table degree mismatch");
    const std::size_t h = impl_->h;
    const i64 m = t.index(), ord = impl_->ord;
    const int k = t.weight();
    CoeffTable out(t.degree(), k, m, output_bound(t.bound()));

    std::vector<Rat> dets;
    for (const auto& g : impl_->groups) dets.push_back(rat_pow(g.det, k));

    // Workers own their memo and scratch state and take every jobs-th output key;
    // exact accumulation makes the result independent of the split.
    std::vector<InvKey2> keys2;
    std::vector<InvKey1> keys1;
    if (degree_ == 2)
        keys2 = supported_keys2(m, out.bound());
    else
        keys1 = supported_keys1(m, out.bound());
    const std::size_t nkeys = degree_ == 2 ? keys2.size() : keys1.size();
    const std::size_t jobs = std::max<std::size_t>(1, std::min(slash_jobs(), nkeys));
    std::vector<std::vector<std::pair<std::size_t, Rat>>> found(jobs);
    std::vector<std::exception_ptr> errors(jobs);

    auto work = [&](std::size_t shard) {
        std::unordered_map<InvKey2, Rat, InvKey2Hash> memo2;
        std::unordered_map<InvKey1, Rat, InvKey1Hash> memo1;
        auto coeff = [&](const SMat& S) -> Rat {
            Lookup l;
            if (degree_ == 2) {
                RawKey2 raw{S[0] / 2, S[1], S[4] / 2, S[2], S[5]};
                InvKey2 key = inv_key(raw, m);
                auto it = memo2.find(key);
                if (it != memo2.end()) return it->second;
                l = t.lookup(key);
                if (!l.known()) throw SlashError("RegionExhausted", "preimage outside the input region");
                memo2.emplace(key, l.value);
            } else {
                RawKey1 raw{S[0] / 2, S[1]};
                InvKey1 key = inv_key(raw, m);
                auto it = memo1.find(key);
                if (it != memo1.end()) return it->second;
                l = t.lookup(key);
                if (!l.known()) throw SlashError("RegionExhausted", "preimage outside the input region");
                memo1.emplace(key, l.value);
            }
            return l.value;
        };

        std::vector<Rat> acc(static_cast<std::size_t>(ord));
        std::vector<i64> cnt(static_cast<std::size_t>(ord), 0);
        std::vector<std::size_t> touched;

        auto evaluate = [&](const SMat& Sp) -> Rat {
            for (auto& a : acc) a = 0;
            bool any = false;
            for (std::size_t gi = 0; gi < impl_->groups.size(); ++gi) {
                const auto& g = impl_->groups[gi];
                // S = u^t S' u / d^2
                SMat T{}, S{};
                for (std::size_t i = 0; i < h; ++i)
                    for (std::size_t j = 0; j < h; ++j) {
                        i64 s = 0;
                        for (std::size_t l = 0; l < h; ++l) s += Sp[i * kMaxH + l] * g.u[l * h + j];
                        T[i * kMaxH + j] = s;
                    }
                const i64 d2 = g.d * g.d;
                bool integral = true;
                for (std::size_t i = 0; i < h && integral; ++i)
                    for (std::size_t j = i; j < h; ++j) {
                        i64 s = 0;
                        for (std::size_t l = 0; l < h; ++l) s += g.u[l * h + i] * T[l * kMaxH + j];
                        if (s % d2) {
                            integral = false;
                            break;
                        }
                        s /= d2;
                        if (i == j && (s % 2)) {
                            integral = false;
                            break;
                        }
                        S[i * kMaxH + j] = S[j * kMaxH + i] = s;
                    }
                if (!integral) continue;
                if (S[(h - 1) * kMaxH + (h - 1)] != 2 * m) throw MathError("SlashSum: index not preserved");
                Rat c = coeff(S);
                if (c == 0) continue;
                // exponent * ord = sum_i S_ii/2 V_ii + sum_{i<j} S_ij V_ij
                std::array<i64, 6> w{};
                std::size_t t = 0;
                for (std::size_t i = 0; i < h; ++i)
                    for (std::size_t j = i; j < h; ++j) w[t++] = (i == j ? S[i * kMaxH + j] / 2 : S[i * kMaxH + j]) % ord;
                for (const auto& mem : g.members) {
                    i64 a = 0;
                    for (std::size_t q = 0; q < t; ++q) a += w[q] * mem.v[q];
                    auto idx = static_cast<std::size_t>(mod(a, ord));
                    if (cnt[idx] == 0) touched.push_back(idx);
                    cnt[idx] += mem.mult;
                }
                Rat cd = c * dets[gi];
                for (auto idx : touched) {
                    acc[idx] += cd * cnt[idx];
                    cnt[idx] = 0;
                }
                touched.clear();
                any = true;
            }
            if (!any) return 0;
            PhaseAccumulator pa(ord);
            for (std::size_t a = 0; a < acc.size(); ++a)
                if (acc[a] != 0) pa.add(static_cast<i64>(a), acc[a]);
            CycScalar v = pa.value();
            if (!v.is_rational()) throw SlashError("NonIntegralResidue", "coset sum has an irrational coefficient");
            return v.rational_value() * prefactor;
        };

        for (std::size_t i = shard; i < nkeys; i += jobs) {
            SMat Sp{};
            if (degree_ == 2) {
                RawKey2 r = representative(keys2[i], m);
                Sp[0] = 2 * r.n11;
                Sp[1] = Sp[3] = r.n12;
                Sp[4] = 2 * r.n22;
                Sp[2] = Sp[6] = r.r1;
                Sp[5] = Sp[7] = r.r2;
                Sp[8] = 2 * m;
            } else {
                RawKey1 r = representative(keys1[i], m);
                Sp[0] = 2 * r.n;
                Sp[1] = Sp[kMaxH] = r.r;
                Sp[kMaxH + 1] = 2 * m;
            }
            Rat v = evaluate(Sp);
            if (v != 0) found[shard].emplace_back(i, std::move(v));
        }
    };
    auto guarded = [&](std::size_t shard) {
        try {
            work(shard);
        } catch (...) {
            errors[shard] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(guarded, j);
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    for (const auto& part : found)
        for (const auto& [i, v] : part) {
            if (degree_ == 2)
                out.set(keys2[i], v);
            else
                out.set(keys1[i], v);
        }
    return out;
}

std::vector<JacobiElement> package_elements(const std::vector<RatMat>& symplectic,
                                            const std::vector<JacobiElement>& heis, Embed embed) {
    std::vector<JacobiElement> out;
    out.reserve(symplectic.size() * heis.size());
    for (const auto& g : symplectic) {
        for (const auto& hh : heis) {
            JacobiElement e = JacobiElement::symplectic(g) * hh;
            if (embed == Embed::up)
                e = embed_up(e);
            else if (embed == Embed::down)
                e = embed_down(e);
            out.push_back(std::move(e));
        }
    }
    return out;
}

CoeffTable apply_package(const CoeffTable& t, const CosetPackage& pkg, const std::vector<JacobiElement>& heis,
                         Embed embed, const Rat& prefactor) {
    std::size_t deg = pkg.elements.empty() ? static_cast<std::size_t>(t.degree()) : pkg.elements.front().rows() / 2;
    if (embed != Embed::none) deg = 2;
    return SlashSum::product(deg, pkg.elements, heis, embed).apply(t, prefactor);
}

namespace {

std::vector<RatMat> scaled_det_cosets(i64 l) {
    std::vector<RatMat> out;
    for (const auto& M : det_cosets(l)) out.push_back(scaled_gl2(M, l));
    return out;
}

CoeffTable op_embedded(const CoeffTable& t, i64 l, Embed embed) {
    return hecke_slash_sum(l, embed).apply(t, rat_pow(Rat(l), t.weight() - 4));
}

}  // namespace

SlashSum hecke_slash_sum(i64 l, Embed embed) {
    if (l < 1) throw MathError("Hecke operator: l must be positive");
    return SlashSum::product(embed == Embed::none ? 1 : 2, scaled_det_cosets(l), heisenberg_set(1, l), embed);
}

CoeffTable op_TJ1(const CoeffTable& t, i64 l) {
    if (t.degree() != 1) throw MathError("op_TJ1: degree-1 table expected");
    return op_embedded(t, l, Embed::none);
}

CoeffTable op_X(const CoeffTable& t, i64 p) {
    if (t.degree() != 1) throw MathError("op_X: degree-1 table expected");
    return SlashSum(1, double_coset_X(p)).apply(t);
}

CoeffTable op_up(const CoeffTable& t, i64 l) {
    if (t.degree() != 2) throw MathError("op_up: degree-2 table expected");
    return op_embedded(t, l, Embed::up);
}

CoeffTable op_down(const CoeffTable& t, i64 l) {
    if (t.degree() != 2) throw MathError("op_down: degree-2 table expected");
    return op_embedded(t, l, Embed::down);
}

CoeffTable op_package2(const CoeffTable& t, PackageId id, i64 p) {
    if (t.degree() != 2 || is_degree1(id)) throw MathError("op_package2: degree-2 table and M-package expected");
    return apply_package(t, package(id, p), heisenberg_set(2, p), Embed::none, 1);
}

namespace {

template <class Key>
Rat proportionality(const std::vector<Key>& keys, const CoeffTable& in, const CoeffTable& out) {
    std::optional<Rat> lambda;
    for (const auto& key : keys) {
        Lookup a = in.lookup(key), b = out.lookup(key);
        if (a.value == 0) {
            if (b.value != 0) throw SlashError("NotProportional", "input vanishes where output does not");
            continue;
        }
        Rat q = b.value / a.value;
        if (!lambda)
            lambda = q;
        else if (*lambda != q)
            throw SlashError("NotProportional", "ratio changes");
    }
    if (!lambda) throw MathError("eigenvalue_of: input vanishes on the common region");
    return *lambda;
}

}  // namespace

Rat eigenvalue_of(const CoeffTable& input, const CoeffTable& output) {
    if (input.degree() != output.degree() || input.index() != output.index())
        throw MathError("eigenvalue_of: incompatible tables");
    i64 B = std::min(input.bound(), output.bound());
    if (input.degree() == 2) return proportionality(supported_keys2(input.index(), B), input, output);
    return proportionality(supported_keys1(input.index(), B), input, output);
}

}  // namespace jh
