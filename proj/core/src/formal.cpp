// SPDX-License-Identifier: MIT
#include "jh/formal.hpp"

#include "jh/operators.hpp"

#include <set>


namespace jh {

namespace {

RatMat hat_matrix(const Exponent& e, std::size_t n) {
    RatMat N(n + 1, n + 1);
    if (n == 1) {
        N(0, 0) = e.a[0];
    } else {
        N(0, 0) = e.a[0];
        N(0, 1) = N(1, 0) = e.a[1] / 2;
        N(1, 1) = e.a[2];
    }
    for (std::size_t i = 0; i < n; ++i) N(i, n) = N(n, i) = e.s[i] / 2;
    N(n, n) = e.w;
    return N;
}

Exponent exponent_from_hat(const RatMat& N, std::size_t n) {
    Exponent e;
    if (n == 1) {
        e.a = {N(0, 0)};
    } else {
        e.a = {N(0, 0), 2 * N(0, 1), N(1, 1)};
    }
    for (std::size_t i = 0; i < n; ++i) e.s.push_back(2 * N(i, n));
    e.w = N(n, n);
    return e;
}

Rat frac_part(const Rat& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rat(f);
}

struct Prepared {
    RatMat A, X, Uinv;
    Rat det;
};

Prepared prepare(const JacobiElement& g) {
    if (!g.parabolic()) throw SlashError("NonParabolic", "formal slash needs a zero lower-left block");
    if (!g.lam.is_integral() || !g.mu.is_integral()) throw MathError("slash_term: Heisenberg part must be integral");
    const std::size_t h = g.degree() + 1;
    RatMat H = hat(g);
    Prepared p;
    p.A = H.block(0, 0, h, h);
    p.X = H.block(0, h, h, h) * p.A.transpose();
    p.Uinv = p.A.inverse();
    p.det = p.A.det();
    return p;
}

Rat trace_product(const RatMat& a, const RatMat& b) {
    Rat t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

i64 max_diag(const Exponent& e, std::size_t n) {
    Rat m = e.a[0];
    if (n == 2 && e.a[2] > m) m = e.a[2];
    mpz_class f;
    mpz_cdiv_q(f.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
    return f.get_si();
}

// Every positive semidefinite integral exponent with diagonal entries <= window.
template <class F>
void for_each_raw(std::size_t degree, i64 m, i64 window, F&& f) {
    for (i64 n1 = 0; n1 <= window; ++n1) {
        const i64 r1max = isqrt(4 * m * n1);
        for (i64 r1 = -r1max; r1 <= r1max; ++r1) {
            if (degree == 1) {
                f(exponent_of(RawKey1{n1, r1}, m));
                continue;
            }
            for (i64 n2 = 0; n2 <= window; ++n2) {
                const i64 r2max = isqrt(4 * m * n2), cmax = isqrt(4 * n1 * n2);
                for (i64 r2 = -r2max; r2 <= r2max; ++r2)
                    for (i64 c = -cmax; c <= cmax; ++c) {
                        RawKey2 raw{n1, c, n2, r1, r2};
                        if (raw_psd(raw, m)) f(exponent_of(raw, m));
                    }
            }
        }
    }
}

// Integral exponents only; non-semidefinite ones read as zero through the support test.
Lookup lookup_exponent(const CoeffTable& t, const Exponent& e) {
    const i64 m = t.index();
    if (e.a.size() == 1) return t.lookup(inv_key(RawKey1{e.a[0].get_num().get_si(), e.s[0].get_num().get_si()}, m));
    return t.lookup(inv_key(RawKey2{e.a[0].get_num().get_si(), e.a[1].get_num().get_si(), e.a[2].get_num().get_si(),
                                    e.s[0].get_num().get_si(), e.s[1].get_num().get_si()},
                            m));
}

}  // namespace

bool Exponent::integral() const {
    for (const auto& x : a)
        if (x.get_den() != 1) return false;
    for (const auto& x : s)
        if (x.get_den() != 1) return false;
    return w.get_den() == 1;
}

Exponent exponent_of(const RawKey2& k, i64 m) {
    return {{Rat(k.n11), Rat(k.n12), Rat(k.n22)}, {Rat(k.r1), Rat(k.r2)}, Rat(m)};
}

Exponent exponent_of(const RawKey1& k, i64 m) { return {{Rat(k.n)}, {Rat(k.r)}, Rat(m)}; }

SlashedTerm slash_term(const JacobiElement& g, const Exponent& e, int k) {
    const std::size_t n = g.degree();
    Prepared p = prepare(g);
    RatMat N = hat_matrix(e, n);
    Rat phase = frac_part(trace_product(N, p.X));
    CycScalar mult = CycScalar::root(phase.get_den().get_si(), phase.get_num().get_si());
    mult *= rat_pow(p.det, k);
    return {exponent_from_hat(p.A.transpose() * N * p.A, n), mult};
}

FormalSeries to_series(const CoeffTable& t, i64 window) {
    FormalSeries s;
    s.degree = static_cast<std::size_t>(t.degree());
    s.weight = t.weight();
    s.index = t.index();
    s.window = window;
    const i64 m = t.index();
    for_each_raw(s.degree, m, window, [&](const Exponent& e) {
        Lookup l = lookup_exponent(t, e);
        if (!l.known()) throw SlashError("RegionExhausted", "series window exceeds the table region");
        if (l.value != 0) s.terms.emplace(e, CycScalar(1, l.value));
    });
    return s;
}

FormalSeries targeted_series(const CoeffTable& t, const std::vector<JacobiElement>& elements, i64 out_window) {
    FormalSeries s;
    s.degree = static_cast<std::size_t>(t.degree());
    s.weight = t.weight();
    s.index = t.index();
    s.window = out_window;
    s.targeted = true;
    const i64 m = t.index();
    std::vector<RatMat> U;
    for (const auto& g : elements) U.push_back(prepare(g).Uinv);
    std::set<Exponent> need;
    for_each_raw(s.degree, m, out_window, [&](const Exponent& e) {
        RatMat N = hat_matrix(e, s.degree);
        for (const auto& u : U) {
            Exponent pre = exponent_from_hat(u.transpose() * N * u, s.degree);
            if (pre.integral()) need.insert(pre);
        }
    });
    for (const auto& e : need) {
        Lookup l = lookup_exponent(t, e);
        if (!l.known()) throw SlashError("RegionExhausted", "preimage outside the table region");
        if (l.value != 0) s.terms.emplace(e, CycScalar(1, l.value));
    }
    return s;
}

CoeffTable to_table(const FormalSeries& s) {
    const i64 m = s.index;
    const i64 B = 4 * m * s.window - (2 * m - 1) * (2 * m - 1);
    if (B < 0) throw SlashError("RegionExhausted", "series window too small for any invariant key");
    if (s.degree == 1) {
        std::map<RawKey1, Rat> raw;
        for (const auto& [e, c] : s.terms)
            raw[{e.a[0].get_num().get_si(), e.s[0].get_num().get_si()}] = c.rational_value();
        return ingest_raw1(raw, s.weight, m, B);
    }
    std::map<RawKey2, Rat> raw;
    for (const auto& [e, c] : s.terms)
        raw[{e.a[0].get_num().get_si(), e.a[1].get_num().get_si(), e.a[2].get_num().get_si(),
             e.s[0].get_num().get_si(), e.s[1].get_num().get_si()}] = c.rational_value();
    auto res = ingest_raw(raw, s.weight, m, B);
    if (auto* v = std::get_if<WellDefinednessViolation>(&res)) throw MathError(v->message());
    return std::get<CoeffTable>(res);
}

i64 formal_output_window(const std::vector<JacobiElement>& elements, i64 index, i64 window) {
    if (elements.empty()) return window;
    const std::size_t n = elements.front().degree();
    std::vector<RatMat> U;
    for (const auto& g : elements) U.push_back(prepare(g).Uinv);
    // Grow the output window until some output term has a preimage beyond the input window.
    for (i64 w = 0; w <= window; ++w) {
        bool ok = true;
        for_each_raw(n, index, w, [&](const Exponent& e) {
            if (!ok || max_diag(e, n) != w) return;
            RatMat N = hat_matrix(e, n);
            for (const auto& u : U) {
                RatMat pre = u.transpose() * N * u;
                for (std::size_t i = 0; i < n; ++i)
                    if (pre(i, i) > window) ok = false;
            }
        });
        if (!ok) {
            if (w == 0) throw SlashError("RegionExhausted", "empty output window");
            return w - 1;
        }
    }
    return window;
}

FormalSeries apply_formal(const FormalSeries& s, const std::vector<JacobiElement>& elements, const Rat& prefactor) {
    FormalSeries out;
    out.degree = s.degree;
    out.weight = s.weight;
    out.index = s.index;
    if (elements.empty()) {
        out.window = s.window;
        return out;
    }
    out.window = s.targeted ? s.window : formal_output_window(elements, s.index, s.window);
    const std::size_t n = s.degree;

    std::vector<Prepared> prep;
    std::vector<Rat> dets;
    for (const auto& g : elements) {
        if (g.degree() != n) throw MathError("apply_formal: element degree mismatch");
        prep.push_back(prepare(g));
        dets.push_back(rat_pow(prep.back().det, s.weight));
    }

    std::map<Exponent, std::map<Rat, Rat>> acc;
    for (const auto& [e, c] : s.terms) {
        if (!c.is_rational()) throw MathError("apply_formal: input coefficients must be rational");
        Rat cv = c.rational_value();
        RatMat N = hat_matrix(e, n);
        for (std::size_t i = 0; i < prep.size(); ++i) {
            const auto& p = prep[i];
            Exponent img = exponent_from_hat(p.A.transpose() * N * p.A, n);
            if (max_diag(img, n) > out.window) continue;
            acc[img][frac_part(trace_product(N, p.X))] += cv * dets[i];
        }
    }
    for (const auto& [e, phases] : acc) {
        i64 ord = 1;
        for (const auto& [ph, w] : phases) ord = lcm(ord, ph.get_den().get_si());
        PhaseAccumulator pa(ord);
        for (const auto& [ph, w] : phases) pa.add(Rat(ph * ord).get_num().get_si(), w);
        CycScalar v = pa.value();
        if (v.is_zero()) continue;
        if (!e.integral()) {
            // Only a term whose every preimage lies in the dense input window is a complete sum.
            if (s.targeted) continue;
            RatMat N = hat_matrix(e, n);
            bool complete = true;
            for (const auto& p : prep) {
                RatMat pre = p.Uinv.transpose() * N * p.Uinv;
                for (std::size_t i = 0; i < n; ++i)
                    if (pre(i, i) > s.window) complete = false;
            }
            if (complete) throw SlashError("NonIntegralResidue", "a non-integral exponent survives the sum");
            continue;
        }
        if (!v.is_rational()) throw SlashError("NonIntegralResidue", "coset sum has an irrational coefficient");
        out.terms.emplace(e, CycScalar(1, v.rational_value() * prefactor));
    }
    return out;
}

}  // namespace jh
