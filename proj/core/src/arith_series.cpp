// SPDX-License-Identifier: MIT
#include "jh/constructors.hpp"

namespace jh {

Rat cohen_H(unsigned r, i64 N) {
    if (r == 0) throw MathError("cohen_H: r must be positive");
    if (N < 0) return 0;
    if (N == 0) return -bernoulli(2 * r) / Rat(2 * r);
    i64 delta = (r % 2) ? -N : N;
    if (mod(delta, 4) > 1) return 0;
    auto [D0, f] = fundamental_split(delta);
    Rat L = -gen_bernoulli(r, D0) / Rat(r);
    Rat acc = 0;
    for (i64 d : divisors(f)) {
        int mu = moebius(d);
        if (mu == 0) continue;
        int chi = kronecker_symbol(D0, d);
        if (chi == 0) continue;
        acc += Rat(mu * chi) * rat_pow(d, static_cast<int>(r) - 1) * Rat(sigma(2 * r - 1, f / d));
    }
    return L * acc;
}

Rat hurwitz_brute(i64 N) {
    if (N < 0) return 0;
    if (N == 0) return Rat(-1, 12);
    if (mod(-N, 4) > 1) return 0;
    // reduced forms a x^2 + b xy + c y^2, b^2 - 4ac = -N, |b| <= a <= c
    Rat h = 0;
    for (i64 a = 1; 3 * a * a <= N; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b + N;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (a == c && b == 0)
                h += Rat(1, 2);
            else if (a == b && b == c)
                h += Rat(1, 3);
            else
                h += 1;
        }
    return h;
}

CoeffTable eisenstein1(int k, i64 B) {
    if (k < 4 || k % 2) throw MathError("eisenstein1: weight must be even and at least 4");
    CoeffTable t(1, k, 1, B);
    Rat h0 = cohen_H(static_cast<unsigned>(k - 1), 0);
    for (const auto& key : supported_keys1(1, B)) {
        Rat c = cohen_H(static_cast<unsigned>(k - 1), -key.disc) / h0;
        if (c != 0) t.set(key, c);
    }
    return t;
}

}  // namespace jh
