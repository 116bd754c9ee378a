// SPDX-License-Identifier: MIT
#include "jh/cosets.hpp"

#include <array>

namespace jh {

namespace {

constexpr std::array<const char*, 15> kNames = {"N1", "N2", "N3", "M1", "M2",  "M3",  "M4", "M5",
                                                "M6", "M7", "M8", "M9", "M10", "M11", "M12"};

RatMat block4(const RatMat& A, const RatMat& B, const RatMat& D) {
    RatMat g(4, 4);
    g.set_block(0, 0, A);
    g.set_block(0, 2, B);
    g.set_block(2, 2, D);
    return g;
}

Rat frac(i64 a, i64 b) {
    Rat r(a, b);
    r.canonicalize();
    return r;
}

RatMat m2(Rat a, Rat b, Rat c, Rat d) { return RatMat{{a, b}, {c, d}}; }

}  // namespace

std::string to_string(PackageId id) { return kNames[static_cast<std::size_t>(id)]; }

std::optional<PackageId> parse_package_id(const std::string& s) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (s == kNames[i]) return static_cast<PackageId>(i);
    return std::nullopt;
}

std::vector<PackageId> all_package_ids() {
    std::vector<PackageId> out;
    for (std::size_t i = 0; i < kNames.size(); ++i) out.push_back(static_cast<PackageId>(i));
    return out;
}

i64 expected_package_size(PackageId id, i64 p) {
    switch (id) {
        case PackageId::N1: return 1;
        case PackageId::N2: return p - 1;
        case PackageId::N3: return p * p;
        case PackageId::M1: return ipow(p, 6);
        case PackageId::M2: return ipow(p, 3);
        case PackageId::M3: return 1;
        case PackageId::M4: return p * p;
        case PackageId::M5: return 1;
        case PackageId::M6: return p * (p - 1);
        case PackageId::M7: return p * p * (p - 1);
        case PackageId::M8: return ipow(p, 4);
        case PackageId::M9: return ipow(p, 4);
        case PackageId::M10: return 1;
        case PackageId::M11: return p;
        case PackageId::M12: return ipow(p, 3) * (p - 1);
    }
    throw MathError("expected_package_size: unknown id");
}

CosetPackage package(PackageId id, i64 p) {
    if (p < 3 || !is_prime(p)) throw MathError("package: p must be an odd prime");
    CosetPackage pk{id, p, {}, expected_package_size(id, p)};
    auto& out = pk.elements;
    const Rat P(p), ip(1, p), Z(0), O(1);
    const i64 p2 = p * p;
    switch (id) {
        case PackageId::N1: out.push_back(m2(P, Z, Z, ip)); break;
        case PackageId::N2:
            for (i64 a = 1; a < p; ++a) out.push_back(m2(O, frac(a, p), Z, O));
            break;
        case PackageId::N3:
            for (i64 b = 0; b < p2; ++b) out.push_back(m2(ip, frac(b, p), Z, P));
            break;
        case PackageId::M1:
            for (i64 x = 0; x < p2; ++x)
                for (i64 y = 0; y < p2; ++y)
                    for (i64 z = 0; z < p2; ++z)
                        out.push_back(block4(m2(ip, Z, Z, ip), m2(frac(y, p), frac(x, p), frac(x, p), frac(z, p)),
                                             m2(P, Z, Z, P)));
            break;
        case PackageId::M2:
            for (i64 s = 0; s < p2; ++s)
                for (i64 x = 0; x < p; ++x)
                    out.push_back(
                        block4(m2(ip, Z, Z, O), m2(frac(s, p), frac(x, p), Rat(x), Z), m2(P, Z, Z, O)));
            break;
        case PackageId::M3: out.push_back(RatMat::diag({P, P, ip, ip})); break;
        case PackageId::M4:
            for (i64 a = 0; a < p2; ++a)
                out.push_back(block4(m2(ip, Z, Z, P), m2(frac(a, p), Z, Z, Z), m2(P, Z, Z, ip)));
            break;
        case PackageId::M5: out.push_back(RatMat::diag({O, P, O, ip})); break;
        case PackageId::M6:
            for (i64 a = 0; a < p; ++a)
                for (i64 b = 1; b < p; ++b)
                    out.push_back(block4(m2(P, Z, Rat(-a), O), m2(Z, Z, Z, frac(b, p)), m2(ip, frac(a, p), Z, O)));
            break;
        case PackageId::M7:
            for (i64 a = 1; a < p; ++a)
                for (i64 b = 0; b < p; ++b)
                    for (i64 c = 0; c < p; ++c)
                        out.push_back(block4(m2(O, Z, frac(-a, p), O), m2(Z, frac(c, p), frac(c, p), frac(b, p)),
                                             m2(O, frac(a, p), Z, O)));
            break;
        case PackageId::M8:
            for (i64 a = 0; a < p2; ++a)
                for (i64 x = 0; x < p2; ++x)
                    out.push_back(
                        block4(m2(P, Z, frac(-a, p), ip), m2(Z, Z, Z, frac(x, p)), m2(ip, frac(a, p), Z, P)));
            break;
        case PackageId::M9:
            for (i64 a = 0; a < p; ++a)
                for (i64 z = 0; z < p; ++z)
                    for (i64 k = 0; k < p2; ++k)
                        out.push_back(block4(m2(O, Z, frac(-a, p), ip), m2(Z, Rat(z), frac(z, p), frac(k, p)),
                                             m2(O, Rat(a), Z, P)));
            break;
        case PackageId::M10: out.push_back(RatMat::identity(4)); break;
        case PackageId::M11:
            for (i64 a = 0; a < p; ++a)
                out.push_back(block4(m2(P, Z, Rat(-a), O), m2(Z, Z, Z, Z), m2(ip, frac(a, p), Z, O)));
            break;
        case PackageId::M12:
            for (i64 x = 1; x < p; ++x)
                for (i64 a = 0; a < p; ++a)
                    for (i64 z = 0; z < p; ++z)
                        for (i64 k = 0; k < p2; ++k)
                            out.push_back(block4(m2(O, Z, frac(-a, p), ip),
                                                 m2(frac(x, p), frac(x * a + z * p, p), frac(z, p), frac(k, p)),
                                                 m2(O, Rat(a), Z, P)));
            break;
    }
    return pk;
}

std::vector<JacobiElement> heisenberg_set(std::size_t n, i64 l) {
    if (l < 1) throw MathError("heisenberg_set: l must be positive");
    std::vector<JacobiElement> out;
    std::size_t total = 2 * n;
    std::vector<i64> digits(total, 0);
    for (;;) {
        RatMat lam(1, n), mu(1, n);
        for (std::size_t i = 0; i < n; ++i) {
            lam(0, i) = digits[i];
            mu(0, i) = digits[n + i];
        }
        out.push_back(JacobiElement::heisenberg(lam, mu));
        std::size_t i = 0;
        while (i < total && ++digits[i] == l) digits[i++] = 0;
        if (i == total) break;
    }
    return out;
}

std::vector<RatMat> det_hnf_all(i64 l) {
    if (l < 1) throw MathError("det_cosets: l must be positive");
    std::vector<RatMat> out;
    i64 N = l * l;
    for (i64 a : divisors(N)) {
        i64 d = N / a;
        for (i64 b = 0; b < d; ++b) out.push_back(RatMat{{Rat(a), Rat(b)}, {Rat(0), Rat(d)}});
    }
    return out;
}

std::vector<RatMat> det_cosets(i64 l) {
    std::vector<RatMat> out;
    for (const auto& M : det_hnf_all(l)) {
        i64 g = gcd(gcd(M(0, 0).get_num().get_si(), M(0, 1).get_num().get_si()), M(1, 1).get_num().get_si());
        if (is_square(g)) out.push_back(M);
    }
    return out;
}

std::vector<JacobiElement> double_coset_X(i64 p) {
    if (!is_prime(p)) throw MathError("double_coset_X: p must be prime");
    std::vector<JacobiElement> out;
    for (const auto& M : det_hnf_all(p)) {
        // Smith form (1, p^2): the entries of M are coprime.
        i64 g = gcd(gcd(M(0, 0).get_num().get_si(), M(0, 1).get_num().get_si()), M(1, 1).get_num().get_si());
        if (g != 1) continue;
        RatMat gam = scaled_gl2(M, p), ginv = gam.inverse();
        // gamma h and gamma h' share a left coset iff (h - h') gamma^-1 is integral;
        // p Z^2 lies in that lattice, so classes mod p suffice.
        std::vector<std::pair<i64, i64>> reps;
        for (i64 l = 0; l < p; ++l)
            for (i64 m = 0; m < p; ++m) {
                bool fresh = true;
                for (auto [l2, m2] : reps) {
                    RatMat v{{Rat(l - l2), Rat(m - m2)}};
                    if ((v * ginv).is_integral()) fresh = false;
                }
                if (!fresh) continue;
                reps.emplace_back(l, m);
                out.push_back(JacobiElement::symplectic(gam) *
                              JacobiElement::heisenberg(RatMat{{Rat(l)}}, RatMat{{Rat(m)}}));
            }
    }
    return out;
}

RatMat generator_S(int i, i64 p) {
    const Rat P(p), ip(1, p), O(1);
    switch (i) {
        case 1: return RatMat::identity(4);
        case 2: return RatMat::diag({ip, ip, P, P});
        case 3: return RatMat::diag({ip, O, P, O});
    }
    throw MathError("generator_S: index must be 1, 2 or 3");
}

bool left_cosets_overlap(const std::vector<RatMat>& elems) {
    std::vector<RatMat> inv;
    inv.reserve(elems.size());
    for (const auto& e : elems) inv.push_back(e.inverse());
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if ((elems[i] * inv[j]).is_integral()) return true;
    return false;
}

RatMat scaled_gl2(const RatMat& M, i64 l) { return Rat(1, l) * M; }

}  // namespace jh
