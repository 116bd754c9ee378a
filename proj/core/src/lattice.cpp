// SPDX-License-Identifier: MIT
#include "jh/lattice.hpp"

#include "jh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace jh {

std::int64_t Lattice::dot(const IVec& x, const IVec& y) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (x[i] == 0) continue;
        std::int64_t t = 0;
        for (std::size_t j = 0; j < gram.size(); ++j) t += gram[i][j] * y[j];
        s += x[i] * t;
    }
    return s;
}

namespace {

RatMat to_ratmat(const IMat& a) {
    RatMat m(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m(i, j) = Rat(static_cast<long>(a[i][j]));
    return m;
}

}  // namespace

std::int64_t Lattice::determinant() const {
    Rat d = to_ratmat(gram).det();
    return d.get_num().get_si();
}

void validate_lattice(const Lattice& L) {
    std::size_t n = L.gram.size();
    if (n == 0) throw MathError("lattice: empty Gram matrix");
    for (const auto& row : L.gram)
        if (row.size() != n) throw MathError("lattice: Gram matrix is not square");
    if (L.v.size() != n) throw MathError("lattice: marked vector has wrong length");
    for (std::size_t i = 0; i < n; ++i) {
        if (L.gram[i][i] % 2) throw MathError("lattice: Gram matrix is not even");
        for (std::size_t j = 0; j < n; ++j)
            if (L.gram[i][j] != L.gram[j][i]) throw MathError("lattice: Gram matrix is not symmetric");
    }
    RatMat g = to_ratmat(L.gram);
    for (std::size_t k = 1; k <= n; ++k)
        if (g.block(0, 0, k, k).det() <= 0) throw MathError("lattice: Gram matrix is not positive definite");
    if (L.norm(L.v) <= 0) throw MathError("lattice: marked vector must be nonzero");
}

bool is_unimodular(const Lattice& L) { return L.determinant() == 1; }

Lattice e8_lattice(int v_norm) {
    // Cartan matrix: chain 0-2-3-4-5-6-7 with node 1 attached to node 3.
    IMat g(8, IVec(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2;
    const int edges[7][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    for (const auto& e : edges) g[e[0]][e[1]] = g[e[1]][e[0]] = -1;
    IVec v(8, 0);
    if (v_norm == 2) {
        v[0] = 1;
    } else if (v_norm == 4) {
        v[0] = 1;
        v[1] = 1;  // orthogonal simple roots
    } else {
        throw MathError("e8_lattice: marked vector norm must be 2 or 4");
    }
    return {g, v};
}

Lattice e8e8_lattice(int v_norm) {
    Lattice a = e8_lattice(v_norm);
    IMat g(16, IVec(16, 0));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) g[i][j] = g[i + 8][j + 8] = a.gram[i][j];
    IVec v(16, 0);
    for (int i = 0; i < 8; ++i) v[i] = a.v[i];
    return {g, v};
}

Lattice lattice_from_json(const nlohmann::json& j) {
    Lattice L;
    try {
        L.gram = j.at("gram").get<IMat>();
        L.v = j.at("v").get<IVec>();
    } catch (const nlohmann::json::exception& ex) {
        throw MathError(std::string("malformed lattice: ") + ex.what());
    }
    validate_lattice(L);
    return L;
}

namespace {

// Cholesky-type decomposition Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
std::vector<std::vector<long double>> pohst_form(const std::vector<std::vector<long double>>& a) {
    std::size_t n = a.size();
    auto q = a;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    return q;
}

// Integer z with (z - c)^T A (z - c) <= R, optionally z >= 0 componentwise.
void enumerate_ellipsoid(const std::vector<std::vector<long double>>& A, const std::vector<long double>& c,
                         long double R, bool nonneg, const std::function<void(const IVec&)>& visit) {
    std::size_t n = A.size();
    auto q = pohst_form(A);
    IVec z(n, 0);
    const long double eps = 1e-7L * (1 + std::fabs(R));
    std::function<void(std::size_t, long double)> rec = [&](std::size_t i1, long double rem) {
        std::size_t i = i1 - 1;
        long double u = 0;
        for (std::size_t j = i + 1; j < n; ++j) u += q[i][j] * (static_cast<long double>(z[j]) - c[j]);
        long double w = std::sqrt(std::max<long double>(0, (rem + eps) / q[i][i]));
        long double centre = c[i] - u;
        auto lo = static_cast<std::int64_t>(std::ceil(centre - w));
        auto hi = static_cast<std::int64_t>(std::floor(centre + w));
        if (nonneg) lo = std::max<std::int64_t>(lo, 0);
        for (std::int64_t x = lo; x <= hi; ++x) {
            z[i] = x;
            long double t = static_cast<long double>(x) - centre;
            long double r2 = rem - q[i][i] * t * t;
            if (r2 < -eps) continue;
            if (i == 0)
                visit(z);
            else
                rec(i, r2);
        }
        z[i] = 0;
    };
    if (n == 0) {
        visit(z);
        return;
    }
    rec(n, R);
}

}  // namespace

void for_each_short_vector(const Lattice& L, std::int64_t maxnorm, const std::function<void(const IVec&)>& f) {
    std::size_t n = L.gram.size();
    std::vector<std::vector<long double>> A(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = static_cast<long double>(L.gram[i][j]);
    enumerate_ellipsoid(A, std::vector<long double>(n, 0), static_cast<long double>(2 * maxnorm), false,
                        [&](const IVec& x) {
                            if (L.norm(x) <= 2 * maxnorm) f(x);
                        });
}

std::vector<IVec> enumerate_short_vectors(const Lattice& L, std::int64_t maxnorm) {
    std::vector<IVec> out;
    for_each_short_vector(L, maxnorm, [&](const IVec& x) { out.push_back(x); });
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

std::size_t span_rank(const std::vector<IVec>& vs) {
    if (vs.empty()) return 0;
    RatMatrixRows rows;
    for (const auto& v : vs) {
        std::vector<Rat> r;
        for (auto x : v) r.emplace_back(static_cast<long>(x));
        rows.push_back(std::move(r));
    }
    return rational_rank(rows, vs[0].size());
}

Int irreducible_order(std::size_t r, std::size_t nroots) {
    if (nroots == r * (r + 1)) return factorial(static_cast<unsigned>(r + 1));
    if (r >= 4 && nroots == 2 * r * (r - 1)) {
        Int two;
        mpz_ui_pow_ui(two.get_mpz_t(), 2, r - 1);
        return two * factorial(static_cast<unsigned>(r));
    }
    if (r == 6 && nroots == 72) return Int(51840);
    if (r == 7 && nroots == 126) return Int(2903040);
    if (r == 8 && nroots == 240) return Int(696729600);
    throw MathError("weyl_order: root system is not simply laced of ADE type");
}

}  // namespace

Int weyl_order(const Lattice& L, const std::vector<IVec>& roots) {
    std::size_t n = roots.size();
    std::vector<int> comp(n, -1);
    Int order = 1;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s}, members;
        comp[s] = static_cast<int>(s);
        while (!stack.empty()) {
            std::size_t a = stack.back();
            stack.pop_back();
            members.push_back(a);
            for (std::size_t b = 0; b < n; ++b)
                if (comp[b] < 0 && L.dot(roots[a], roots[b]) != 0) {
                    comp[b] = static_cast<int>(s);
                    stack.push_back(b);
                }
        }
        std::vector<IVec> sub;
        for (auto i : members) sub.push_back(roots[i]);
        order *= irreducible_order(span_rank(sub), sub.size());
    }
    return order;
}

MarkedOrbits::MarkedOrbits(const Lattice& L) : L_(L) {
    std::size_t n = L.gram.size();
    for (const auto& x : enumerate_short_vectors(L, 1))
        if (L.norm(x) == 2 && L.dot(x, L.v) == 0) rv_.push_back(x);
    wv_order_ = weyl_order(L, rv_);

    // Positive system from a generic functional; simple = indecomposable positive roots.
    std::vector<long double> h(n);
    const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (std::size_t i = 0; i < n; ++i) h[i] = std::sqrt(static_cast<long double>(primes[i % 20])) + i / 20;
    auto height = [&](const IVec& x) {
        long double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += h[i] * x[i];
        return s;
    };
    std::vector<IVec> pos;
    for (const auto& a : rv_)
        if (height(a) > 0) pos.push_back(a);
    std::sort(pos.begin(), pos.end());
    for (const auto& a : pos) {
        bool decomposable = false;
        for (const auto& b : pos) {
            IVec d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
            if (std::binary_search(pos.begin(), pos.end(), d)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simple_.push_back(a);
    }
    if (simple_.size() + 1 != n) return;

    IMat F{L.v};
    for (const auto& a : simple_) F.push_back(a);
    RatMat G = to_ratmat(L.gram), M = to_ratmat(F) * G;
    RatMat Minv = M.inverse();
    RatMat Qy = Minv.transpose() * G * Minv;
    qy_.assign(n, std::vector<long double>(n));
    minv_.assign(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            qy_[i][j] = static_cast<long double>(Qy(i, j).get_d());
            minv_[i][j] = Minv(i, j);
        }
    available_ = true;
}

std::vector<MarkedOrbits::Rep> MarkedOrbits::dominant(std::int64_t r, std::int64_t maxn) const {
    if (!available_) throw MathError("MarkedOrbits: roots orthogonal to v do not span its complement");
    std::size_t n = qy_.size(), s = n - 1;
    // Q(y) = a r^2 + 2 r b.z + z^T Qz z = (z - c)^T Qz (z - c) + a r^2 - c^T Qz c with c = -r Qz^-1 b.
    RatMat Qz(s, s), b(s, 1);
    Rat a;
    {
        RatMat G = to_ratmat(L_.gram);
        RatMat Minv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) Minv(i, j) = minv_[i][j];
        RatMat Q = Minv.transpose() * G * Minv;
        a = Q(0, 0);
        for (std::size_t i = 0; i < s; ++i) {
            b(i, 0) = Q(i + 1, 0);
            for (std::size_t j = 0; j < s; ++j) Qz(i, j) = Q(i + 1, j + 1);
        }
    }
    RatMat c = Rat(-r) * (Qz.inverse() * b);
    Rat R = Rat(2 * maxn) - a * r * r + (c.transpose() * Qz * c)(0, 0);
    std::vector<std::vector<long double>> A(s, std::vector<long double>(s));
    std::vector<long double> cc(s);
    for (std::size_t i = 0; i < s; ++i) {
        cc[i] = static_cast<long double>(c(i, 0).get_d());
        for (std::size_t j = 0; j < s; ++j) A[i][j] = static_cast<long double>(Qz(i, j).get_d());
    }
    Int den = 1;
    for (const auto& row : minv_)
        for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IMat mi(n, IVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mi[i][j] = Rat(minv_[i][j] * den).get_num().get_si();
    std::int64_t d = den.get_si();

    std::vector<Rep> out;
    std::map<std::vector<bool>, Int> stab_cache;
    if (R < 0) return out;
    enumerate_ellipsoid(A, cc, static_cast<long double>(R.get_d()), true, [&](const IVec& z) {
        IVec y(n);
        y[0] = r;
        for (std::size_t i = 0; i < s; ++i) y[i + 1] = z[i];
        IVec x(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t t = 0;
            for (std::size_t j = 0; j < n; ++j) t += mi[i][j] * y[j];
            if (t % d) return;
            x[i] = t / d;
        }
        std::int64_t nx = L_.norm(x);
        if (nx > 2 * maxn) return;
        std::vector<bool> pattern(s);
        for (std::size_t i = 0; i < s; ++i) pattern[i] = (z[i] == 0);
        auto it = stab_cache.find(pattern);
        if (it == stab_cache.end()) {
            std::vector<IVec> sub;
            for (const auto& a2 : rv_)
                if (L_.dot(a2, x) == 0) sub.push_back(a2);
            it = stab_cache.emplace(pattern, wv_order_ / weyl_order(L_, sub)).first;
        }
        out.push_back({x, nx, it->second});
    });
    std::sort(out.begin(), out.end(), [](const Rep& u, const Rep& w) {
        return u.norm != w.norm ? u.norm < w.norm : u.x < w.x;
    });
    return out;
}

}  // namespace jh
