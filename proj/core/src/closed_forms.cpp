// SPDX-License-Identifier: MIT
#include "jh/closed_forms.hpp"

#include "jh/operators.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace jh {

namespace {

struct PinnedRow {
    const char* id;
    const char* term;
    const char* alpha;
    const char* provenance;
};

constexpr PinnedRow kPinned[] = {
#include "pinned_constants.inc"
    {"", "", "0", ""},
};

RatMat m2(Rat a, Rat b, Rat c, Rat d) { return RatMat{{a, b}, {c, d}}; }

Rat frac(i64 a, i64 b) { return Rat(a) / b; }

ShapeTerm term(std::string label, std::vector<RatMat> fam, Weight w, int e0, int ek) {
    return ShapeTerm{std::move(label), std::move(fam), w, e0, ek};
}

int weight_value(Weight w, const InvKey2& K, i64 p) {
    switch (w) {
        case Weight::one: return 1;
        case Weight::chi_D1: return to_int(kronecker(mod(K.D1, p), p));
        case Weight::chi_D2: return to_int(kronecker(mod(K.D2, p), p));
    }
    return 0;
}

// Residue of a rational entry modulo n; the denominator must be a unit.
i64 residue(const Rat& x, i64 n) {
    i64 num = mod(x.get_num().get_si(), n);
    i64 den = mod(x.get_den().get_si(), n);
    return mod(num * inv_mod(den, n), n);
}

// C(W^t Q W; r W) or zero when the transformed form is not integral.
Rat transformed(const CoeffTable& t, const InvKey2& K, const RatMat& W) {
    RatMat Q = m2(Rat(K.D1), Rat(K.D), Rat(K.D), Rat(K.D2));
    RatMat P = W.transpose() * Q * W;
    if (!P.is_integral()) return 0;
    const i64 n = 2 * t.index();
    i64 r1 = mod(residue(W(0, 0), n) * K.r1 + residue(W(1, 0), n) * K.r2, n);
    i64 r2 = mod(residue(W(0, 1), n) * K.r1 + residue(W(1, 1), n) * K.r2, n);
    InvKey2 pre{P(0, 0).get_num().get_si(), P(1, 1).get_num().get_si(), P(0, 1).get_num().get_si(), r1, r2};
    Lookup l = t.lookup(pre);
    if (!l.known()) throw SlashError("RegionExhausted", "closed form needs a coefficient outside the input region");
    return l.value;
}

class ClosedSource : public CoeffSource {
public:
    ClosedSource(CoeffTable t, ClosedFormSpec s, i64 p, std::vector<Rat> a)
        : t_(std::move(t)), spec_(std::move(s)), p_(p), alphas_(std::move(a)) {}

    Rat value(const InvKey2& key) const override {
        {
            std::lock_guard lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        auto f = shape_features(t_, spec_, p_, key);
        Rat v = 0;
        for (std::size_t i = 0; i < f.size(); ++i) v += alphas_[i] * f[i];
        std::lock_guard lock(mu_);
        memo_.emplace(key, v);
        return v;
    }
    std::string describe() const override { return "closed transform " + spec_.id; }

private:
    CoeffTable t_;
    ClosedFormSpec spec_;
    i64 p_;
    std::vector<Rat> alphas_;
    mutable std::mutex mu_;
    mutable std::unordered_map<InvKey2, Rat, InvKey2Hash> memo_;
};

}  // namespace

std::vector<std::string> closed_form_ids() { return {"up", "down", "M1", "M3", "M5", "M6", "M7", "M9", "M10", "M11"}; }

ClosedFormSpec closed_form_shape(const std::string& id, i64 p) {
    if (p < 3 || !is_prime(p)) throw MathError("closed_form_shape: p must be an odd prime");
    const Rat P(p), ip(1, p), Z(0), O(1);
    ClosedFormSpec s{id, {}};
    auto& T = s.terms;
    if (id == "up") {
        T.push_back(term("contract", {m2(ip, Z, Z, O)}, Weight::one, -3, 2));
        T.push_back(term("character", {m2(O, Z, Z, O)}, Weight::chi_D1, -2, 1));
        T.push_back(term("plain", {m2(O, Z, Z, O)}, Weight::one, -2, 1));
        T.push_back(term("dilate", {m2(P, Z, Z, O)}, Weight::one, 0, 0));
    } else if (id == "down") {
        T.push_back(term("contract", {m2(O, Z, Z, ip)}, Weight::one, -3, 2));
        T.push_back(term("character", {m2(O, Z, Z, O)}, Weight::chi_D2, -2, 1));
        T.push_back(term("plain", {m2(O, Z, Z, O)}, Weight::one, -2, 1));
        T.push_back(term("dilate", {m2(O, Z, Z, P)}, Weight::one, 0, 0));
    } else if (id == "M1") {
        T.push_back(term("dilate", {m2(P, Z, Z, P)}, Weight::one, 10, -2));
    } else if (id == "M3") {
        T.push_back(term("contract", {m2(ip, Z, Z, ip)}, Weight::one, 2, 2));
    } else if (id == "M5") {
        T.push_back(term("contract", {m2(O, Z, Z, ip)}, Weight::one, 3, 1));
    } else if (id == "M6" || id == "M11") {
        std::vector<RatMat> fam;
        for (i64 a = 0; a < p; ++a) fam.push_back(m2(ip, Z, frac(a, p), O));
        T.push_back(term("sheared", std::move(fam), id == "M6" ? Weight::chi_D2 : Weight::one, 3, 1));
    } else if (id == "M7") {
        std::vector<RatMat> fam;
        for (i64 a = 1; a < p; ++a) fam.push_back(m2(O, Z, frac(a, p), O));
        T.push_back(term("sheared", std::move(fam), Weight::one, 5, 0));
    } else if (id == "M9") {
        std::vector<RatMat> fam;
        for (i64 a = 0; a < p; ++a) fam.push_back(m2(O, Z, Rat(a), P));
        T.push_back(term("sheared", std::move(fam), Weight::one, 7, -1));
    } else if (id == "M10") {
        T.push_back(term("identity", {m2(O, Z, Z, O)}, Weight::one, 4, 0));
    } else {
        throw MathError("closed_form_shape: no closed form for " + id);
    }
    return s;
}

const std::vector<PinnedConstant>& pinned_constants() {
    static const std::vector<PinnedConstant> table = [] {
        std::vector<PinnedConstant> v;
        for (const auto& r : kPinned)
            if (r.id[0] != '\0') v.push_back({r.id, r.term, parse_rat(r.alpha), r.provenance});
        return v;
    }();
    return table;
}

std::vector<Rat> pinned_alphas(const ClosedFormSpec& spec) {
    std::vector<Rat> out;
    for (const auto& t : spec.terms) {
        const auto& all = pinned_constants();
        auto it = std::find_if(all.begin(), all.end(),
                               [&](const PinnedConstant& c) { return c.id == spec.id && c.term == t.label; });
        if (it == all.end()) throw SlashError("Unpinned", "no pinned constant for " + spec.id + "/" + t.label);
        out.push_back(it->alpha);
    }
    return out;
}

Rat pinned_rho() {
    for (const auto& c : pinned_constants())
        if (c.id == "rho") return c.alpha;
    throw SlashError("Unpinned", "no pinned constant for rho");
}

std::vector<Rat> shape_features(const CoeffTable& t, const ClosedFormSpec& spec, i64 p, const InvKey2& key) {
    if (gcd(p, 2 * t.index()) != 1) throw MathError("closed form: p must be prime to 2m");
    std::vector<Rat> out;
    for (const auto& term : spec.terms) {
        int w = weight_value(term.weight, key, p);
        Rat sum = 0;
        if (w != 0)
            for (const auto& W : term.family) sum += transformed(t, key, W);
        out.push_back(Rat(w) * rat_pow(p, term.exp0 + term.expk * t.weight()) * sum);
    }
    return out;
}

i64 closed_form_bound(const ClosedFormSpec& spec, i64 input_bound) {
    Rat worst = 1;
    for (const auto& term : spec.terms)
        for (const auto& W : term.family)
            for (std::size_t j = 0; j < 2; ++j) {
                Rat c = abs(W(0, j)) + abs(W(1, j));
                Rat sq = c * c;
                if (sq > worst) worst = sq;
            }
    Rat b = Rat(input_bound) / worst;
    return std::min<i64>(input_bound, Int(b.get_num() / b.get_den()).get_si());
}

CoeffTable closed_transform(const CoeffTable& t, const ClosedFormSpec& spec, i64 p, std::vector<Rat> alphas) {
    if (t.degree() != 2) throw MathError("closed_transform: degree-2 table required");
    if (alphas.size() != spec.terms.size()) throw MathError("closed_transform: one constant per term required");
    CoeffTable out(2, t.weight(), t.index(), closed_form_bound(spec, t.bound()));
    out.set_source(std::make_shared<ClosedSource>(t, spec, p, std::move(alphas)));
    return out;
}

CoeffTable closed_transform_extended(const CoeffTable& t, const ClosedFormSpec& spec, i64 p,
                                     std::vector<Rat> alphas) {
    if (t.degree() != 2) throw MathError("closed_transform: degree-2 table required");
    if (alphas.size() != spec.terms.size()) throw MathError("closed_transform: one constant per term required");
    CoeffTable out(2, t.weight(), t.index(), t.bound());
    out.set_source(std::make_shared<ClosedSource>(t, spec, p, std::move(alphas)));
    return out;
}

CoeffTable closed_up(const CoeffTable& t, i64 p) {
    auto s = closed_form_shape("up", p);
    return closed_transform(t, s, p, pinned_alphas(s));
}

CoeffTable closed_down(const CoeffTable& t, i64 p) {
    auto s = closed_form_shape("down", p);
    return closed_transform(t, s, p, pinned_alphas(s));
}

CoeffTable closed_package(const CoeffTable& t, const std::string& id, i64 p) {
    if (id == "up" || id == "down") throw MathError("closed_package: not a package id: " + id);
    auto s = closed_form_shape(id, p);
    return closed_transform(t, s, p, pinned_alphas(s));
}

}  // namespace jh
