// SPDX-License-Identifier: MIT
#include "jh/duality.hpp"

#include "jh/operators.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace jh {

namespace {

struct Term {
    InvKey2 key;
    Rat coef;
};

// The defect as a linear form in coefficients; the character term is omitted when it vanishes.
std::vector<Term> defect_terms(const InvKey2& K, i64 m, i64 p, int k) {
    const i64 n = 2 * m;
    const i64 pbar = inv_mod(mod(p, n), n);
    const i64 p2 = p * p;
    std::vector<Term> out;
    int chi = to_int(kronecker(mod(K.D1, p), p)) - to_int(kronecker(mod(K.D2, p), p));
    if (chi != 0) out.push_back({K, Rat(chi) * rat_pow(p, k - 2)});
    out.push_back({{K.D1, p2 * K.D2, p * K.D, K.r1, mod(p * K.r2, n)}, Rat(-1)});
    out.push_back({{p2 * K.D1, K.D2, p * K.D, mod(p * K.r1, n), K.r2}, Rat(1)});
    const Rat big = rat_pow(p, 2 * k - 3);
    if (K.D2 % p2 == 0 && K.D % p == 0) out.push_back({{K.D1, K.D2 / p2, K.D / p, K.r1, mod(pbar * K.r2, n)}, -big});
    if (K.D1 % p2 == 0 && K.D % p == 0) out.push_back({{K.D1 / p2, K.D2, K.D / p, mod(pbar * K.r1, n), K.r2}, big});
    return out;
}

void require_coprime(i64 p, i64 m) {
    if (!is_prime(p) || gcd(p, 2 * m) != 1) throw MathError("defect: p must be a prime with gcd(p, 2m) = 1");
}

class ClassSource : public CoeffSource {
public:
    ClassSource(std::shared_ptr<const ClassIndex> idx, SparseVec v) : idx_(std::move(idx)), v_(std::move(v)) {}
    Rat value(const InvKey2& key) const override {
        auto r = idx_->resolve(key);
        if (r.kind == ClassIndex::Ref::zero) return 0;
        if (r.kind == ClassIndex::Ref::outside)
            throw SlashError("RegionExhausted", "key reduces to a class outside the solved region");
        auto it = std::lower_bound(v_.begin(), v_.end(), r.id,
                                   [](const std::pair<std::size_t, Rat>& e, std::size_t id) { return e.first < id; });
        if (it == v_.end() || it->first != r.id) return 0;
        return r.sign * it->second;
    }
    std::string describe() const override { return "duality space basis vector"; }

private:
    std::shared_ptr<const ClassIndex> idx_;
    SparseVec v_;
};

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<InvKey2> defect_lookup_keys(const InvKey2& key, i64 m, i64 p) {
    std::vector<InvKey2> out;
    for (const auto& t : defect_terms(key, m, p, 4)) out.push_back(t.key);
    if (out.empty() || out.front() != key) out.insert(out.begin(), key);
    return out;
}

std::optional<DefectReport> defect(const CoeffTable& t, i64 p, const InvKey2& key) {
    if (t.degree() != 2) throw MathError("defect: degree-2 table required");
    require_coprime(p, t.index());
    DefectReport rep{key, 0, {}};
    auto terms = defect_terms(key, t.index(), p, t.weight());
    if (terms.front().key != key) terms.insert(terms.begin(), {key, Rat(0)});
    for (const auto& term : terms) {
        Lookup l;
        try {
            l = t.lookup(term.key);
        } catch (const SlashError& e) {
            if (e.code() == "RegionExhausted") return std::nullopt;
            throw;
        }
        if (!l.known()) return std::nullopt;
        rep.defect += term.coef * l.value;
        rep.lookups.emplace_back(term.key, l);
    }
    return rep;
}

const char* to_string(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::member: return "member";
        case MembershipStatus::non_member: return "non_member";
        case MembershipStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

MembershipResult membership_on(const CoeffTable& t, i64 p, const std::vector<InvKey2>& keys) {
    MembershipResult res;
    bool informative = false;
    for (const auto& K : keys) {
        auto d = defect(t, p, K);
        if (!d) continue;
        ++res.checked;
        if (K.D1 != 0 || K.D2 != 0) informative = true;
        if (d->defect != 0) {
            res.status = MembershipStatus::non_member;
            res.witness = K;
            res.witness_defect = d->defect;
            return res;
        }
    }
    res.status = informative ? MembershipStatus::member : MembershipStatus::inconclusive;
    return res;
}

MembershipResult membership(const CoeffTable& t, i64 p) {
    if (t.degree() != 2) throw MathError("membership: degree-2 table required");
    require_coprime(p, t.index());
    return membership_on(t, p, supported_keys2(t.index(), t.bound() / (p * p)));
}

ClassIndex::ClassIndex(int k, i64 m, i64 B) : k_(k), m_(m), B_(B) {
    for (const auto& K : supported_keys2(m, B)) {
        ++keys_;
        auto c = gl2_class(K, m, k);
        if (c.forced_zero) {
            zero_reps_.insert(c.rep);
            continue;
        }
        if (id_.emplace(c.rep, reps_.size()).second) reps_.push_back(c.rep);
    }
}

ClassIndex::Ref ClassIndex::resolve(const InvKey2& key) const {
    if (!support_test(key, m_)) return {Ref::zero};
    auto c = gl2_class(key, m_, k_);
    if (c.forced_zero) return {Ref::zero};
    auto it = id_.find(c.rep);
    if (it != id_.end()) return {Ref::cls, it->second, c.sign};
    if (zero_reps_.count(c.rep)) return {Ref::zero};
    return {Ref::outside};
}

CoeffTable DualitySpace::table(std::size_t i) const {
    CoeffTable t(2, classes->weight(), classes->index(), classes->bound());
    t.set_source(std::make_shared<ClassSource>(classes, basis.at(i)));
    return t;
}

std::vector<CoeffTable> DualitySpace::tables() const {
    std::vector<CoeffTable> out;
    for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(table(i));
    return out;
}

std::vector<std::size_t> DualitySpace::touching(const std::set<std::size_t>& class_ids) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& [id, v] : basis[i])
            if (class_ids.count(id)) {
                out.push_back(i);
                break;
            }
    return out;
}

DualitySpace solve_duality_space_classes(int k, i64 m, i64 p, i64 B) {
    require_coprime(p, m);
    DualitySpace S;
    S.p = p;
    auto idx = std::make_shared<ClassIndex>(k, m, B);
    S.classes = idx;

    std::set<SparseVec> eqs;
    for (const auto& K : supported_keys2(m, B)) {
        std::map<std::size_t, Rat> acc;
        bool determined = true;
        for (const auto& term : defect_terms(K, m, p, k)) {
            auto r = idx->resolve(term.key);
            if (r.kind == ClassIndex::Ref::outside) {
                determined = false;
                break;
            }
            if (r.kind == ClassIndex::Ref::cls) acc[r.id] += r.sign * term.coef;
        }
        if (!determined) continue;
        SparseVec e;
        for (auto& [id, c] : acc)
            if (c != 0) e.emplace_back(id, c);
        if (e.empty()) continue;
        Rat lead = e.front().second;
        for (auto& [id, c] : e) c /= lead;
        eqs.insert(std::move(e));
    }
    S.equations = eqs.size();

    UnionFind uf(idx->size());
    std::vector<bool> constrained(idx->size(), false);
    for (const auto& e : eqs)
        for (const auto& [id, c] : e) {
            constrained[id] = true;
            uf.unite(id, e.front().first);
        }

    std::map<std::size_t, std::vector<std::size_t>> comp_classes;
    std::map<std::size_t, std::vector<const SparseVec*>> comp_eqs;
    for (std::size_t id = 0; id < idx->size(); ++id) {
        if (constrained[id])
            comp_classes[uf.find(id)].push_back(id);
        else
            S.basis.push_back({{id, Rat(1)}});
    }
    for (const auto& e : eqs) comp_eqs[uf.find(e.front().first)].push_back(&e);

    for (const auto& [root, ids] : comp_classes) {
        S.constrained_classes += ids.size();
        S.largest_component = std::max(S.largest_component, ids.size());
        std::unordered_map<std::size_t, std::size_t> col;
        for (std::size_t j = 0; j < ids.size(); ++j) col[ids[j]] = j;
        RatMatrixRows rows;
        for (const SparseVec* e : comp_eqs[root]) {
            std::vector<Rat> row(ids.size(), Rat(0));
            for (const auto& [id, c] : *e) row[col[id]] = c;
            rows.push_back(std::move(row));
        }
        for (const auto& v : rational_nullspace(rows, ids.size())) {
            SparseVec s;
            for (std::size_t j = 0; j < ids.size(); ++j)
                if (v[j] != 0) s.emplace_back(ids[j], v[j]);
            S.basis.push_back(std::move(s));
        }
    }
    return S;
}

std::vector<CoeffTable> solve_duality_space(int k, i64 m, i64 p, i64 B) {
    return solve_duality_space_classes(k, m, p, B).tables();
}

struct ClassRecorder::State {
    std::mutex mu;
    std::set<std::size_t> seen;
};

namespace {

class RecordingSource : public CoeffSource {
public:
    RecordingSource(std::shared_ptr<const ClassIndex> idx, std::shared_ptr<ClassRecorder::State> st)
        : idx_(std::move(idx)), st_(std::move(st)) {}
    Rat value(const InvKey2& key) const override;
    std::string describe() const override { return "class recorder"; }

private:
    std::shared_ptr<const ClassIndex> idx_;
    std::shared_ptr<ClassRecorder::State> st_;
};

}  // namespace

Rat RecordingSource::value(const InvKey2& key) const {
    auto r = idx_->resolve(key);
    if (r.kind == ClassIndex::Ref::outside)
        throw SlashError("RegionExhausted", "key reduces to a class outside the solved region");
    if (r.kind == ClassIndex::Ref::cls) {
        std::lock_guard lock(st_->mu);
        st_->seen.insert(r.id);
    }
    return 0;
}

ClassRecorder::ClassRecorder(std::shared_ptr<const ClassIndex> idx)
    : idx_(std::move(idx)), state_(std::make_shared<State>()) {}

CoeffTable ClassRecorder::table() const {
    CoeffTable t(2, idx_->weight(), idx_->index(), idx_->bound());
    t.set_source(std::make_shared<RecordingSource>(idx_, state_));
    return t;
}

std::set<std::size_t> ClassRecorder::recorded() const {
    std::lock_guard lock(state_->mu);
    return state_->seen;
}

}  // namespace jh
