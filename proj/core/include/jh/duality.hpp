// SPDX-License-Identifier: MIT
#pragma once

#include "jh/forms.hpp"

#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace jh {

// Scaled defect at one key:
//   p^(k-2) (chi_D1(p) - chi_D2(p)) C(D1, D2, D; r1, r2)
//   - (C(D1, p^2 D2, pD; r1, p r2) - C(p^2 D1, D2, pD; p r1, r2))
//   - p^(2k-3) (C(D1, D2/p^2, D/p; r1, pbar r2) - C(D1/p^2, D2, D/p; pbar r1, r2)),
// with non-integral terms read as zero.
struct DefectReport {
    InvKey2 key;
    Rat defect;
    std::vector<std::pair<InvKey2, Lookup>> lookups;
};

// The integral keys entering the defect at key, in the order above.
std::vector<InvKey2> defect_lookup_keys(const InvKey2& key, i64 m, i64 p);

// nullopt when a lookup is unknown (outside the region or beyond a lazy source's reach).
// Throws MathError unless gcd(p, 2m) = 1.
std::optional<DefectReport> defect(const CoeffTable& t, i64 p, const InvKey2& key);

enum class MembershipStatus { member, non_member, inconclusive };
const char* to_string(MembershipStatus s);

struct MembershipResult {
    MembershipStatus status = MembershipStatus::inconclusive;
    std::optional<InvKey2> witness;
    Rat witness_defect = 0;
    std::size_t checked = 0;  // keys with a determined defect
};

// Tests every key of the box |D1|, |D2| <= bound / p^2. A region holding only keys with
// D1 = D2 = 0 is inconclusive.
MembershipResult membership(const CoeffTable& t, i64 p);
// Same test over the given keys; undetermined keys are skipped.
MembershipResult membership_on(const CoeffTable& t, i64 p, const std::vector<InvKey2>& keys);

// Unknowns are GL2(Z) classes of supported keys in the box |D1|, |D2| <= B; the
// equations are the defects at every box key whose lookups all reduce to known classes.
class ClassIndex {
public:
    ClassIndex(int k, i64 m, i64 B);
    int weight() const { return k_; }
    i64 index() const { return m_; }
    i64 bound() const { return B_; }
    std::size_t size() const { return reps_.size(); }
    std::size_t keys() const { return keys_; }
    const InvKey2& rep(std::size_t id) const { return reps_[id]; }

    struct Ref {
        enum Kind { cls, zero, outside } kind;
        std::size_t id = 0;
        int sign = 1;
    };
    // Unsupported keys and forced-zero classes resolve to zero.
    Ref resolve(const InvKey2& key) const;

private:
    int k_;
    i64 m_, B_;
    std::size_t keys_ = 0;
    std::vector<InvKey2> reps_;
    std::unordered_map<InvKey2, std::size_t, InvKey2Hash> id_;
    std::set<InvKey2> zero_reps_;
};

using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

struct DualitySpace {
    i64 p = 0;
    std::shared_ptr<const ClassIndex> classes;
    std::vector<SparseVec> basis;  // each sorted by class id
    std::size_t equations = 0, constrained_classes = 0, largest_component = 0;

    // Lazy table of the i-th basis vector with validity bound B.
    CoeffTable table(std::size_t i) const;
    std::vector<CoeffTable> tables() const;
    // Indices of basis vectors with support meeting the given classes.
    std::vector<std::size_t> touching(const std::set<std::size_t>& class_ids) const;
};

DualitySpace solve_duality_space_classes(int k, i64 m, i64 p, i64 B);
std::vector<CoeffTable> solve_duality_space(int k, i64 m, i64 p, i64 B);

// Lazy table returning 0 everywhere while recording the classes it was asked about.
class ClassRecorder {
public:
    explicit ClassRecorder(std::shared_ptr<const ClassIndex> idx);
    CoeffTable table() const;
    std::set<std::size_t> recorded() const;

    struct State;

private:
    std::shared_ptr<const ClassIndex> idx_;
    std::shared_ptr<State> state_;
};

}  // namespace jh
