// SPDX-License-Identifier: MIT
#pragma once

#include "jh/forms.hpp"
#include "jh/linalg.hpp"

#include <string>
#include <vector>

namespace jh {

// Character factor evaluated at the output key.
enum class Weight { one, chi_D1, chi_D2 };

// Contribution alpha * p^(exp0 + expk * k) * w(K) * sum_W C(W^t Q W; r W), where
// Q = [[D1, D], [D, D2]] is the output key, 1/p acts on residues as p^-1 mod 2m,
// and non-integral transforms contribute nothing.
struct ShapeTerm {
    std::string label;
    std::vector<RatMat> family;
    Weight weight = Weight::one;
    int exp0 = 0, expk = 0;
};

struct ClosedFormSpec {
    std::string id;  // "up", "down" or a package name
    std::vector<ShapeTerm> terms;
};

ClosedFormSpec closed_form_shape(const std::string& id, i64 p);
std::vector<std::string> closed_form_ids();

struct PinnedConstant {
    std::string id, term;
    Rat alpha;
    std::string provenance;
};
// Constants fixed once by exact oracle matching (see the pinning tool).
const std::vector<PinnedConstant>& pinned_constants();
// Throws SlashError("Unpinned") if any term lacks a pinned constant.
std::vector<Rat> pinned_alphas(const ClosedFormSpec& spec);
// Derived proportionality between op_up - op_down and the scaled defect.
Rat pinned_rho();

// Shape-term values p^e * w(K) * sum_W C(...) at one key, without alpha.
std::vector<Rat> shape_features(const CoeffTable& t, const ClosedFormSpec& spec, i64 p, const InvKey2& key);
// Output bound shared with the coset-sum oracle.
i64 closed_form_bound(const ClosedFormSpec& spec, i64 input_bound);

// Lazy table evaluating the transform on lookup.
CoeffTable closed_transform(const CoeffTable& t, const ClosedFormSpec& spec, i64 p, std::vector<Rat> alphas);
// Same transform carrying the input bound: a lookup whose inputs leave the input
// region throws SlashError("RegionExhausted") instead of being excluded up front.
CoeffTable closed_transform_extended(const CoeffTable& t, const ClosedFormSpec& spec, i64 p,
                                     std::vector<Rat> alphas);

CoeffTable closed_up(const CoeffTable& t, i64 p);
CoeffTable closed_down(const CoeffTable& t, i64 p);
// ids M1, M3, M5, M6, M7, M9, M10, M11.
CoeffTable closed_package(const CoeffTable& t, const std::string& id, i64 p);

}  // namespace jh
