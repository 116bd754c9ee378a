// SPDX-License-Identifier: MIT
#pragma once

#include "jh/duality.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace jh {

struct HarnessReport {
    std::string theorem;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::string status = "pass";  // pass, fail or inconclusive
    std::optional<InvKey2> witness;
    std::size_t matched_keys = 0;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool passed() const { return status == "pass"; }
    // {"theorem", "params", "status", "witness", "matched_keys", "details"}.
    nlohmann::ordered_json to_json() const;
};

nlohmann::ordered_json key_json(const InvKey2& k);

// u = op_up - op_down against the defect on the output region: u == 0 iff defect == 0,
// and u(K) = rho * defect(K) keywise for the pinned rho.
HarnessReport theorem1_harness(const CoeffTable& t, i64 p);
// The same check for every basis table of a solved space. Tables whose support misses
// every coefficient read by the operators or the defect vanish on both sides and are counted only.
HarnessReport theorem1_space(const DualitySpace& space);

// Every basis table of solve_duality_space(k, m, q, B) is pushed through each closed
// package transform at p and tested for q-membership wherever its defect is determined.
HarnessReport theorem2_harness(i64 q, i64 p, int k, i64 m, i64 B);
HarnessReport theorem2_space(const DualitySpace& space, i64 p);

}  // namespace jh
