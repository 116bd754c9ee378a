// SPDX-License-Identifier: MIT
#pragma once

#include "jh/harness.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jh {

// Suite defaults reproduce the acceptance run.
struct SuiteParams {
    i64 p = 3;          // operator prime (oracle, theorem2)
    i64 q = 5;          // duality prime (theorem1, theorem2)
    int k = 4;
    i64 m = 1;
    i64 bound = 0;      // 0 selects the suite default
    std::string lattice = "e8";
    int v_norm = 2;
    std::size_t samples = 100;
    std::uint64_t seed = 20261015;
};

std::vector<std::string> suite_names();

// closed_up / closed_down against the coset-sum oracle, exact, on the common region.
HarnessReport oracle_suite(const SuiteParams& sp);
// Basis of the solved duality space and a delta table that violates the relation.
HarnessReport theorem1_suite(const SuiteParams& sp);
HarnessReport theorem2_suite(const SuiteParams& sp);
// Cocycle identity, psi duality and formal/numeric agreement.
HarnessReport numeric_suite(const SuiteParams& sp);
// Independent constructions of the same objects: Eisenstein vs theta, Cohen vs
// Hurwitz, well-definedness of theta inputs, the E_{4,1} eigenform property,
// X(p) against T^J(p) and coset catalog sanity.
HarnessReport crosscheck_suite(const SuiteParams& sp);

HarnessReport run_suite(const std::string& name, const SuiteParams& sp);

}  // namespace jh
