// SPDX-License-Identifier: MIT
#pragma once

#include "jh/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jh {

using i64 = std::int64_t;

enum class PackageId { N1, N2, N3, M1, M2, M3, M4, M5, M6, M7, M8, M9, M10, M11, M12 };

std::string to_string(PackageId id);
std::optional<PackageId> parse_package_id(const std::string& s);
constexpr bool is_degree1(PackageId id) { return id <= PackageId::N3; }
std::vector<PackageId> all_package_ids();

struct CosetPackage {
    PackageId id;
    i64 p;
    std::vector<RatMat> elements;  // symplectic parts, block upper-triangular
    i64 expected_size;
};

// Representatives exactly as printed (scaled, with 1/p entries). p odd prime.
CosetPackage package(PackageId id, i64 p);
i64 expected_package_size(PackageId id, i64 p);

// All (lam, mu, 0) with lam, mu in {0..l-1}^n.
std::vector<JacobiElement> heisenberg_set(std::size_t n, i64 l);

// [[a,b],[0,d]] with ad = l^2, 0 <= b < d, gcd(a,b,d) a perfect square.
std::vector<RatMat> det_cosets(i64 l);
// All Hermite forms of determinant l^2 without the gcd filter.
std::vector<RatMat> det_hnf_all(i64 l);

// Left cosets gamma h of Gamma^J diag(p, 1/p) Gamma^J, derived from Smith invariants
// and the Heisenberg stabiliser of each gamma; independent of det_cosets.
std::vector<JacobiElement> double_coset_X(i64 p);

// S1 = I, S2 = diag(1/p,1/p,p,p), S3 = diag(1/p,1,p,1).
RatMat generator_S(int i, i64 p);

// gamma delta^-1 is integral for some distinct pair.
bool left_cosets_overlap(const std::vector<RatMat>& elems);

// Scaled integral representative M/l of a determinant-l^2 matrix as a degree-1 element.
RatMat scaled_gl2(const RatMat& M, i64 l);

}  // namespace jh
