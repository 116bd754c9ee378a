// SPDX-License-Identifier: MIT
#pragma once

#include "jh/cosets.hpp"
#include "jh/forms.hpp"

#include <memory>
#include <string>
#include <vector>

namespace jh {

// Failure of a coset sum: code is "NonIntegralResidue", "RegionExhausted",
// "NonParabolic" or "NotProportional".
class SlashError : public MathError {
public:
    SlashError(std::string code, const std::string& what) : MathError(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class Embed { none, up, down };

// Worker threads used by SlashSum::apply; output is identical for every value.
void set_slash_jobs(std::size_t jobs);
std::size_t slash_jobs();

// Sum over a finite list of parabolic elements of Phi |_{k,m} gamma, computed on
// coefficients by pulling each output term back through every element:
//   e(tr(N^ T^)) |_k gamma^ = det(A)^k e(tr(N^ B^ A^t)) e(tr(A^t N^ A T^)),
// N^ = [[N, R^t/2], [R/2, m]], gamma^ = [[A^, B^], [0, A^-t]].
class SlashSum {
public:
    // Elements act on forms of the given degree; each must have zero lower-left block.
    SlashSum(std::size_t degree, const std::vector<JacobiElement>& elements);
    // All products g * h (embedded as requested), generated without storing them.
    static SlashSum product(std::size_t degree, const std::vector<RatMat>& symplectic,
                            const std::vector<JacobiElement>& heis, Embed embed);
    ~SlashSum();
    SlashSum(SlashSum&&) noexcept;
    SlashSum& operator=(SlashSum&&) noexcept;

    std::size_t degree() const { return degree_; }
    std::size_t size() const { return size_; }
    // Largest region on which every preimage of an output key stays in the input region.
    i64 output_bound(i64 input_bound) const;
    std::int64_t phase_order() const;

    // prefactor * sum; throws SlashError on an irrational coefficient.
    CoeffTable apply(const CoeffTable& t, const Rat& prefactor = 1) const;

private:
    struct Impl;
    std::size_t degree_;
    std::size_t size_ = 0;
    std::unique_ptr<Impl> impl_;
};

// All products g * h over g in the package (embedded as requested) and h in heis.
std::vector<JacobiElement> package_elements(const std::vector<RatMat>& symplectic,
                                            const std::vector<JacobiElement>& heis, Embed embed);

CoeffTable apply_package(const CoeffTable& t, const CosetPackage& pkg, const std::vector<JacobiElement>& heis,
                         Embed embed, const Rat& prefactor);

// Sum over det_cosets(l)/l and (lam, mu) mod l, embedded as requested; no prefactor.
SlashSum hecke_slash_sum(i64 l, Embed embed);

// l^(k-4) sum over det_cosets(l)/l and (lam, mu) mod l.
CoeffTable op_TJ1(const CoeffTable& t, i64 l);
CoeffTable op_up(const CoeffTable& t, i64 l);
CoeffTable op_down(const CoeffTable& t, i64 l);
// Sum over package(id, p) and heisenberg_set(2, p), no prefactor.
CoeffTable op_package2(const CoeffTable& t, PackageId id, i64 p);

// Plain sum of Phi |_{k,m} gamma over the left cosets of the double coset X(l).
CoeffTable op_X(const CoeffTable& t, i64 p);

// The lambda with output = lambda * input on the common region.
Rat eigenvalue_of(const CoeffTable& input, const CoeffTable& output);

}  // namespace jh
