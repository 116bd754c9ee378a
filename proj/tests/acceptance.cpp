// SPDX-License-Identifier: MIT
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "jh/closed_forms.hpp"
#include "jh/constructors.hpp"
#include "jh/cosets.hpp"
#include "jh/numeric.hpp"
#include "jh/operators.hpp"
#include "jh/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace jh;
using i64 = std::int64_t;

namespace {

// Pinned here so that the run cannot be loosened from the outside.
constexpr double kRelativeTolerance = 1e-9;
constexpr std::size_t kNumericSamples = 100;
constexpr std::size_t kMinOracleKeys = 30;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::size_t compare2(const CoeffTable& a, const CoeffTable& b, std::size_t& keys) {
    std::size_t bad = 0;
    for (const auto& K : supported_keys2(a.index(), std::min(a.bound(), b.bound())))
        ++keys, bad += a.lookup(K).value != b.lookup(K).value;
    return bad;
}

Outcome oracle_equivalence() {
    std::ostringstream os;
    bool ok = true;
    CoeffTable t = theta_table(e8_lattice(2), 2, 400);
    for (bool up : {true, false}) {
        std::size_t keys = 0;
        std::size_t bad = up ? compare2(op_up(t, 3), closed_up(t, 3), keys) : compare2(op_down(t, 3), closed_down(t, 3), keys);
        ok = ok && bad == 0 && keys >= kMinOracleKeys;
        os << (up ? "up" : "down") << " keys=" << keys << " mismatches=" << bad << "; ";
    }
    // Second input with the constants unchanged (weight 8); reported, not gated.
    CoeffTable s = theta_table(e8e8_lattice(2), 2, 72);
    std::size_t keys = 0, bad = compare2(op_up(s, 3), closed_up(s, 3), keys);
    bad += compare2(op_down(s, 3), closed_down(s, 3), keys);
    os << "E8+E8 k=8 B=72: keys=" << keys << " mismatches=" << bad;
    return {ok, os.str()};
}

Outcome from_report(const HarnessReport& r) {
    std::ostringstream os;
    os << "status=" << r.status << " matched_keys=" << r.matched_keys;
    if (r.witness) os << " witness=" << key_json(*r.witness).dump();
    return {r.passed(), os.str()};
}

Outcome theorem1() {
    SuiteParams sp;
    sp.k = 4, sp.m = 1, sp.q = 5, sp.bound = 200;
    return from_report(theorem1_suite(sp));
}

Outcome theorem2() {
    HarnessReport r = theorem2_harness(5, 3, 4, 1, 200);
    Outcome o = from_report(r);
    if (r.details.contains("packages")) o.detail += " packages=" + r.details["packages"].dump();
    return o;
}

Outcome dual_construction() {
    CoeffTable e = eisenstein1(4, 100), th = theta_table(e8_lattice(2), 1, 100);
    Rat c0 = th.lookup(InvKey1{0, 0}).value;
    std::size_t keys = 0, bad = 0;
    for (const auto& K : supported_keys1(1, 100)) ++keys, bad += e.lookup(K).value * c0 != th.lookup(K).value;
    Rat a = e.lookup(InvKey1{-4, 0}).value, b = e.lookup(InvKey1{-3, 1}).value;
    std::ostringstream os;
    os << "keys=" << keys << " mismatches=" << bad << " at(-4,0)=" << to_string(a) << " at(-3,1)=" << to_string(b);
    return {bad == 0 && a == 126 && b == 56 && c0 != 0, os.str()};
}

Outcome eigenform() {
    std::ostringstream os;
    bool ok = true;
    for (i64 p : {2, 3, 5}) {
        Rat l[2];
        int i = 0;
        for (i64 B : {60, 120}) {
            CoeffTable e = eisenstein1(4, B);
            try {
                l[i] = eigenvalue_of(e, op_TJ1(e, p));
            } catch (const SlashError& err) {
                ok = false;
                os << "p=" << p << " B=" << B << ": " << err.what() << "; ";
            }
            ++i;
        }
        ok = ok && l[0] == l[1] && l[0] != 0;
        os << "p=" << p << " lambda=" << to_string(l[0]) << "/" << to_string(l[1]) << "; ";
    }
    return {ok, os.str()};
}

Outcome cohen_hurwitz() {
    std::size_t n = 0, bad = 0;
    for (i64 N = 0; N <= 200; ++N)
        if (mod(-N, 4) <= 1) ++n, bad += cohen_H(1, N) != hurwitz_brute(N);
    return {n > 0 && bad == 0, "values=" + std::to_string(n) + " mismatches=" + std::to_string(bad)};
}

Outcome numeric() {
    const std::uint64_t seed = SuiteParams{}.seed;
    NumericCheck c = check_cocycle(kNumericSamples, 4, 1, seed);
    NumericCheck psi = check_psi_duality(kNumericSamples, 4, 1, seed + 1);
    std::ostringstream os;
    os << "cocycle max_rel_err=" << c.max_error << " psi max_rel_err=" << psi.max_error << " samples=" << c.samples
       << "+" << psi.samples << " tol=" << kRelativeTolerance;
    return {c.passed(kRelativeTolerance) && psi.passed(kRelativeTolerance), os.str()};
}

Outcome well_definedness() {
    std::ostringstream os;
    bool ok = true;
    struct Case {
        const char* name;
        Lattice L;
        i64 B;
    };
    // Explicit pair enumeration; bounds keep each construction within seconds.
    for (const auto& c : {Case{"E8 v2", e8_lattice(2), 16}, Case{"E8 v4", e8_lattice(4), 16},
                          Case{"E8+E8 v2", e8e8_lattice(2), 4}}) {
        auto res = theta_table_eager(c.L, c.B);
        if (auto* v = std::get_if<WellDefinednessViolation>(&res)) {
            ok = false;
            os << c.name << ": " << v->message() << "; ";
            continue;
        }
        std::set<i64> residues;
        for (const auto& [K, x] : std::get<CoeffTable>(res).entries2()) residues.insert(K.r1);
        const i64 m = c.L.index();
        ok = ok && static_cast<i64>(residues.size()) == 2 * m;
        os << c.name << " m=" << m << " residue classes=" << residues.size() << "; ";
    }
    return {ok, os.str()};
}

Outcome coset_sanity() {
    std::ostringstream os;
    bool ok = true;
    for (i64 p : {2, 3, 5}) {
        const std::size_t n = det_cosets(p).size(), want = static_cast<std::size_t>(p * p + p + 1);
        ok = ok && n == want;
        os << "det_cosets(" << p << ")=" << n << " want " << want << "; ";
    }
    for (auto id : all_package_ids()) {
        auto pk = package(id, 3);
        const bool size_ok = static_cast<i64>(pk.elements.size()) == pk.expected_size;
        const bool disjoint = !left_cosets_overlap(pk.elements);
        ok = ok && size_ok && disjoint;
        if (!size_ok || !disjoint)
            os << to_string(id) << " size=" << pk.elements.size() << " want " << pk.expected_size
               << (disjoint ? "" : " overlapping") << "; ";
    }
    return {ok, os.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"oracle equivalence", oracle_equivalence},
        {"duality relation equivalence", theorem1},
        {"package preservation", theorem2},
        {"dual construction of E_{4,1}", dual_construction},
        {"eigenform property", eigenform},
        {"Cohen/Hurwitz oracle", cohen_hurwitz},
        {"numeric suite", numeric},
        {"well-definedness", well_definedness},
        {"coset sanity", coset_sanity},
    };
    int failed = 0, n = 0;
    for (const auto& [name, run] : criteria) {
        ++n;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << o.detail << " ["
                  << secs << " s]" << std::endl;
    }
    std::cout << (n - failed) << "/" << n << " criteria passed" << std::endl;
    return failed ? 1 : 0;
}
