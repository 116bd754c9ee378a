// SPDX-License-Identifier: MIT
#include "jh/verify.hpp"

#include "jh/closed_forms.hpp"
#include "jh/constructors.hpp"
#include "jh/formal.hpp"
#include "jh/numeric.hpp"
#include "jh/operators.hpp"

#include <set>

namespace jh {

namespace {

i64 pick(i64 given, i64 fallback) { return given > 0 ? given : fallback; }

Lattice suite_lattice(const SuiteParams& sp) {
    if (sp.lattice == "e8") return e8_lattice(sp.v_norm);
    if (sp.lattice == "e8e8") return e8e8_lattice(sp.v_norm);
    throw MathError("unknown lattice '" + sp.lattice + "' (e8 or e8e8)");
}

// Records one named sub-check; the first failure sets the report status.
void record(HarnessReport& rep, const std::string& name, bool ok, nlohmann::ordered_json info) {
    info["passed"] = ok;
    rep.details[name] = std::move(info);
    if (!ok) rep.status = "fail";
}

nlohmann::ordered_json compare_on_region(const CoeffTable& a, const CoeffTable& b, std::size_t& keys,
                                         std::optional<InvKey2>& witness) {
    const i64 B = std::min(a.bound(), b.bound());
    std::size_t nonzero = 0, bad = 0;
    nlohmann::ordered_json j;
    for (const auto& K : supported_keys2(a.index(), B)) {
        Rat x = a.lookup(K).value, y = b.lookup(K).value;
        ++keys;
        if (x != 0) ++nonzero;
        if (x != y && bad++ == 0) {
            witness = K;
            j["witness"] = key_json(K);
            j["oracle"] = to_string(x);
            j["closed"] = to_string(y);
        }
    }
    j["region"] = B;
    j["nonzero_keys"] = nonzero;
    j["mismatches"] = bad;
    return j;
}

}  // namespace

std::vector<std::string> suite_names() { return {"theorem1", "theorem2", "oracle", "numeric", "crosscheck"}; }

HarnessReport oracle_suite(const SuiteParams& sp) {
    HarnessReport rep;
    rep.theorem = "oracle";
    const i64 B = pick(sp.bound, 400);
    rep.params = {{"p", sp.p}, {"lattice", sp.lattice}, {"v_norm", sp.v_norm}, {"bound", B}};
    CoeffTable t = theta_table(suite_lattice(sp), 2, B);
    for (bool up : {true, false}) {
        std::size_t keys = 0;
        std::optional<InvKey2> w;
        CoeffTable o = up ? op_up(t, sp.p) : op_down(t, sp.p);
        CoeffTable c = up ? closed_up(t, sp.p) : closed_down(t, sp.p);
        auto info = compare_on_region(o, c, keys, w);
        info["keys"] = keys;
        rep.matched_keys += keys - info["mismatches"].get<std::size_t>();
        // The region must hold enough keys to make exact agreement meaningful.
        record(rep, up ? "up" : "down", !w && keys >= 30, info);
        if (w && !rep.witness) rep.witness = w;
    }
    return rep;
}

HarnessReport theorem1_suite(const SuiteParams& sp) {
    const i64 B = pick(sp.bound, 200);
    DualitySpace S = solve_duality_space_classes(sp.k, sp.m, sp.q, B);
    HarnessReport rep = theorem1_space(S);
    rep.details["space"] = {{"classes", S.classes->size()},
                            {"equations", S.equations},
                            {"constrained_classes", S.constrained_classes},
                            {"largest_component", S.largest_component}};

    // A single coefficient breaks the relation; difference and defect must both see it.
    CoeffTable delta(2, sp.k, sp.m, std::min<i64>(B, 100));
    const InvKey2 probe{-4, -3, 0, 0, 1};
    delta.set(probe, 1);
    HarnessReport d = theorem1_harness(delta, sp.q);
    auto mem = membership(delta, sp.q);
    bool ok = d.passed() && d.witness && mem.status == MembershipStatus::non_member;
    nlohmann::ordered_json info = d.to_json();
    info["membership"] = to_string(mem.status);
    if (mem.witness) info["membership_witness"] = key_json(*mem.witness);
    if (ok) {
        CoeffTable u = add(op_up(delta, sp.q), op_down(delta, sp.q), -1);
        auto def = defect(delta, sp.q, *d.witness);
        ok = def && def->defect != 0 && u.lookup(*d.witness).value != 0;
        info["difference_at_witness"] = to_string(u.lookup(*d.witness).value);
        if (def) info["defect_at_witness"] = to_string(def->defect);
    }
    record(rep, "delta_table", ok, info);
    if (rep.status == "fail" && !rep.witness) rep.witness = d.witness;
    return rep;
}

HarnessReport theorem2_suite(const SuiteParams& sp) {
    return theorem2_harness(sp.q, sp.p, sp.k, sp.m, pick(sp.bound, 200));
}

HarnessReport numeric_suite(const SuiteParams& sp) {
    HarnessReport rep;
    rep.theorem = "numeric";
    rep.params = {{"k", sp.k}, {"m", sp.m}, {"samples", sp.samples}, {"seed", sp.seed},
                  {"tolerance", kNumericTolerance}};
    CoeffTable t = theta_table(e8_lattice(2), 2, 60);
    FormalSeries s = to_series(t, 3);
    std::vector<NumericCheck> checks = {
        check_cocycle(sp.samples, sp.k, sp.m, sp.seed),
        check_psi_duality(sp.samples, sp.k, sp.m, sp.seed + 1),
        check_formal_numeric(s, sp.samples, sp.seed + 2),
    };
    for (const auto& c : checks) {
        rep.matched_keys += c.samples;
        record(rep, c.name, c.passed(kNumericTolerance), {{"samples", c.samples}, {"max_relative_error", c.max_error}});
    }
    return rep;
}

HarnessReport crosscheck_suite(const SuiteParams& sp) {
    HarnessReport rep;
    rep.theorem = "crosscheck";
    const i64 B = pick(sp.bound, 100);
    rep.params = {{"bound", B}};

    {
        CoeffTable e = eisenstein1(4, B), th = theta_table(e8_lattice(2), 1, B);
        Rat c0 = th.lookup(InvKey1{0, 0}).value;
        std::size_t keys = 0, bad = 0;
        for (const auto& K : supported_keys1(1, B)) {
            ++keys;
            if (e.lookup(K).value * c0 != th.lookup(K).value) ++bad;
        }
        Rat a = e.lookup(InvKey1{-4, 0}).value, b = e.lookup(InvKey1{-3, 1}).value;
        rep.matched_keys += keys - bad;
        record(rep, "eisenstein_vs_theta", bad == 0 && a == 126 && b == 56,
               {{"keys", keys}, {"mismatches", bad}, {"at(-4,0)", to_string(a)}, {"at(-3,1)", to_string(b)}});
    }
    {
        std::size_t checked = 0, bad = 0;
        for (i64 N = 0; N <= 200; ++N) {
            if (mod(-N, 4) > 1) continue;
            ++checked;
            if (cohen_H(1, N) != hurwitz_brute(N)) ++bad;
        }
        record(rep, "cohen_vs_hurwitz", bad == 0, {{"values", checked}, {"mismatches", bad}});
    }
    {
        nlohmann::ordered_json info;
        bool ok = true;
        // Explicit pair enumeration grows steeply with the bound; these stay under a second.
        for (auto [name, L, b] : {std::tuple{"e8 v-norm 2", e8_lattice(2), i64(16)},
                                  {"e8 v-norm 4", e8_lattice(4), i64(16)},
                                  {"e8e8 v-norm 2", e8e8_lattice(2), i64(4)}}) {
            auto res = theta_table_eager(L, b);
            if (auto* v = std::get_if<WellDefinednessViolation>(&res)) {
                ok = false;
                info[name] = v->message();
                continue;
            }
            std::set<i64> residues;
            for (const auto& [K, c] : std::get<CoeffTable>(res).entries2()) residues.insert(K.r1);
            // Every residue class mod 2m must actually occur.
            const i64 m = L.index();
            ok = ok && static_cast<i64>(residues.size()) == 2 * m;
            info[name] = {{"bound", b}, {"index", m}, {"residue_classes", residues.size()}};
        }
        record(rep, "well_definedness", ok, info);
    }
    {
        nlohmann::ordered_json info;
        bool ok = true;
        for (i64 p : {2, 3, 5}) {
            Rat l60 = eigenvalue_of(eisenstein1(4, 60), op_TJ1(eisenstein1(4, 60), p));
            Rat l120 = eigenvalue_of(eisenstein1(4, 120), op_TJ1(eisenstein1(4, 120), p));
            ok = ok && l60 == l120;
            info[std::to_string(p)] = {{"B=60", to_string(l60)}, {"B=120", to_string(l120)}};
        }
        record(rep, "eigenform", ok, info);
    }
    {
        nlohmann::ordered_json info;
        bool ok = true;
        CoeffTable t = eisenstein1(4, 300);
        for (i64 p : {2, 3}) {
            Rat r = eigenvalue_of(op_TJ1(t, p), op_X(t, p));
            ok = ok && r == rat_pow(Rat(p), 3 - t.weight());
            info[std::to_string(p)] = to_string(r);
        }
        record(rep, "double_coset_normalization", ok, info);
    }
    {
        nlohmann::ordered_json info;
        bool ok = true;
        for (i64 p : {2, 3, 5}) {
            std::size_t n = det_cosets(p).size();
            ok = ok && n == static_cast<std::size_t>(p * p + p + 1);
            info["det_cosets_" + std::to_string(p)] = {{"size", n}, {"expected", p * p + p + 1}};
        }
        for (auto id : all_package_ids()) {
            auto pk = package(id, 3);
            bool size_ok = static_cast<i64>(pk.elements.size()) == pk.expected_size;
            bool disjoint = !left_cosets_overlap(pk.elements);
            ok = ok && size_ok && disjoint;
            info[to_string(id)] = {{"size", pk.elements.size()}, {"expected", pk.expected_size}, {"disjoint", disjoint}};
        }
        record(rep, "coset_catalog", ok, info);
    }
    return rep;
}

HarnessReport run_suite(const std::string& name, const SuiteParams& sp) {
    if (name == "oracle") return oracle_suite(sp);
    if (name == "theorem1") return theorem1_suite(sp);
    if (name == "theorem2") return theorem2_suite(sp);
    if (name == "numeric") return numeric_suite(sp);
    if (name == "crosscheck") return crosscheck_suite(sp);
    throw MathError("unknown suite '" + name + "'");
}

}  // namespace jh
