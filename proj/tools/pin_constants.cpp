// SPDX-License-Identifier: MIT
// Regenerates core/src/pinned_constants.inc by exact matching of each closed-form shape
// against the coset-sum oracle on two independent theta series.
#include "jh/closed_forms.hpp"
#include "jh/constructors.hpp"
#include "jh/duality.hpp"
#include "jh/operators.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace jh;

namespace {

// Packages that do not shrink the region would otherwise be matched on every key up to B.
constexpr i64 kFitBound = 40;

struct Input {
    std::string name;
    CoeffTable table;
};

CoeffTable oracle(const std::string& id, const CoeffTable& t, i64 p) {
    if (id == "up") return op_up(t, p);
    if (id == "down") return op_down(t, p);
    return op_package2(t, *parse_package_id(id), p);
}

// Solves alpha from features . alpha = oracle over every key of every input.
std::vector<Rat> fit(const std::string& id, const std::vector<Input>& inputs, i64 p, std::size_t& keys) {
    auto spec = closed_form_shape(id, p);
    const std::size_t n = spec.terms.size();
    RatMatrixRows rows;
    keys = 0;
    for (const auto& in : inputs) {
        CoeffTable out = oracle(id, in.table, p);
        i64 b = std::min({out.bound(), closed_form_bound(spec, in.table.bound()), kFitBound});
        for (const auto& K : supported_keys2(in.table.index(), b)) {
            auto row = shape_features(in.table, spec, p, K);
            row.push_back(-out.lookup(K).value);
            rows.push_back(std::move(row));
            ++keys;
        }
    }
    auto ns = rational_nullspace(rows, n + 1);
    if (ns.size() != 1 || ns[0][n] == 0)
        throw MathError(id + ": oracle does not determine the constants (nullity " + std::to_string(ns.size()) + ")");
    std::vector<Rat> alpha;
    for (std::size_t i = 0; i < n; ++i) alpha.push_back(ns[0][i] / ns[0][n]);
    return alpha;
}

// u / defect on a single-class table that violates the relation.
Rat measure_rho(i64 p, int k, i64 B, std::size_t& keys) {
    DualitySpace S;
    S.p = p;
    S.classes = std::make_shared<ClassIndex>(k, 1, B);
    auto ref = S.classes->resolve({-4, -3, 0, 0, 1});
    if (ref.kind != ClassIndex::Ref::cls) throw MathError("rho: probe class missing");
    S.basis.push_back({{ref.id, Rat(1)}});
    CoeffTable t = S.table(0);
    CoeffTable u = add(op_up(t, p), op_down(t, p), -1);
    std::optional<Rat> rho;
    for (const auto& K : supported_keys2(1, u.bound())) {
        auto d = defect(t, p, K);
        if (!d) continue;
        Rat uv = u.lookup(K).value;
        ++keys;
        if (d->defect == 0) {
            if (uv != 0) throw MathError("rho: difference nonzero where the defect vanishes");
            continue;
        }
        Rat r = uv / d->defect;
        if (rho && *rho != r) throw MathError("rho: ratio is not constant");
        rho = r;
    }
    if (!rho) throw MathError("rho: no key with nonzero defect");
    return *rho;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: jh_pin_constants <output.inc>\n";
        return 2;
    }
    const i64 p = 3;
    try {
        std::ostringstream os;
        os << "// Generated by jh_pin_constants; do not edit by hand.\n";
        for (const auto& id : closed_form_ids()) {
            // The oracle fills its whole output region, so the input bound follows each
            // package's shrink factor; M1 dilates both slots and reads the largest keys.
            const i64 B = id == "M1" ? 81 : (id == "up" || id == "down" || id == "M9") ? 144 : id == "M7" ? 112 : 40;
            std::vector<Input> inputs = {
                {"E8 v-norm 2 (k=4, m=1)", theta_table(e8_lattice(2), 2, B)},
                {"E8 v-norm 4 (k=4, m=2)", theta_table(e8_lattice(4), 2, B)},
            };
            std::size_t keys = 0;
            auto alpha = fit(id, inputs, p, keys);
            auto spec = closed_form_shape(id, p);
            std::string prov = "oracle match " + id + ", p=3, B=" + std::to_string(B) + ", " + inputs[0].name +
                               " and " + inputs[1].name + ", " + std::to_string(keys) + " keys";
            for (std::size_t i = 0; i < alpha.size(); ++i)
                os << "{\"" << id << "\", \"" << spec.terms[i].label << "\", \"" << to_string(alpha[i]) << "\", \""
                   << prov << "\"},\n";
            std::cerr << id << ": " << keys << " keys\n";
        }
        std::string seen;
        std::optional<Rat> rho;
        std::size_t keys = 0;
        for (auto [q, k, b] : {std::tuple{3, 4, 72}, {5, 4, 200}, {3, 8, 72}, {5, 8, 200}}) {
            Rat r = measure_rho(q, k, b, keys);
            if (rho && *rho != r) throw MathError("rho depends on (p, k); record it per pair");
            rho = r;
            seen += " (p=" + std::to_string(q) + ", k=" + std::to_string(k) + ")";
        }
        os << "{\"rho\", \"\", \"" << to_string(*rho) << "\", \"single-class probe at" << seen << ", " << keys
           << " keys\"},\n";
        std::ofstream(argv[1]) << os.str();
    } catch (const std::exception& e) {
        std::cerr << "jh_pin_constants: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
